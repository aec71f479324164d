//! Airy functions Ai, Bi and derivatives for complex arguments.
//!
//! Maclaurin series for small |z|, asymptotic expansions plus rotation
//! identities for large |z|. In the annulus between the two regimes both
//! evaluations are formed and the one with the smaller error estimate wins.

use num_complex::Complex64;

use crate::error::{Result, WqError};

/// Ai(0) = 3^{-2/3} / Gamma(2/3).
const C1: f64 = 0.355_028_053_887_817_24;
/// -Ai'(0) = 3^{-1/3} / Gamma(1/3).
const C2: f64 = 0.258_819_403_792_806_8;
const SQRT3: f64 = 1.732_050_807_568_877_2;
const TWO_SQRT_PI: f64 = 3.544_907_701_811_032;

const SERIES_RADIUS: f64 = 5.5;
const ASYM_RADIUS: f64 = 8.0;
const TARGET_REL: f64 = 1e-8;

/// Values of (Ai, Ai', Bi, Bi') at one point.
#[derive(Debug, Clone, Copy)]
pub struct AiryValues {
    pub ai: Complex64,
    pub aip: Complex64,
    pub bi: Complex64,
    pub bip: Complex64,
}

struct Estimate {
    vals: AiryValues,
    /// Relative error estimate, shared across the four components.
    err: f64,
}

/// All four Airy functions at a complex point.
///
/// Fails with a precision-loss error if the estimated relative accuracy is
/// worse than 1e-8.
pub fn airy(z: Complex64) -> Result<AiryValues> {
    let r = z.norm();
    let est = if r <= SERIES_RADIUS {
        series(z)
    } else if r < ASYM_RADIUS {
        let a = series(z);
        let b = large(z);
        if a.err <= b.err {
            a
        } else {
            b
        }
    } else {
        large(z)
    };
    if est.err > TARGET_REL {
        return Err(WqError::Tolerance(format!(
            "airy precision loss at z = {z}: estimated relative error {:.3e}",
            est.err
        )));
    }
    Ok(est.vals)
}

/// Maclaurin series; accurate for moderate |z|, loses digits through
/// cancellation as |z|^{3/2} grows.
fn series(z: Complex64) -> Estimate {
    let z3 = z * z * z;
    // f  = 1 + z^3/6 + ...          ratio_k = z^3 / ((3k+2)(3k+3))
    // g  = z + z^4/12 + ...         ratio_k = z^3 / ((3k+3)(3k+4))
    // f' = z^2/2 + z^5/30 + ...     ratio_k = z^3 / ((3k+3)(3k+5))
    // g' = 1 + z^3/3 + ...          ratio_k = z^3 / ((3k+1)(3k+3))
    let one = Complex64::new(1.0, 0.0);
    let mut tf = one;
    let mut tg = z;
    let mut tfp = 0.5 * z * z;
    let mut tgp = one;
    let mut f = tf;
    let mut g = tg;
    let mut fp = tfp;
    let mut gp = tgp;
    let mut max_term = tf.norm().max(tg.norm()).max(tfp.norm()).max(tgp.norm());
    for k in 0..200 {
        let kk = k as f64;
        tf *= z3 / ((3.0 * kk + 2.0) * (3.0 * kk + 3.0));
        tg *= z3 / ((3.0 * kk + 3.0) * (3.0 * kk + 4.0));
        tfp *= z3 / ((3.0 * kk + 3.0) * (3.0 * kk + 5.0));
        tgp *= z3 / ((3.0 * kk + 1.0) * (3.0 * kk + 3.0));
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        let m = tf.norm().max(tg.norm()).max(tfp.norm()).max(tgp.norm());
        max_term = max_term.max(m);
        if m < 1e-18 * max_term {
            break;
        }
    }
    let ai = C1 * f - C2 * g;
    let aip = C1 * fp - C2 * gp;
    let bi = SQRT3 * (C1 * f + C2 * g);
    let bip = SQRT3 * (C1 * fp + C2 * gp);
    let smallest = ai
        .norm()
        .min(aip.norm())
        .min(bi.norm())
        .min(bip.norm())
        .max(f64::MIN_POSITIVE);
    let err = 4.0 * f64::EPSILON * max_term / smallest;
    Estimate {
        vals: AiryValues { ai, aip, bi, bip },
        err,
    }
}

/// Asymptotic expansion of (Ai, Ai') for |arg z| <= 2*pi/3, single
/// exponential e^{-zeta} with zeta = (2/3) z^{3/2}.
fn ai_asym(z: Complex64) -> (Complex64, Complex64, f64) {
    let sqrt_z = z.sqrt();
    let zeta = 2.0 / 3.0 * z * sqrt_z;
    let mut u = 1.0f64; // u_k
    let mut term_a = Complex64::new(1.0, 0.0);
    let mut term_b = Complex64::new(1.0, 0.0);
    let mut sum_a = term_a;
    let mut sum_b = term_b;
    let mut last = 1.0f64;
    let mut err = 1.0f64;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 1.0) * (6.0 * kf - 3.0) * (6.0 * kf - 5.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        let v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let zk = zeta.powi(-(k as i32));
        term_a = sign * u * zk;
        term_b = sign * v * zk;
        let m = term_a.norm().max(term_b.norm());
        if m >= last {
            // divergent tail reached; previous term bounds the error
            err = last;
            break;
        }
        sum_a += term_a;
        sum_b += term_b;
        last = m;
        err = m;
        if m < 1e-18 {
            break;
        }
    }
    let pre = (-zeta).exp() / (TWO_SQRT_PI * sqrt_z.sqrt());
    let ai = pre * sum_a;
    let aip = -sqrt_z.sqrt() * (-zeta).exp() / TWO_SQRT_PI * sum_b;
    (ai, aip, err)
}

/// (Ai, Ai') for any argument: direct expansion in the principal sector,
/// rotation identity beyond |arg z| = 2*pi/3.
fn ai_any(z: Complex64) -> (Complex64, Complex64, f64) {
    let two_thirds_pi = 2.0 * std::f64::consts::FRAC_PI_3;
    if z.arg().abs() <= two_thirds_pi {
        return ai_asym(z);
    }
    // Ai(z) = -[e^{-2pi i/3} Ai(z e^{-2pi i/3}) + e^{2pi i/3} Ai(z e^{2pi i/3})]
    let w = Complex64::from_polar(1.0, two_thirds_pi);
    let (a_p, ap_p, e1) = ai_asym(z * w);
    let (a_m, ap_m, e2) = ai_asym(z / w);
    let ai = -(a_m / w + a_p * w);
    let aip = -(ap_p * w * w + ap_m / (w * w));
    // rotated pieces largely cancel for the recessive solution
    let mag = (a_p.norm() + a_m.norm()).max(f64::MIN_POSITIVE);
    let cancel = mag / ai.norm().max(f64::MIN_POSITIVE);
    let err = (e1.max(e2) + f64::EPSILON) * cancel;
    (ai, aip, err)
}

/// Large-|z| evaluation of all four functions via Ai and rotations.
fn large(z: Complex64) -> Estimate {
    let two_thirds_pi = 2.0 * std::f64::consts::FRAC_PI_3;
    let w = Complex64::from_polar(1.0, two_thirds_pi);
    let (ai, aip, ea) = ai_any(z);
    // Bi(z)  = e^{ i pi/6} Ai(z e^{ 2pi i/3}) + e^{-i pi/6} Ai(z e^{-2pi i/3})
    // Bi'(z) = e^{ 5i pi/6} Ai'(z e^{ 2pi i/3}) + e^{-5i pi/6} Ai'(z e^{-2pi i/3})
    let (a_p, ap_p, e1) = ai_any(z * w);
    let (a_m, ap_m, e2) = ai_any(z / w);
    let ph6 = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_6);
    let ph56 = Complex64::from_polar(1.0, 5.0 * std::f64::consts::FRAC_PI_6);
    let bi = ph6 * a_p + a_m / ph6;
    let bip = ph56 * ap_p + ap_m / ph56;
    let cancel =
        (a_p.norm() + a_m.norm()).max(f64::MIN_POSITIVE) / bi.norm().max(f64::MIN_POSITIVE);
    let err_bi = (e1.max(e2) + f64::EPSILON) * cancel;
    Estimate {
        vals: AiryValues { ai, aip, bi, bip },
        err: ea.max(err_bi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relerr(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn at_origin() {
        let v = airy(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.ai.re - C1).abs() < 1e-15 && v.ai.im == 0.0);
        assert!((v.aip.re + C2).abs() < 1e-15);
        // Bi(0) = 3^{-1/6} / Gamma(2/3) = sqrt(3) * Ai(0)
        assert!((v.bi.re - SQRT3 * C1).abs() < 1e-15);
        assert!((v.bip.re - SQRT3 * C2).abs() < 1e-15);
    }

    #[test]
    fn wronskian() {
        // Ai Bi' - Ai' Bi = 1/pi everywhere
        for &(re, im) in &[
            (0.3, 0.4),
            (2.0, 3.0),
            (-4.0, 1.0),
            (6.0, -6.0),
            (-9.0, 0.5),
            (3.25, 5.629),
            (12.0, 1.0),
            (-12.0, 3.0),
        ] {
            let z = Complex64::new(re, im);
            let v = airy(z).unwrap();
            let wr = v.ai * v.bip - v.aip * v.bi;
            let target = Complex64::new(std::f64::consts::FRAC_1_PI, 0.0);
            // the products can dwarf 1/pi, so budget for the cancellation
            let scale = (v.ai * v.bip).norm() + (v.aip * v.bi).norm();
            assert!(
                (wr - target).norm() < 1e-12 * scale + 1e-9 * target.norm(),
                "wronskian off at {z}: {wr}"
            );
        }
    }

    include!("airy_ref.rs");

    #[test]
    fn reference_values() {
        for &(z, ai, aip, bi, bip) in AIRY_REF {
            let v = airy(z).unwrap();
            let tol = 5e-10;
            assert!(relerr(v.ai, ai) < tol, "Ai mismatch at {z}: {} vs {ai}", v.ai);
            assert!(relerr(v.aip, aip) < tol, "Ai' mismatch at {z}");
            assert!(relerr(v.bi, bi) < tol, "Bi mismatch at {z}: {} vs {bi}", v.bi);
            assert!(relerr(v.bip, bip) < tol, "Bi' mismatch at {z}");
        }
    }
}
