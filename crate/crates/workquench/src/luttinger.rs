//! Time-dependent Luttinger-liquid parameterization and per-mode Heisenberg
//! dynamics: the mode ODE, its Airy-function closed form, and excitation
//! probabilities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::airy::airy;
use crate::error::{Result, WqError};
use crate::ode::{integrate, OdeOptions, State};
use crate::protocol::QuenchProtocol;

type C = Complex64;

/// Velocity and interaction parameter of the effective theory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LuttingerParams {
    /// Excitation velocity, in units of J times the lattice spacing.
    pub v: f64,
    /// Dimensionless interaction parameter; K(0) = 1.
    pub k: f64,
}

/// v(delta) = J pi sqrt(1 - delta^2) / (2 arccos delta),
/// K(delta) = (pi/2) / (pi - arccos delta).
///
/// Valid on delta in (-1, 1]; delta = 1 is the boundary of the gapless
/// regime, where the closed form has the finite limit v = J pi / 2, K = 1/2.
pub fn luttinger_params(j: f64, delta: f64) -> Result<LuttingerParams> {
    if !(j > 0.0) {
        return Err(WqError::Domain(format!("J must be positive, got {j}")));
    }
    if !(-1.0 < delta && delta <= 1.0) {
        return Err(WqError::Domain(format!(
            "anisotropy must lie in (-1, 1], got {delta}"
        )));
    }
    if delta == 1.0 {
        return Ok(LuttingerParams {
            v: j * std::f64::consts::FRAC_PI_2,
            k: 0.5,
        });
    }
    let c = delta.acos();
    let v = j * std::f64::consts::PI * (1.0 - delta * delta).sqrt() / (2.0 * c);
    let k = std::f64::consts::FRAC_PI_2 / (std::f64::consts::PI - c);
    Ok(LuttingerParams { v, k })
}

/// d ln[v(delta) K(delta)] / d delta, in closed form.
fn dln_vk_ddelta(delta: f64) -> f64 {
    let c = delta.acos();
    let s = (1.0 - delta * delta).sqrt();
    -delta / (1.0 - delta * delta) + (1.0 / s) * (1.0 / c - 1.0 / (std::f64::consts::PI - c))
}

/// Interaction couplings backed out of the exact v(t), K(t):
/// returns (1 + g4, g2) with vK = J(1 + g4 - g2) and v/K = J(1 + g4 + g2).
pub fn coupling_profile(t: f64, p: &QuenchProtocol) -> Result<(f64, f64)> {
    if t < 0.0 || t > p.tau_q {
        return Err(WqError::Domain(format!(
            "time {t} outside the ramp [0, {}]",
            p.tau_q
        )));
    }
    let lp = luttinger_params(p.j, p.delta_at(t))?;
    let vk = lp.v * lp.k;
    let vok = lp.v / lp.k;
    let g2 = (vok - vk) / (2.0 * p.j);
    let g4 = (vok + vk) / (2.0 * p.j) - 1.0;
    Ok((1.0 + g4, g2))
}

/// Per-momentum mode data after the ramp.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ModeSolution {
    pub q: f64,
    /// Heisenberg coefficients of the bare operators.
    pub x1: C,
    pub x2: C,
    /// Coefficients in the post-quench quasiparticle basis.
    pub y1: C,
    pub y2: C,
    /// Excitation probability |y2|^2.
    pub p_q: f64,
    /// Q_q = 1 - 2 p_q.
    pub q_q: f64,
}

/// Mode-ODE solver controls (adaptive embedded Runge-Kutta pair).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ModeSolverOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl Default for ModeSolverOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_steps: 2_000_000,
        }
    }
}

impl ModeSolverOptions {
    fn ode(&self) -> OdeOptions {
        OdeOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_steps: self.max_steps,
        }
    }
}

fn bogoliubov_map(q: f64, x1: C, x2: C, p: &QuenchProtocol) -> Result<ModeSolution> {
    // gamma(t) = -(1/2) ln K(t); gamma(0) = 0 since K(0) = 1
    let kf = luttinger_params(p.j, p.delta_f)?.k;
    let g = -0.5 * kf.ln();
    let (ch, sh) = (g.cosh(), g.sinh());
    let y1 = x1 * ch - x2 * sh;
    let y2 = x1 * sh - x2 * ch;
    let p_q = y2.norm_sqr();
    Ok(ModeSolution {
        q,
        x1,
        x2,
        y1,
        y2,
        p_q,
        q_q: 1.0 - 2.0 * p_q,
    })
}

/// Solve the mode equation
///   f''_- - (d/dt ln[v K]) f'_- + (q v(t))^2 f_- = 0
/// from f_-(0) = 1, f'_-(0) = -i q v(0) K(0) across the ramp, and map the
/// final coefficients to the post-quench quasiparticle basis.
pub fn solve_mode(q: f64, p: &QuenchProtocol, opts: &ModeSolverOptions) -> Result<ModeSolution> {
    if !(q > 0.0) {
        return Err(WqError::Domain(format!("momentum must be positive, got {q}")));
    }
    if p.tau_q == 0.0 {
        // sudden limit: the state has no time to evolve
        return bogoliubov_map(q, C::new(1.0, 0.0), C::new(0.0, 0.0), p);
    }
    let rate = p.delta_f / p.tau_q;
    let rhs = |t: f64, y: &State| -> State {
        let delta = p.delta_f * (t / p.tau_q).min(1.0);
        let lp = luttinger_params(p.j, delta).expect("ramp stays inside the gapless domain");
        let damp = dln_vk_ddelta(delta) * rate;
        let w = q * lp.v;
        [y[1], damp * y[1] - C::new(w * w, 0.0) * y[0]]
    };
    let y0: State = [C::new(1.0, 0.0), C::new(0.0, -q * p.j)];
    let constraint_tol = 10.0 * opts.rel_tol;
    let check = |t: f64, y: &State| -> Result<()> {
        let lp = luttinger_params(p.j, p.delta_at(t.min(p.tau_q)))?;
        let f_minus = y[0];
        let f_plus = C::new(0.0, 1.0) * y[1] / (q * lp.v * lp.k);
        let x1 = 0.5 * (f_plus + f_minus);
        let x2 = 0.5 * (f_plus - f_minus);
        let c = x1.norm_sqr() - x2.norm_sqr() - 1.0;
        if c.abs() > constraint_tol {
            return Err(WqError::Solver(format!(
                "canonical constraint violated at t = {t}: |x1|^2 - |x2|^2 - 1 = {c:.3e}"
            )));
        }
        Ok(())
    };
    // the constraint guard below watches the *global* drift, while the step
    // controller only bounds local error; over many oscillation cycles the
    // accumulated drift grows with q tau_q, so tighten the controller
    // accordingly to keep the end-to-end error inside the guard
    let cycles = 1.0 + q * p.j * p.tau_q;
    let mut ode_opts = opts.ode();
    ode_opts.rel_tol = (ode_opts.rel_tol / cycles).max(1e-14);
    ode_opts.abs_tol = (ode_opts.abs_tol / cycles).max(1e-14);
    let y = integrate(rhs, 0.0, p.tau_q, y0, &ode_opts, check)?;
    let lp = luttinger_params(p.j, p.delta_f)?;
    let f_minus = y[0];
    let f_plus = C::new(0.0, 1.0) * y[1] / (q * lp.v * lp.k);
    let x1 = 0.5 * (f_plus + f_minus);
    let x2 = 0.5 * (f_plus - f_minus);
    bogoliubov_map(q, x1, x2, p)
}

/// Reduced mode equation with a frozen product vK = J and linearized
/// dispersion, f'' + (Jq)^2 (1 + t/tau_tilde) f = 0: the model solved
/// exactly by `airy_f_minus`. Returns (f_-, f_+) at t = tau_q.
pub fn solve_mode_linearized(
    q: f64,
    p: &QuenchProtocol,
    opts: &ModeSolverOptions,
) -> Result<(C, C)> {
    if !(q > 0.0) || p.tau_q <= 0.0 || p.delta_f == 0.0 {
        return Err(WqError::Domain(
            "linearized mode solve needs q > 0, tau_q > 0, delta_f != 0".into(),
        ));
    }
    let tau_tilde = p.tau_q * std::f64::consts::PI / (4.0 * p.delta_f);
    let w0 = p.j * q;
    let rhs = |t: f64, y: &State| -> State {
        let w2 = w0 * w0 * (1.0 + t / tau_tilde);
        [y[1], -C::new(w2, 0.0) * y[0]]
    };
    let y0: State = [C::new(1.0, 0.0), C::new(0.0, -w0)];
    let y = integrate(rhs, 0.0, p.tau_q, y0, &opts.ode(), |_, _| Ok(()))?;
    let f_minus = y[0];
    let f_plus = C::new(0.0, 1.0) * y[1] / w0;
    Ok((f_minus, f_plus))
}

/// Slow-quench asymptotic excitation probability p0 sinc^2(J q tau_q) with
/// p0 = (delta_f / pi)^2.
pub fn pq_asymptotic(q: f64, p: &QuenchProtocol) -> Result<f64> {
    if q < 0.0 {
        return Err(WqError::Domain(format!("momentum must be >= 0, got {q}")));
    }
    let p0 = (p.delta_f / std::f64::consts::PI).powi(2);
    let x = p.j * q * p.tau_q;
    let sinc = if x.abs() < 1e-8 { 1.0 } else { x.sin() / x };
    Ok(p0 * sinc * sinc)
}

/// Landau-Zener excitation probability for the generic two-band model with
/// r_q = J q^z and s_q = J q^a: exp(-pi s_q^2 tau_q / (2 r_q)).
pub fn pq_landau_zener(q: f64, z: f64, a: f64, p: &QuenchProtocol) -> Result<f64> {
    if !(q > 0.0) {
        return Err(WqError::Domain(format!("momentum must be positive, got {q}")));
    }
    if z < 1.0 || a < z {
        return Err(WqError::Domain(format!(
            "exponents must satisfy z >= 1 and a >= z, got z = {z}, a = {a}"
        )));
    }
    let r = p.j * q.powf(z);
    let s = p.j * q.powf(a);
    Ok((-std::f64::consts::PI * s * s * p.tau_q / (2.0 * r)).exp())
}

/// Closed-form mode solution after the ramp in terms of Airy functions:
/// returns (f_-, f_+) at t = tau_q for the linearized-dispersion model.
pub fn airy_f_minus(q: f64, p: &QuenchProtocol) -> Result<(C, C)> {
    if !(q > 0.0) || p.tau_q <= 0.0 || p.delta_f == 0.0 {
        return Err(WqError::Domain(
            "airy closed form needs q > 0, tau_q > 0, delta_f != 0".into(),
        ));
    }
    let tau_tilde = p.tau_q * std::f64::consts::PI / (4.0 * p.delta_f);
    let kappa = 1.0 + 4.0 * p.delta_f / std::f64::consts::PI;
    // alpha = (i J q tau_tilde)^{2/3}, principal branch
    let zarg = C::new(0.0, p.j * q * tau_tilde);
    let alpha = zarg.powf(2.0 / 3.0);
    let sa = alpha.sqrt();
    let a0 = airy(alpha)?;
    let a1 = airy(alpha * kappa)?;
    let cb = a0.bip + sa * a0.bi;
    let ca = a0.aip + sa * a0.ai;
    let pi = std::f64::consts::PI;
    let f_minus = pi * (cb * a1.ai - ca * a1.bi);
    let f_plus = -(pi / sa) * (cb * a1.aip - ca * a1.bip);
    Ok((f_minus, f_plus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::QuenchProtocol;

    fn gs(delta_f: f64, tau_q: f64) -> QuenchProtocol {
        QuenchProtocol::ground(1.0, delta_f, tau_q).unwrap()
    }

    #[test]
    fn params_free_point() {
        let lp = luttinger_params(1.0, 0.0).unwrap();
        assert!((lp.v - 1.0).abs() < 1e-15);
        assert!((lp.k - 1.0).abs() < 1e-15);
    }

    #[test]
    fn params_boundary() {
        let lp = luttinger_params(1.0, 1.0).unwrap();
        assert!((lp.k - 0.5).abs() < 1e-15);
        assert!((lp.v - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // the closed form approaches the same limit
        let near = luttinger_params(1.0, 1.0 - 1e-8).unwrap();
        assert!((near.k - 0.5).abs() < 1e-4);
        assert!((near.v - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
        assert!(luttinger_params(1.0, 1.5).is_err());
        assert!(luttinger_params(1.0, -1.0).is_err());
    }

    #[test]
    fn params_small_delta_expansion() {
        // v = J (1 + 2 delta/pi + O(delta^2))
        for &d in &[0.1, 0.05, 0.025] {
            let lp = luttinger_params(1.0, d).unwrap();
            let lin = 1.0 + 2.0 * d / std::f64::consts::PI;
            assert!((lp.v - lin).abs() < 1.2 * d * d, "delta = {d}");
        }
    }

    #[test]
    fn dln_vk_zero_at_free_point() {
        assert!(dln_vk_ddelta(0.0).abs() < 1e-14);
        // compare with a central difference away from zero
        let d = 0.3;
        let h = 1e-6;
        let f = |x: f64| {
            let lp = luttinger_params(1.0, x).unwrap();
            (lp.v * lp.k).ln()
        };
        let fd = (f(d + h) - f(d - h)) / (2.0 * h);
        assert!((dln_vk_ddelta(d) - fd).abs() < 1e-8);
    }

    #[test]
    fn coupling_profile_identities() {
        let p = gs(0.1, 4.0);
        let (w0, l0) = coupling_profile(0.0, &p).unwrap();
        assert!((w0 - 1.0).abs() < 1e-15 && l0.abs() < 1e-15);
        let (w, l) = coupling_profile(4.0, &p).unwrap();
        let lp = luttinger_params(1.0, 0.1).unwrap();
        assert!(((w - l) - lp.v * lp.k).abs() < 1e-14);
        assert!(((w + l) - lp.v / lp.k).abs() < 1e-14);
        // product identity vK * v/K = v^2
        assert!(((w - l) * (w + l) - lp.v * lp.v).abs() < 1e-14);
        assert!(coupling_profile(5.0, &p).is_err());
    }

    #[test]
    fn free_mode_is_pure_phase() {
        let p = gs(0.0, 3.0);
        let m = solve_mode(0.7, &p, &ModeSolverOptions::default()).unwrap();
        let expect = C::from_polar(1.0, -0.7 * 3.0);
        assert!((m.x1 - expect).norm() < 1e-9, "{:?}", m.x1);
        assert!(m.x2.norm() < 1e-9);
        assert!(m.p_q < 1e-18);
    }

    #[test]
    fn sudden_limit() {
        let p = gs(0.1, 0.0);
        let m = solve_mode(1.0, &p, &ModeSolverOptions::default()).unwrap();
        let k = luttinger_params(1.0, 0.1).unwrap().k;
        let g = -0.5 * k.ln();
        assert!((m.p_q - g.sinh().powi(2)).abs() < 1e-15);
        // small-delta limit approaches p0
        let p0 = (0.1f64 / std::f64::consts::PI).powi(2);
        assert!((m.p_q - p0).abs() < 0.1 * p0);
    }

    #[test]
    fn mode_canonical_and_bogoliubov_constraints() {
        let p = gs(0.1, 5.0);
        for &q in &[0.1, 0.5, 1.9] {
            let m = solve_mode(q, &p, &ModeSolverOptions::default()).unwrap();
            assert!((m.x1.norm_sqr() - m.x2.norm_sqr() - 1.0).abs() < 1e-8);
            assert!((m.y1.norm_sqr() - m.y2.norm_sqr() - 1.0).abs() < 1e-8);
            assert!(m.p_q >= 0.0);
        }
    }

    #[test]
    fn asymptotic_pq_matches_ode() {
        let p = gs(0.1, 10.0);
        let p0 = (0.1f64 / std::f64::consts::PI).powi(2);
        for &x in &[std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 4.71238898] {
            let q = x / 10.0;
            let m = solve_mode(q, &p, &ModeSolverOptions::default()).unwrap();
            let pa = pq_asymptotic(q, &p).unwrap();
            let err = (m.p_q - pa).abs();
            assert!(err < (0.05 * p0).max(1e-6), "x = {x}: {err}");
        }
    }

    #[test]
    fn landau_zener_limits() {
        let p0 = gs(0.1, 0.0);
        assert!((pq_landau_zener(0.5, 1.0, 1.0, &p0).unwrap() - 1.0).abs() < 1e-15);
        let p = gs(0.1, 2.0);
        assert!(pq_landau_zener(50.0, 1.0, 2.0, &p).unwrap() < 1e-200);
        assert!(pq_landau_zener(1.0, 0.5, 1.0, &p).is_err());
    }

    #[test]
    fn airy_matches_linearized_ode() {
        let opts = ModeSolverOptions::default();
        for &(df, tau, q) in &[
            (0.1, 5.0, 0.3),
            (0.1, 20.0, 1.1),
            (-0.2, 8.0, 0.6),
            (0.4, 2.0, 2.0),
        ] {
            let p = gs(df, tau);
            let (fm_a, fp_a) = airy_f_minus(q, &p).unwrap();
            let (fm_o, fp_o) = solve_mode_linearized(q, &p, &opts).unwrap();
            assert!(
                (fm_a - fm_o).norm() / fm_o.norm() < 1e-6,
                "f- mismatch at df={df} tau={tau} q={q}: {fm_a} vs {fm_o}"
            );
            assert!(
                (fp_a - fp_o).norm() / fp_o.norm() < 1e-6,
                "f+ mismatch at df={df} tau={tau} q={q}"
            );
        }
    }
}
