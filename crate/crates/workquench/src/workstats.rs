//! Characteristic function of work, cumulants by three routes, master
//! integrals with their scaling tags, and power-law fits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WqError};
use crate::luttinger::{luttinger_params, pq_asymptotic, solve_mode, ModeSolverOptions};
use crate::protocol::{Beta, QuenchProtocol};
use crate::quadrature::{integrate_complex, integrate_real};

type C = Complex64;

const PI: f64 = std::f64::consts::PI;

/// Where a CFW curve came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveSource {
    Analytic,
    Ed,
    Oracle,
}

/// Discrete chain modes q = 2 pi n / N versus the regulated continuum
/// integral. Always an explicit caller choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeSet {
    Discrete,
    Continuum,
}

/// Provider of per-mode excitation probabilities.
#[derive(Debug, Clone)]
pub enum ModeSource {
    /// p_q = p0 sinc^2(J q tau_q).
    Asymptotic,
    /// Full mode ODE.
    Ode(ModeSolverOptions),
}

impl ModeSource {
    pub fn p_q(&self, q: f64, p: &QuenchProtocol) -> Result<f64> {
        match self {
            ModeSource::Asymptotic => pq_asymptotic(q, p),
            ModeSource::Ode(opts) => Ok(solve_mode(q, p, opts)?.p_q),
        }
    }
}

/// Sampled characteristic function of work G(u).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CfwCurve {
    pub u_grid: Vec<f64>,
    pub values: Vec<C>,
    pub source: CurveSource,
    pub protocol: QuenchProtocol,
    pub n_sites: usize,
    pub alpha: Option<f64>,
}

/// How a cumulant set was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CumulantMethod {
    AnalyticIntegral,
    FiniteDifference,
    TtmMoments,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CumulantSet {
    /// kappa_1 .. kappa_{n_max}.
    pub kappas: Vec<f64>,
    pub method: CumulantMethod,
    pub alpha: Option<f64>,
    pub n_max: usize,
}

/// Adiabatic mean-work density: mu = (v_tau - J) / (pi alpha^2).
pub fn mu_cutoff(p: &QuenchProtocol, alpha: f64) -> Result<f64> {
    let v_tau = luttinger_params(p.j, p.delta_f)?.v;
    Ok((v_tau - p.j) / (PI * alpha * alpha))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) {
        return Err(WqError::Domain(format!("cutoff must be positive, got {alpha}")));
    }
    Ok(())
}

fn q_max(p: &QuenchProtocol, alpha: f64) -> f64 {
    let by_cutoff = 40.0 / alpha;
    if p.tau_q > 0.0 {
        by_cutoff.max(40.0 / (p.j * p.tau_q))
    } else {
        by_cutoff
    }
}

/// Per-mode log-factor of the ground-state CFW at one (q, u):
///   2 i u (eps_t - eps_0) - ln[1 - p_q (e^{2 i u eps_t} - 1)].
fn ground_log_term(q: f64, u: f64, p_q: f64, v_tau: f64, j: f64) -> C {
    let eps_t = v_tau * q;
    let eps_0 = j * q;
    let rot = C::from_polar(1.0, 2.0 * u * eps_t) - 1.0;
    let inner = C::new(1.0, 0.0) - p_q * rot;
    C::new(0.0, 2.0 * u * (eps_t - eps_0)) - inner.ln()
}

/// Ground-state CFW. The adiabatic phase is ln G_a = i u N mu; the
/// excitation part integrates ln[1 - p_q(e^{2iu eps} - 1)] with the
/// regulator e^{-alpha q} (or sums it over the discrete chain modes).
pub fn cfw_ground(
    u_grid: &[f64],
    p: &QuenchProtocol,
    n_sites: usize,
    alpha: f64,
    source: &ModeSource,
    set: ModeSet,
) -> Result<CfwCurve> {
    if p.beta.is_finite() {
        return Err(WqError::Domain(
            "cfw_ground needs a ground-state protocol (beta = infinity)".into(),
        ));
    }
    if n_sites == 0 || n_sites % 2 != 0 {
        return Err(WqError::Domain(format!("N must be even and positive, got {n_sites}")));
    }
    check_alpha(alpha)?;
    let v_tau = luttinger_params(p.j, p.delta_f)?.v;
    let mut values = Vec::with_capacity(u_grid.len());
    match set {
        ModeSet::Continuum => {
            let qm = q_max(p, alpha);
            for &u in u_grid {
                if u == 0.0 {
                    values.push(C::new(1.0, 0.0));
                    continue;
                }
                let mut src_err: Option<WqError> = None;
                let integral = integrate_complex(
                    |q| match source.p_q(q, p) {
                        Ok(pq) => ground_log_term(q, u, pq, v_tau, p.j) * (-alpha * q).exp(),
                        Err(e) => {
                            src_err.get_or_insert(e);
                            C::new(f64::NAN, 0.0)
                        }
                    },
                    0.0,
                    qm,
                    1e-13,
                    1e-11,
                );
                let integral = match integral {
                    Ok(v) => v,
                    Err(qe) => return Err(src_err.take().unwrap_or(qe)),
                };
                if let Some(e) = src_err.take() {
                    return Err(e);
                }
                if !integral.re.is_finite() || !integral.im.is_finite() {
                    return Err(WqError::Solver("mode source failed inside quadrature".into()));
                }
                let ln_g = (n_sites as f64) / (2.0 * PI) * integral;
                values.push(ln_g.exp());
            }
        }
        ModeSet::Discrete => {
            let modes: Vec<(f64, f64)> = (1..=n_sites / 2)
                .map(|k| {
                    let q = 2.0 * PI * (k as f64) / (n_sites as f64);
                    source.p_q(q, p).map(|pq| (q, pq))
                })
                .collect::<Result<_>>()?;
            for &u in u_grid {
                if u == 0.0 {
                    values.push(C::new(1.0, 0.0));
                    continue;
                }
                let mut ln_g = C::new(0.0, 0.0);
                for &(q, pq) in &modes {
                    ln_g += ground_log_term(q, u, pq, v_tau, p.j) * (-alpha * q).exp();
                }
                values.push(ln_g.exp());
            }
        }
    }
    Ok(CfwCurve {
        u_grid: u_grid.to_vec(),
        values,
        source: CurveSource::Analytic,
        protocol: *p,
        n_sites,
        alpha: Some(alpha),
    })
}

/// Per-mode log-factor of the thermal CFW at one (q, complex u), in the
/// overflow-safe normalization. Returns
///   2 i u (eps_t - eps_0) + ln[ g_q(u)/g_q(0) * e^{-i u (eps_t - eps_0)} ].
fn thermal_log_term(q: f64, u: C, p_q: f64, v_tau: f64, j: f64, beta: f64) -> Result<C> {
    let eps_t = v_tau * q;
    let eps_0 = j * q;
    let q_eff = 1.0 + 2.0 * p_q;
    let a = u * eps_t;
    let (ca, sa) = (a.cos(), a.sin());
    // w = e^{-beta eps0}; everything below is scaled by e^{beta eps0}/2
    let w = (-beta * eps_0).exp();
    let num = 2.0 * w - 1.0 - w * w;
    let e_p = (C::new(0.0, 1.0) * u * eps_0).exp();
    let den = 2.0 * w - e_p * (ca - C::new(0.0, q_eff) * sa)
        - w * w * (ca + C::new(0.0, q_eff) * sa) / e_p;
    if den.norm() < 1e-12 {
        return Err(WqError::Tolerance(format!(
            "thermal CFW factor near a pole at q = {q}, u = {u}"
        )));
    }
    let shift = C::new(0.0, 1.0) * u * (eps_t - eps_0);
    let s = num / den * (-shift).exp();
    Ok(2.0 * shift + s.ln())
}

/// Per-mode trace ratio Tr(e^{iuH^H} e^{-i(u-i beta)H_0}) / Tr(e^{-beta H_0})
/// for one coupled (q, -q) pair. This is the quantity the truncated-Fock
/// oracle computes by brute force.
pub fn gq_mode_factor(q: f64, u: C, p_q: f64, v_tau: f64, j: f64, beta: f64) -> Result<C> {
    let t = thermal_log_term(q, u, p_q, v_tau, j, beta)?;
    let shift = C::new(0.0, 2.0) * u * ((v_tau - j) * q);
    Ok((t - shift).exp())
}

/// Thermal CFW core for a single complex u.
pub fn cfw_thermal_at(
    u: C,
    p: &QuenchProtocol,
    n_sites: usize,
    alpha: f64,
    source: &ModeSource,
    set: ModeSet,
) -> Result<C> {
    let beta = match p.beta {
        Beta::Finite(b) => b,
        Beta::Infinite => {
            return Err(WqError::Domain(
                "cfw_thermal needs a finite inverse temperature".into(),
            ))
        }
    };
    check_alpha(alpha)?;
    let v_tau = luttinger_params(p.j, p.delta_f)?.v;
    if u == C::new(0.0, 0.0) {
        return Ok(C::new(1.0, 0.0));
    }
    let ln_g = match set {
        ModeSet::Continuum => {
            let qm = q_max(p, alpha);
            let mut src_err: Option<WqError> = None;
            let integral = integrate_complex(
                |q| {
                    let term = source
                        .p_q(q, p)
                        .and_then(|pq| thermal_log_term(q, u, pq, v_tau, p.j, beta));
                    match term {
                        Ok(t) => t * (-alpha * q).exp(),
                        Err(e) => {
                            src_err.get_or_insert(e);
                            C::new(f64::NAN, f64::NAN)
                        }
                    }
                },
                0.0,
                qm,
                1e-13,
                1e-11,
            );
            let integral = match integral {
                Ok(v) => v,
                Err(qe) => return Err(src_err.take().unwrap_or(qe)),
            };
            if let Some(e) = src_err.take() {
                return Err(e);
            }
            if !integral.re.is_finite() || !integral.im.is_finite() {
                return Err(WqError::Tolerance(
                    "thermal CFW integrand hit a pole".into(),
                ));
            }
            (n_sites as f64) / (2.0 * PI) * integral
        }
        ModeSet::Discrete => {
            let mut acc = C::new(0.0, 0.0);
            for k in 1..=n_sites / 2 {
                let q = 2.0 * PI * (k as f64) / (n_sites as f64);
                let pq = source.p_q(q, p)?;
                acc += thermal_log_term(q, u, pq, v_tau, p.j, beta)? * (-alpha * q).exp();
            }
            acc
        }
    };
    Ok(ln_g.exp())
}

/// Thermal CFW on a real u-grid.
pub fn cfw_thermal(
    u_grid: &[f64],
    p: &QuenchProtocol,
    n_sites: usize,
    alpha: f64,
    source: &ModeSource,
    set: ModeSet,
) -> Result<CfwCurve> {
    let values = u_grid
        .iter()
        .map(|&u| cfw_thermal_at(C::new(u, 0.0), p, n_sites, alpha, source, set))
        .collect::<Result<Vec<_>>>()?;
    Ok(CfwCurve {
        u_grid: u_grid.to_vec(),
        values,
        source: CurveSource::Analytic,
        protocol: *p,
        n_sites,
        alpha: Some(alpha),
    })
}

/// Ratio of partition functions Z_tau / Z_0 built from the same mode set,
/// including the c-number ground-energy shift (two units of eps_t - eps_0
/// per mode pair). Independent of p_q.
pub fn partition_ratio(
    p: &QuenchProtocol,
    n_sites: usize,
    alpha: f64,
    set: ModeSet,
) -> Result<f64> {
    let beta = match p.beta {
        Beta::Finite(b) => b,
        Beta::Infinite => {
            return Err(WqError::Domain("partition ratio needs finite beta".into()))
        }
    };
    check_alpha(alpha)?;
    let v_tau = luttinger_params(p.j, p.delta_f)?.v;
    let term = |q: f64| -> f64 {
        let eps_t = v_tau * q;
        let eps_0 = p.j * q;
        -2.0 * beta * (eps_t - eps_0)
            + 2.0 * ((-(-beta * eps_0).exp_m1()) / (-(-beta * eps_t).exp_m1())).ln()
    };
    let ln_ratio = match set {
        ModeSet::Continuum => {
            let qm = q_max(p, alpha);
            (n_sites as f64) / (2.0 * PI)
                * integrate_real(|q| term(q) * (-alpha * q).exp(), 0.0, qm, 1e-13, 1e-11)?
        }
        ModeSet::Discrete => (1..=n_sites / 2)
            .map(|k| {
                let q = 2.0 * PI * (k as f64) / (n_sites as f64);
                term(q) * (-alpha * q).exp()
            })
            .sum(),
    };
    Ok(ln_ratio.exp())
}

/// Scaling behaviour of a master integral in tau_q at fixed cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingTag {
    pub exponent: i32,
    pub log_correction: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MasterIntegral {
    pub value: f64,
    pub tag: ScalingTag,
    /// False when the value fell back to adaptive quadrature.
    pub closed_form: bool,
}

fn binom(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * ((n - i) as f64) / ((i + 1) as f64);
    }
    acc
}

/// Cosine decomposition sin^{2m}(x) = sum_j c_j cos(b_j x).
fn sin_power_coeffs(m: u32) -> Vec<(f64, f64)> {
    let mut out = vec![(binom(2 * m, m) / 4f64.powi(m as i32), 0.0)];
    let sign_m = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign_m / 2f64.powi(2 * m as i32 - 1);
    for k in 0..m {
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push((pre * sign_k * binom(2 * m, k), 2.0 * (m - k) as f64));
    }
    out
}

fn factorial(l: i32) -> f64 {
    (1..=l).map(|x| x as f64).product()
}

/// Closed-form values of int_0^inf theta^l sin^{2m}(theta) dtheta for
/// l < -1 (cutoff-independent; the integral converges at both ends).
fn theta_table(l: i32, m: u32) -> Option<f64> {
    match (l, m) {
        (-2, 1) => Some(PI / 2.0),
        (-2, 2) => Some(PI / 4.0),
        (-2, 3) => Some(3.0 * PI / 16.0),
        (-3, 2) => Some(std::f64::consts::LN_2),
        (-3, 3) => Some(3.0 / 16.0 * (256.0f64 / 27.0).ln()),
        (-4, 2) => Some(PI / 3.0),
        _ => None,
    }
}

/// Regulated moment integral of the asymptotic excitation probability:
///   I(n, m) = int_0^inf dq (eps_q^tau)^n [p0 sinc^2(J q tau_q)]^m e^{-alpha q}.
/// Case split on k = n - 2m: k > -1 and k = -1 have cutoff-dependent closed
/// forms; k < -1 is evaluated at zero cutoff where it converges.
pub fn master_integral(
    n: u32,
    m: u32,
    p: &QuenchProtocol,
    alpha: f64,
) -> Result<MasterIntegral> {
    if m < 1 {
        return Err(WqError::Domain("master integral needs m >= 1".into()));
    }
    check_alpha(alpha)?;
    if !(p.tau_q > 0.0) {
        return Err(WqError::Domain("master integral needs tau_q > 0".into()));
    }
    let v_tau = luttinger_params(p.j, p.delta_f)?.v;
    let p0 = (p.delta_f / PI).powi(2);
    let jt = p.j * p.tau_q;
    let a = alpha / jt;
    let l = n as i32 - 2 * m as i32;
    let prefactor = v_tau.powi(n as i32) * p0.powi(m as i32) / jt.powi(n as i32 + 1);
    let coeffs = sin_power_coeffs(m);
    if l >= 0 {
        let mut mm = 0.0;
        for &(c, b) in &coeffs {
            let den = C::new(a, -b).powi(l + 1);
            mm += c * (factorial(l) / den).re;
        }
        return Ok(MasterIntegral {
            value: prefactor * mm,
            tag: ScalingTag { exponent: -2 * m as i32, log_correction: false },
            closed_form: true,
        });
    }
    if l == -1 {
        let mut mm = 0.0;
        for &(c, b) in &coeffs {
            mm -= 0.5 * c * (a * a + b * b).ln();
        }
        return Ok(MasterIntegral {
            value: prefactor * mm,
            tag: ScalingTag { exponent: -2 * m as i32, log_correction: true },
            closed_form: true,
        });
    }
    let tag = ScalingTag { exponent: -(n as i32 + 1), log_correction: false };
    if let Some(mm) = theta_table(l, m) {
        return Ok(MasterIntegral {
            value: prefactor * mm,
            tag,
            closed_form: true,
        });
    }
    // no closed form shipped for this combination: regulated quadrature
    let f = |theta: f64| -> f64 {
        let s = if theta < 1e-10 { theta } else { theta.sin() };
        theta.powi(l) * s.powi(2 * m as i32) * (-a * theta).exp()
    };
    let upper = (40.0 / a).max(400.0);
    let mm = integrate_real(f, 0.0, upper, 1e-13, 1e-10)?;
    Ok(MasterIntegral { value: prefactor * mm, tag, closed_form: false })
}

/// Closed-form ground-state cumulants kappa_1..kappa_3 from the regulated
/// moment integrals (asymptotic p_q):
///   kappa_1 = N [mu + I(1,1)/pi]
///   kappa_2 = (2N/pi) [I(2,1) + I(2,2)]
///   kappa_3 = (4N/pi) [I(3,1) + 3 I(3,2) + 2 I(3,3)]
pub fn cumulant_integrals_ground(
    p: &QuenchProtocol,
    alpha: f64,
    n_sites: usize,
) -> Result<CumulantSet> {
    if p.beta.is_finite() {
        return Err(WqError::Domain("ground-state cumulants need beta = infinity".into()));
    }
    check_alpha(alpha)?;
    let nf = n_sites as f64;
    let mu = mu_cutoff(p, alpha)?;
    let (i11, i21, i22, i31, i32, i33) = if p.tau_q > 0.0 {
        (
            master_integral(1, 1, p, alpha)?.value,
            master_integral(2, 1, p, alpha)?.value,
            master_integral(2, 2, p, alpha)?.value,
            master_integral(3, 1, p, alpha)?.value,
            master_integral(3, 2, p, alpha)?.value,
            master_integral(3, 3, p, alpha)?.value,
        )
    } else {
        // sudden limit of the asymptotic form: p_q = p0, plain moments
        let v_tau = luttinger_params(p.j, p.delta_f)?.v;
        let p0 = (p.delta_f / PI).powi(2);
        let mom = |n: i32, m: i32| -> f64 {
            v_tau.powi(n) * p0.powi(m) * factorial(n) / alpha.powi(n + 1)
        };
        (mom(1, 1), mom(2, 1), mom(2, 2), mom(3, 1), mom(3, 2), mom(3, 3))
    };
    let kappas = vec![
        nf * (mu + i11 / PI),
        2.0 * nf / PI * (i21 + i22),
        4.0 * nf / PI * (i31 + 3.0 * i32 + 2.0 * i33),
    ];
    Ok(CumulantSet {
        kappas,
        method: CumulantMethod::AnalyticIntegral,
        alpha: Some(alpha),
        n_max: 3,
    })
}

fn coth_half(x: f64) -> f64 {
    // coth(x/2) = (1 + e^{-x}) / (1 - e^{-x})
    let w = (-x).exp();
    (1.0 + w) / (1.0 - w)
}

fn csch2_half(x: f64) -> f64 {
    // csch^2(x/2) = 4 e^{-x} / (1 - e^{-x})^2
    let w = (-x).exp();
    4.0 * w / ((1.0 - w) * (1.0 - w))
}

fn csch2_half_cosh(x: f64) -> f64 {
    // csch^2(x/2) cosh(x), overflow-safe
    let w = (-x).exp();
    2.0 * (1.0 + w * w) / ((1.0 - w) * (1.0 - w))
}

/// Thermal cumulants kappa_1, kappa_2 by regulated quadrature over the mode
/// continuum. With `adiabatic` the excitation probability is forced to zero,
/// which gives the plateau values used for renormalized scaling fits.
fn cumulants_thermal_impl(
    p: &QuenchProtocol,
    alpha: f64,
    n_sites: usize,
    source: &ModeSource,
    adiabatic: bool,
) -> Result<CumulantSet> {
    let beta = match p.beta {
        Beta::Finite(b) => b,
        Beta::Infinite => {
            return Err(WqError::Domain("thermal cumulants need finite beta".into()))
        }
    };
    check_alpha(alpha)?;
    let v_tau = luttinger_params(p.j, p.delta_f)?.v;
    let nf = n_sites as f64;
    let qm = q_max(p, alpha);
    let src_err = std::cell::RefCell::new(None::<WqError>);
    let pq = |q: f64| -> f64 {
        if adiabatic {
            return 0.0;
        }
        match source.p_q(q, p) {
            Ok(v) => v,
            Err(e) => {
                src_err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let lift = |r: Result<f64>| -> Result<f64> {
        if let Some(e) = src_err.borrow_mut().take() {
            return Err(e);
        }
        r
    };
    let k1 = lift(integrate_real(
        |q| {
            let (et, e0) = (v_tau * q, p.j * q);
            let pv = pq(q);
            let a = (1.0 + 2.0 * pv) * et - e0;
            ((a * coth_half(beta * e0)) + (et - e0)) * (-alpha * q).exp()
        },
        0.0,
        qm,
        1e-12,
        1e-10,
    ))?;
    let k2 = lift(integrate_real(
        |q| {
            let (et, e0) = (v_tau * q, p.j * q);
            let pv = pq(q);
            let a = (1.0 + 2.0 * pv) * et - e0;
            0.5 * (a * a * csch2_half(beta * e0)
                + 4.0 * pv * (1.0 + pv) * et * et * csch2_half_cosh(beta * e0))
                * (-alpha * q).exp()
        },
        0.0,
        qm,
        1e-12,
        1e-10,
    ))?;
    if !k1.is_finite() || !k2.is_finite() {
        return Err(WqError::Solver("mode source failed inside quadrature".into()));
    }
    Ok(CumulantSet {
        kappas: vec![nf / (2.0 * PI) * k1, nf / (2.0 * PI) * k2],
        method: CumulantMethod::AnalyticIntegral,
        alpha: Some(alpha),
        n_max: 2,
    })
}

/// Thermal cumulants kappa_1, kappa_2.
pub fn cumulants_thermal(
    p: &QuenchProtocol,
    alpha: f64,
    n_sites: usize,
    source: &ModeSource,
) -> Result<CumulantSet> {
    cumulants_thermal_impl(p, alpha, n_sites, source, false)
}

/// Plateau (adiabatic, p_q = 0) companion of `cumulants_thermal`.
pub fn cumulants_thermal_adiabatic(
    p: &QuenchProtocol,
    alpha: f64,
    n_sites: usize,
) -> Result<CumulantSet> {
    cumulants_thermal_impl(p, alpha, n_sites, &ModeSource::Asymptotic, true)
}

/// Symmetric 17-point u-grid for finite differencing ln G around u = 0:
/// spacing h/2 with h = 0.02 / (N J), so one Richardson halving is possible.
pub fn fd_u_grid(n_sites: usize, j: f64) -> Vec<f64> {
    let h = 0.02 / (n_sites as f64 * j);
    (-8..=8).map(|k| k as f64 * h / 2.0).collect()
}

// 9-point central finite-difference stencils (offsets -4..4), with the
// accuracy order used for Richardson combination.
const FD1: ([f64; 9], i32) = (
    [
        1.0 / 280.0,
        -4.0 / 105.0,
        1.0 / 5.0,
        -4.0 / 5.0,
        0.0,
        4.0 / 5.0,
        -1.0 / 5.0,
        4.0 / 105.0,
        -1.0 / 280.0,
    ],
    8,
);
const FD2: ([f64; 9], i32) = (
    [
        -1.0 / 560.0,
        8.0 / 315.0,
        -1.0 / 5.0,
        8.0 / 5.0,
        -205.0 / 72.0,
        8.0 / 5.0,
        -1.0 / 5.0,
        8.0 / 315.0,
        -1.0 / 560.0,
    ],
    8,
);
const FD3: ([f64; 9], i32) = (
    [
        -7.0 / 240.0,
        3.0 / 10.0,
        -169.0 / 120.0,
        61.0 / 30.0,
        0.0,
        -61.0 / 30.0,
        169.0 / 120.0,
        -3.0 / 10.0,
        7.0 / 240.0,
    ],
    6,
);
const FD4: ([f64; 9], i32) = (
    [
        7.0 / 240.0,
        -2.0 / 5.0,
        169.0 / 60.0,
        -122.0 / 15.0,
        91.0 / 8.0,
        -122.0 / 15.0,
        169.0 / 60.0,
        -2.0 / 5.0,
        7.0 / 240.0,
    ],
    6,
);

/// Cumulants from central finite differences of ln G at u = 0, with phase
/// unwrapping by continuity and one Richardson extrapolation step.
pub fn cumulants_from_cfw(curve: &CfwCurve, n_max: usize) -> Result<CumulantSet> {
    if n_max == 0 || n_max > 4 {
        return Err(WqError::Domain("supported cumulant orders are 1..=4".into()));
    }
    let m = curve.u_grid.len();
    let center = curve
        .u_grid
        .iter()
        .position(|&u| u == 0.0)
        .ok_or_else(|| WqError::Domain("u-grid must contain u = 0".into()))?;
    if center < 8 || center + 8 >= m {
        return Err(WqError::Domain(
            "u-grid needs at least 8 symmetric samples on each side of 0".into(),
        ));
    }
    let s = curve.u_grid[center + 1] - curve.u_grid[center];
    for k in 0..m - 1 {
        let d = curve.u_grid[k + 1] - curve.u_grid[k];
        if (d - s).abs() > 1e-9 * s.abs() {
            return Err(WqError::Domain("u-grid must be uniform".into()));
        }
    }
    // unwrap the phase outward from u = 0
    let mut ln_g = vec![C::new(0.0, 0.0); m];
    for dir in [-1i64, 1i64] {
        let mut prev_phase = 0.0f64;
        let mut k = center as i64;
        loop {
            k += dir;
            if k < 0 || k as usize >= m {
                break;
            }
            let g = curve.values[k as usize];
            let mut ph = g.arg();
            let mut dp = ph - prev_phase;
            while dp > PI {
                ph -= 2.0 * PI;
                dp = ph - prev_phase;
            }
            while dp < -PI {
                ph += 2.0 * PI;
                dp = ph - prev_phase;
            }
            if dp.abs() > PI {
                return Err(WqError::Tolerance(format!(
                    "phase unwrap ambiguity at u = {}: grid too coarse",
                    curve.u_grid[k as usize]
                )));
            }
            ln_g[k as usize] = C::new(g.norm().ln(), ph);
            prev_phase = ph;
        }
    }
    let max_ln = ln_g.iter().map(|x| x.norm()).fold(0.0f64, f64::max);
    let stencils = [FD1, FD2, FD3, FD4];
    let mut kappas = Vec::with_capacity(n_max);
    for (order, (coefs, acc)) in stencils.iter().enumerate().take(n_max) {
        let n = order + 1;
        // stride 2 -> spacing h = 2s; stride 1 -> spacing h/2 = s
        let deriv_at = |stride: i64| -> C {
            let h = s * stride as f64;
            let mut acc_v = C::new(0.0, 0.0);
            for (i, &c) in coefs.iter().enumerate() {
                let off = (i as i64 - 4) * stride;
                acc_v += c * ln_g[(center as i64 + off) as usize];
            }
            acc_v / h.powi(n as i32)
        };
        let d_h = deriv_at(2);
        let d_half = deriv_at(1);
        let w = 2f64.powi(*acc);
        let d = (w * d_half - d_h) / (w - 1.0);
        let kappa = d / C::new(0.0, 1.0).powu(n as u32);
        let floor = 100.0 * f64::EPSILON * max_ln / s.powi(n as i32);
        if kappa.im.abs() > 1e-8 * kappa.re.abs() + floor {
            return Err(WqError::Tolerance(format!(
                "kappa_{n} has imaginary residue {:.3e} vs real {:.3e}",
                kappa.im, kappa.re
            )));
        }
        kappas.push(kappa.re);
    }
    Ok(CumulantSet {
        kappas,
        method: CumulantMethod::FiniteDifference,
        alpha: curve.alpha,
        n_max,
    })
}

/// Power-law fit result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub log_correction: bool,
    pub r_squared: f64,
    pub window: (f64, f64),
}

/// Least-squares power-law fit of (tau, value) points on log axes. With
/// `detect_log`, the model ln y = c + e ln tau + ln ln tau competes on
/// residual sum of squares.
pub fn fit_scaling(points: &[(f64, f64)], detect_log: bool) -> Result<ScalingFit> {
    if points.len() < 6 {
        return Err(WqError::Domain("need at least 6 points for a scaling fit".into()));
    }
    let mut tmin = f64::INFINITY;
    let mut tmax = 0.0f64;
    for &(t, v) in points {
        if !(t > 0.0) || !(v > 0.0) {
            return Err(WqError::Domain(format!(
                "scaling fit needs positive data, got ({t}, {v})"
            )));
        }
        tmin = tmin.min(t);
        tmax = tmax.max(t);
    }
    if tmax / tmin < 9.99 {
        return Err(WqError::Domain("scaling fit window must span at least a decade".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let ols = |targets: &[f64]| -> (f64, f64, f64) {
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = targets.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(targets).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let icept = (sy - slope * sx) / n;
        let rss: f64 = xs
            .iter()
            .zip(targets)
            .map(|(x, y)| (y - slope * x - icept).powi(2))
            .sum();
        (slope, icept, rss)
    };
    let (slope0, _i0, rss0) = ols(&ys);
    let tss: f64 = {
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        ys.iter().map(|y| (y - mean).powi(2)).sum()
    };
    let mut exponent = slope0;
    let mut rss_best = rss0;
    let mut log_flag = false;
    if detect_log && tmin > 1.0 {
        let ys_log: Vec<f64> = ys
            .iter()
            .zip(&xs)
            .map(|(y, x)| y - x.ln())
            .collect();
        let (slope1, _i1, rss1) = ols(&ys_log);
        if rss1 < rss_best {
            exponent = slope1;
            rss_best = rss1;
            log_flag = true;
        }
    }
    let r_squared = if tss > 0.0 { (1.0 - rss_best / tss).clamp(0.0, 1.0) } else { 1.0 };
    Ok(ScalingFit {
        exponent,
        log_correction: log_flag,
        r_squared,
        window: (tmin, tmax),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::QuenchProtocol;

    fn gs(delta_f: f64, tau_q: f64) -> QuenchProtocol {
        QuenchProtocol::ground(1.0, delta_f, tau_q).unwrap()
    }

    #[test]
    fn sin_power_decomposition() {
        for m in 1..=3u32 {
            let coeffs = sin_power_coeffs(m);
            for &x in &[0.3f64, 1.1, 2.7] {
                let direct = x.sin().powi(2 * m as i32);
                let series: f64 = coeffs.iter().map(|&(c, b)| c * (b * x).cos()).sum();
                assert!((direct - series).abs() < 1e-14, "m = {m}, x = {x}");
            }
            let sum: f64 = coeffs.iter().map(|c| c.0).sum();
            assert!(sum.abs() < 1e-14);
        }
    }

    #[test]
    fn master_integral_vs_quadrature() {
        let p = gs(0.1, 7.0);
        let alpha = 2.0;
        for &(n, m) in &[(1u32, 1u32), (2, 1), (3, 1), (3, 2)] {
            let mi = master_integral(n, m, &p, alpha).unwrap();
            assert!(mi.closed_form);
            let v_tau = luttinger_params(1.0, 0.1).unwrap().v;
            let p0 = (0.1f64 / PI).powi(2);
            let quad = integrate_real(
                |q| {
                    let s = if q < 1e-12 { 1.0 } else { (7.0 * q).sin() / (7.0 * q) };
                    (v_tau * q).powi(n as i32) * (p0 * s * s).powi(m as i32) * (-alpha * q).exp()
                },
                0.0,
                400.0,
                1e-14,
                1e-11,
            )
            .unwrap();
            assert!(
                (mi.value - quad).abs() <= 1e-6 * quad.abs(),
                "({n},{m}): {} vs {quad}",
                mi.value
            );
        }
    }

    #[test]
    fn master_integral_zero_cutoff_cases() {
        let p = gs(0.1, 7.0);
        // (0,1): k = -2, value p0 * pi/(2 J tau)
        let mi = master_integral(0, 1, &p, 3.51).unwrap();
        let p0 = (0.1f64 / PI).powi(2);
        assert!((mi.value - p0 * PI / 2.0 / 7.0).abs() < 1e-15);
        assert_eq!(mi.tag.exponent, -1);
        // (2,2): k = -2 with the pi/4 constant
        let mi = master_integral(2, 2, &p, 3.51).unwrap();
        let v_tau = luttinger_params(1.0, 0.1).unwrap().v;
        let expect = v_tau * v_tau * p0 * p0 / 7.0f64.powi(3) * PI / 4.0;
        assert!((mi.value - expect).abs() < 1e-18);
    }

    #[test]
    fn ground_cfw_basics() {
        let p = gs(0.1, 5.0);
        let grid: Vec<f64> = (-10..=10).map(|k| k as f64 * 0.1).collect();
        let c = cfw_ground(&grid, &p, 8, 3.51, &ModeSource::Asymptotic, ModeSet::Continuum)
            .unwrap();
        let center = 10;
        assert_eq!(c.values[center], C::new(1.0, 0.0));
        for k in 0..grid.len() {
            let g = c.values[k];
            assert!(g.norm() <= 1.0 + 1e-10, "|G| > 1 at u = {}", grid[k]);
            let mirror = c.values[grid.len() - 1 - k];
            assert!((g - mirror.conj()).norm() < 1e-10);
        }
        // no quench, no response
        let p0 = gs(0.0, 5.0);
        let c0 = cfw_ground(&grid, &p0, 8, 3.51, &ModeSource::Asymptotic, ModeSet::Continuum)
            .unwrap();
        for v in &c0.values {
            assert!((v - C::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn thermal_cfw_limits() {
        // low temperature approaches the ground-state curve
        let pg = gs(0.1, 5.0);
        let pt = QuenchProtocol::new(1.0, 0.1, 5.0, Beta::Finite(50.0)).unwrap();
        let grid: Vec<f64> = (-8..=8).map(|k| k as f64 * 0.25).collect();
        let cg = cfw_ground(&grid, &pg, 8, 3.51, &ModeSource::Asymptotic, ModeSet::Continuum)
            .unwrap();
        let ct = cfw_thermal(&grid, &pt, 8, 3.51, &ModeSource::Asymptotic, ModeSet::Continuum)
            .unwrap();
        for (a, b) in cg.values.iter().zip(&ct.values) {
            assert!((a - b).norm() / b.norm() < 1e-3, "{a} vs {b}");
        }
    }

    #[test]
    fn jarzynski_identity() {
        let pt = QuenchProtocol::new(1.0, 0.1, 5.0, Beta::Finite(2.0)).unwrap();
        for set in [ModeSet::Continuum, ModeSet::Discrete] {
            let z = partition_ratio(&pt, 8, 3.51, set).unwrap();
            let g = cfw_thermal_at(
                C::new(0.0, 2.0),
                &pt,
                8,
                3.51,
                &ModeSource::Asymptotic,
                set,
            )
            .unwrap();
            assert!(
                (g - C::new(z, 0.0)).norm() <= 1e-8 * z.abs(),
                "{set:?}: {g} vs {z}"
            );
        }
    }

    #[test]
    fn fd_cumulants_on_synthetic_curves() {
        let p = gs(0.1, 5.0);
        let grid = fd_u_grid(8, 1.0);
        // pure phase
        let c = CfwCurve {
            u_grid: grid.clone(),
            values: grid.iter().map(|&u| C::from_polar(1.0, 3.7 * u)).collect(),
            source: CurveSource::Analytic,
            protocol: p,
            n_sites: 8,
            alpha: None,
        };
        let k = cumulants_from_cfw(&c, 3).unwrap();
        assert!((k.kappas[0] - 3.7).abs() < 1e-9);
        assert!(k.kappas[1].abs() < 1e-6);
        // gaussian
        let c = CfwCurve {
            u_grid: grid.clone(),
            values: grid
                .iter()
                .map(|&u| (C::new(0.0, 2.0 * u) - 1.5 * u * u / 2.0).exp())
                .collect(),
            source: CurveSource::Analytic,
            protocol: p,
            n_sites: 8,
            alpha: None,
        };
        let k = cumulants_from_cfw(&c, 2).unwrap();
        assert!((k.kappas[0] - 2.0).abs() < 1e-9);
        assert!((k.kappas[1] - 1.5).abs() < 1e-6);
    }

    #[test]
    fn fd_vs_closed_form() {
        let p = gs(0.1, 10.0);
        let alpha = 3.51;
        let curve = cfw_ground(
            &fd_u_grid(12, 1.0),
            &p,
            12,
            alpha,
            &ModeSource::Asymptotic,
            ModeSet::Continuum,
        )
        .unwrap();
        let fd = cumulants_from_cfw(&curve, 3).unwrap();
        let cf = cumulant_integrals_ground(&p, alpha, 12).unwrap();
        for i in 0..2 {
            assert!(
                (fd.kappas[i] - cf.kappas[i]).abs() <= 0.01 * cf.kappas[i].abs(),
                "kappa_{}: {} vs {}",
                i + 1,
                fd.kappas[i],
                cf.kappas[i]
            );
        }
    }

    #[test]
    fn fit_scaling_synthetic() {
        let pts: Vec<(f64, f64)> =
            (0..10).map(|k| {
                let t = 10.0 * 1.6f64.powi(k);
                (t, 7.0 * t.powf(-2.0))
            }).collect();
        let fit = fit_scaling(&pts, true).unwrap();
        assert!((fit.exponent + 2.0).abs() < 1e-6);
        assert!(!fit.log_correction);
        let pts: Vec<(f64, f64)> = (0..10)
            .map(|k| {
                let t = 10.0 * 1.6f64.powi(k);
                (t, 7.0 * t.powf(-2.0) * t.ln())
            })
            .collect();
        let fit = fit_scaling(&pts, true).unwrap();
        assert!(fit.log_correction);
        assert!((fit.exponent + 2.0).abs() < 0.05);
        let pts: Vec<(f64, f64)> = (0..8)
            .map(|k| {
                let t = 0.001 * 3.0f64.powi(k);
                (t, 3.0 * t * t)
            })
            .collect();
        let fit = fit_scaling(&pts, false).unwrap();
        assert!((fit.exponent - 2.0).abs() < 1e-9);
    }
}
