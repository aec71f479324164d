//! Brute-force validation in a truncated two-mode bosonic Fock space:
//! the per-mode thermal CFW factor evaluated as an explicit trace, and the
//! Gaussian trace formula checked against a direct truncated-space product.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Result, WqError};
use crate::linalg::{det, eigh_c, expm};
use crate::luttinger::{luttinger_params, ModeSolution};
use crate::protocol::{Beta, QuenchProtocol};

type C = Complex64;

/// Two bosonic modes, each truncated at occupation `n_max`.
#[derive(Debug, Clone, Copy)]
pub struct TwoModeFockSpace {
    pub n_max: usize,
}

impl TwoModeFockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(WqError::Domain("n_max must be at least 1".into()));
        }
        Ok(Self { n_max })
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 1)
    }

    fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * (self.n_max + 1) + n2
    }

    /// Annihilation operator of mode 0 or 1 as a dense matrix.
    pub fn annihilator(&self, mode: usize) -> Array2<C> {
        let d = self.dim();
        let mut a = Array2::<C>::zeros((d, d));
        for n1 in 0..=self.n_max {
            for n2 in 0..=self.n_max {
                let (n, from) = match mode {
                    0 => (n1, self.index(n1, n2)),
                    _ => (n2, self.index(n1, n2)),
                };
                if n > 0 {
                    let to = match mode {
                        0 => self.index(n1 - 1, n2),
                        _ => self.index(n1, n2 - 1),
                    };
                    a[[to, from]] = C::new((n as f64).sqrt(), 0.0);
                }
            }
        }
        a
    }

    /// Total occupation n1 + n2 per basis state.
    pub fn total_occupation(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for n1 in 0..=self.n_max {
            for n2 in 0..=self.n_max {
                out[self.index(n1, n2)] = (n1 + n2) as f64;
            }
        }
        out
    }
}

fn check_symplectic(y1: C, y2: C) -> Result<()> {
    let c = y1.norm_sqr() - y2.norm_sqr();
    if (c - 1.0).abs() > 1e-8 {
        return Err(WqError::Domain(format!(
            "Bogoliubov coefficients violate |y1|^2 - |y2|^2 = 1 by {:.3e}",
            c - 1.0
        )));
    }
    Ok(())
}

struct OracleBlock {
    /// 1 for the n1 = n2 block, 2 for each |n1 - n2| = k > 0 pair.
    mult: f64,
    /// H_0 eigenvalues per block basis state (eps0 * (n1 + n2)).
    h0: Vec<f64>,
    /// Eigenvalues of the Heisenberg-picture final Hamiltonian.
    energies: Array1<f64>,
    /// Overlap weights |<number state | eigenvector>|^2.
    weights: Array2<f64>,
}

/// Cached spectral data for repeated trace-ratio evaluations at one
/// (eps0, eps_tau, y1, y2, beta) point. The pair coupling d1^dag d2^dag
/// conserves n1 - n2, so the space splits into tridiagonal blocks.
pub struct GqOracle {
    blocks: Vec<OracleBlock>,
    z0: f64,
    /// Estimated relative truncation error (thermal and squeezing tails).
    pub tail: f64,
}

impl GqOracle {
    pub fn new(eps0: f64, eps_tau: f64, y1: C, y2: C, beta: f64, n_max: usize) -> Result<Self> {
        if !(beta > 0.0) || !(eps0 > 0.0) || !(eps_tau > 0.0) {
            return Err(WqError::Domain(
                "oracle needs positive beta and mode energies".into(),
            ));
        }
        if n_max < 8 {
            return Err(WqError::Domain(format!("n_max must be >= 8, got {n_max}")));
        }
        check_symplectic(y1, y2)?;
        let p = y2.norm_sqr();
        let tail_thermal = (-beta * eps0 * (n_max as f64 + 1.0)).exp()
            / (1.0 - (-beta * eps0).exp());
        let tail_squeeze = (p / (1.0 + p)).powi(n_max as i32 + 1);
        let tail = tail_thermal + tail_squeeze;
        if tail > 1e-4 {
            return Err(WqError::Tolerance(format!(
                "truncation tail estimate {tail:.3e} too large; increase n_max"
            )));
        }
        // H^H = eps_tau [ (1+2p)(n1+n2) + 2p
        //                 + 2 (y1 y2)^* d1^dag d2^dag + 2 y1 y2 d1 d2 ]
        let couple = 2.0 * eps_tau * (y1 * y2).conj();
        let mut blocks = Vec::with_capacity(n_max + 1);
        let mut z0 = 0.0;
        for k in 0..=n_max {
            let size = n_max + 1 - k;
            let mut h = Array2::<C>::zeros((size, size));
            let mut h0 = Vec::with_capacity(size);
            for m in 0..size {
                let ntot = (2 * m + k) as f64;
                h[[m, m]] = C::new(eps_tau * ((1.0 + 2.0 * p) * ntot + 2.0 * p), 0.0);
                h0.push(eps0 * ntot);
                if m + 1 < size {
                    let amp = couple * ((m + k + 1) as f64 * (m + 1) as f64).sqrt();
                    h[[m + 1, m]] = amp;
                    h[[m, m + 1]] = amp.conj();
                }
            }
            let mult = if k == 0 { 1.0 } else { 2.0 };
            z0 += mult * h0.iter().map(|&e| (-beta * e).exp()).sum::<f64>();
            let (energies, vectors) = eigh_c(&h)?;
            let weights = vectors.mapv(|x| x.norm_sqr());
            blocks.push(OracleBlock {
                mult,
                h0,
                energies,
                weights,
            });
        }
        Ok(Self { blocks, z0, tail })
    }

    /// Tr(e^{iuH^H} e^{-i(u - i beta) H_0}) / Tr(e^{-beta H_0}) at complex u.
    /// The beta used at construction is baked into `z0`, so pass it here too.
    pub fn evaluate(&self, u: C, beta: f64) -> C {
        let i = C::new(0.0, 1.0);
        let mut total = C::new(0.0, 0.0);
        for block in &self.blocks {
            let phases: Vec<C> = block.energies.iter().map(|&e| (i * u * e).exp()).collect();
            let mut acc = C::new(0.0, 0.0);
            for (m, row) in block.weights.rows().into_iter().enumerate() {
                let mut amp = C::new(0.0, 0.0);
                for (w, ph) in row.iter().zip(&phases) {
                    amp += *w * *ph;
                }
                acc += amp * (-(i * u + beta) * block.h0[m]).exp();
            }
            total += block.mult * acc;
        }
        total / self.z0
    }
}

/// Per-mode CFW trace ratio by brute force on the truncated space.
pub fn gq_oracle(
    q: f64,
    p: &QuenchProtocol,
    mode: &ModeSolution,
    u: f64,
    n_max: usize,
) -> Result<C> {
    let beta = match p.beta {
        Beta::Finite(b) => b,
        Beta::Infinite => {
            return Err(WqError::Domain("gq_oracle needs a finite beta".into()))
        }
    };
    let eps0 = p.j * q;
    let eps_tau = luttinger_params(p.j, p.delta_f)?.v * q;
    let oracle = GqOracle::new(eps0, eps_tau, mode.y1, mode.y2, beta, n_max)?;
    Ok(oracle.evaluate(C::new(u, 0.0), beta))
}

/// Symmetric quadratic-form matrix S with
///   1/2 D^T S D = z/2 * sum_i (dH_i^dag dH_i + dH_i dH_i^dag),
/// D = (d1, d2, d1^dag, d2^dag) and dH_i built from (y1, y2).
pub fn quadratic_form_matrix(y1: C, y2: C, z: C) -> Array2<C> {
    let a = C::new(y1.norm_sqr() + y2.norm_sqr(), 0.0);
    let b = 2.0 * y1 * y2;
    let bc = 2.0 * (y1 * y2).conj();
    let zero = C::new(0.0, 0.0);
    let mut s = Array2::from_shape_vec(
        (4, 4),
        vec![
            zero, b, a, zero, //
            b, zero, zero, a, //
            a, zero, zero, bc, //
            zero, a, bc, zero,
        ],
    )
    .unwrap();
    s.mapv_inplace(|x| z * x);
    s
}

/// Symplectic block matrix tau_B = [[0, I], [-I, 0]] for n modes.
fn tau_b(n_modes: usize) -> Array2<C> {
    let mut t = Array2::<C>::zeros((2 * n_modes, 2 * n_modes));
    for i in 0..n_modes {
        t[[i, n_modes + i]] = C::new(1.0, 0.0);
        t[[n_modes + i, i]] = C::new(-1.0, 0.0);
    }
    t
}

fn branch_determinant(s_list: &[Array2<C>], n_modes: usize, lambda: f64) -> Result<C> {
    let d = 2 * n_modes;
    let mut m = Array2::<C>::eye(d);
    let tb = tau_b(n_modes);
    for s in s_list {
        let step = expm(&tb.dot(&s.mapv(|x| lambda * x)))?;
        m = m.dot(&step);
    }
    let sign = if n_modes % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * det(&(&m - &Array2::<C>::eye(d)))?)
}

/// Square root of 1/D(1) with the branch fixed by following arg D(lambda)
/// continuously along the homotopy S -> lambda S from small lambda.
fn tracked_inverse_sqrt(s_list: &[Array2<C>], n_modes: usize) -> Result<C> {
    let mut lam = 1e-3;
    let mut dval = branch_determinant(s_list, n_modes, lam)?;
    let mut theta = dval.arg();
    while lam < 1.0 {
        let mut step = (1.0 - lam).min(0.02_f64.max(lam * 0.25));
        loop {
            let next = branch_determinant(s_list, n_modes, lam + step)?;
            let dtheta = (next / dval).arg();
            if dtheta.abs() <= std::f64::consts::FRAC_PI_2 || step < 1e-9 {
                theta += dtheta;
                dval = next;
                lam += step;
                break;
            }
            step *= 0.5;
        }
    }
    let r = dval.norm();
    if !(r > 0.0) {
        return Err(WqError::Solver(
            "trace-formula determinant vanished along the homotopy".into(),
        ));
    }
    Ok(C::from_polar(r.powf(-0.5), -0.5 * theta))
}

fn ladder_basis(n_modes: usize, n_max: usize) -> Result<Vec<Array2<C>>> {
    let dag = |m: &Array2<C>| m.t().mapv(|x: C| x.conj());
    match n_modes {
        1 => {
            let dim = n_max + 1;
            let mut a = Array2::<C>::zeros((dim, dim));
            for n in 1..dim {
                a[[n - 1, n]] = C::new((n as f64).sqrt(), 0.0);
            }
            let ad = dag(&a);
            Ok(vec![a, ad])
        }
        2 => {
            let space = TwoModeFockSpace::new(n_max)?;
            let d1 = space.annihilator(0);
            let d2 = space.annihilator(1);
            let d1d = dag(&d1);
            let d2d = dag(&d2);
            Ok(vec![d1, d2, d1d, d2d])
        }
        _ => Err(WqError::Domain(format!(
            "trace formula supports 1 or 2 modes, got {n_modes}"
        ))),
    }
}

fn truncated_trace(s_list: &[Array2<C>], n_modes: usize, n_max: usize) -> Result<C> {
    let ops = ladder_basis(n_modes, n_max)?;
    let dim = ops[0].nrows();
    let mut product = Array2::<C>::eye(dim);
    for s in s_list {
        if s.nrows() != 2 * n_modes || s.ncols() != 2 * n_modes {
            return Err(WqError::Domain(format!(
                "quadratic form must be {0}x{0}",
                2 * n_modes
            )));
        }
        let mut x = Array2::<C>::zeros((dim, dim));
        for a in 0..2 * n_modes {
            for b in 0..2 * n_modes {
                let coeff = 0.5 * 0.5 * (s[[a, b]] + s[[b, a]]);
                if coeff.norm() > 0.0 {
                    x = x + coeff * ops[a].dot(&ops[b]);
                }
            }
        }
        product = product.dot(&expm(&x)?);
    }
    Ok(product.diag().sum())
}

/// Direct truncated-space trace of Pi exp(1/2 D^T S_i D) against the
/// closed-form [(-1)^n det(Pi exp(tau_B S_i) - I)]^{-1/2}.
pub fn trace_formula_check(
    s_list: &[Array2<C>],
    n_modes: usize,
    n_max: usize,
) -> Result<(C, C)> {
    if s_list.is_empty() {
        return Err(WqError::Domain("need at least one quadratic form".into()));
    }
    let rhs = tracked_inverse_sqrt(s_list, n_modes)?;
    let lhs = truncated_trace(s_list, n_modes, n_max)?;
    // guard against gross truncation failure with a coarser run
    let probe = truncated_trace(s_list, n_modes, (n_max * 3) / 4)?;
    let scale = lhs.norm().max(1e-300);
    if (lhs - probe).norm() / scale > 1e-3 {
        return Err(WqError::Tolerance(format!(
            "trace not converged at n_max = {n_max}: coarse probe differs by {:.3e}",
            (lhs - probe).norm() / scale
        )));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workstats::gq_mode_factor;

    fn sudden_mode(q: f64, gamma: f64) -> ModeSolution {
        let y1 = C::new(gamma.cosh(), 0.0);
        let y2 = C::new(-gamma.sinh(), 0.0);
        ModeSolution {
            q,
            x1: C::new(1.0, 0.0),
            x2: C::new(0.0, 0.0),
            y1,
            y2,
            p_q: y2.norm_sqr(),
            q_q: 1.0 - 2.0 * y2.norm_sqr(),
        }
    }

    #[test]
    fn commutator_on_bulk() {
        let space = TwoModeFockSpace::new(6).unwrap();
        let a = space.annihilator(0);
        let ad = a.t().mapv(|x: C| x.conj());
        let comm = a.dot(&ad) - ad.dot(&a);
        for n1 in 0..6 {
            for n2 in 0..=6 {
                let k = n1 * 7 + n2;
                assert!((comm[[k, k]] - C::new(1.0, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn oracle_identity_at_zero() {
        let o = GqOracle::new(1.0, 1.2, C::new(1.0, 0.0), C::new(0.0, 0.0), 2.0, 10).unwrap();
        let v = o.evaluate(C::new(0.0, 0.0), 2.0);
        assert!((v - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn oracle_uncoupled_matches_formula() {
        // y2 = 0: the trace ratio carries no occupation mixing
        let eps0 = 1.0;
        let eps_t = 1.3;
        let beta = 2.5;
        let o = GqOracle::new(eps0, eps_t, C::new(1.0, 0.0), C::new(0.0, 0.0), beta, 24).unwrap();
        for &u in &[0.4, 1.1, -0.7] {
            let got = o.evaluate(C::new(u, 0.0), beta);
            let w = (-beta * eps0).exp();
            let i = C::new(0.0, 1.0);
            let per_mode = (1.0 - w) / (C::new(1.0, 0.0) - w * (i * u * (eps_t - eps0)).exp());
            let expect = per_mode * per_mode;
            assert!((got - expect).norm() < 1e-10, "u = {u}");
        }
    }

    #[test]
    fn oracle_matches_mode_factor() {
        let j = 1.0;
        let q = 0.8;
        let beta = 2.0 / (j * q);
        let p = QuenchProtocol::new(j, 0.1, 3.0 / (j * q), Beta::Finite(beta)).unwrap();
        let mode = crate::luttinger::solve_mode(q, &p, &Default::default()).unwrap();
        let v_tau = luttinger_params(j, p.delta_f).unwrap().v;
        let mut prev_err = f64::INFINITY;
        for &n_max in &[8usize, 16, 32] {
            let got = gq_oracle(q, &p, &mode, 0.9, n_max).unwrap();
            let expect = gq_mode_factor(q, C::new(0.9, 0.0), mode.p_q, v_tau, j, beta).unwrap();
            let err = (got - expect).norm() / expect.norm();
            assert!(err < prev_err + 1e-12, "no convergence at n_max = {n_max}");
            prev_err = err;
        }
        assert!(prev_err < 1e-6, "final deviation {prev_err:.3e}");
    }

    #[test]
    fn trace_formula_single_thermal() {
        let be = 1.7;
        let mut s = Array2::<C>::zeros((2, 2));
        s[[0, 1]] = C::new(-be, 0.0);
        s[[1, 0]] = C::new(-be, 0.0);
        let (lhs, rhs) = trace_formula_check(&[s], 1, 64).unwrap();
        let exact = (-be / 2.0_f64).exp() / (1.0 - (-be).exp());
        assert!((lhs - C::new(exact, 0.0)).norm() < 1e-10);
        assert!((rhs - C::new(exact, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn trace_formula_two_mode_thermal() {
        // edge states of the truncated quadratic form decay like
        // e^{-be*n_max/2}, so keep be*n_max comfortably large
        let be = 2.0;
        let s = quadratic_form_matrix(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(-be, 0.0));
        let (lhs, rhs) = trace_formula_check(&[s], 2, 24).unwrap();
        let per = (-be / 2.0_f64).exp() / (1.0 - (-be).exp());
        let exact = C::new(per * per, 0.0);
        assert!((lhs - exact).norm() / exact.norm() < 1e-9, "lhs {lhs}");
        assert!((rhs - exact).norm() / exact.norm() < 1e-12, "rhs {rhs}");
    }

    #[test]
    fn trace_formula_generic_coupled() {
        let mode = sudden_mode(1.0, 0.12);
        let eps0 = 1.0;
        let eps_t = 1.25;
        let beta = 1.4;
        let u = 0.6;
        let i = C::new(0.0, 1.0);
        let s_h = quadratic_form_matrix(mode.y1, mode.y2, i * u * eps_t);
        let s_0 = quadratic_form_matrix(
            C::new(1.0, 0.0),
            C::new(0.0, 0.0),
            -(i * u + beta) * eps0,
        );
        let (lhs, rhs) = trace_formula_check(&[s_h, s_0], 2, 32).unwrap();
        assert!(
            (lhs - rhs).norm() / rhs.norm() < 1e-6,
            "lhs {lhs} vs rhs {rhs}"
        );
    }
}
