//! Dense and Krylov linear-algebra helpers: complex matrix exponential,
//! determinants, and Lanczos propagation for Hermitian operators.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Determinant, Eigh, Factorize, Solve, UPLO};
use num_complex::Complex64;

use crate::error::{Result, WqError};

type C = Complex64;

fn one_norm(a: &Array2<C>) -> f64 {
    let mut best = 0.0f64;
    for col in a.columns() {
        let s: f64 = col.iter().map(|x| x.norm()).sum();
        best = best.max(s);
    }
    best
}

/// Dense matrix exponential by Pade(13) with scaling and squaring.
pub fn expm(a: &Array2<C>) -> Result<Array2<C>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(WqError::Domain("expm needs a square matrix".into()));
    }
    const THETA13: f64 = 5.371_920_351_148_152;
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.mapv(|x| x / 2f64.powi(s));
    let b: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let id: Array2<C> = Array2::eye(n);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let u_inner = a6.mapv(|x| x * b[13]) + a4.mapv(|x| x * b[11]) + a2.mapv(|x| x * b[9]);
    let u = a.dot(
        &(a6.dot(&u_inner)
            + a6.mapv(|x| x * b[7])
            + a4.mapv(|x| x * b[5])
            + a2.mapv(|x| x * b[3])
            + id.mapv(|x| x * b[1])),
    );
    let v_inner = a6.mapv(|x| x * b[12]) + a4.mapv(|x| x * b[10]) + a2.mapv(|x| x * b[8]);
    let v = a6.dot(&v_inner)
        + a6.mapv(|x| x * b[6])
        + a4.mapv(|x| x * b[4])
        + a2.mapv(|x| x * b[2])
        + id.mapv(|x| x * b[0]);
    // solve (V - U) X = (V + U), factorizing once for all columns
    let lhs = &v - &u;
    let rhs = &v + &u;
    let f = lhs
        .factorize()
        .map_err(|e| WqError::Linalg(format!("expm factorization failed: {e}")))?;
    let mut x = Array2::zeros((n, n));
    for (j, col) in rhs.columns().into_iter().enumerate() {
        let sol = f
            .solve(&col.to_owned())
            .map_err(|e| WqError::Linalg(format!("expm solve failed: {e}")))?;
        x.column_mut(j).assign(&sol);
    }
    for _ in 0..s {
        x = x.dot(&x);
    }
    Ok(x)
}

/// Determinant of a dense complex matrix.
pub fn det(a: &Array2<C>) -> Result<C> {
    a.det()
        .map_err(|e| WqError::Linalg(format!("determinant failed: {e}")))
}

/// Eigendecomposition of a Hermitian complex matrix: (eigenvalues, vectors).
pub fn eigh_c(a: &Array2<C>) -> Result<(Array1<f64>, Array2<C>)> {
    a.eigh(UPLO::Lower)
        .map_err(|e| WqError::Linalg(format!("hermitian eig failed: {e}")))
}

/// Eigendecomposition of a real symmetric matrix.
pub fn eigh_r(a: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    a.eigh(UPLO::Lower)
        .map_err(|e| WqError::Linalg(format!("symmetric eig failed: {e}")))
}

/// exp(z H) psi for a Hermitian operator given as a matvec closure, via
/// Lanczos with full reorthogonalization. `z` is typically -i*dt.
pub fn expm_krylov<F>(
    matvec: F,
    psi: &[C],
    z: C,
    m_max: usize,
    tol: f64,
) -> Result<Vec<C>>
where
    F: Fn(&[C], &mut [C]),
{
    let dim = psi.len();
    let m_max = m_max.min(dim);
    let nrm = psi.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if nrm == 0.0 {
        return Ok(vec![C::new(0.0, 0.0); dim]);
    }
    let mut vs: Vec<Vec<C>> = Vec::with_capacity(m_max + 1);
    vs.push(psi.iter().map(|x| x / nrm).collect());
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![C::new(0.0, 0.0); dim];
    for j in 0..m_max {
        matvec(&vs[j], &mut w);
        let alpha = vs[j]
            .iter()
            .zip(w.iter())
            .map(|(v, w)| (v.conj() * w).re)
            .sum::<f64>();
        alphas.push(alpha);
        for (v, wi) in vs[j].iter().zip(w.iter_mut()) {
            *wi -= alpha * v;
        }
        if j > 0 {
            let b = betas[j - 1];
            for (v, wi) in vs[j - 1].iter().zip(w.iter_mut()) {
                *wi -= b * v;
            }
        }
        // full reorthogonalization for numerical stability
        for v in &vs {
            let c: C = v.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
            for (vi, wi) in v.iter().zip(w.iter_mut()) {
                *wi -= c * vi;
            }
        }
        let beta = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let m = j + 1;
        // evaluate exp(z T_m) e1 and check the residual heuristic
        let mut t = Array2::<f64>::zeros((m, m));
        for i in 0..m {
            t[[i, i]] = alphas[i];
            if i + 1 < m {
                t[[i, i + 1]] = betas[i];
                t[[i + 1, i]] = betas[i];
            }
        }
        let (ev, vecs) = eigh_r(&t)?;
        let mut coeff = vec![C::new(0.0, 0.0); m];
        for i in 0..m {
            let mut acc = C::new(0.0, 0.0);
            for k in 0..m {
                acc += vecs[[i, k]] * (z * ev[k]).exp() * vecs[[0, k]];
            }
            coeff[i] = acc;
        }
        let resid = beta * coeff[m - 1].norm() * z.norm();
        if resid < tol || beta < 1e-14 || m == dim {
            let mut out = vec![C::new(0.0, 0.0); dim];
            for (i, c) in coeff.iter().enumerate() {
                for (o, v) in out.iter_mut().zip(vs[i].iter()) {
                    *o += nrm * c * v;
                }
            }
            return Ok(out);
        }
        betas.push(beta);
        vs.push(w.iter().map(|x| x / beta).collect());
    }
    Err(WqError::Solver(
        "krylov subspace cap reached before convergence".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn expm_diag() {
        let a = array![
            [C::new(0.0, 1.0), C::new(0.0, 0.0)],
            [C::new(0.0, 0.0), C::new(-2.0, 0.0)]
        ];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]] - C::new(0.0, 1.0).exp()).norm() < 1e-14);
        assert!((e[[1, 1]] - C::new((-2.0f64).exp(), 0.0)).norm() < 1e-14);
        assert!(e[[0, 1]].norm() < 1e-16);
    }

    #[test]
    fn expm_rotation() {
        // exp(i theta sigma_x) = cos(theta) I + i sin(theta) sigma_x
        let th = 0.7;
        let a = array![
            [C::new(0.0, 0.0), C::new(0.0, th)],
            [C::new(0.0, th), C::new(0.0, 0.0)]
        ];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]].re - th.cos()).abs() < 1e-14);
        assert!((e[[0, 1]].im - th.sin()).abs() < 1e-14);
    }

    #[test]
    fn krylov_matches_dense() {
        let n = 12;
        let mut h = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            h[[i, i]] = (i as f64) * 0.3 - 1.0;
            if i + 1 < n {
                h[[i, i + 1]] = 0.5;
                h[[i + 1, i]] = 0.5;
            }
        }
        let psi: Vec<C> = (0..n)
            .map(|i| C::new((i as f64 * 0.1).sin() + 0.2, 0.1 * i as f64))
            .collect();
        let z = C::new(0.0, -0.8);
        let via_krylov = expm_krylov(
            |x, y| {
                for i in 0..n {
                    let mut acc = C::new(0.0, 0.0);
                    for j in 0..n {
                        acc += h[[i, j]] * x[j];
                    }
                    y[i] = acc;
                }
            },
            &psi,
            z,
            40,
            1e-12,
        )
        .unwrap();
        let hc = h.mapv(|x| C::new(x, 0.0) * z);
        let e = expm(&hc).unwrap();
        for i in 0..n {
            let mut acc = C::new(0.0, 0.0);
            for j in 0..n {
                acc += e[[i, j]] * psi[j];
            }
            assert!((acc - via_krylov[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn det_simple() {
        let a = array![
            [C::new(2.0, 0.0), C::new(1.0, 0.0)],
            [C::new(0.0, 1.0), C::new(3.0, 0.0)]
        ];
        let d = det(&a).unwrap();
        assert!((d - (C::new(6.0, 0.0) - C::new(0.0, 1.0))).norm() < 1e-14);
    }
}
