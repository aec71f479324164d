//! Adaptive embedded Runge-Kutta integrator (Dormand-Prince 5(4)) for a
//! complex 2-vector, with PI step-size control and a per-step monitor hook.

use num_complex::Complex64;

use crate::error::{Result, WqError};

pub type State = [Complex64; 2];

/// Tolerances and budget for the mode integrator.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_steps: 2_000_000,
        }
    }
}

impl OdeOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(WqError::Domain(
                "ODE tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrate y' = f(t, y) from t0 to t1. `monitor` is called with (t, y) at
/// every accepted step and may abort the run by returning an error.
pub fn integrate<F, M>(
    mut f: F,
    t0: f64,
    t1: f64,
    y0: State,
    opts: &OdeOptions,
    mut monitor: M,
) -> Result<State>
where
    F: FnMut(f64, &State) -> State,
    M: FnMut(f64, &State) -> Result<()>,
{
    opts.validate()?;
    if t1 < t0 {
        return Err(WqError::Domain("integration interval reversed".into()));
    }
    if t1 == t0 {
        return Ok(y0);
    }
    let span = t1 - t0;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = (span / 100.0).min(0.1 / (1.0 + k1[0].norm() + k1[1].norm()));
    let mut err_prev: f64 = 1.0;
    for step in 0..opts.max_steps {
        if step + 1 == opts.max_steps {
            return Err(WqError::Solver(format!(
                "step budget {} exhausted at t = {t}",
                opts.max_steps
            )));
        }
        if t + h > t1 {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y5 = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(t + h, &y5);
        // embedded 4th-order error estimate
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                + E7 * k7[i]);
            let scale = opts.abs_tol + opts.rel_tol * y[i].norm().max(y5[i].norm());
            err = err.max(e.norm() / scale);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k7; // FSAL
            monitor(t, &y)?;
            if t >= t1 {
                return Ok(y);
            }
            // PI controller (order 5)
            let e = err.max(1e-10);
            let fac = 0.9 * e.powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
            h *= fac.clamp(0.2, 5.0);
            err_prev = e;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
        if h < 1e-14 * span {
            return Err(WqError::Solver(format!("step size underflow at t = {t}")));
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        // y'' = -w^2 y as first-order system; y(0)=1, y'(0)=0
        let w = 3.0;
        let f = |_t: f64, y: &State| [y[1], -Complex64::new(w * w, 0.0) * y[0]];
        let y = integrate(
            f,
            0.0,
            2.0,
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            &OdeOptions::default(),
            |_, _| Ok(()),
        )
        .unwrap();
        assert!((y[0].re - (w * 2.0f64).cos()).abs() < 1e-8);
        assert!((y[1].re + w * (w * 2.0f64).sin()).abs() < 1e-7);
        assert!(y[0].im.abs() < 1e-12);
    }

    #[test]
    fn monitor_abort() {
        let f = |_t: f64, y: &State| [y[1], -y[0]];
        let r = integrate(
            f,
            0.0,
            1.0,
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            &OdeOptions::default(),
            |t, _| {
                if t > 0.5 {
                    Err(WqError::Solver("abort".into()))
                } else {
                    Ok(())
                }
            },
        );
        assert!(r.is_err());
    }
}
