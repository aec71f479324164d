use serde::{Deserialize, Serialize};

use crate::error::{Result, WqError};

/// Inverse temperature of the initial state. `Infinite` means a ground-state
/// quench.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    pub fn is_finite(&self) -> bool {
        matches!(self, Beta::Finite(_))
    }

    /// Finite value, or f64::INFINITY.
    pub fn value(&self) -> f64 {
        match self {
            Beta::Finite(b) => *b,
            Beta::Infinite => f64::INFINITY,
        }
    }
}

/// Linear interaction ramp: delta(t) = delta_f * t / tau_q on [0, tau_q],
/// starting from the free point delta(0) = 0. Single source of truth for a
/// run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuenchProtocol {
    /// Overall energy scale, J > 0.
    pub j: f64,
    /// Final anisotropy, |delta_f| < 1 (gapless regime).
    pub delta_f: f64,
    /// Quench duration in units of 1/J, tau_q >= 0.
    pub tau_q: f64,
    /// Initial inverse temperature.
    pub beta: Beta,
}

impl QuenchProtocol {
    pub fn new(j: f64, delta_f: f64, tau_q: f64, beta: Beta) -> Result<Self> {
        if !(j > 0.0) {
            return Err(WqError::Domain(format!("J must be positive, got {j}")));
        }
        if !(delta_f.abs() < 1.0) {
            return Err(WqError::Domain(format!(
                "|delta_f| must be < 1 (gapless regime), got {delta_f}"
            )));
        }
        if !(tau_q >= 0.0) {
            return Err(WqError::Domain(format!(
                "tau_q must be >= 0, got {tau_q}"
            )));
        }
        if let Beta::Finite(b) = beta {
            if !(b > 0.0) {
                return Err(WqError::Domain(format!(
                    "finite beta must be positive, got {b}"
                )));
            }
        }
        Ok(Self { j, delta_f, tau_q, beta })
    }

    /// Ground-state protocol (beta = infinity).
    pub fn ground(j: f64, delta_f: f64, tau_q: f64) -> Result<Self> {
        Self::new(j, delta_f, tau_q, Beta::Infinite)
    }

    /// Anisotropy at time t in [0, tau_q]. For tau_q = 0 the ramp is
    /// instantaneous and delta(0) = delta_f by convention of the sudden limit.
    pub fn delta_at(&self, t: f64) -> f64 {
        if self.tau_q == 0.0 {
            return self.delta_f;
        }
        self.delta_f * t / self.tau_q
    }
}

/// Cutoff preset fitted against N = 12 chain data.
pub const ALPHA_DEFAULT: f64 = 3.51;

/// Cutoff presets fitted per system size for N = 4, 8, 12.
pub const ALPHA_BY_N: [(usize, f64); 3] = [(4, 3.05), (8, 2.76), (12, 2.72)];

/// Preset cutoff for a given chain length, if one is shipped.
pub fn alpha_preset(n: usize) -> Option<f64> {
    ALPHA_BY_N.iter().find(|(m, _)| *m == n).map(|(_, a)| *a)
}
