//! Work statistics for finite-rate interaction quenches of gapless 1D systems.
//!
//! The crate has three layers that check each other:
//! - `luttinger` + `workstats`: effective-theory mode dynamics and the
//!   characteristic function of work, with closed-form cumulant integrals.
//! - `ed`: exact diagonalization of small XXZ chains through the same ramp.
//! - `fock`: brute-force truncated Fock-space traces used as an oracle for
//!   the per-mode factors and the Gaussian trace formula.

pub mod airy;
pub mod ed;
pub mod error;
pub mod fock;
pub mod io;
pub mod linalg;
pub mod luttinger;
pub mod ode;
pub mod protocol;
pub mod quadrature;
pub mod workstats;

pub use error::{Result, WqError};
pub use protocol::{alpha_preset, Beta, QuenchProtocol, ALPHA_BY_N, ALPHA_DEFAULT};
