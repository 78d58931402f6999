//! Generalized gamma functions, A2/A3 analytic difference operators, their
//! kernel and weight functions, and a sampling harness that checks the
//! identities relating them.

pub mod continuation;
pub mod error;
pub mod gamma;
pub mod kernels;
pub mod operators;
pub mod params;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{EvalConfig, ModularParams, Regime, Sign};
