//! Gamma functions of elliptic, hyperbolic and trigonometric type, plus the
//! theta-type blocks they are built from.

mod elliptic;
mod euler;
mod hyperbolic;
mod trig;

pub use elliptic::{elliptic_gamma, elliptic_log_series, gamma_e_bridge, p_const, s_fn, theta_r, theta_r_alpha};
pub use euler::euler_gamma_c;
pub use hyperbolic::{hyper_c, hyper_s, hyperbolic_gamma, hyperbolic_gamma_ladder};
pub use trig::trig_gamma;

use num_complex::Complex64;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `ceil(x)` clamped to a usize, with a floor of zero.
pub(crate) fn ceil_count(x: f64) -> usize {
    if x.is_finite() && x > 0.0 {
        x.ceil() as usize
    } else {
        0
    }
}

/// Exponent budget beyond which `exp` overflows comfortably inside f64 range.
pub(crate) const EXP_LIMIT: f64 = 690.0;
