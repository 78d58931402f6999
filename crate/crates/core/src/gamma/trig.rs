use super::{ceil_count, EXP_LIMIT, I};
use crate::error::{Error, Result};
use crate::params::EvalConfig;
use num_complex::Complex64;

/// Trigonometric gamma function `prod_{n>=0} (1 - q^{2n+1} e^{2irz})^{-1}`, `q = e^{-alpha r}`.
pub fn trig_gamma(r: f64, alpha: f64, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    if !(r > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidParams(format!("r and alpha must be positive, got {r}, {alpha}")));
    }
    let growth = (-2.0 * r * z.im).max(0.0);
    if growth > EXP_LIMIT {
        return Err(Error::MagnitudeOverflow(format!("trig gamma at z = {z}")));
    }
    let budget = (1.0 / cfg.target_tol).ln() + growth;
    let n = ceil_count(budget / (2.0 * alpha * r)) + 8;
    if n > cfg.max_product_terms {
        return Err(Error::MagnitudeOverflow(format!("trig gamma needs {n} factors")));
    }
    let x = (2.0 * I * r * z).exp();
    let q2 = (-2.0 * alpha * r).exp();
    let mut qn = (-alpha * r).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        let f = 1.0 - qn * x;
        if f.norm() < cfg.pole_guard {
            return Err(Error::PoleProximity(format!("trig gamma at z = {z}")));
        }
        prod *= f;
        qn *= q2;
    }
    Ok(prod.inv())
}
