use super::{ceil_count, EXP_LIMIT, I};
use crate::error::{Error, Result};
use crate::params::{EvalConfig, ModularParams, Sign};
use num_complex::Complex64;

const GUARD_TERMS: f64 = 8.0;

fn check_exponent(x: f64, what: &str) -> Result<()> {
    if x > EXP_LIMIT {
        Err(Error::MagnitudeOverflow(format!("{what}: |Im z| too large, evaluate log form")))
    } else {
        Ok(())
    }
}

/// `R(r, alpha; z) = prod_{k>=1} (1 - e^{2irz-(2k-1)alpha r})(1 - e^{-2irz-(2k-1)alpha r})`.
pub fn theta_r_alpha(r: f64, alpha: f64, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let growth = 2.0 * r * z.im.abs();
    check_exponent(growth, "theta block")?;
    let budget = (1.0 / cfg.target_tol).ln() + growth;
    let n = ceil_count(budget / (2.0 * alpha * r) + 0.5) + GUARD_TERMS as usize;
    if n > cfg.max_product_terms {
        return Err(Error::MagnitudeOverflow(format!("theta block needs {n} factors")));
    }
    let e_plus = (2.0 * I * r * z).exp();
    let e_minus = e_plus.inv();
    let q2 = (-2.0 * alpha * r).exp();
    let mut qk = (-alpha * r).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        prod *= (1.0 - e_plus * qk) * (1.0 - e_minus * qk);
        qk *= q2;
    }
    Ok(prod)
}

/// `R_delta(z) = R(r, a_delta; z)`.
pub fn theta_r(params: &ModularParams, delta: Sign, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    theta_r_alpha(params.r, params.a_delta(delta), z, cfg)
}

/// `p_delta = 2r prod_{k>=1} (1 - e^{-2kra_delta})^2`, summed to machine precision.
pub fn p_const(params: &ModularParams, delta: Sign) -> f64 {
    let q = (-2.0 * params.r * params.a_delta(delta)).exp();
    let mut qk = q;
    let mut prod = 2.0 * params.r;
    while qk > 1e-18 {
        prod *= (1.0 - qk) * (1.0 - qk);
        qk *= q;
    }
    prod
}

/// `s_delta(z) = i e^{-irz} R_delta(z - i a_delta/2) / p_delta`.
pub fn s_fn(params: &ModularParams, delta: Sign, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let half = 0.5 * params.a_delta(delta);
    let rz = theta_r(params, delta, z - I * half, cfg)?;
    Ok(I * (-I * params.r * z).exp() * rz / p_const(params, delta))
}

/// Elliptic gamma function from its double product.
pub fn elliptic_gamma(params: &ModularParams, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let r = params.r;
    let growth = 2.0 * r * z.im.abs();
    check_exponent(growth, "elliptic gamma")?;
    let cutoff = (1.0 / cfg.target_tol).ln() + growth + 2.0 * GUARD_TERMS * r * params.min_a();
    let x = (2.0 * I * r * z).exp();
    let x_inv = x.inv();
    let qp = (-2.0 * r * params.a_plus).exp();
    let qm = (-2.0 * r * params.a_minus).exp();
    let step_p = 2.0 * r * params.a_plus;
    let step_m = 2.0 * r * params.a_minus;

    let mut prod = Complex64::new(1.0, 0.0);
    let mut count = 0usize;
    let mut exp_m = r * (params.a_plus + params.a_minus);
    let mut base_m = (-exp_m).exp();
    while exp_m <= cutoff {
        let mut exponent = exp_m;
        let mut term = base_m;
        while exponent <= cutoff {
            let den = 1.0 - term * x;
            if den.norm() < cfg.pole_guard {
                return Err(Error::PoleProximity(format!("elliptic gamma at z = {z}")));
            }
            prod *= (1.0 - term * x_inv) / den;
            count += 1;
            exponent += step_m;
            term *= qm;
        }
        if count > cfg.max_product_terms {
            return Err(Error::MagnitudeOverflow(format!("elliptic gamma needs more than {count} factors")));
        }
        exp_m += step_p;
        base_m *= qp;
    }
    Ok(prod)
}

/// `Gamma_e(p, q; x) = prod_{k,l>=0} (1 - x^{-1} p^{k+1} q^{l+1}) / (1 - x p^k q^l)`.
pub fn gamma_e_bridge(p: Complex64, q: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let (ap, aq) = (p.norm(), q.norm());
    if !(ap < 1.0 && aq < 1.0) {
        return Err(Error::Divergence(format!("nome modulus must be below 1, got |p| = {ap}, |q| = {aq}")));
    }
    if x.norm() == 0.0 {
        return Err(Error::PoleProximity("x = 0".into()));
    }
    let scale = x.norm().max((p * q / x).norm()).max(1.0);
    let floor = cfg.target_tol * 1e-6 / scale;
    let x_inv = x.inv();
    let limit = cfg.max_product_terms.saturating_mul(cfg.max_product_terms);
    let mut prod = Complex64::new(1.0, 0.0);
    let mut count = 0usize;
    let mut pk = Complex64::new(1.0, 0.0);
    while pk.norm() >= floor {
        let mut t = pk;
        while t.norm() >= floor {
            let den = 1.0 - x * t;
            if den.norm() < cfg.pole_guard {
                return Err(Error::PoleProximity(format!("Gamma_e at x = {x}")));
            }
            prod *= (1.0 - x_inv * t * p * q) / den;
            t *= q;
            count += 1;
            if count > limit {
                return Err(Error::Divergence("Gamma_e product did not converge".into()));
            }
        }
        pk *= p;
    }
    Ok(prod)
}

/// `exp(i g(z))` with `g(z) = sum_n sin(2nrz) / (2n sinh(nra_+) sinh(nra_-))`,
/// valid in the strip `|Im z| < a`. Kept as an independent cross-check of
/// [`elliptic_gamma`].
pub fn elliptic_log_series(params: &ModularParams, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let r = params.r;
    let gap = params.a() - z.im.abs();
    if gap <= 0.0 {
        return Err(Error::Divergence(format!("log series needs |Im z| < a, got z = {z}")));
    }
    let n_max = ceil_count(((1.0 / cfg.target_tol).ln() + 10.0) / (2.0 * r * gap)) + 8;
    if n_max > 100 * cfg.max_product_terms {
        return Err(Error::Divergence("log series converges too slowly".into()));
    }
    let mut g = Complex64::new(0.0, 0.0);
    for n in 1..=n_max {
        let nf = n as f64;
        let den = 2.0 * nf * (nf * r * params.a_plus).sinh() * (nf * r * params.a_minus).sinh();
        g += (2.0 * nf * r * z).sin() / den;
    }
    Ok((I * g).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / (a.norm() + b.norm())
    }

    fn direct_theta(r: f64, alpha: f64, z: Complex64, n: usize) -> Complex64 {
        (1..=n).fold(c(1.0, 0.0), |acc, k| {
            let d = (2 * k - 1) as f64 * alpha * r;
            acc * (1.0 - (2.0 * I * r * z - d).exp()) * (1.0 - (-2.0 * I * r * z - d).exp())
        })
    }

    #[test]
    fn theta_matches_long_product() {
        let cfg = EvalConfig::default();
        for z in [c(0.2, 0.1), c(-1.3, 0.7), c(2.0, -1.4)] {
            let v = theta_r_alpha(1.0, 1.0, z, &cfg).unwrap();
            assert!(rel(v, direct_theta(1.0, 1.0, z, 200)) < 1e-14);
        }
    }

    #[test]
    fn theta_ade_and_symmetries() {
        let cfg = EvalConfig::default();
        let p = ModularParams::new(1.0, 1.0, 0.75).unwrap();
        let z = c(0.2, 0.1);
        for d in Sign::BOTH {
            let h = 0.5 * p.a_delta(d) * I;
            let ratio = theta_r(&p, d, z + h, &cfg).unwrap() / theta_r(&p, d, z - h, &cfg).unwrap();
            assert!(rel(ratio, -(-2.0 * I * z).exp()) < 1e-12);
        }
        let a = theta_r(&p, Sign::Plus, c(0.37, 0.05), &cfg).unwrap();
        assert!(rel(a, theta_r(&p, Sign::Plus, c(-0.37, -0.05), &cfg).unwrap()) < 1e-15);
        let b = theta_r(&p, Sign::Plus, c(0.37 + std::f64::consts::PI, 0.05), &cfg).unwrap();
        assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn p_const_values() {
        let p = ModularParams::new(1.0, 1.0, 0.75).unwrap();
        let direct: f64 = 2.0 * (1..=200).map(|k| (1.0 - (-2.0 * k as f64).exp()).powi(2)).product::<f64>();
        assert!((p_const(&p, Sign::Plus) - direct).abs() < 1e-14);
        let big = ModularParams::new(1.0, 40.0, 0.75).unwrap();
        assert!((p_const(&big, Sign::Plus) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn s_is_odd_antiperiodic_and_vanishes_at_zero() {
        let cfg = EvalConfig::default();
        let p = ModularParams::default();
        for d in Sign::BOTH {
            assert!(s_fn(&p, d, c(0.0, 0.0), &cfg).unwrap().norm() < 1e-15);
            let v = s_fn(&p, d, c(0.4, 0.0), &cfg).unwrap();
            assert!(rel(v, -s_fn(&p, d, c(-0.4, 0.0), &cfg).unwrap()) < 1e-14);
            let w = s_fn(&p, d, c(0.4 + std::f64::consts::PI, 0.0), &cfg).unwrap();
            assert!(rel(v, -w) < 1e-12);
        }
    }

    #[test]
    fn gamma_basic_identities() {
        let cfg = EvalConfig::default();
        let p = ModularParams::default();
        assert!((elliptic_gamma(&p, c(0.0, 0.0), &cfg).unwrap() - 1.0).norm() < 1e-15);
        let z = c(0.3, 0.2);
        let g = elliptic_gamma(&p, z, &cfg).unwrap();
        assert!(rel(g * elliptic_gamma(&p, -z, &cfg).unwrap(), c(1.0, 0.0)) < 1e-13);
        let z = c(0.25, 0.0);
        let h = 0.5 * p.a_plus * I;
        let ratio = elliptic_gamma(&p, z + h, &cfg).unwrap() / elliptic_gamma(&p, z - h, &cfg).unwrap();
        assert!(rel(ratio, theta_r(&p, Sign::Minus, z, &cfg).unwrap()) < 1e-12);
    }

    #[test]
    fn gamma_pole_is_detected() {
        let cfg = EvalConfig::default();
        let p = ModularParams::default();
        let err = elliptic_gamma(&p, c(0.0, -p.a()), &cfg).unwrap_err();
        assert!(err.is_pole());
    }

    #[test]
    fn bridge_matches_gamma() {
        let cfg = EvalConfig::default();
        let q = c((-2.0f64).exp(), 0.0);
        let x = c(-2.0, 0.6).exp();
        let v = gamma_e_bridge(q, q, x, &cfg).unwrap();
        let p = ModularParams::new(1.0, 1.0, 1.0).unwrap();
        assert!(rel(v, elliptic_gamma(&p, c(0.3, 0.0), &cfg).unwrap()) < 1e-12);
        let centre = (q * q).sqrt();
        assert!((gamma_e_bridge(q, q, centre, &cfg).unwrap() - 1.0).norm() < 1e-14);
        assert!(gamma_e_bridge(c(1.0, 0.0), q, x, &cfg).is_err());
    }

    #[test]
    fn log_series_agrees() {
        let cfg = EvalConfig::default();
        let p = ModularParams::default();
        for z in [c(0.3, 0.2), c(-1.1, -0.6), c(2.5, 0.1)] {
            let a = elliptic_gamma(&p, z, &cfg).unwrap();
            let b = elliptic_log_series(&p, z, &cfg).unwrap();
            assert!(rel(a, b) < 1e-12, "{z}: {a} vs {b}");
        }
        assert!(elliptic_log_series(&p, c(0.0, 0.9), &cfg).is_err());
    }
}
