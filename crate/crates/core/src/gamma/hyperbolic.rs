use super::{EXP_LIMIT, I};
use crate::error::{Error, Result};
use crate::params::{EvalConfig, ModularParams, Sign};
use crate::quad;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Taylor coefficients of `u / sinh u` in powers of `u^2`.
const U_OVER_SINH: [f64; 13] = [
    1.0,
    -1.0 / 6.0,
    7.0 / 360.0,
    -31.0 / 15120.0,
    127.0 / 604800.0,
    -73.0 / 3421440.0,
    1414477.0 / 653837184000.0,
    -8191.0 / 37362124800.0,
    16931177.0 / 762187345920000.0,
    -2.2507674795567867e-9,
    2.2805107707218212e-10,
    -2.3106421580996967e-11,
    2.3411704028931947e-12,
];

/// Fraction of `a` beyond which the ladder takes over from the integral.
const LADDER_THRESHOLD: f64 = 0.8;

/// `cosh(pi z / a)`.
pub fn hyper_c(a: f64, z: Complex64) -> Complex64 {
    (PI * z / a).cosh()
}

/// `sinh(pi z / a)`.
pub fn hyper_s(a: f64, z: Complex64) -> Complex64 {
    (PI * z / a).sinh()
}

fn checked(a_plus: f64, a_minus: f64) -> Result<ModularParams> {
    ModularParams::new(1.0, a_plus, a_minus)
}

/// Integral of the regularised integrand over `[0, y_t]` from its power series.
fn small_y_part(a: f64, b: f64, z: Complex64, y_t: f64) -> Complex64 {
    let n = U_OVER_SINH.len();
    let mut phi = [0.0; 13];
    for i in 0..n {
        for j in 0..n - i {
            phi[i + j] += U_OVER_SINH[i] * a.powi(2 * i as i32) * U_OVER_SINH[j] * b.powi(2 * j as i32);
        }
    }
    let two_z = 2.0 * z;
    let mut sine = [Complex64::new(0.0, 0.0); 13];
    let mut term = two_z;
    for (j, s) in sine.iter_mut().enumerate() {
        *s = term;
        let k = (2 * j + 2) as f64;
        term *= -two_z * two_z / (k * (k + 1.0));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for m in 1..n {
        let c: Complex64 = (0..=m).map(|j| sine[j] * phi[m - j]).sum();
        let p = (2 * m - 1) as i32;
        total += c * y_t.powi(p) / p as f64;
    }
    total / (2.0 * a * b)
}

fn log_gamma_integral(a_plus: f64, a_minus: f64, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let a = 0.5 * (a_plus + a_minus);
    let gap = a - z.im.abs();
    let y_t = 0.5 / a_plus.max(a_minus).max(z.norm());
    let y_max = (-(cfg.quad_rel_tol * 0.01).ln() / (2.0 * gap)).max(2.0 * y_t);
    let ab = a_plus * a_minus;
    let integrand = |y: f64| {
        let sin = (2.0 * y * z).sin();
        (sin / (2.0 * (a_plus * y).sinh() * (a_minus * y).sinh()) - z / (ab * y)) / y
    };
    let panels = ((y_max - y_t) * (z.re.abs() + a).max(1.0) / 2.0).ceil() as usize;
    let body = quad::integrate(
        integrand,
        y_t,
        y_max,
        panels.clamp(4, 4000),
        cfg.quad_rel_tol,
        0.1 * cfg.target_tol,
        cfg.quad_max_depth,
    )?;
    Ok(small_y_part(a_plus, a_minus, z, y_t) + body - z / (ab * y_max))
}

/// One ladder step toward the real axis: returns the shifted point and the
/// factor with `G(z) = factor * G(shifted)`.
fn ladder_step(
    a_plus: f64,
    a_minus: f64,
    z: Complex64,
    step: Sign,
    cfg: &EvalConfig,
) -> Result<(Complex64, Complex64)> {
    let (a_step, a_other) = match step {
        Sign::Plus => (a_plus, a_minus),
        Sign::Minus => (a_minus, a_plus),
    };
    let dir = if z.im > 0.0 { -1.0 } else { 1.0 };
    let mid = z + dir * 0.5 * a_step * I;
    if (PI * mid.re / a_other).abs() > EXP_LIMIT {
        return Err(Error::MagnitudeOverflow(format!("ladder multiplier at z = {z}")));
    }
    let m = 2.0 * hyper_c(a_other, mid);
    if m.norm() < cfg.pole_guard {
        return Err(Error::PoleProximity(format!("hyperbolic gamma ladder at z = {z}")));
    }
    let factor = if dir < 0.0 { m } else { m.inv() };
    Ok((z + dir * a_step * I, factor))
}

fn ladder(a_plus: f64, a_minus: f64, z: Complex64, forced: Option<Sign>, cfg: &EvalConfig) -> Result<Complex64> {
    let a = 0.5 * (a_plus + a_minus);
    let limit = LADDER_THRESHOLD * a;
    let (big, small) = if a_plus >= a_minus { (Sign::Plus, Sign::Minus) } else { (Sign::Minus, Sign::Plus) };
    let mut point = z;
    let mut factor = Complex64::new(1.0, 0.0);
    let mut steps = 0;
    while point.im.abs() > limit {
        if steps >= cfg.continuation_max_steps {
            return Err(Error::ContinuationDepthExceeded(steps));
        }
        let step = forced.unwrap_or_else(|| {
            let a_big = match big {
                Sign::Plus => a_plus,
                Sign::Minus => a_minus,
            };
            if (point.im.abs() - a_big).abs() < point.im.abs() {
                big
            } else {
                small
            }
        });
        let (next, f) = ladder_step(a_plus, a_minus, point, step, cfg)?;
        factor *= f;
        point = next;
        steps += 1;
    }
    Ok(factor * (I * log_gamma_integral(a_plus, a_minus, point, cfg)?).exp())
}

/// Hyperbolic gamma function `G(a_+, a_-; z)`: integral representation near the
/// real axis, continued by its difference equations elsewhere.
pub fn hyperbolic_gamma(a_plus: f64, a_minus: f64, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    checked(a_plus, a_minus)?;
    ladder(a_plus, a_minus, z, None, cfg)
}

/// As [`hyperbolic_gamma`], but every ladder step uses the period `a_step`.
pub fn hyperbolic_gamma_ladder(
    a_plus: f64,
    a_minus: f64,
    z: Complex64,
    step: Sign,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    checked(a_plus, a_minus)?;
    ladder(a_plus, a_minus, z, Some(step), cfg)
}
