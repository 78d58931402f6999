//! Reduced forms of the kernel identities: the ratio functions obtained after
//! dividing out the kernel, the reduction right-hand sides, and the scalar
//! identities used along the way.

use crate::error::{Error, Result};
use crate::gamma::{hyper_c, hyper_s, theta_r, I};
use crate::operators::{rotate, Point};
use crate::params::{EvalConfig, ModularParams, Sign};
use num_complex::Complex64;

/// Which side of a `L = R` pair; `R` is `L` with `v` and `w` swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn nonzero(x: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    if x.norm() < cfg.pole_guard || !x.is_finite() {
        Err(Error::PoleProximity(format!("reduced-form denominator {x}")))
    } else {
        Ok(x)
    }
}

fn rp(p: &ModularParams, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    theta_r(p, Sign::Plus, z, cfg)
}

fn half_plus(p: &ModularParams) -> Complex64 {
    0.5 * I * p.a_plus
}

/// Summands of the reduced A2 function `L_r(v, w, z)`, one per cyclic rotation
/// of `v`:
/// `R(y2-y3+-mu) / (R(y1-y2-t) R(y1-y3-t)) / prod_{k=2,3} prod_{l,m} R(y_k+w_l+z_m-t+c)`
/// with `t = i a_+/2`, `c = i a_+/3` and `R = R_+`.
pub fn a2_summands(
    v: &Point,
    w: &Point,
    z: &Point,
    mu: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Vec<Complex64>> {
    let t = half_plus(p);
    let c = I * p.a_plus / 3.0;
    (0..3)
        .map(|m| {
            let y = rotate(v, m);
            let num = rp(p, y[1] - y[2] + mu, cfg)? * rp(p, y[1] - y[2] - mu, cfg)?;
            let mut den = rp(p, y[0] - y[1] - t, cfg)? * rp(p, y[0] - y[2] - t, cfg)?;
            for yk in &y[1..] {
                for wl in w {
                    for zm in z {
                        den *= rp(p, yk + wl + zm - t + c, cfg)?;
                    }
                }
            }
            Ok(num / nonzero(den, cfg)?)
        })
        .collect()
}

pub fn a2_elliptic(
    side: Side,
    v: &Point,
    w: &Point,
    z: &Point,
    mu: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let s = match side {
        Side::L => a2_summands(v, w, z, mu, p, cfg)?,
        Side::R => a2_summands(w, v, z, mu, p, cfg)?,
    };
    Ok(s.iter().sum())
}

/// Summands of the reduced elliptic A3 function:
/// `R(y2-y3) R(y3-y4) R(y4-y2) / prod_j R(y1-y_j-t) / prod_{k>1,l,+-} R(y_k+w_l-t+c+-d)`
/// with `c = i a_+/4`.
pub fn a3_summands(v: &Point, w: &Point, d: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Complex64>> {
    let t = half_plus(p);
    let c = I * p.a_plus / 4.0;
    (0..4)
        .map(|m| {
            let y = rotate(v, m);
            let num = rp(p, y[1] - y[2], cfg)? * rp(p, y[2] - y[3], cfg)? * rp(p, y[3] - y[1], cfg)?;
            let mut den = one();
            for yj in &y[1..] {
                den *= rp(p, y[0] - yj - t, cfg)?;
            }
            for yk in &y[1..] {
                for wl in w {
                    den *= rp(p, yk + wl - t + c + d, cfg)? * rp(p, yk + wl - t + c - d, cfg)?;
                }
            }
            Ok(num / nonzero(den, cfg)?)
        })
        .collect()
}

pub fn a3_elliptic(
    side: Side,
    v: &Point,
    w: &Point,
    d: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let s = match side {
        Side::L => a3_summands(v, w, d, p, cfg)?,
        Side::R => a3_summands(w, v, d, p, cfg)?,
    };
    Ok(s.iter().sum())
}

/// `c(y2-y3) c(y3-y4) c(y4-y2) / prod_j s(y1-y_j)` for the rotation starting at
/// coordinate `m`, with `c = cosh(pi ./a)` and `s = sinh(pi ./a)`.
fn hyper_ratio(a: f64, y: &[Complex64], cfg: &EvalConfig) -> Result<Complex64> {
    let num = hyper_c(a, y[1] - y[2]) * hyper_c(a, y[2] - y[3]) * hyper_c(a, y[3] - y[1]);
    let den = hyper_s(a, y[0] - y[1]) * hyper_s(a, y[0] - y[2]) * hyper_s(a, y[0] - y[3]);
    Ok(num / nonzero(den, cfg)?)
}

/// Reduced hyperbolic A3 function:
/// `sum_m hyper_ratio(y) / prod_{k>1,l,+-} s_+(y_k+w_l+i a_+/4+-d)`.
pub fn a3_hyperbolic(
    side: Side,
    v: &Point,
    w: &Point,
    d: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let (v, w) = match side {
        Side::L => (v, w),
        Side::R => (w, v),
    };
    let a = p.a_plus;
    let cc = I * a / 4.0;
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..4 {
        let y = rotate(v, m);
        let mut den = one();
        for yk in &y[1..] {
            for wl in w {
                den *= hyper_s(a, yk + wl + cc + d) * hyper_s(a, yk + wl + cc - d);
            }
        }
        total += hyper_ratio(a, &y, cfg)? / nonzero(den, cfg)?;
    }
    Ok(total)
}

/// `b = i c_+(2d)`.
pub fn f_form_b(d: Complex64, p: &ModularParams) -> Complex64 {
    I * hyper_c(p.a_plus, 2.0 * d)
}

/// `F_L(v, w) = sum_m prod_l (s(2y1+2w_l) + b) / prod_j s(2y1-2y_j)`, divided by
/// `prod_{j<k} c(w_j - w_k)`; `F_R` swaps `v` and `w`.
pub fn f_form(
    side: Side,
    v: &Point,
    w: &Point,
    b: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let (v, w) = match side {
        Side::L => (v, w),
        Side::R => (w, v),
    };
    let a = p.a_plus;
    let mut pc = one();
    for j in 0..w.len() {
        for k in j + 1..w.len() {
            pc *= hyper_c(a, w[j] - w[k]);
        }
    }
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..v.len() {
        let y = rotate(v, m);
        let num: Complex64 = w.iter().map(|wl| hyper_s(a, 2.0 * y[0] + 2.0 * wl) + b).product();
        let den: Complex64 = y[1..].iter().map(|yj| hyper_s(a, 2.0 * y[0] - 2.0 * yj)).product();
        total += num / nonzero(den, cfg)?;
    }
    Ok(total / nonzero(pc, cfg)?)
}

/// Right-hand side of the elliptic A2 reduction:
/// `sum_m R(y2-y3+-mu)/(R(y1-y2-t) R(y1-y3-t)) prod_{l,m'} R(y1+w_l+z_m'-t+c)`.
pub fn a2_reduction_rhs(
    v: &Point,
    w: &Point,
    z: &Point,
    mu: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let t = half_plus(p);
    let c = I * p.a_plus / 3.0;
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..3 {
        let y = rotate(v, m);
        let mut num = rp(p, y[1] - y[2] + mu, cfg)? * rp(p, y[1] - y[2] - mu, cfg)?;
        for wl in w {
            for zm in z {
                num *= rp(p, y[0] + wl + zm - t + c, cfg)?;
            }
        }
        let den = rp(p, y[0] - y[1] - t, cfg)? * rp(p, y[0] - y[2] - t, cfg)?;
        total += num / nonzero(den, cfg)?;
    }
    Ok(total)
}

/// Right-hand side of the elliptic A3 reduction.
pub fn a3_reduction_rhs(v: &Point, w: &Point, d: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Complex64> {
    let t = half_plus(p);
    let c = I * p.a_plus / 4.0;
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..4 {
        let y = rotate(v, m);
        let mut num = rp(p, y[1] - y[2], cfg)? * rp(p, y[2] - y[3], cfg)? * rp(p, y[3] - y[1], cfg)?;
        for wl in w {
            num *= rp(p, y[0] + wl - t + c + d, cfg)? * rp(p, y[0] + wl - t + c - d, cfg)?;
        }
        let mut den = one();
        for yj in &y[1..] {
            den *= rp(p, y[0] - yj - t, cfg)?;
        }
        total += num / nonzero(den, cfg)?;
    }
    Ok(total)
}

/// Right-hand side of the hyperbolic A3 reduction:
/// `sum_m hyper_ratio(y) prod_{l,+-} 2 c_+(y1+w_l-i a_+/4+-d)`.
pub fn a3_hyperbolic_reduction_rhs(
    v: &Point,
    w: &Point,
    d: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let a = p.a_plus;
    let cc = I * a / 4.0;
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..4 {
        let y = rotate(v, m);
        let mut num = one();
        for wl in w {
            num *= 4.0 * hyper_c(a, y[0] + wl - cc + d) * hyper_c(a, y[0] + wl - cc - d);
        }
        total += hyper_ratio(a, &y, cfg)? * num;
    }
    Ok(total)
}

/// The four ratios `R_m(w) = c(y2-y3) c(y3-y4) c(y4-y2) / prod_j s(y1-y_j)` with
/// `y` the rotation of `w` starting at `m`, for the scale `a`.
pub fn hyperbolic_ratios(a: f64, w: &Point, cfg: &EvalConfig) -> Result<Vec<Complex64>> {
    (0..4).map(|m| hyper_ratio(a, &rotate(w, m), cfg)).collect()
}

/// The two sides of the scalar commutation identity, as a function of the
/// ordered pair `(mu, mu_prime)`; the identity states `side(mu, mu') = side(mu', mu)`.
pub fn scalar_commutation_side(
    u: Complex64,
    v: Complex64,
    w: Complex64,
    mu: Complex64,
    mu_prime: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let t = half_plus(p);
    let r = |z: Complex64| rp(p, z, cfg);
    let first = r(u + mu)? * r(u - mu)? * r(v + w + mu_prime)? * r(v + w - mu_prime)?
        / nonzero(r(u - v + t)? * r(v - u + w + t)?, cfg)?;
    let second = r(v + mu)? * r(v - mu)? * r(u + w + mu_prime)? * r(u + w - mu_prime)?
        / nonzero(r(v - u + t)? * r(u - v + w + t)?, cfg)?;
    Ok(first + second)
}

/// Multiplier picked up by every reduced A2 summand under `v1 -> v1 + 2t`,
/// `v3 -> v3 - 2t`: `exp(2ir(6 i a_+ + 6 v2)) exp(2ir 12 v1)`.
pub fn a2_multiplier(v: &Point, p: &ModularParams) -> Complex64 {
    let r = p.r;
    (2.0 * I * r * (6.0 * I * p.a_plus + 6.0 * v[1])).exp() * (2.0 * I * r * 12.0 * v[0]).exp()
}

/// A3 counterpart: `exp(2ir(6 i a_+ + 6 v2 + 6 v3)) exp(2ir 12 v1)`.
pub fn a3_multiplier(v: &Point, p: &ModularParams) -> Complex64 {
    let r = p.r;
    (2.0 * I * r * (6.0 * I * p.a_plus + 6.0 * v[1] + 6.0 * v[2])).exp() * (2.0 * I * r * 12.0 * v[0]).exp()
}
