//! Kernel functions and weight functions.

use crate::continuation::continued_sqrt;
use crate::error::{Error, Result};
use crate::gamma::{elliptic_gamma, euler_gamma_c, hyper_s, hyperbolic_gamma, p_const, s_fn, trig_gamma, I};
use crate::operators::{ordered_chamber_check, Point};
use crate::params::{EvalConfig, ModularParams, Regime, Sign};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A2,
    A3,
}

impl Family {
    pub fn arity(self) -> usize {
        match self {
            Family::A2 => 3,
            Family::A3 => 4,
        }
    }
}

/// Kernel family, regime and the A3 coupling `d`. The argument shifts are
/// derived from the parameters on every call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelSpec {
    pub family: Family,
    pub regime: Regime,
    pub d: Complex64,
}

impl KernelSpec {
    pub fn a2(regime: Regime) -> Self {
        KernelSpec { family: Family::A2, regime, d: Complex64::new(0.0, 0.0) }
    }

    pub fn a3(regime: Regime, d: Complex64) -> Self {
        KernelSpec { family: Family::A3, regime, d }
    }

    /// `i(a_+ + a_-)/6`.
    pub fn delta2(params: &ModularParams) -> Complex64 {
        I * (params.a_plus + params.a_minus) / 6.0
    }

    /// `i(a_+ + a_-)/4`.
    pub fn delta3(params: &ModularParams) -> Complex64 {
        I * (params.a_plus + params.a_minus) / 4.0
    }

    /// `i alpha/6 - pi/3r` with `alpha = a_-`.
    pub fn delta_t2(params: &ModularParams) -> Complex64 {
        I * params.a_minus / 6.0 - PI / (3.0 * params.r)
    }

    /// `i alpha/4 - pi/4r` with `alpha = a_-`.
    pub fn delta_t3(params: &ModularParams) -> Complex64 {
        I * params.a_minus / 4.0 - PI / (4.0 * params.r)
    }

    /// The argument shift used by this spec's kernel.
    pub fn shift(&self, params: &ModularParams) -> Result<Complex64> {
        match (self.regime, self.family) {
            (Regime::Elliptic | Regime::Hyperbolic, Family::A2) => Ok(Self::delta2(params)),
            (Regime::Elliptic | Regime::Hyperbolic, Family::A3) => Ok(Self::delta3(params)),
            (Regime::Trigonometric, Family::A2) => Ok(Self::delta_t2(params)),
            (Regime::Trigonometric, Family::A3) => Ok(Self::delta_t3(params)),
            (Regime::Rational, _) => Err(Error::UnsupportedCombination("the rational regime has no S-kernel".into())),
        }
    }
}

/// The gamma function of `regime` (trigonometric: `alpha = a_-`).
pub fn regime_gamma(regime: Regime, params: &ModularParams, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    match regime {
        Regime::Elliptic => elliptic_gamma(params, z, cfg),
        Regime::Hyperbolic => hyperbolic_gamma(params.a_plus, params.a_minus, z, cfg),
        Regime::Trigonometric => trig_gamma(params.r, params.a_minus, z, cfg),
        Regime::Rational => Err(Error::UnsupportedCombination("no rational gamma kernel".into())),
    }
}

fn check_len(x: &Point, n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: x.len() });
    }
    Ok(())
}

/// `prod_{k,l,m} G(v_k + w_l + z_m - shift)`.
pub fn s2_kernel_shifted(
    regime: Regime,
    shift: Complex64,
    v: &Point,
    w: &Point,
    z: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    for x in [v, w, z] {
        check_len(x, 3)?;
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for a in v {
        for b in w {
            for c in z {
                prod *= regime_gamma(regime, params, a + b + c - shift, cfg)?;
            }
        }
    }
    Ok(prod)
}

/// A2 kernel `S_2(v, w, z)`.
pub fn s2_kernel(
    spec: &KernelSpec,
    v: &Point,
    w: &Point,
    z: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let shift = KernelSpec { family: Family::A2, ..*spec }.shift(params)?;
    s2_kernel_shifted(spec.regime, shift, v, w, z, params, cfg)
}

/// A3 kernel `S_3(d; v, w) = prod_{k,l} G(v_k + w_l - delta_3 + d) G(v_k + w_l - delta_3 - d)`.
pub fn s3_kernel(
    spec: &KernelSpec,
    d: Complex64,
    v: &Point,
    w: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    check_len(v, 4)?;
    check_len(w, 4)?;
    let shift = KernelSpec { family: Family::A3, ..*spec }.shift(params)?;
    let mut prod = Complex64::new(1.0, 0.0);
    for a in v {
        for b in w {
            let base = a + b - shift;
            prod *=
                regime_gamma(spec.regime, params, base + d, cfg)? * regime_gamma(spec.regime, params, base - d, cfg)?;
        }
    }
    Ok(prod)
}

fn pair_factor(regime: Regime, y: Complex64, params: &ModularParams, cfg: &EvalConfig) -> Result<Complex64> {
    match regime {
        Regime::Elliptic => Ok(p_const(params, Sign::Plus)
            * p_const(params, Sign::Minus)
            * s_fn(params, Sign::Plus, y, cfg)?
            * s_fn(params, Sign::Minus, y, cfg)?),
        Regime::Hyperbolic => Ok(4.0 * hyper_s(params.a_plus, y) * hyper_s(params.a_minus, y)),
        _ => Err(Error::UnsupportedCombination(format!("no weight function in the {} regime", regime.name()))),
    }
}

/// Weight function in its s-product form: `prod_{j<k} p_+ p_- s_+(x_j - x_k) s_-(x_j - x_k)`
/// (elliptic) or `prod_{j<k} 4 s_+ s_-` (hyperbolic).
pub fn weight(regime: Regime, x: &Point, params: &ModularParams, cfg: &EvalConfig) -> Result<Complex64> {
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            prod *= pair_factor(regime, x[j] - x[k], params, cfg)?;
        }
    }
    Ok(prod)
}

/// Weight function in its gamma-product form `prod_{j<k} G(+-(x_j - x_k) + ia)`.
pub fn weight_gamma_form(regime: Regime, x: &Point, params: &ModularParams, cfg: &EvalConfig) -> Result<Complex64> {
    if !matches!(regime, Regime::Elliptic | Regime::Hyperbolic) {
        return Err(Error::UnsupportedCombination(format!("no weight function in the {} regime", regime.name())));
    }
    let ia = I * params.a();
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            let y = x[j] - x[k];
            prod *= regime_gamma(regime, params, y + ia, cfg)? * regime_gamma(regime, params, -y + ia, cfg)?;
        }
    }
    Ok(prod)
}

/// Positive square root of the weight on the ordered chamber.
pub fn weight_sqrt(regime: Regime, x: &Point, params: &ModularParams, cfg: &EvalConfig) -> Result<Complex64> {
    ordered_chamber_check(regime, x, params, cfg.pole_guard)?;
    Ok(weight(regime, x, params, cfg)?.sqrt())
}

/// `W^{1/2}` continued along the straight path from an ordered real `base` to `target`.
pub fn weight_sqrt_continued(
    regime: Regime,
    base: &Point,
    target: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    ordered_chamber_check(regime, base, params, cfg.pole_guard)?;
    continued_sqrt(
        |t| {
            let z: Vec<Complex64> = base.iter().zip(target).map(|(a, b)| a + t * (b - a)).collect();
            weight(regime, &z, params, cfg)
        },
        cfg.continuation_max_steps.min(10),
    )
}

/// `K_2 = (W(v) W(w) W(z))^{1/2} S_2(v, w, z)` on the ordered chamber.
pub fn dressed_kernel_a2(
    regime: Regime,
    v: &Point,
    w: &Point,
    z: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let roots = weight_sqrt(regime, v, params, cfg)?
        * weight_sqrt(regime, w, params, cfg)?
        * weight_sqrt(regime, z, params, cfg)?;
    Ok(roots * s2_kernel(&KernelSpec::a2(regime), v, w, z, params, cfg)?)
}

/// `K_3 = (W(v) W(w))^{1/2} S_3(d; v, w)` on the ordered chamber.
pub fn dressed_kernel_a3(
    regime: Regime,
    d: Complex64,
    v: &Point,
    w: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let roots = weight_sqrt(regime, v, params, cfg)? * weight_sqrt(regime, w, params, cfg)?;
    Ok(roots * s3_kernel(&KernelSpec::a3(regime, d), d, v, w, params, cfg)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TodaKind {
    /// `prod_{j,k} G(tau (x_j - y_k))` with the hyperbolic gamma function.
    RelHyperbolic,
    /// `prod_{j,k} Gamma(i (x_j - y_k) / alpha)^sigma`, `alpha = a_-`.
    NonRelRational,
}

pub fn toda_kernel(
    kind: TodaKind,
    sign: Sign,
    x: &Point,
    y: &Point,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let mut prod = Complex64::new(1.0, 0.0);
    for a in x {
        for b in y {
            let u = a - b;
            prod *= match kind {
                TodaKind::RelHyperbolic => hyperbolic_gamma(params.a_plus, params.a_minus, sign.value() * u, cfg)?,
                TodaKind::NonRelRational => {
                    let g = euler_gamma_c(I * u / params.a_minus)?;
                    match sign {
                        Sign::Plus => g,
                        Sign::Minus => g.inv(),
                    }
                }
            };
        }
    }
    Ok(prod)
}
