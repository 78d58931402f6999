use super::{rotate, Coefficient, DifferenceOperator, OperatorTerm, Point, RightFactor, ShiftVector, TermCoefficient};
use crate::continuation::continued_sqrt;
use crate::error::{Error, Result};
use crate::gamma::{hyper_c, hyper_s, p_const, s_fn, theta_r, I};
use crate::params::{EvalConfig, ModularParams, Regime, Sign};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

fn guard(den: Complex64, cfg: &EvalConfig, what: &str) -> Result<Complex64> {
    if den.norm() < cfg.pole_guard || !den.is_finite() {
        Err(Error::PoleProximity(format!("{what} denominator {den}")))
    } else {
        Ok(den)
    }
}

/// The even "numerator" block and odd "denominator" block of each regime,
/// together with the shift unit.
#[derive(Clone, Copy)]
struct Blocks {
    regime: Regime,
    delta: Sign,
    params: ModularParams,
    cfg: EvalConfig,
}

impl Blocks {
    fn new(regime: Regime, delta: Sign, params: &ModularParams, cfg: &EvalConfig) -> Self {
        Blocks { regime, delta, params: *params, cfg: *cfg }
    }

    fn alpha(&self) -> f64 {
        self.params.a_minus
    }

    /// Even block: `R_delta`, `c_delta`, `cos(r .)` or 1.
    fn even(&self, y: Complex64) -> Result<Complex64> {
        match self.regime {
            Regime::Elliptic => theta_r(&self.params, self.delta, y, &self.cfg),
            Regime::Hyperbolic => Ok(hyper_c(self.params.a_delta(self.delta), y)),
            Regime::Trigonometric => Ok((self.params.r * y).cos()),
            Regime::Rational => Ok(Complex64::new(1.0, 0.0)),
        }
    }

    /// Odd block evaluated at a coordinate difference: `R_delta(y - i a_delta/2)`,
    /// `s_delta`, `sin(r .)` or the difference itself.
    fn odd(&self, y: Complex64) -> Result<Complex64> {
        let v = match self.regime {
            Regime::Elliptic => {
                let h = 0.5 * self.params.a_delta(self.delta) * I;
                theta_r(&self.params, self.delta, y - h, &self.cfg)?
            }
            Regime::Hyperbolic => hyper_s(self.params.a_delta(self.delta), y),
            Regime::Trigonometric => (self.params.r * y).sin(),
            Regime::Rational => y,
        };
        guard(v, &self.cfg, self.regime.name())
    }

    fn shift_unit(&self) -> Complex64 {
        match self.regime {
            Regime::Elliptic | Regime::Hyperbolic => I * self.params.a_delta(self.delta.flip()),
            Regime::Trigonometric | Regime::Rational => I * self.alpha(),
        }
    }

    /// `e^{-k i r x_1}` in the trigonometric regime, 1 elsewhere.
    fn prefactor(&self, x1: Complex64, k: f64, enabled: bool) -> Complex64 {
        if enabled && self.regime == Regime::Trigonometric {
            (-k * I * self.params.r * x1).exp()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }
}

fn cyclic_operator<F>(n: usize, blocks: Blocks, constrained: bool, label: String, first: F) -> DifferenceOperator
where
    F: Fn(&Point) -> Result<Complex64> + Send + Sync + 'static,
{
    let first = Arc::new(first);
    let unit = blocks.shift_unit();
    let terms = (0..n)
        .map(|m| {
            let f = Arc::clone(&first);
            let coeff: Coefficient = Arc::new(move |x: &Point| f(&rotate(x, m)));
            OperatorTerm::plain(coeff, ShiftVector::cyclic(n, m, unit))
        })
        .collect();
    DifferenceOperator { arity: n, regime: blocks.regime, terms, label, constrained }
}

fn check_constraint(regime: Regime, constrained: bool) -> Result<()> {
    if regime == Regime::Trigonometric && !constrained {
        return Err(Error::UnsupportedCombination(
            "trigonometric operators are defined only on the zero-sum hyperplane".into(),
        ));
    }
    Ok(())
}

/// Three-term A2 operator. `delta` is ignored in the trigonometric and rational
/// regimes, `mu` in the rational regime.
pub fn build_a2(
    regime: Regime,
    delta: Sign,
    mu: Complex64,
    constrained: bool,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<DifferenceOperator> {
    build_a2_variant(regime, delta, mu, constrained, params, cfg, true)
}

/// As [`build_a2`]; `trig_prefactor = false` drops the `e^{-9irx_1}` factor of
/// the trigonometric operator.
pub fn build_a2_variant(
    regime: Regime,
    delta: Sign,
    mu: Complex64,
    constrained: bool,
    params: &ModularParams,
    cfg: &EvalConfig,
    trig_prefactor: bool,
) -> Result<DifferenceOperator> {
    params.validate()?;
    check_constraint(regime, constrained)?;
    let b = Blocks::new(regime, delta, params, cfg);
    let label = format!("A2 {} delta={} mu={mu}", regime.name(), delta.symbol());
    Ok(cyclic_operator(3, b, constrained, label, move |x: &Point| {
        let y = x[1] - x[2];
        let num =
            if regime == Regime::Rational { Complex64::new(1.0, 0.0) } else { b.even(y + mu)? * b.even(y - mu)? };
        let den = b.odd(x[0] - x[1])? * b.odd(x[0] - x[2])?;
        Ok(b.prefactor(x[0], 9.0, trig_prefactor) * num / den)
    }))
}

/// Four-term A3 operator.
pub fn build_a3(
    regime: Regime,
    delta: Sign,
    constrained: bool,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<DifferenceOperator> {
    params.validate()?;
    check_constraint(regime, constrained)?;
    let b = Blocks::new(regime, delta, params, cfg);
    let label = format!("A3 {} delta={}", regime.name(), delta.symbol());
    Ok(cyclic_operator(4, b, constrained, label, move |x: &Point| {
        let num = b.even(x[1] - x[2])? * b.even(x[2] - x[3])? * b.even(x[3] - x[1])?;
        let den = b.odd(x[0] - x[1])? * b.odd(x[0] - x[2])? * b.odd(x[0] - x[3])?;
        Ok(b.prefactor(x[0], 8.0, true) * num / den)
    }))
}

/// Factor `lambda` with `W^{1/2} (lambda A) W^{-1/2} = H` for the Hamiltonians below.
pub fn hamiltonian_normalization(regime: Regime, arity: usize) -> Complex64 {
    match regime {
        Regime::Hyperbolic => I.powi(arity as i32 - 1),
        _ => Complex64::new(1.0, 0.0),
    }
}

/// Errors unless `x` is real and strictly decreasing (and, in the elliptic
/// regime, spans less than the period `pi/r`).
pub fn ordered_chamber_check(regime: Regime, x: &Point, params: &ModularParams, margin: f64) -> Result<()> {
    if x.iter().any(|c| c.im.abs() > margin) {
        return Err(Error::NotInOrderedChamber);
    }
    if x.windows(2).any(|w| w[0].re - w[1].re <= margin) {
        return Err(Error::NotInOrderedChamber);
    }
    if regime == Regime::Elliptic && x[0].re - x[x.len() - 1].re >= PI / params.r - margin {
        return Err(Error::NotInOrderedChamber);
    }
    Ok(())
}

/// `s_delta` of the regime, used by the weight factors `V_m`.
fn weight_s(regime: Regime, delta: Sign, params: &ModularParams, cfg: &EvalConfig, y: Complex64) -> Result<Complex64> {
    match regime {
        Regime::Elliptic => s_fn(params, delta, y, cfg),
        _ => Ok(hyper_s(params.a_delta(delta), y)),
    }
}

/// `V_m(x) = 1 / prod_{j != m} s_delta(x_min(m,j) - x_max(m,j))`.
fn v_m(
    regime: Regime,
    delta: Sign,
    params: &ModularParams,
    cfg: &EvalConfig,
    m: usize,
    x: &Point,
) -> Result<Complex64> {
    let mut den = Complex64::new(1.0, 0.0);
    for j in (0..x.len()).filter(|&j| j != m) {
        let (lo, hi) = (m.min(j), m.max(j));
        den *= weight_s(regime, delta, params, cfg, x[lo] - x[hi])?;
    }
    Ok(guard(den, cfg, "V")?.inv())
}

fn hamiltonian(
    regime: Regime,
    delta: Sign,
    n: usize,
    params: &ModularParams,
    cfg: &EvalConfig,
    label: String,
    numerator: Coefficient,
) -> Result<DifferenceOperator> {
    if !matches!(regime, Regime::Elliptic | Regime::Hyperbolic) {
        return Err(Error::UnsupportedCombination(format!(
            "Hamiltonians exist only in the elliptic and hyperbolic regimes, not {}",
            regime.name()
        )));
    }
    params.validate()?;
    let (p, c) = (*params, *cfg);
    let other = p.a_delta(delta.flip());
    let pref = match (regime, n) {
        (Regime::Elliptic, 3) => (-p.r * other).exp() / p_const(&p, delta).powi(2),
        (Regime::Elliptic, _) => (-1.5 * p.r * other).exp() / p_const(&p, delta).powi(3),
        _ => 1.0,
    };
    let unit = I * other;
    let terms = (0..n)
        .map(|m| {
            let num = Arc::clone(&numerator);
            let left: Coefficient = Arc::new(move |x: &Point| {
                ordered_chamber_check(regime, x, &p, c.pole_guard)?;
                let v = v_m(regime, delta, &p, &c, m, x)?;
                Ok(pref * num(&rotate(x, m))? * v.sqrt())
            });
            let right: RightFactor = Arc::new(move |x: &Point, y: &Point| {
                continued_sqrt(
                    |t| {
                        let z: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| a + t * (b - a)).collect();
                        v_m(regime, delta, &p, &c, m, &z)
                    },
                    c.continuation_max_steps.min(10),
                )
            });
            OperatorTerm { coefficient: TermCoefficient::Split { left, right }, shift: ShiftVector::cyclic(n, m, unit) }
        })
        .collect();
    Ok(DifferenceOperator { arity: n, regime, terms, label, constrained: false })
}

/// Formally self-adjoint A2 Hamiltonian, defined on the ordered real chamber.
pub fn build_h2(
    regime: Regime,
    delta: Sign,
    mu: Complex64,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<DifferenceOperator> {
    let b = Blocks::new(regime, delta, params, cfg);
    let numerator = Arc::new(move |x: &Point| {
        let y = x[1] - x[2];
        Ok(b.even(y + mu)? * b.even(y - mu)?)
    });
    let label = format!("H2 {} delta={} mu={mu}", regime.name(), delta.symbol());
    hamiltonian(regime, delta, 3, params, cfg, label, numerator)
}

/// Formally self-adjoint A3 Hamiltonian, defined on the ordered real chamber.
pub fn build_h3(regime: Regime, delta: Sign, params: &ModularParams, cfg: &EvalConfig) -> Result<DifferenceOperator> {
    let b = Blocks::new(regime, delta, params, cfg);
    let numerator = Arc::new(move |x: &Point| Ok(b.even(x[1] - x[2])? * b.even(x[2] - x[3])? * b.even(x[3] - x[1])?));
    let label = format!("H3 {} delta={}", regime.name(), delta.symbol());
    hamiltonian(regime, delta, 4, params, cfg, label, numerator)
}

/// The hyperbolic pair `(B_delta, C_delta)` with `2 A_2(mu) = c_delta(2 mu) B_delta + C_delta`.
pub fn build_b_c(
    delta: Sign,
    params: &ModularParams,
    cfg: &EvalConfig,
) -> Result<(DifferenceOperator, DifferenceOperator)> {
    params.validate()?;
    let b = Blocks::new(Regime::Hyperbolic, delta, params, cfg);
    let op_b = cyclic_operator(3, b, false, format!("B delta={}", delta.symbol()), move |x: &Point| {
        Ok((b.odd(x[0] - x[1])? * b.odd(x[0] - x[2])?).inv())
    });
    let op_c = cyclic_operator(3, b, false, format!("C delta={}", delta.symbol()), move |x: &Point| {
        Ok(b.even(2.0 * (x[1] - x[2]))? / (b.odd(x[0] - x[1])? * b.odd(x[0] - x[2])?))
    });
    Ok((op_b, op_c))
}

#[cfg(test)]
mod tests {
    use super::super::apply;
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn defaults() -> (ModularParams, EvalConfig) {
        (ModularParams::default(), EvalConfig::default())
    }

    #[test]
    fn term_counts_and_shift_sums() {
        let (p, cfg) = defaults();
        for regime in [Regime::Elliptic, Regime::Hyperbolic, Regime::Trigonometric, Regime::Rational] {
            let a2 = build_a2(regime, Sign::Plus, c(0.3, 0.0), true, &p, &cfg).unwrap();
            let a3 = build_a3(regime, Sign::Minus, true, &p, &cfg).unwrap();
            assert_eq!(a2.terms.len(), 3);
            assert_eq!(a3.terms.len(), 4);
            for t in a2.terms.iter().chain(&a3.terms) {
                assert!(t.shift.sum().norm() < 1e-15);
            }
        }
    }

    #[test]
    fn a3_shift_pattern() {
        let (p, cfg) = defaults();
        let a3 = build_a3(Regime::Elliptic, Sign::Plus, false, &p, &cfg).unwrap();
        let s = a3.terms[2].shift.components();
        let unit = p.a_minus / 4.0;
        let want = [-unit, -unit, 3.0 * unit, -unit];
        for (a, b) in s.iter().zip(want) {
            assert!((a - c(0.0, b)).norm() < 1e-15);
        }
    }

    #[test]
    fn trig_unconstrained_is_rejected() {
        let (p, cfg) = defaults();
        let err = build_a2(Regime::Trigonometric, Sign::Plus, c(0.3, 0.0), false, &p, &cfg).unwrap_err();
        assert!(matches!(err, Error::UnsupportedCombination(_)));
    }

    #[test]
    fn rational_annihilates_constants() {
        let (p, cfg) = defaults();
        let x3 = [c(1.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        let a2 = build_a2(Regime::Rational, Sign::Plus, c(0.0, 0.0), false, &p, &cfg).unwrap();
        assert!(apply(&a2, |_| Ok(c(1.0, 0.0)), &x3).unwrap().norm() < 1e-12);
        let x4 = [c(0.3, 0.1), c(-1.2, 0.0), c(0.8, -0.2), c(2.0, 0.3)];
        let a3 = build_a3(Regime::Rational, Sign::Plus, false, &p, &cfg).unwrap();
        assert!(apply(&a3, |_| Ok(c(1.0, 0.0)), &x4).unwrap().norm() < 1e-12);
    }

    #[test]
    fn hyperbolic_a3_annihilates_constants_on_hyperplane() {
        let (p, cfg) = defaults();
        let op = build_a3(Regime::Hyperbolic, Sign::Plus, true, &p, &cfg).unwrap();
        let x = [c(0.4, 0.05), c(-0.3, 0.02), c(0.15, -0.04), c(-0.25, -0.03)];
        let v = apply(&op, |_| Ok(c(1.0, 0.0)), &x).unwrap();
        assert!(v.norm() < 1e-10, "{v}");
    }

    #[test]
    fn delta_swap_symmetry() {
        let (p, cfg) = defaults();
        let mu = c(0.3, 0.0);
        let plus = build_a2(Regime::Elliptic, Sign::Plus, mu, false, &p, &cfg).unwrap();
        let minus = build_a2(Regime::Elliptic, Sign::Minus, mu, false, &p.swapped(), &cfg).unwrap();
        let x = [c(0.31, 0.02), c(-0.45, 0.07), c(0.6, -0.03)];
        let a = (plus.terms[0].coefficient_at(&x, &x)).unwrap();
        let b = (minus.terms[0].coefficient_at(&x, &x)).unwrap();
        assert!((a - b).norm() < 1e-11 * a.norm());
    }

    #[test]
    fn hamiltonian_needs_ordered_chamber() {
        let (p, cfg) = defaults();
        let h = build_h2(Regime::Elliptic, Sign::Plus, c(0.3, 0.0), &p, &cfg).unwrap();
        let bad = [c(-0.2, 0.0), c(0.1, 0.0), c(0.1, 0.0)];
        let err = apply(&h, |_| Ok(c(1.0, 0.0)), &bad).unwrap_err();
        assert_eq!(err, Error::NotInOrderedChamber);
        assert!(build_h3(Regime::Rational, Sign::Plus, &p, &cfg).is_err());
    }

    #[test]
    fn hamiltonian_coefficients_real_on_chamber() {
        let (p, cfg) = defaults();
        let x = [c(0.5, 0.0), c(0.05, 0.0), c(-0.55, 0.0)];
        for regime in [Regime::Elliptic, Regime::Hyperbolic] {
            let h = build_h2(regime, Sign::Minus, c(0.3, 0.0), &p, &cfg).unwrap();
            for m in 0..3 {
                let y = h.shifted_point(m, &x).unwrap();
                let (l, r) = h.terms[m].split_values(&x, &y).unwrap();
                let prod = l * h.terms[m].split_values(&x, &x).unwrap().1;
                assert!(prod.im.abs() < 1e-12 * prod.norm() && prod.re > 0.0);
                assert!(r.is_finite());
            }
        }
    }

    #[test]
    fn b_c_split() {
        let (p, cfg) = defaults();
        let mu = c(0.3, 0.1);
        let a = build_a2(Regime::Hyperbolic, Sign::Plus, mu, false, &p, &cfg).unwrap();
        let (b, cc) = build_b_c(Sign::Plus, &p, &cfg).unwrap();
        let f = |x: &Point| Ok((x[0] * 0.7 - x[1] * 1.3 + x[2] * 0.2).exp());
        let x = [c(0.2, 0.03), c(-0.5, 0.01), c(0.9, -0.04)];
        let lhs = 2.0 * apply(&a, f, &x).unwrap();
        let rhs = hyper_c(p.a_plus, 2.0 * mu) * apply(&b, f, &x).unwrap() + apply(&cc, f, &x).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }
}
