//! Analytic difference operators as finite sums of (coefficient, shift) terms.

mod builders;

pub use builders::{
    build_a2, build_a2_variant, build_a3, build_b_c, build_h2, build_h3, hamiltonian_normalization,
    ordered_chamber_check,
};

use crate::error::{Error, Result};
use crate::params::Regime;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

pub type Point = [Complex64];
pub type Coefficient = Arc<dyn Fn(&Point) -> Result<Complex64> + Send + Sync>;
/// Right factor of a split coefficient, called with the base point and the shifted point.
pub type RightFactor = Arc<dyn Fn(&Point, &Point) -> Result<Complex64> + Send + Sync>;

/// Imaginary argument shift of one operator term. Components sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftVector(Vec<Complex64>);

impl ShiftVector {
    pub fn new(components: Vec<Complex64>) -> Self {
        ShiftVector(components)
    }

    /// `unit * ((n-1)/n at slot m, -1/n elsewhere)`.
    pub fn cyclic(n: usize, m: usize, unit: Complex64) -> Self {
        let nf = n as f64;
        ShiftVector((0..n).map(|j| if j == m { unit * (nf - 1.0) / nf } else { -unit / nf }).collect())
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Complex64 {
        self.0.iter().sum()
    }
}

/// A point on the zero-sum hyperplane, stored by its first `N-1` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedPoint {
    free: Vec<Complex64>,
}

impl ConstrainedPoint {
    pub fn from_free(free: Vec<Complex64>) -> Self {
        ConstrainedPoint { free }
    }

    /// Accepts a full point whose coordinates sum to zero up to rounding.
    pub fn from_full(x: &Point) -> Result<Self> {
        let (last, free) = x.split_last().ok_or(Error::NotConstrained)?;
        let scale: f64 = 1.0 + x.iter().map(|c| c.norm()).sum::<f64>();
        let total: Complex64 = free.iter().sum::<Complex64>() + last;
        if total.norm() > 1e-9 * scale {
            return Err(Error::NotConstrained);
        }
        Ok(ConstrainedPoint { free: free.to_vec() })
    }

    pub fn arity(&self) -> usize {
        self.free.len() + 1
    }

    pub fn free(&self) -> &[Complex64] {
        &self.free
    }

    pub fn full(&self) -> Vec<Complex64> {
        let mut x = self.free.clone();
        x.push(-self.free.iter().sum::<Complex64>());
        x
    }

    /// Shifts the free coordinates; the last one follows, so the sum stays zero.
    pub fn shifted(&self, shift: &ShiftVector) -> Self {
        let free = self.free.iter().zip(shift.components()).map(|(x, s)| x + s).collect();
        ConstrainedPoint { free }
    }
}

#[derive(Clone)]
pub enum TermCoefficient {
    Plain(Coefficient),
    Split { left: Coefficient, right: RightFactor },
}

#[derive(Clone)]
pub struct OperatorTerm {
    pub coefficient: TermCoefficient,
    pub shift: ShiftVector,
}

impl OperatorTerm {
    pub fn plain(coefficient: Coefficient, shift: ShiftVector) -> Self {
        OperatorTerm { coefficient: TermCoefficient::Plain(coefficient), shift }
    }

    /// Full coefficient multiplying `f(shifted)`.
    pub fn coefficient_at(&self, x: &Point, shifted: &Point) -> Result<Complex64> {
        match &self.coefficient {
            TermCoefficient::Plain(c) => c(x),
            TermCoefficient::Split { left, right } => Ok(left(x)? * right(x, shifted)?),
        }
    }

    /// The `(left, right)` factor pair at `x`; plain terms report a unit right factor.
    pub fn split_values(&self, x: &Point, shifted: &Point) -> Result<(Complex64, Complex64)> {
        match &self.coefficient {
            TermCoefficient::Plain(c) => Ok((c(x)?, Complex64::new(1.0, 0.0))),
            TermCoefficient::Split { left, right } => Ok((left(x)?, right(x, shifted)?)),
        }
    }
}

#[derive(Clone)]
pub struct DifferenceOperator {
    pub arity: usize,
    pub regime: Regime,
    pub terms: Vec<OperatorTerm>,
    pub label: String,
    pub constrained: bool,
}

impl fmt::Debug for DifferenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DifferenceOperator")
            .field("label", &self.label)
            .field("arity", &self.arity)
            .field("regime", &self.regime)
            .field("terms", &self.terms.len())
            .field("constrained", &self.constrained)
            .finish()
    }
}

impl DifferenceOperator {
    pub fn zero(arity: usize, regime: Regime) -> Self {
        DifferenceOperator { arity, regime, terms: Vec::new(), label: "zero".into(), constrained: false }
    }

    /// Point reached by term `m` from `x`.
    pub fn shifted_point(&self, m: usize, x: &Point) -> Result<Vec<Complex64>> {
        let shift = &self.terms[m].shift;
        if self.constrained {
            Ok(ConstrainedPoint::from_full(x)?.shifted(shift).full())
        } else {
            Ok(x.iter().zip(shift.components()).map(|(a, s)| a + s).collect())
        }
    }

    fn check_arity(&self, x: &Point) -> Result<()> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: x.len() });
        }
        Ok(())
    }
}

/// `sum_m coeff_m(x) f(x + shift_m)`.
pub fn apply<F>(op: &DifferenceOperator, f: F, x: &Point) -> Result<Complex64>
where
    F: Fn(&Point) -> Result<Complex64>,
{
    op.check_arity(x)?;
    let mut total = Complex64::new(0.0, 0.0);
    for (m, term) in op.terms.iter().enumerate() {
        let y = op.shifted_point(m, x)?;
        total += term.coefficient_at(x, &y)? * f(&y)?;
    }
    Ok(total)
}

/// `(A B - B A) f` at `x`.
pub fn commutator_apply<F>(a: &DifferenceOperator, b: &DifferenceOperator, f: F, x: &Point) -> Result<Complex64>
where
    F: Fn(&Point) -> Result<Complex64>,
{
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { expected: a.arity, got: b.arity });
    }
    let ab = apply(a, |y| apply(b, &f, y), x)?;
    let ba = apply(b, |y| apply(a, &f, y), x)?;
    Ok(ab - ba)
}

/// Rotation bringing coordinate `m` to the front: `(x_m, x_{m+1}, ...)`.
pub fn rotate(x: &Point, m: usize) -> Vec<Complex64> {
    let n = x.len();
    (0..n).map(|j| x[(m + j) % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_shift_on_exponential() {
        let s = ShiftVector::new(vec![c(0.0, 0.3), c(0.0, -0.1), c(0.0, -0.2)]);
        let op = DifferenceOperator {
            arity: 3,
            regime: Regime::Rational,
            terms: vec![OperatorTerm::plain(Arc::new(|_| Ok(c(1.0, 0.0))), s.clone())],
            label: "shift".into(),
            constrained: false,
        };
        let k = [1.5, -0.5, 2.0];
        let f = |x: &Point| Ok(x.iter().zip(k).map(|(x, k)| x * k).sum::<Complex64>().exp());
        let x = [c(0.1, 0.0), c(0.2, 0.1), c(-0.4, 0.0)];
        let phase: Complex64 = s.components().iter().zip(k).map(|(s, k)| s * k).sum::<Complex64>().exp();
        let got = apply(&op, f, &x).unwrap();
        assert!((got - phase * f(&x).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn zero_operator() {
        let op = DifferenceOperator::zero(3, Regime::Rational);
        let v = apply(&op, |_| Ok(c(2.0, 0.0)), &[c(0.0, 0.0); 3]).unwrap();
        assert_eq!(v, c(0.0, 0.0));
        assert!(apply(&op, |_| Ok(c(2.0, 0.0)), &[c(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn constrained_shift_keeps_zero_sum() {
        let p = ConstrainedPoint::from_free(vec![c(0.3, 0.01), c(-0.7, 0.02), c(0.1, -0.05)]);
        let s = ShiftVector::cyclic(4, 2, c(0.0, 0.75));
        let q = p.shifted(&s).full();
        assert!(q.iter().sum::<Complex64>().norm() < 1e-16);
        assert!(ConstrainedPoint::from_full(&[c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn cyclic_shift_components() {
        let s = ShiftVector::cyclic(4, 1, c(0.0, 1.0));
        assert!((s.components()[1] - c(0.0, 0.75)).norm() < 1e-16);
        assert!(s.sum().norm() < 1e-16);
    }
}
