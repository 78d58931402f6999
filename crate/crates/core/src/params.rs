//! Modular parameters and evaluation settings.

use crate::error::{Error, Result};
use serde::Serialize;

/// Choice between the two modular parameters `a_+` and `a_-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Degeneration level of the gamma function and the operators built on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    Elliptic,
    Hyperbolic,
    Trigonometric,
    Rational,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Elliptic => "elliptic",
            Regime::Hyperbolic => "hyperbolic",
            Regime::Trigonometric => "trigonometric",
            Regime::Rational => "rational",
        }
    }
}

/// `r` sets the real period `pi/r`; `a_plus`, `a_minus` are the two imaginary periods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularParams {
    pub r: f64,
    pub a_plus: f64,
    pub a_minus: f64,
}

impl Default for ModularParams {
    fn default() -> Self {
        ModularParams { r: 1.0, a_plus: 1.0, a_minus: 0.75 }
    }
}

impl ModularParams {
    pub fn new(r: f64, a_plus: f64, a_minus: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("a_plus", a_plus), ("a_minus", a_minus)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(ModularParams { r, a_plus, a_minus })
    }

    pub fn validate(&self) -> Result<()> {
        ModularParams::new(self.r, self.a_plus, self.a_minus).map(|_| ())
    }

    /// Mean period `a = (a_+ + a_-)/2`.
    pub fn a(&self) -> f64 {
        0.5 * (self.a_plus + self.a_minus)
    }

    pub fn a_delta(&self, delta: Sign) -> f64 {
        match delta {
            Sign::Plus => self.a_plus,
            Sign::Minus => self.a_minus,
        }
    }

    pub fn min_a(&self) -> f64 {
        self.a_plus.min(self.a_minus)
    }

    pub fn swapped(&self) -> Self {
        ModularParams { r: self.r, a_plus: self.a_minus, a_minus: self.a_plus }
    }
}

/// Numerical controls for every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    pub target_tol: f64,
    pub max_product_terms: usize,
    pub quad_rel_tol: f64,
    pub quad_max_depth: usize,
    pub continuation_max_steps: usize,
    pub pole_guard: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_tol: 1e-12,
            max_product_terms: 4000,
            quad_rel_tol: 1e-13,
            quad_max_depth: 60,
            continuation_max_steps: 24,
            pole_guard: 1e-10,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        let eps100 = f64::EPSILON * 100.0;
        if !(self.target_tol >= eps100 && self.target_tol < 1.0) {
            return Err(Error::InvalidParams(format!(
                "target_tol must lie in [{eps100:e}, 1), got {}",
                self.target_tol
            )));
        }
        if !(self.quad_rel_tol > 0.0 && self.quad_rel_tol < 1.0) {
            return Err(Error::InvalidParams("quad_rel_tol must lie in (0, 1)".into()));
        }
        if self.pole_guard.is_nan() || self.pole_guard <= 0.0 {
            return Err(Error::InvalidParams("pole_guard must be positive".into()));
        }
        if self.max_product_terms == 0 || self.quad_max_depth == 0 {
            return Err(Error::InvalidParams("term and depth limits must be positive".into()));
        }
        Ok(())
    }

    pub fn with_pole_guard(mut self, guard: f64) -> Self {
        self.pole_guard = guard;
        self
    }
}
