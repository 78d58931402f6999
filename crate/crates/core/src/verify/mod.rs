//! Sampled numerical checks of the kernel, reduction, residue, commutation and
//! Hamiltonian identities, with machine-readable reports.

pub mod reduced;
pub mod residue;
pub mod sampling;
mod suites;

pub use residue::{residue_probe, CatalogFamily, PoleCatalog};
pub use sampling::{Draw, SamplePlan};
pub use suites::{
    check_kernel_identity, check_unconstrained_failure, registry, run_all, run_suite, suite_names, suite_plan,
    SuiteInfo, UNCONSTRAINED_EXPONENTS,
};

use crate::params::{EvalConfig, ModularParams};
use num_complex::Complex64;
use serde::Serialize;

/// Fraction of points that must exceed the failure floor for an inequality
/// suite to pass.
pub const CERTIFY_FRACTION: f64 = 0.95;

/// `|l - r| / (|l| + |r|)`, symmetric and scale invariant.
pub fn rel_error(l: Complex64, r: Complex64) -> f64 {
    (l - r).norm() / (l.norm() + r.norm() + 1e-300)
}

/// One comparison made at a sample point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Check {
    /// Two sides that should agree.
    Pair(Complex64, Complex64),
    /// A sum that should vanish, measured against the sum of its terms' moduli.
    ZeroSum { sum: Complex64, scale: f64 },
    /// A yes/no condition (sign or reality witness).
    Witness(bool),
}

impl Check {
    pub fn rel_error(&self) -> f64 {
        match *self {
            Check::Pair(l, r) => rel_error(l, r),
            Check::ZeroSum { sum, scale } => sum.norm() / (scale + 1e-300),
            Check::Witness(ok) => {
                if ok {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    fn sides(&self) -> (Complex64, Complex64) {
        match *self {
            Check::Pair(l, r) => (l, r),
            Check::ZeroSum { sum, .. } => (sum, Complex64::new(0.0, 0.0)),
            Check::Witness(ok) => (Complex64::new(if ok { 1.0 } else { 0.0 }, 0.0), Complex64::new(1.0, 0.0)),
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Check::Pair(l, r) => l.is_finite() && r.is_finite(),
            Check::ZeroSum { sum, scale } => sum.is_finite() && scale.is_finite(),
            Check::Witness(_) => true,
        }
    }
}

/// Result at one sample point; `lhs`/`rhs` belong to the worst of its checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub index: usize,
    pub attempts: usize,
    pub point: Vec<Complex64>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_error: f64,
}

impl Sample {
    pub fn from_checks(index: usize, attempts: usize, point: Vec<Complex64>, checks: &[Check]) -> Self {
        let worst = checks
            .iter()
            .copied()
            .max_by(|a, b| a.rel_error().total_cmp(&b.rel_error()))
            .unwrap_or(Check::Witness(true));
        let (lhs, rhs) = worst.sides();
        Sample { index, attempts, point, lhs, rhs, rel_error: worst.rel_error() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    /// Passes when every relative error is below the threshold.
    Identity,
    /// Certifies that an identity fails: passes when at least
    /// [`CERTIFY_FRACTION`] of the points exceed the failure floor.
    Inequality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Deliberate corruptions used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Flip the sign of the A2 kernel shift `delta_2`.
    FlipDelta2,
}

/// Everything a suite run depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub params: ModularParams,
    pub cfg: EvalConfig,
    pub mu: Complex64,
    pub mu_prime: Complex64,
    pub d: Complex64,
    pub seed: u64,
    /// Overrides every suite's default point count.
    pub points: Option<usize>,
    pub failure_floor: f64,
    pub mutation: Option<Mutation>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: ModularParams::default(),
            cfg: EvalConfig::default(),
            mu: Complex64::new(0.3, 0.0),
            mu_prime: Complex64::new(0.41, 0.2),
            d: Complex64::new(0.2, 0.1),
            seed: 42,
            points: None,
            failure_floor: 1e-3,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstPoint {
    pub index: usize,
    pub point: Vec<Complex64>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_error: f64,
}

/// Per-suite record of the sampled points and the verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub suite: String,
    pub description: String,
    pub kind: SuiteKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub params: ModularParams,
    pub mu: Complex64,
    pub mu_prime: Complex64,
    pub d: Complex64,
    pub seed: u64,
    pub n_points: usize,
    pub threshold: f64,
    pub failure_floor: f64,
    pub max_rel_error: f64,
    pub min_rel_error: f64,
    pub fraction_above_floor: f64,
    pub verdict: Verdict,
    pub worst_point: Option<WorstPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub samples: Vec<Sample>,
}

impl IdentityReport {
    /// Builds the report and its verdict. An evaluation error yields FAIL.
    pub fn assemble(info: &SuiteInfo, ctx: &RunConfig, samples: crate::Result<Vec<Sample>>) -> Self {
        let (samples, error) = match samples {
            Ok(s) => (s, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        let errs: Vec<f64> = samples.iter().map(|s| s.rel_error).collect();
        let max = errs.iter().copied().fold(0.0, f64::max);
        let min = errs.iter().copied().fold(f64::INFINITY, f64::min);
        let above = errs.iter().filter(|&&e| e > ctx.failure_floor).count();
        let fraction = if errs.is_empty() { 0.0 } else { above as f64 / errs.len() as f64 };
        let threshold = match info.kind {
            SuiteKind::Identity => info.threshold,
            SuiteKind::Inequality => ctx.failure_floor,
        };
        let ok = error.is_none()
            && !samples.is_empty()
            && match info.kind {
                SuiteKind::Identity => max < threshold,
                SuiteKind::Inequality => fraction >= CERTIFY_FRACTION,
            };
        let worst_point = samples.iter().max_by(|a, b| a.rel_error.total_cmp(&b.rel_error)).map(|s| WorstPoint {
            index: s.index,
            point: s.point.clone(),
            lhs: s.lhs,
            rhs: s.rhs,
            rel_error: s.rel_error,
        });
        IdentityReport {
            suite: info.name.to_string(),
            description: info.description.to_string(),
            kind: info.kind,
            label: info.label.map(str::to_string),
            params: ctx.params,
            mu: ctx.mu,
            mu_prime: ctx.mu_prime,
            d: ctx.d,
            seed: ctx.seed,
            n_points: samples.len(),
            threshold,
            failure_floor: ctx.failure_floor,
            max_rel_error: max,
            min_rel_error: if min.is_finite() { min } else { 0.0 },
            fraction_above_floor: fraction,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            worst_point,
            error,
            samples,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn metric_is_symmetric_and_scale_invariant() {
        let (l, r) = (c(1.0, 0.3), c(1.0001, 0.2999));
        assert_eq!(rel_error(l, r), rel_error(r, l));
        let e = rel_error(l * 1e6, r * 1e6);
        assert!((e - rel_error(l, r)).abs() < 1e-15 * e.max(1e-300) * 1e3);
        assert_eq!(rel_error(c(0.0, 0.0), c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn witness_and_zero_sum() {
        assert_eq!(Check::Witness(false).rel_error(), 1.0);
        assert_eq!(Check::ZeroSum { sum: c(1e-3, 0.0), scale: 10.0 }.rel_error(), 1e-4);
        let s = Sample::from_checks(0, 0, vec![], &[Check::Pair(c(1.0, 0.0), c(1.0, 0.0)), Check::Witness(false)]);
        assert_eq!(s.rel_error, 1.0);
    }

    fn info(kind: SuiteKind) -> SuiteInfo {
        SuiteInfo { name: "t", description: "test", threshold: 1e-8, kind, points: 3, label: None }
    }

    fn samples(errs: &[f64]) -> Vec<Sample> {
        errs.iter()
            .enumerate()
            .map(|(i, &e)| Sample {
                index: i,
                attempts: 0,
                point: vec![],
                lhs: c(1.0, 0.0),
                rhs: c(1.0, 0.0),
                rel_error: e,
            })
            .collect()
    }

    #[test]
    fn verdicts() {
        let ctx = RunConfig::default();
        assert!(IdentityReport::assemble(&info(SuiteKind::Identity), &ctx, Ok(samples(&[1e-12, 1e-9]))).passed());
        assert!(!IdentityReport::assemble(&info(SuiteKind::Identity), &ctx, Ok(samples(&[1e-12, 1e-7]))).passed());
        let mut many = vec![0.5; 19];
        many.push(1e-6);
        assert!(IdentityReport::assemble(&info(SuiteKind::Inequality), &ctx, Ok(samples(&many))).passed());
        many.push(1e-6);
        assert!(!IdentityReport::assemble(&info(SuiteKind::Inequality), &ctx, Ok(samples(&many))).passed());
        let err =
            IdentityReport::assemble(&info(SuiteKind::Identity), &ctx, Err(crate::Error::UnknownSuite("x".into())));
        assert!(!err.passed() && err.error.is_some());
    }
}
