//! Deterministic per-point sampling with pole rejection.

use super::{Check, Sample};
use crate::error::{Error, Result};
use crate::params::{ModularParams, Regime};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Rejections allowed per sample point before the suite gives up.
pub const MAX_REJECTIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplePlan {
    pub n_points: usize,
    pub rng_seed: u64,
    pub real_window: (f64, f64),
    pub imag_window: (f64, f64),
    pub constrained: bool,
    /// Pole guard used while sampling; points that bring any denominator closer
    /// to zero than this are redrawn.
    pub reject_margin: f64,
}

impl SamplePlan {
    /// Default windows: real parts in `(-pi/4r, pi/4r)` for the elliptic regime and
    /// `(-1, 1)` otherwise, imaginary parts in `(-0.1a, 0.1a)`.
    pub fn for_regime(
        regime: Regime,
        params: &ModularParams,
        n_points: usize,
        rng_seed: u64,
        constrained: bool,
    ) -> Self {
        let re = match regime {
            Regime::Elliptic => PI / (4.0 * params.r),
            _ => 1.0,
        };
        let im = 0.1 * params.a();
        SamplePlan {
            n_points,
            rng_seed,
            real_window: (-re, re),
            imag_window: (-im, im),
            constrained,
            reject_margin: 0.05 * params.min_a(),
        }
    }

    pub fn with_windows(mut self, re: f64, im: f64) -> Self {
        self.real_window = (-re, re);
        self.imag_window = (-im, im);
        self
    }

    pub fn with_constraint(mut self, constrained: bool) -> Self {
        self.constrained = constrained;
        self
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Random source for one sample point.
pub struct Draw<'a> {
    rng: ChaCha8Rng,
    plan: &'a SamplePlan,
}

impl<'a> Draw<'a> {
    /// The stream depends only on (seed, suite, index), never on scheduling.
    pub fn new(plan: &'a SamplePlan, suite: &str, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.rng_seed ^ fnv1a(suite));
        rng.set_stream(index as u64);
        Draw { rng, plan }
    }

    pub fn plan(&self) -> &SamplePlan {
        self.plan
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// A complex number from the plan's windows.
    pub fn complex(&mut self) -> Complex64 {
        let (rl, rh) = self.plan.real_window;
        let (il, ih) = self.plan.imag_window;
        Complex64::new(self.uniform(rl, rh), self.uniform(il, ih))
    }

    /// `n` independent coordinates.
    pub fn free_point(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| self.complex()).collect()
    }

    /// `n` coordinates summing to zero: `n - 1` drawn, the last one fixed.
    pub fn constrained_point(&mut self, n: usize) -> Vec<Complex64> {
        let mut x = self.free_point(n - 1);
        x.push(-x.iter().sum::<Complex64>());
        x
    }

    /// Constrained or free according to the plan.
    pub fn point(&mut self, n: usize) -> Vec<Complex64> {
        if self.plan.constrained {
            self.constrained_point(n)
        } else {
            self.free_point(n)
        }
    }

    /// Strictly decreasing real coordinates in `(lo, hi)`; centred when the plan
    /// is constrained.
    pub fn ordered_real(&mut self, n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
        let mut xs: Vec<f64> = (0..n).map(|_| self.uniform(lo, hi)).collect();
        xs.sort_by(|a, b| b.total_cmp(a));
        if self.plan.constrained {
            let mean = xs.iter().sum::<f64>() / n as f64;
            xs.iter_mut().for_each(|x| *x -= mean);
        }
        xs.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
    }

    /// Real exponent vector with entries in `(-bound, bound)`.
    pub fn exponents(&mut self, n: usize, bound: f64) -> Vec<f64> {
        (0..n).map(|_| self.uniform(-bound, bound)).collect()
    }
}

fn retryable(e: &Error) -> bool {
    matches!(
        e,
        Error::PoleProximity(_)
            | Error::NotInOrderedChamber
            | Error::ContinuationDepthExceeded(_)
            | Error::MagnitudeOverflow(_)
    )
}

/// Evaluates `eval` at `plan.n_points` points in parallel, redrawing a point
/// whenever evaluation reports pole proximity (or a non-finite value). Samples
/// come back in index order.
pub fn collect<F>(suite: &str, plan: &SamplePlan, eval: F) -> Result<Vec<Sample>>
where
    F: Fn(&mut Draw) -> Result<(Vec<Complex64>, Vec<Check>)> + Sync,
{
    (0..plan.n_points)
        .into_par_iter()
        .map(|index| {
            let mut draw = Draw::new(plan, suite, index);
            for attempt in 0..=MAX_REJECTIONS {
                match eval(&mut draw) {
                    Ok((point, checks)) => {
                        if checks.iter().any(|c| !c.is_finite()) {
                            continue;
                        }
                        return Ok(Sample::from_checks(index, attempt, point, &checks));
                    }
                    Err(e) if retryable(&e) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::SamplingExhausted { suite: suite.to_string(), index })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan() -> SamplePlan {
        SamplePlan::for_regime(Regime::Hyperbolic, &ModularParams::default(), 8, 42, true)
    }

    #[test]
    fn streams_depend_on_index_not_order() {
        let p = plan();
        let a: Vec<_> = (0..4).map(|i| Draw::new(&p, "s", i).complex()).collect();
        let b: Vec<_> = (0..4).rev().map(|i| Draw::new(&p, "s", i).complex()).collect();
        let b: Vec<_> = b.into_iter().rev().collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        assert_ne!(Draw::new(&p, "s", 0).complex(), Draw::new(&p, "t", 0).complex());
    }

    #[test]
    fn constrained_points_sum_to_zero() {
        let p = plan();
        let mut d = Draw::new(&p, "s", 3);
        let x = d.point(4);
        assert!(x.iter().sum::<Complex64>().norm() < 1e-15);
        let y = d.ordered_real(3, -1.2, 1.2);
        assert!(y[0].re > y[1].re && y[1].re > y[2].re);
        assert!(y.iter().sum::<Complex64>().norm() < 1e-15);
    }

    #[test]
    fn rejection_gives_up() {
        let p = plan();
        let r = collect("never", &p, |_| Err(Error::PoleProximity("x".into())));
        assert!(matches!(r, Err(Error::SamplingExhausted { .. })));
    }

    #[test]
    fn rejection_redraws() {
        let p = plan();
        let s = collect("half", &p, |d| {
            let z = d.complex();
            if z.re < 0.0 {
                Err(Error::PoleProximity("left".into()))
            } else {
                Ok((vec![z], vec![Check::Pair(z, z)]))
            }
        })
        .unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.iter().all(|x| x.point[0].re >= 0.0));
    }
}
