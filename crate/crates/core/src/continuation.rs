//! Square roots continued along a path.

use crate::error::{Error, Result};
use num_complex::Complex64;

const BASE_STEPS: usize = 64;
const MAX_JUMP: f64 = 0.25;

/// Continues `sqrt(g(t))` from `t = 0`, where the principal root is taken, to
/// `t = 1`, picking at each step the root nearest the previous one. The step
/// count doubles (up to `max_doublings` times) while any step jumps by more
/// than a quarter of the root's modulus.
pub fn continued_sqrt<G>(g: G, max_doublings: usize) -> Result<Complex64>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let start = g(0.0)?.sqrt();
    let mut steps = BASE_STEPS;
    'refine: for _ in 0..=max_doublings {
        let mut prev = start;
        let n = steps;
        for k in 1..=n {
            let s = g(k as f64 / n as f64)?.sqrt();
            let cand = if (s - prev).norm() <= (s + prev).norm() { s } else { -s };
            if (cand - prev).norm() > MAX_JUMP * cand.norm().max(prev.norm()) {
                steps *= 2;
                continue 'refine;
            }
            prev = cand;
        }
        return Ok(prev);
    }
    Err(Error::ContinuationDepthExceeded(steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn follows_exp_around_the_circle() {
        // sqrt(e^{2 pi i t}) continued to t = 1 ends at -1, not the principal +1
        let v = continued_sqrt(|t| Ok(Complex64::new(0.0, 2.0 * std::f64::consts::PI * t).exp()), 4).unwrap();
        assert!((v + 1.0).norm() < 1e-14);
    }

    #[test]
    fn zero_on_path_fails() {
        let r = continued_sqrt(|t| Ok(Complex64::new(t - 0.5, 0.0)), 3);
        assert!(r.is_err());
    }
}
