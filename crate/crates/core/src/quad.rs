//! Globally adaptive Gauss-Kronrod (10/21) quadrature for complex integrands.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_996,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_36,
    0.295_524_224_714_752_87,
];

/// Kronrod estimate and error estimate. The error is floored at the rounding
/// level of `integral |f|` so that noisy integrands still terminate.
fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[10];
    let mut abs = fc.norm() * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = h * XGK[j];
        let (lo, hi) = (f(c - dx), f(c + dx));
        kron += (lo + hi) * WGK[j];
        abs += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    let err = ((kron - gauss) * h).norm();
    let floor = 50.0 * f64::EPSILON * abs * h.abs();
    (kron * h, if err < floor { 0.0 } else { err })
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    depth: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]`, starting from `initial_panels` equal pieces and
/// bisecting the worst panel until the summed error estimate drops below
/// `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    rel_tol: f64,
    abs_tol: f64,
    max_depth: usize,
) -> Result<Complex64> {
    let n = initial_panels.max(1);
    let width = (b - a) / n as f64;
    let mut heap = BinaryHeap::with_capacity(4 * n);
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for k in 0..n {
        let lo = a + width * k as f64;
        let hi = if k + 1 == n { b } else { lo + width };
        let (value, err) = gk21(&f, lo, hi);
        total += value;
        total_err += err;
        heap.push(Panel { a: lo, b: hi, value, err, depth: 0 });
    }
    let budget = 200 * n + 20_000;
    for _ in 0..budget {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::Divergence("non-finite integrand".into()));
        }
        if total_err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(total);
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= max_depth {
            return Err(Error::Divergence(format!(
                "bisection depth {max_depth} reached, error estimate {total_err:e}"
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk21(&f, worst.a, mid);
        let (rv, re) = gk21(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: lv, err: le, depth: worst.depth + 1 });
        heap.push(Panel { a: mid, b: worst.b, value: rv, err: re, depth: worst.depth + 1 });
    }
    Err(Error::Divergence(format!("panel budget exhausted, error estimate {total_err:e}")))
}
