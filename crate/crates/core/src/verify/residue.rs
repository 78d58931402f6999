//! Numerical residues and the pole catalogs of the reduced functions.

use crate::error::Result;
use crate::gamma::I;
use crate::params::ModularParams;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// `(1/2 pi i) \oint f` over the circle `|u - center| = radius`, by the
/// trapezoid rule on `n_nodes` equispaced nodes.
pub fn residue_probe<F>(f: F, center: Complex64, radius: f64, n_nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..n_nodes {
        let e = Complex64::from_polar(radius, 2.0 * PI * k as f64 / n_nodes as f64);
        total += f(center + e)? * e;
    }
    Ok(total / n_nodes as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CatalogFamily {
    A2E,
    A3E,
    A3H,
}

/// Poles of a reduced function in its first variable `v1`, with the other
/// variables fixed. Entries repeat with the period lattice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleCatalog {
    pub family: CatalogFamily,
    pub w_independent: Vec<Complex64>,
    pub w_dependent: Vec<Complex64>,
    /// Generators of the period lattice; a zero generator is absent.
    pub periods: (Complex64, Complex64),
}

/// `omega_j`: 0, pi/2r, t, t + pi/2r with `t = i a_+/2`.
pub fn omegas(p: &ModularParams) -> [Complex64; 4] {
    let t = 0.5 * I * p.a_plus;
    let h = Complex64::new(PI / (2.0 * p.r), 0.0);
    [Complex64::new(0.0, 0.0), h, t, t + h]
}

impl PoleCatalog {
    /// Elliptic A2, constrained: `v3 = -v1 - v2`; `v2` fixed.
    /// w-independent: `v2`, `-2 v2`, `-v2/2 + omega_j`.
    /// w-dependent: `-w_l - z_m - c` and `-v2 + w_l + z_m + c`, `c = i a_+/3`.
    pub fn a2_elliptic(v2: Complex64, w: &[Complex64], z: &[Complex64], p: &ModularParams) -> Self {
        let c = I * p.a_plus / 3.0;
        let mut ind = vec![v2, -2.0 * v2];
        ind.extend(omegas(p).iter().map(|o| -0.5 * v2 + o));
        let mut dep = Vec::new();
        for wl in w {
            for zm in z {
                dep.push(-wl - zm - c);
            }
        }
        for wl in w {
            for zm in z {
                dep.push(-v2 + wl + zm + c);
            }
        }
        PoleCatalog { family: CatalogFamily::A2E, w_independent: ind, w_dependent: dep, periods: elliptic_periods(p) }
    }

    /// Elliptic A3, constrained: `v4 = -v1 - v2 - v3`; `v2`, `v3` fixed.
    /// w-independent: `v2`, `v3`, `-(v2+v3)/2 + omega_j`, `-2 v2 - v3`, `-v2 - 2 v3`.
    /// w-dependent: `-w_l - c -+ d` and `-v2 - v3 + w_l + c +- d`, `c = i a_+/4`.
    pub fn a3_elliptic(v2: Complex64, v3: Complex64, w: &[Complex64], d: Complex64, p: &ModularParams) -> Self {
        let c = I * p.a_plus / 4.0;
        let mut ind = vec![v2, v3];
        ind.extend(omegas(p).iter().map(|o| -0.5 * (v2 + v3) + o));
        ind.push(-2.0 * v2 - v3);
        ind.push(-v2 - 2.0 * v3);
        let mut dep = Vec::new();
        for wl in w {
            for sg in [1.0, -1.0] {
                dep.push(-wl - c - sg * d);
                dep.push(-v2 - v3 + wl + c + sg * d);
            }
        }
        PoleCatalog { family: CatalogFamily::A3E, w_independent: ind, w_dependent: dep, periods: elliptic_periods(p) }
    }

    /// Hyperbolic A3: as the elliptic catalog with `omega_j` reduced to `0, t`,
    /// since there is no real period.
    pub fn a3_hyperbolic(v2: Complex64, v3: Complex64, w: &[Complex64], d: Complex64, p: &ModularParams) -> Self {
        let c = I * p.a_plus / 4.0;
        let t = 0.5 * I * p.a_plus;
        let mut ind = vec![v2, v3, -0.5 * (v2 + v3), -0.5 * (v2 + v3) + t, -2.0 * v2 - v3, -v2 - 2.0 * v3];
        ind.dedup();
        let mut dep = Vec::new();
        for wl in w {
            for sg in [1.0, -1.0] {
                dep.push(-wl - c - sg * d);
                dep.push(-v2 - v3 + wl + c + sg * d);
            }
        }
        PoleCatalog {
            family: CatalogFamily::A3H,
            w_independent: ind,
            w_dependent: dep,
            periods: (I * p.a_plus, Complex64::new(0.0, 0.0)),
        }
    }

    fn translates(&self) -> Vec<Complex64> {
        let (p1, p2) = self.periods;
        let mut out = Vec::new();
        for k in -1..=1 {
            for l in -1..=1 {
                if p2.norm() == 0.0 && l != 0 {
                    continue;
                }
                out.push(p1 * k as f64 + p2 * l as f64);
            }
        }
        out
    }

    /// Distance from `center` to the nearest other catalog pole (including
    /// lattice translates); poles within `1e-9` of `center` count as itself.
    pub fn spacing(&self, center: Complex64) -> f64 {
        let shifts = self.translates();
        self.w_independent
            .iter()
            .chain(&self.w_dependent)
            .flat_map(|q| shifts.iter().map(move |s| (q + s - center).norm()))
            .filter(|&d| d > 1e-9)
            .fold(f64::INFINITY, f64::min)
    }

    /// Contour radius: a quarter of the spacing.
    pub fn radius(&self, center: Complex64) -> f64 {
        0.25 * self.spacing(center)
    }
}

fn elliptic_periods(p: &ModularParams) -> (Complex64, Complex64) {
    (I * p.a_plus, Complex64::new(PI / p.r, 0.0))
}
