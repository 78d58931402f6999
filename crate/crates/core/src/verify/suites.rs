//! The suite registry and the checks behind each suite.

use super::reduced::{self, Side};
use super::residue::{CatalogFamily, PoleCatalog};
use super::sampling::{collect, Draw, SamplePlan};
use super::{Check, IdentityReport, Mutation, RunConfig, Sample, SuiteKind};
use crate::error::{Error, Result};
use crate::gamma::{
    elliptic_gamma, elliptic_log_series, gamma_e_bridge, hyper_c, hyperbolic_gamma, hyperbolic_gamma_ladder, p_const,
    s_fn, theta_r, trig_gamma, I,
};
use crate::kernels::{
    regime_gamma, s2_kernel_shifted, s3_kernel, toda_kernel, weight, weight_gamma_form, weight_sqrt,
    weight_sqrt_continued, Family, KernelSpec, TodaKind,
};
use crate::operators::{
    apply, build_a2, build_a2_variant, build_a3, build_b_c, build_h2, build_h3, hamiltonian_normalization, rotate,
    DifferenceOperator, Point,
};
use crate::params::{EvalConfig, ModularParams, Regime, Sign};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Registry entry as shown by `list`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub threshold: f64,
    pub kind: SuiteKind,
    /// Default number of sample points.
    pub points: usize,
    pub label: Option<&'static str>,
}

/// Sampling windows of a suite.
#[derive(Debug, Clone, Copy)]
enum Windows {
    /// Real parts in (-1, 1), imaginary parts in (-a/2, a/2).
    Strip,
    /// The regime's default windows.
    Regime(Regime, bool),
    /// Real parts in (-re, re), imaginary parts in (-im, im).
    Custom { re: f64, im: f64, constrained: bool },
}

type Runner = Box<dyn Fn(&SamplePlan, &RunConfig) -> Result<Vec<Sample>> + Send + Sync>;

struct Entry {
    info: SuiteInfo,
    windows: Windows,
    run: Runner,
}

const EVIDENCE: &str = "numeric evidence only; no analytic proof known";

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn one() -> Complex64 {
    c64(1.0, 0.0)
}

/// Evaluation config used while sampling: the plan's reject margin acts as pole guard.
fn sampling_cfg(ctx: &RunConfig, plan: &SamplePlan) -> EvalConfig {
    ctx.cfg.with_pole_guard(plan.reject_margin.max(ctx.cfg.pole_guard))
}

fn plan_for(windows: Windows, info: &SuiteInfo, ctx: &RunConfig) -> SamplePlan {
    let n = ctx.points.unwrap_or(info.points);
    let p = &ctx.params;
    match windows {
        Windows::Strip => {
            SamplePlan::for_regime(Regime::Hyperbolic, p, n, ctx.seed, false).with_windows(1.0, 0.5 * p.a())
        }
        Windows::Regime(regime, constrained) => SamplePlan::for_regime(regime, p, n, ctx.seed, constrained),
        Windows::Custom { re, im, constrained } => {
            SamplePlan::for_regime(Regime::Hyperbolic, p, n, ctx.seed, constrained).with_windows(re, im)
        }
    }
}

fn concat(parts: &[&[Complex64]]) -> Vec<Complex64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn neg(x: &Point) -> Vec<Complex64> {
    x.iter().map(|c| -c).collect()
}

/// `sum_j exp(k_j . y)` for the exponent vectors `ks`.
fn exp_sum(ks: &[Vec<f64>], y: &Point) -> Complex64 {
    ks.iter().map(|k| k.iter().zip(y).map(|(a, b)| a * b).sum::<Complex64>().exp()).sum()
}

fn deltas(regime: Regime) -> &'static [Sign] {
    match regime {
        Regime::Trigonometric | Regime::Rational => &[Sign::Plus],
        _ => &Sign::BOTH,
    }
}

// ---------------------------------------------------------------- gamma

fn gamma_suite<F>(name: &'static str, plan: &SamplePlan, ctx: &RunConfig, f: F) -> Result<Vec<Sample>>
where
    F: Fn(Complex64, &ModularParams, &EvalConfig) -> Result<Vec<Check>> + Sync,
{
    let cfg = sampling_cfg(ctx, plan);
    collect(name, plan, |d| {
        let z = d.complex();
        Ok((vec![z], f(z, &ctx.params, &cfg)?))
    })
}

fn gh(p: &ModularParams, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    hyperbolic_gamma(p.a_plus, p.a_minus, z, cfg)
}

fn reflection(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    Ok(vec![
        Check::Pair(elliptic_gamma(p, z, cfg)? * elliptic_gamma(p, -z, cfg)?, one()),
        Check::Pair(gh(p, z, cfg)? * gh(p, -z, cfg)?, one()),
    ])
}

fn modular(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    let q = p.swapped();
    Ok(vec![
        Check::Pair(elliptic_gamma(p, z, cfg)?, elliptic_gamma(&q, z, cfg)?),
        Check::Pair(gh(p, z, cfg)?, gh(&q, z, cfg)?),
    ])
}

fn conjugation(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    let zc = -z.conj();
    Ok(vec![
        Check::Pair(elliptic_gamma(p, z, cfg)?.conj(), elliptic_gamma(p, zc, cfg)?),
        Check::Pair(gh(p, z, cfg)?.conj(), gh(p, zc, cfg)?),
    ])
}

fn gamma_ade(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for delta in Sign::BOTH {
        let h = 0.5 * I * p.a_delta(delta);
        out.push(Check::Pair(
            elliptic_gamma(p, z + h, cfg)? / elliptic_gamma(p, z - h, cfg)?,
            theta_r(p, delta.flip(), z, cfg)?,
        ));
        out.push(Check::Pair(gh(p, z + h, cfg)? / gh(p, z - h, cfg)?, 2.0 * hyper_c(p.a_delta(delta.flip()), z)));
    }
    Ok(out)
}

fn theta_ade(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let target = -(-2.0 * I * p.r * z).exp();
    for delta in Sign::BOTH {
        let h = 0.5 * I * p.a_delta(delta);
        out.push(Check::Pair(theta_r(p, delta, z + h, cfg)? / theta_r(p, delta, z - h, cfg)?, target));
        out.push(Check::Pair(s_fn(p, delta, z + h, cfg)? / s_fn(p, delta, z - h, cfg)?, target));
    }
    let h = 0.5 * I * p.a_minus;
    out.push(Check::Pair(
        trig_gamma(p.r, p.a_minus, z + h, cfg)? / trig_gamma(p.r, p.a_minus, z - h, cfg)?,
        one() - (2.0 * I * p.r * z).exp(),
    ));
    Ok(out)
}

fn gamma_ratio(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    let ia = I * p.a();
    let rhs =
        p_const(p, Sign::Plus) * p_const(p, Sign::Minus) * s_fn(p, Sign::Plus, z, cfg)? * s_fn(p, Sign::Minus, z, cfg)?;
    Ok(vec![Check::Pair(elliptic_gamma(p, z + ia, cfg)? / elliptic_gamma(p, z - ia, cfg)?, rhs)])
}

fn log_series(z: Complex64, p: &ModularParams, cfg: &EvalConfig) -> Result<Vec<Check>> {
    let g = elliptic_gamma(p, z, cfg)?;
    let pp = c64((-2.0 * p.r * p.a_plus).exp(), 0.0);
    let qq = c64((-2.0 * p.r * p.a_minus).exp(), 0.0);
    let x = (-p.r * (p.a_plus + p.a_minus) + 2.0 * I * p.r * z).exp();
    Ok(vec![Check::Pair(g, elliptic_log_series(p, z, cfg)?), Check::Pair(g, gamma_e_bridge(pp, qq, x, cfg)?)])
}

fn ladder_suite(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    collect("hyperbolic-ladder", plan, |d| {
        let sign = if d.uniform(-1.0, 1.0) < 0.0 { -1.0 } else { 1.0 };
        let z = c64(d.uniform(-1.0, 1.0), sign * d.uniform(1.4, 1.6) * p.a());
        let a = hyperbolic_gamma_ladder(p.a_plus, p.a_minus, z, Sign::Plus, &cfg)?;
        let b = hyperbolic_gamma_ladder(p.a_plus, p.a_minus, z, Sign::Minus, &cfg)?;
        Ok((vec![z], vec![Check::Pair(a, b)]))
    })
}

fn weight_forms(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    collect("weight-forms", plan, |d| {
        let x3 = d.free_point(3);
        let x4 = d.free_point(4);
        let xr = d.ordered_real(3, -1.2, 1.2);
        let mut checks = Vec::new();
        for regime in [Regime::Elliptic, Regime::Hyperbolic] {
            for x in [&x3, &x4] {
                checks.push(Check::Pair(weight(regime, x, &p, &cfg)?, weight_gamma_form(regime, x, &p, &cfg)?));
            }
            checks.push(Check::Pair(weight(regime, &x3, &p, &cfg)?, weight(regime, &rotate(&x3, 1), &p, &cfg)?));
            let w = weight(regime, &xr, &p, &cfg)?;
            checks.push(Check::Witness(w.re > 0.0 && w.im.abs() <= 1e-12 * w.re));
        }
        Ok((concat(&[&x3, &x4, &xr]), checks))
    })
}

// ---------------------------------------------------------------- kernels

/// Shift of the A2 kernel, honouring the sign-flip mutation.
fn a2_kernel_shift(regime: Regime, ctx: &RunConfig) -> Result<Complex64> {
    let s = KernelSpec::a2(regime).shift(&ctx.params)?;
    Ok(match ctx.mutation {
        Some(Mutation::FlipDelta2) => -s,
        None => s,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum KernelMode {
    /// Every operator variant, every pair of variable slots.
    Full,
    /// One operator variant, the `v` and `w` slots only.
    Discrepancy,
}

fn a2_ops(
    regime: Regime,
    constrained: bool,
    prefactor: bool,
    mode: KernelMode,
    ctx: &RunConfig,
    cfg: &EvalConfig,
) -> Result<Vec<DifferenceOperator>> {
    let mut ops = Vec::new();
    for &delta in deltas(regime) {
        for mu in [ctx.mu, ctx.mu_prime] {
            ops.push(build_a2_variant(regime, delta, mu, constrained, &ctx.params, cfg, prefactor)?);
            if mode == KernelMode::Discrepancy {
                return Ok(ops);
            }
        }
    }
    Ok(ops)
}

fn a3_ops(
    regime: Regime,
    constrained: bool,
    mode: KernelMode,
    ctx: &RunConfig,
    cfg: &EvalConfig,
) -> Result<Vec<DifferenceOperator>> {
    let ds = if mode == KernelMode::Discrepancy { &[Sign::Plus][..] } else { deltas(regime) };
    ds.iter().map(|&delta| build_a3(regime, delta, constrained, &ctx.params, cfg)).collect()
}

fn kernel_samples(
    name: &str,
    family: Family,
    regime: Regime,
    mode: KernelMode,
    prefactor: bool,
    plan: &SamplePlan,
    ctx: &RunConfig,
) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    match family {
        Family::A2 => {
            let ops = a2_ops(regime, plan.constrained, prefactor, mode, ctx, &cfg)?;
            let shift = a2_kernel_shift(regime, ctx)?;
            let s = |v: &Point, w: &Point, z: &Point| s2_kernel_shifted(regime, shift, v, w, z, &p, &cfg);
            collect(name, plan, |d| {
                let (v, w, z) = (d.point(3), d.point(3), d.point(3));
                let mut checks = Vec::new();
                for op in &ops {
                    let l = apply(op, |y| s(y, &w, &z), &v)?;
                    let r = apply(op, |y| s(&v, y, &z), &w)?;
                    checks.push(Check::Pair(l, r));
                    if mode == KernelMode::Full {
                        let t = apply(op, |y| s(&v, &w, y), &z)?;
                        checks.push(Check::Pair(l, t));
                        checks.push(Check::Pair(r, t));
                    }
                }
                Ok((concat(&[&v, &w, &z]), checks))
            })
        }
        Family::A3 => {
            let ops = a3_ops(regime, plan.constrained, mode, ctx, &cfg)?;
            let spec = KernelSpec::a3(regime, ctx.d);
            let s = |v: &Point, w: &Point| s3_kernel(&spec, ctx.d, v, w, &p, &cfg);
            collect(name, plan, |d| {
                let (v, w) = (d.point(4), d.point(4));
                let mut checks = Vec::new();
                for op in &ops {
                    let l = apply(op, |y| s(y, &w), &v)?;
                    let r = apply(op, |y| s(&v, y), &w)?;
                    checks.push(Check::Pair(l, r));
                }
                Ok((concat(&[&v, &w]), checks))
            })
        }
    }
}

fn kernel_suite_name(family: Family, regime: Regime, identity: bool) -> &'static str {
    match (family, regime, identity) {
        (Family::A2, Regime::Elliptic, true) => "a2-elliptic-kernel",
        (Family::A2, Regime::Hyperbolic, true) => "a2-hyperbolic-kernel",
        (Family::A2, Regime::Trigonometric, true) => "a2-trig-kernel",
        (Family::A3, Regime::Elliptic, true) => "a3-elliptic-kernel",
        (Family::A3, Regime::Hyperbolic, true) => "a3-hyperbolic-kernel",
        (Family::A3, Regime::Trigonometric, true) => "a3-trig-kernel",
        (Family::A2, Regime::Elliptic, false) => "a2-elliptic-unconstrained",
        (Family::A2, Regime::Hyperbolic, false) => "a2-hyperbolic-unconstrained",
        (Family::A3, Regime::Elliptic, false) => "a3-elliptic-unconstrained",
        (Family::A3, Regime::Hyperbolic, false) => "a3-hyperbolic-unconstrained",
        (_, Regime::Trigonometric, false) => "trig-unconstrained",
        (_, Regime::Rational, _) => "rational-kernel",
    }
}

fn info_or_adhoc(name: &'static str, kind: SuiteKind) -> SuiteInfo {
    entries().iter().find(|e| e.info.name == name).map(|e| SuiteInfo { kind, ..e.info }).unwrap_or(SuiteInfo {
        name,
        description: name,
        threshold: 1e-8,
        kind,
        points: 100,
        label: None,
    })
}

/// Kernel identity check on the given plan: the operator acting in each
/// variable slot gives the same result.
pub fn check_kernel_identity(family: Family, regime: Regime, plan: &SamplePlan, ctx: &RunConfig) -> IdentityReport {
    let name = kernel_suite_name(family, regime, true);
    let samples = kernel_samples(name, family, regime, KernelMode::Full, true, plan, ctx);
    IdentityReport::assemble(&info_or_adhoc(name, SuiteKind::Identity), ctx, samples)
}

/// Certifies that the kernel identity fails on the given plan. Run on a
/// constrained plan it reports FAIL, since the identity then holds.
pub fn check_unconstrained_failure(
    family: Family,
    regime: Regime,
    plan: &SamplePlan,
    ctx: &RunConfig,
) -> IdentityReport {
    let name = kernel_suite_name(family, regime, false);
    let samples = kernel_samples(name, family, regime, KernelMode::Discrepancy, true, plan, ctx);
    IdentityReport::assemble(&info_or_adhoc(name, SuiteKind::Inequality), ctx, samples)
}

fn dressed_suite(name: &str, family: Family, plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let mut ops = Vec::new();
    for regime in [Regime::Elliptic, Regime::Hyperbolic] {
        for delta in Sign::BOTH {
            let h = match family {
                Family::A2 => build_h2(regime, delta, ctx.mu, &p, &cfg)?,
                Family::A3 => build_h3(regime, delta, &p, &cfg)?,
            };
            ops.push((regime, h));
        }
    }
    let n = family.arity();
    collect(name, plan, |d| {
        let v = d.ordered_real(n, -0.7, 0.7);
        let w = d.ordered_real(n, -0.7, 0.7);
        let z = d.ordered_real(n, -0.7, 0.7);
        let mut checks = Vec::new();
        for (regime, h) in &ops {
            let regime = *regime;
            let root = |x: &Point| weight_sqrt(regime, x, &p, &cfg);
            let cont = |base: &Point, y: &Point| weight_sqrt_continued(regime, base, y, &p, &cfg);
            let (l, r) = match family {
                Family::A2 => {
                    let shift = a2_kernel_shift(regime, ctx)?;
                    let s = |a: &Point, b: &Point, c: &Point| s2_kernel_shifted(regime, shift, a, b, c, &p, &cfg);
                    let (rv, rw, rz) = (root(&v)?, root(&w)?, root(&z)?);
                    let l = apply(h, |y| Ok(cont(&v, y)? * rw * rz * s(y, &w, &z)?), &v)?;
                    let r = apply(h, |y| Ok(rv * cont(&w, y)? * rz * s(&v, y, &z)?), &w)?;
                    (l, r)
                }
                Family::A3 => {
                    let spec = KernelSpec::a3(regime, ctx.d);
                    let s = |a: &Point, b: &Point| s3_kernel(&spec, ctx.d, a, b, &p, &cfg);
                    let (rv, rw) = (root(&v)?, root(&w)?);
                    let l = apply(h, |y| Ok(cont(&v, y)? * rw * s(y, &w)?), &v)?;
                    let r = apply(h, |y| Ok(rv * cont(&w, y)? * s(&v, y)?), &w)?;
                    (l, r)
                }
            };
            checks.push(Check::Pair(l, r));
        }
        let point = match family {
            Family::A2 => concat(&[&v, &w, &z]),
            Family::A3 => concat(&[&v, &w]),
        };
        Ok((point, checks))
    })
}

// ---------------------------------------------------------------- Hamiltonians

fn hamiltonian_suite(
    name: &str,
    family: Family,
    regime: Regime,
    plan: &SamplePlan,
    ctx: &RunConfig,
) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let n = family.arity();
    let mut pairs = Vec::new();
    for delta in Sign::BOTH {
        match family {
            Family::A2 => {
                for mu in [ctx.mu, I * ctx.mu] {
                    pairs.push((build_h2(regime, delta, mu, &p, &cfg)?, build_a2(regime, delta, mu, false, &p, &cfg)?));
                }
            }
            Family::A3 => pairs.push((build_h3(regime, delta, &p, &cfg)?, build_a3(regime, delta, false, &p, &cfg)?)),
        }
    }
    let lambda = hamiltonian_normalization(regime, n);
    collect(name, plan, |d| {
        let x = d.ordered_real(n, -1.2, 1.2);
        let k = vec![d.exponents(n, 2.0 * p.r)];
        let f = |y: &Point| Ok(exp_sum(&k, y));
        let root = weight_sqrt(regime, &x, &p, &cfg)?;
        let mut checks = Vec::new();
        for (h, a) in &pairs {
            let lhs = apply(h, f, &x)?;
            let mut rhs = c64(0.0, 0.0);
            for (m, term) in a.terms.iter().enumerate() {
                let y = a.shifted_point(m, &x)?;
                rhs += term.coefficient_at(&x, &y)? * f(&y)? / weight_sqrt_continued(regime, &x, &y, &p, &cfg)?;
            }
            checks.push(Check::Pair(lhs, root * lambda * rhs));
            for term in &h.terms {
                let (l, r) = term.split_values(&x, &x)?;
                let real = l.im.abs() <= 1e-10 * l.norm() && r.im.abs() <= 1e-10 * r.norm();
                checks.push(Check::Witness(real && l.re * r.re >= 0.0));
            }
        }
        Ok((x, checks))
    })
}

fn bc_split(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let pairs: Vec<_> = Sign::BOTH.iter().map(|&d| build_b_c(d, &p, &cfg).map(|bc| (d, bc))).collect::<Result<_>>()?;
    collect("bc-split", plan, |d| {
        let x = d.point(3);
        let mu = d.complex();
        let k = vec![d.exponents(3, 2.0 * p.r)];
        let f = |y: &Point| Ok(exp_sum(&k, y));
        let mut checks = Vec::new();
        for (delta, (b, c)) in &pairs {
            let a = build_a2(Regime::Hyperbolic, *delta, mu, false, &p, &cfg)?;
            let lhs = 2.0 * apply(&a, f, &x)?;
            let rhs = hyper_c(p.a_delta(*delta), 2.0 * mu) * apply(b, f, &x)? + apply(c, f, &x)?;
            checks.push(Check::Pair(lhs, rhs));
        }
        let mut point = x.clone();
        point.push(mu);
        Ok((point, checks))
    })
}

// ---------------------------------------------------------------- commutation

fn commutator_check(a: &DifferenceOperator, b: &DifferenceOperator, ks: &[Vec<f64>], x: &Point) -> Result<Check> {
    let f = |y: &Point| Ok(exp_sum(ks, y));
    let ab = apply(a, |y| apply(b, f, y), x)?;
    let ba = apply(b, |y| apply(a, f, y), x)?;
    Ok(Check::ZeroSum { sum: ab - ba, scale: ab.norm() + ba.norm() })
}

fn commutation_suite(name: &str, family: Family, plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let mut pairs = Vec::new();
    match family {
        Family::A2 => {
            for regime in [Regime::Elliptic, Regime::Hyperbolic] {
                for d1 in Sign::BOTH {
                    for d2 in Sign::BOTH {
                        pairs.push((
                            build_a2(regime, d1, ctx.mu, false, &p, &cfg)?,
                            build_a2(regime, d2, ctx.mu_prime, false, &p, &cfg)?,
                        ));
                    }
                }
            }
        }
        Family::A3 => {
            for regime in [Regime::Elliptic, Regime::Hyperbolic] {
                pairs.push((
                    build_a3(regime, Sign::Plus, false, &p, &cfg)?,
                    build_a3(regime, Sign::Minus, false, &p, &cfg)?,
                ));
            }
        }
    }
    let n = family.arity();
    collect(name, plan, |d| {
        let x = d.point(n);
        let ks: Vec<Vec<f64>> = (0..3).map(|_| d.exponents(n, 2.0 * p.r)).collect();
        let checks = pairs.iter().map(|(a, b)| commutator_check(a, b, &ks, &x)).collect::<Result<_>>()?;
        Ok((x, checks))
    })
}

fn scalar_commutation_suite(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    collect("commutation-scalar", plan, |d| {
        let (u, v, w, mu, mp) = (d.complex(), d.complex(), d.complex(), d.complex(), d.complex());
        let mut checks = Vec::new();
        for ww in [w, c64(0.0, 0.0), I * p.a_minus] {
            checks.push(Check::Pair(
                reduced::scalar_commutation_side(u, v, ww, mu, mp, &p, &cfg)?,
                reduced::scalar_commutation_side(u, v, ww, mp, mu, &p, &cfg)?,
            ));
        }
        Ok((vec![u, v, w, mu, mp], checks))
    })
}

// ---------------------------------------------------------------- reduced forms

fn reduced_suite(name: &'static str, plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let dd = ctx.d;
    collect(name, plan, |d| match name {
        "reduced-a2-elliptic" | "reduced-a2-unconstrained" => {
            let (v, w, z) = (d.point(3), d.point(3), d.point(3));
            let mus: &[Complex64] = if name == "reduced-a2-elliptic" { &[ctx.mu, ctx.mu_prime] } else { &[ctx.mu] };
            let mut checks = Vec::new();
            for &mu in mus {
                checks.push(Check::Pair(
                    reduced::a2_elliptic(Side::L, &v, &w, &z, mu, &p, &cfg)?,
                    reduced::a2_elliptic(Side::R, &v, &w, &z, mu, &p, &cfg)?,
                ));
            }
            Ok((concat(&[&v, &w, &z]), checks))
        }
        "reduced-a3-elliptic" => {
            let (v, w) = (d.point(4), d.point(4));
            let l = reduced::a3_elliptic(Side::L, &v, &w, dd, &p, &cfg)?;
            let r = reduced::a3_elliptic(Side::R, &v, &w, dd, &p, &cfg)?;
            Ok((concat(&[&v, &w]), vec![Check::Pair(l, r)]))
        }
        _ => {
            let (v, w) = (d.point(4), d.point(4));
            let b = reduced::f_form_b(dd, &p);
            let checks = vec![
                Check::Pair(
                    reduced::a3_hyperbolic(Side::L, &v, &w, dd, &p, &cfg)?,
                    reduced::a3_hyperbolic(Side::R, &v, &w, dd, &p, &cfg)?,
                ),
                Check::Pair(
                    reduced::f_form(Side::L, &v, &w, b, &p, &cfg)?,
                    reduced::f_form(Side::R, &v, &w, b, &p, &cfg)?,
                ),
            ];
            Ok((concat(&[&v, &w]), checks))
        }
    })
}

fn reduction_suite(
    name: &'static str,
    regime: Regime,
    family: Family,
    plan: &SamplePlan,
    ctx: &RunConfig,
) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let dd = ctx.d;
    let g = |z: Complex64| regime_gamma(regime, &p, z, &cfg);
    match family {
        Family::A2 => {
            let op = build_a2(regime, Sign::Plus, ctx.mu, true, &p, &cfg)?;
            let shift = a2_kernel_shift(regime, ctx)?;
            let off = I * p.a_minus / 3.0 + KernelSpec::delta2(&p);
            collect(name, plan, |d| {
                let (v, w, z) = (d.point(3), d.point(3), d.point(3));
                let num = apply(&op, |y| s2_kernel_shifted(regime, shift, y, &w, &z, &p, &cfg), &v)?;
                let mut den = one();
                for a in &v {
                    for b in &w {
                        for c in &z {
                            den *= g(a + b + c - off)?;
                        }
                    }
                }
                let rhs = reduced::a2_reduction_rhs(&v, &w, &z, ctx.mu, &p, &cfg)?;
                Ok((concat(&[&v, &w, &z]), vec![Check::Pair(num / den, rhs)]))
            })
        }
        Family::A3 => {
            let op = build_a3(regime, Sign::Plus, true, &p, &cfg)?;
            let spec = KernelSpec::a3(regime, dd);
            let off = I * p.a_minus / 4.0 + KernelSpec::delta3(&p);
            collect(name, plan, |d| {
                let (v, w) = (d.point(4), d.point(4));
                let num = apply(&op, |y| s3_kernel(&spec, dd, y, &w, &p, &cfg), &v)?;
                let mut den = one();
                for a in &v {
                    for b in &w {
                        den *= g(a + b - off + dd)? * g(a + b - off - dd)?;
                    }
                }
                let rhs = match regime {
                    Regime::Hyperbolic => reduced::a3_hyperbolic_reduction_rhs(&v, &w, dd, &p, &cfg)?,
                    _ => reduced::a3_reduction_rhs(&v, &w, dd, &p, &cfg)?,
                };
                Ok((concat(&[&v, &w]), vec![Check::Pair(num / den, rhs)]))
            })
        }
    }
}

// ---------------------------------------------------------------- multipliers

fn shifted_first(v: &Point, dv: Complex64, compensate: bool) -> Vec<Complex64> {
    let mut y = v.to_vec();
    y[0] += dv;
    if compensate {
        let last = y.len() - 1;
        y[last] -= dv;
    }
    y
}

fn multiplier_suite(name: &str, family: Family, plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let two_t = I * p.a_plus;
    collect(name, plan, |d| match family {
        Family::A2 => {
            let (v, w, z) = (d.point(3), d.point(3), d.point(3));
            let vs = shifted_first(&v, two_t, true);
            let e = reduced::a2_multiplier(&v, &p);
            let mut checks = Vec::new();
            let before = [
                reduced::a2_summands(&v, &w, &z, ctx.mu, &p, &cfg)?,
                reduced::a2_summands(&w, &v, &z, ctx.mu, &p, &cfg)?,
            ];
            let after = [
                reduced::a2_summands(&vs, &w, &z, ctx.mu, &p, &cfg)?,
                reduced::a2_summands(&w, &vs, &z, ctx.mu, &p, &cfg)?,
            ];
            for (b, a) in before.iter().zip(&after) {
                for (x, y) in b.iter().zip(a) {
                    checks.push(Check::Pair(y / x, e));
                }
            }
            Ok((concat(&[&v, &w, &z]), checks))
        }
        Family::A3 => {
            let (v, w) = (d.point(4), d.point(4));
            let vs = shifted_first(&v, two_t, true);
            let e = reduced::a3_multiplier(&v, &p);
            let mut checks = Vec::new();
            let before =
                [reduced::a3_summands(&v, &w, ctx.d, &p, &cfg)?, reduced::a3_summands(&w, &v, ctx.d, &p, &cfg)?];
            let after =
                [reduced::a3_summands(&vs, &w, ctx.d, &p, &cfg)?, reduced::a3_summands(&w, &vs, ctx.d, &p, &cfg)?];
            for (b, a) in before.iter().zip(&after) {
                for (x, y) in b.iter().zip(a) {
                    checks.push(Check::Pair(y / x, e));
                }
            }
            Ok((concat(&[&v, &w]), checks))
        }
    })
}

/// Exponents `k` in `g(v1 + 2t)/g(v1) ~ exp(2irk v1)` for the reduced A2
/// summands off the hyperplane: `(2, 8, 8)` on the left, `(6, 6, 6)` on the right.
pub const UNCONSTRAINED_EXPONENTS: ([f64; 3], [f64; 3]) = ([2.0, 8.0, 8.0], [6.0, 6.0, 6.0]);

fn multiplier_exponents(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let two_t = I * p.a_plus;
    let h = 0.01;
    collect("multipliers-unconstrained", plan, |d| {
        let (v, w, z) = (d.point(3), d.point(3), d.point(3));
        let v2 = shifted_first(&v, c64(h, 0.0), false);
        let left = |x: &Point| reduced::a2_summands(x, &w, &z, ctx.mu, &p, &cfg);
        let right = |x: &Point| reduced::a2_summands(&w, x, &z, ctx.mu, &p, &cfg);
        let mut checks = Vec::new();
        let (el, er) = UNCONSTRAINED_EXPONENTS;
        for (g, expected) in [(&left as &dyn Fn(&Point) -> Result<Vec<Complex64>>, el), (&right, er)] {
            let (a0, a1) = (g(&v)?, g(&shifted_first(&v, two_t, false))?);
            let (b0, b1) = (g(&v2)?, g(&shifted_first(&v2, two_t, false))?);
            for m in 0..3 {
                let ratio = (b1[m] / b0[m]) / (a1[m] / a0[m]);
                let slope = ratio.ln() / (2.0 * I * p.r * h);
                checks.push(Check::Pair(slope, c64(expected[m], 0.0)));
            }
        }
        Ok((concat(&[&v, &w, &z]), checks))
    })
}

// ---------------------------------------------------------------- residues

fn vector_residue<F>(f: F, center: Complex64, radius: f64, nodes: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>>,
{
    let mut total: Vec<Complex64> = Vec::new();
    for k in 0..nodes {
        let e = Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
        let vals = f(center + e)?;
        if total.is_empty() {
            total = vec![c64(0.0, 0.0); vals.len()];
        }
        for (t, v) in total.iter_mut().zip(vals) {
            *t += v * e;
        }
    }
    Ok(total.into_iter().map(|t| t / nodes as f64).collect())
}

/// Residues of the three `L_r` and three `R_r` summands in `v1` at `center`.
struct ResidueSplit {
    left: Vec<Complex64>,
    right: Vec<Complex64>,
}

impl ResidueSplit {
    fn difference(&self) -> Complex64 {
        self.left.iter().sum::<Complex64>() - self.right.iter().sum::<Complex64>()
    }

    fn scale(&self) -> f64 {
        self.left.iter().chain(&self.right).map(|x| x.norm()).sum()
    }
}

#[allow(clippy::too_many_arguments)]
fn a2_residues<V>(
    point: V,
    w: &Point,
    z: &Point,
    center: Complex64,
    radius: f64,
    nodes: usize,
    mu: Complex64,
    p: &ModularParams,
    cfg: &EvalConfig,
) -> Result<ResidueSplit>
where
    V: Fn(Complex64) -> Vec<Complex64>,
{
    let both = |u: Complex64| {
        let v = point(u);
        let mut s = reduced::a2_summands(&v, w, z, mu, p, cfg)?;
        s.extend(reduced::a2_summands(w, &v, z, mu, p, cfg)?);
        Ok(s)
    };
    let r = vector_residue(both, center, radius, nodes)?;
    Ok(ResidueSplit { left: r[..3].to_vec(), right: r[3..].to_vec() })
}

const RESIDUE_NODES: usize = 64;

/// A constrained residue configuration: `v2` and the constrained `w`, `z`,
/// with every w-independent pole well separated from the rest of the catalog.
fn residue_config(d: &mut Draw, p: &ModularParams) -> Result<(Complex64, Vec<Complex64>, Vec<Complex64>, PoleCatalog)> {
    let v2 = d.complex();
    let (w, z) = (d.constrained_point(3), d.constrained_point(3));
    let cat = PoleCatalog::a2_elliptic(v2, &w, &z, p);
    let margin = d.plan().reject_margin;
    let poles = cat.w_independent.iter().chain(&cat.w_dependent[..1]).chain(&cat.w_dependent[9..10]);
    for &q in poles {
        if cat.spacing(q) < margin {
            return Err(Error::PoleProximity(format!("catalog spacing at {q}")));
        }
    }
    Ok((v2, w, z, cat))
}

#[derive(Clone, Copy, PartialEq)]
enum ResidueCheck {
    Independent,
    Dependent,
    Stability,
}

fn residue_suite(name: &str, which: ResidueCheck, plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let p = ctx.params;
    let cfg = ctx.cfg;
    collect(name, plan, |d| {
        let (v2, w, z, cat) = residue_config(d, &p)?;
        let point = move |u: Complex64| vec![u, v2, -u - v2];
        let mut checks = Vec::new();
        match which {
            ResidueCheck::Independent | ResidueCheck::Stability => {
                for &q in &cat.w_independent {
                    let r = a2_residues(point, &w, &z, q, cat.radius(q), RESIDUE_NODES, ctx.mu, &p, &cfg)?;
                    if which == ResidueCheck::Independent {
                        checks.push(Check::ZeroSum { sum: r.difference(), scale: r.scale() });
                    } else {
                        let r2 = a2_residues(point, &w, &z, q, cat.radius(q), 2 * RESIDUE_NODES, ctx.mu, &p, &cfg)?;
                        checks.push(Check::ZeroSum { sum: r.difference() - r2.difference(), scale: r.scale() });
                    }
                }
            }
            ResidueCheck::Dependent => {
                for q in [cat.w_dependent[0], cat.w_dependent[9]] {
                    let r = a2_residues(point, &w, &z, q, cat.radius(q), RESIDUE_NODES, ctx.mu, &p, &cfg)?;
                    checks.push(Check::Pair(r.left.iter().sum(), r.right.iter().sum()));
                }
            }
        }
        Ok((concat(&[&[v2], &w, &z]), checks))
    })
}

fn residue_nonvanishing(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let p = ctx.params;
    let cfg = ctx.cfg;
    let c = I * p.a_plus / 3.0;
    collect("residues-nonvanishing", plan, |d| {
        let (v, w, z) = (d.free_point(3), d.free_point(3), d.free_point(3));
        let center = v[1] + I * p.a_plus;
        let mut dep = Vec::new();
        for wl in &w {
            for zm in &z {
                dep.push(-wl - zm - c);
            }
        }
        let cat = PoleCatalog {
            family: CatalogFamily::A2E,
            w_independent: vec![v[1], v[2]],
            w_dependent: dep,
            periods: (I * p.a_plus, c64(PI / p.r, 0.0)),
        };
        if cat.spacing(center) < d.plan().reject_margin {
            return Err(Error::PoleProximity("catalog spacing".into()));
        }
        let (v1, v2) = (v[1], v[2]);
        let r =
            a2_residues(move |u| vec![u, v1, v2], &w, &z, center, cat.radius(center), RESIDUE_NODES, ctx.mu, &p, &cfg)?;
        Ok((concat(&[&v, &w, &z]), vec![Check::ZeroSum { sum: r.difference(), scale: r.scale() }]))
    })
}

// ---------------------------------------------------------------- ratio identities

fn ratio_identities(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let b = reduced::f_form_b(ctx.d, &p);
    collect("ratio-identities", plan, |d| {
        let w = d.constrained_point(4);
        let x = d.complex();
        let mut checks = Vec::new();
        for a in [p.a_plus, PI] {
            let rm = reduced::hyperbolic_ratios(a, &w, &cfg)?;
            let cx: Vec<Complex64> = w.iter().map(|wm| hyper_c(a, x - 2.0 * wm)).collect();
            let sx: Vec<Complex64> = w.iter().map(|wm| crate::gamma::hyper_s(a, x + 2.0 * wm)).collect();
            let abs_sum = |v: &[Complex64]| v.iter().map(|q| q.norm()).sum::<f64>();
            checks.push(Check::ZeroSum { sum: rm.iter().sum(), scale: abs_sum(&rm) });

            let l1: Vec<Complex64> = (0..4).map(|m| rm[m] * cx[m]).collect();
            checks.push(Check::ZeroSum {
                sum: l1.iter().sum::<Complex64>() - sx.iter().sum::<Complex64>(),
                scale: abs_sum(&l1) + abs_sum(&sx),
            });

            let l2: Vec<Complex64> = (0..4).map(|m| rm[m] * cx[m] * sx[m] * sx[m]).collect();
            let triples: Vec<Complex64> =
                (0..4).map(|skip| (0..4).filter(|&j| j != skip).map(|j| sx[j]).product()).collect();
            checks.push(Check::ZeroSum {
                sum: l2.iter().sum::<Complex64>() + triples.iter().sum::<Complex64>(),
                scale: abs_sum(&l2) + abs_sum(&triples),
            });

            let plus: Complex64 = sx.iter().map(|s| b + s).product();
            let minus: Complex64 = sx.iter().map(|s| b - s).product();
            let rb: Vec<Complex64> = (0..4).map(|m| 2.0 * b * rm[m] * (b * b - sx[m] * sx[m]) * cx[m]).collect();
            checks.push(Check::ZeroSum {
                sum: plus - minus - rb.iter().sum::<Complex64>(),
                scale: plus.norm() + minus.norm() + abs_sum(&rb),
            });
        }
        let mut point = w.clone();
        point.push(x);
        Ok((point, checks))
    })
}

// ---------------------------------------------------------------- rational and Toda

fn rational_identity(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let ops = [
        build_a2(Regime::Rational, Sign::Plus, c64(0.0, 0.0), false, &p, &cfg)?,
        build_a3(Regime::Rational, Sign::Plus, false, &p, &cfg)?,
    ];
    collect("rational-identity", plan, |d| {
        let (x3, x4) = (d.free_point(3), d.free_point(4));
        let mut checks = Vec::new();
        for (op, x) in ops.iter().zip([&x3, &x4]) {
            let mut sum = c64(0.0, 0.0);
            let mut scale = 0.0;
            for (m, term) in op.terms.iter().enumerate() {
                let c = term.coefficient_at(x, &op.shifted_point(m, x)?)?;
                sum += c;
                scale += c.norm();
            }
            checks.push(Check::ZeroSum { sum, scale });
            let applied = apply(op, |_| Ok(one()), x)?;
            checks.push(Check::ZeroSum { sum: applied, scale });
        }
        Ok((concat(&[&x3, &x4]), checks))
    })
}

fn toda_nonrel(plan: &SamplePlan, ctx: &RunConfig) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let ops = [
        build_a2(Regime::Rational, Sign::Plus, c64(0.0, 0.0), false, &p, &cfg)?,
        build_a3(Regime::Rational, Sign::Plus, false, &p, &cfg)?,
    ];
    collect("toda-nonrel", plan, |d| {
        let mut checks = Vec::new();
        let mut point = Vec::new();
        for op in &ops {
            let n = op.arity;
            let (x, y) = (d.free_point(n), d.free_point(n));
            for sigma in Sign::BOTH {
                let t = |a: &Point, b: &Point| toda_kernel(TodaKind::NonRelRational, sigma, a, &neg(b), &p, &cfg);
                let l = apply(op, |xx| t(xx, &y), &x)?;
                let r = apply(op, |yy| t(&x, yy), &y)?;
                checks.push(Check::Pair(l, r));
            }
            point.extend(x);
            point.extend(y);
        }
        Ok((point, checks))
    })
}

#[derive(Clone, Copy, PartialEq)]
enum TodaOp {
    B,
    C,
}

fn toda_rel(
    name: &str,
    which: TodaOp,
    taus: &'static [Sign],
    ds: &'static [Sign],
    plan: &SamplePlan,
    ctx: &RunConfig,
) -> Result<Vec<Sample>> {
    let cfg = sampling_cfg(ctx, plan);
    let p = ctx.params;
    let ops: Vec<DifferenceOperator> = ds
        .iter()
        .map(|&delta| build_b_c(delta, &p, &cfg).map(|(b, c)| if which == TodaOp::B { b } else { c }))
        .collect::<Result<_>>()?;
    collect(name, plan, |d| {
        let (x, y) = (d.free_point(3), d.free_point(3));
        let mut checks = Vec::new();
        for op in &ops {
            for &tau in taus {
                let t = |a: &Point, b: &Point| toda_kernel(TodaKind::RelHyperbolic, tau, a, &neg(b), &p, &cfg);
                let l = apply(op, |xx| t(xx, &y), &x)?;
                let r = apply(op, |yy| t(&x, yy), &y)?;
                checks.push(Check::Pair(l, r));
            }
        }
        Ok((concat(&[&x, &y]), checks))
    })
}

// ---------------------------------------------------------------- registry

fn info(name: &'static str, description: &'static str, threshold: f64, kind: SuiteKind, points: usize) -> SuiteInfo {
    SuiteInfo { name, description, threshold, kind, points, label: None }
}

fn entry<F>(info: SuiteInfo, windows: Windows, run: F) -> Entry
where
    F: Fn(&SamplePlan, &RunConfig) -> Result<Vec<Sample>> + Send + Sync + 'static,
{
    Entry { info, windows, run: Box::new(run) }
}

fn gamma_entry(
    name: &'static str,
    description: &'static str,
    f: fn(Complex64, &ModularParams, &EvalConfig) -> Result<Vec<Check>>,
) -> Entry {
    entry(info(name, description, 1e-10, SuiteKind::Identity, 100), Windows::Strip, move |plan, ctx| {
        gamma_suite(name, plan, ctx, f)
    })
}

fn kernel_entry(family: Family, regime: Regime, description: &'static str) -> Entry {
    let name = kernel_suite_name(family, regime, true);
    let mut i = info(name, description, 1e-8, SuiteKind::Identity, 100);
    if (family, regime) == (Family::A3, Regime::Elliptic) {
        i.label = Some(EVIDENCE);
    }
    entry(i, Windows::Regime(regime, true), move |plan, ctx| {
        kernel_samples(name, family, regime, KernelMode::Full, true, plan, ctx)
    })
}

fn failure_entry(family: Family, regime: Regime, description: &'static str) -> Entry {
    let name = kernel_suite_name(family, regime, false);
    entry(
        info(name, description, 1e-3, SuiteKind::Inequality, 100),
        Windows::Regime(regime, false),
        move |plan, ctx| kernel_samples(name, family, regime, KernelMode::Discrepancy, true, plan, ctx),
    )
}

fn build_entries() -> Vec<Entry> {
    use Family::{A2, A3};
    use Regime::{Elliptic, Hyperbolic, Trigonometric};
    use SuiteKind::{Identity, Inequality};
    let ell = Windows::Regime(Elliptic, true);
    let hyp = Windows::Regime(Hyperbolic, true);
    vec![
        gamma_entry("gamma-reflection", "G(z) G(-z) = 1, elliptic and hyperbolic", reflection),
        gamma_entry("gamma-modular", "G is invariant under a+ <-> a-, elliptic and hyperbolic", modular),
        gamma_entry("gamma-conjugation", "conj G(z) = G(-conj z), elliptic and hyperbolic", conjugation),
        gamma_entry("gamma-ade", "first-order difference equations of G in both directions", gamma_ade),
        gamma_entry("theta-ade", "difference equations of R_delta, s_delta and the trigonometric gamma", theta_ade),
        gamma_entry("gamma-ratio", "G(z+ia)/G(z-ia) = p+ p- s+(z) s-(z)", gamma_ratio),
        gamma_entry("gamma-log-series", "log-series and Gamma_e forms agree with the product form", log_series),
        entry(
            info(
                "hyperbolic-ladder",
                "hyperbolic G far from the real axis via the a+ and a- ladders",
                1e-9,
                Identity,
                100,
            ),
            Windows::Strip,
            ladder_suite,
        ),
        entry(
            info(
                "weight-forms",
                "weight functions: gamma form = s form, cyclic invariance, positivity",
                1e-10,
                Identity,
                50,
            ),
            Windows::Regime(Hyperbolic, false),
            weight_forms,
        ),
        kernel_entry(
            A2,
            Elliptic,
            "A2 elliptic kernel identities on the hyperplane, both delta and mu, all slot pairs",
        ),
        kernel_entry(
            A2,
            Hyperbolic,
            "A2 hyperbolic kernel identities on the hyperplane, both delta and mu, all slot pairs",
        ),
        kernel_entry(A2, Trigonometric, "A2 trigonometric kernel identities with the e^{-9irx1} prefactor"),
        kernel_entry(A3, Elliptic, "A3 elliptic kernel identity on the hyperplane, both delta"),
        kernel_entry(A3, Hyperbolic, "A3 hyperbolic kernel identity on the hyperplane, both delta"),
        kernel_entry(A3, Trigonometric, "A3 trigonometric kernel identity with the e^{-8irx1} prefactor"),
        failure_entry(A2, Elliptic, "A2 elliptic kernel identity fails off the hyperplane"),
        failure_entry(A2, Hyperbolic, "A2 hyperbolic kernel identity fails off the hyperplane"),
        failure_entry(A3, Elliptic, "A3 elliptic kernel identity fails off the hyperplane"),
        failure_entry(A3, Hyperbolic, "A3 hyperbolic kernel identity fails off the hyperplane"),
        entry(
            info(
                "trig-prefactor-necessity",
                "A2 trigonometric identity fails without the e^{-9irx1} prefactor",
                1e-3,
                Inequality,
                100,
            ),
            Windows::Regime(Trigonometric, true),
            |plan, ctx| {
                kernel_samples("trig-prefactor-necessity", A2, Trigonometric, KernelMode::Discrepancy, false, plan, ctx)
            },
        ),
        entry(
            info("a2-dressed-kernel", "Hamiltonian kernel identity for the dressed A2 kernel", 1e-8, Identity, 30),
            Windows::Regime(Elliptic, true),
            |plan, ctx| dressed_suite("a2-dressed-kernel", A2, plan, ctx),
        ),
        entry(
            info("a3-dressed-kernel", "Hamiltonian kernel identity for the dressed A3 kernel", 1e-8, Identity, 30),
            Windows::Regime(Elliptic, true),
            |plan, ctx| dressed_suite("a3-dressed-kernel", A3, plan, ctx),
        ),
        entry(
            info("reduced-a2-elliptic", "reduced A2 functions L_r = R_r on the hyperplane", 1e-9, Identity, 100),
            ell,
            |plan, ctx| reduced_suite("reduced-a2-elliptic", plan, ctx),
        ),
        entry(
            info("reduced-a2-unconstrained", "reduced A2 functions differ off the hyperplane", 1e-3, Inequality, 100),
            Windows::Regime(Elliptic, false),
            |plan, ctx| reduced_suite("reduced-a2-unconstrained", plan, ctx),
        ),
        entry(
            info(
                "reduced-a3-elliptic",
                "reduced elliptic A3 functions agree under v <-> w on the hyperplane",
                1e-9,
                Identity,
                100,
            ),
            ell,
            |plan, ctx| reduced_suite("reduced-a3-elliptic", plan, ctx),
        ),
        entry(
            info(
                "reduced-a3-hyperbolic",
                "reduced hyperbolic A3 functions and F_L = F_R on the hyperplane",
                1e-9,
                Identity,
                100,
            ),
            hyp,
            |plan, ctx| reduced_suite("reduced-a3-hyperbolic", plan, ctx),
        ),
        entry(
            info(
                "reduction-a2-elliptic",
                "A2 acting on S2, divided by the shifted kernel, gives the theta sum",
                1e-9,
                Identity,
                50,
            ),
            ell,
            |plan, ctx| reduction_suite("reduction-a2-elliptic", Elliptic, A2, plan, ctx),
        ),
        entry(
            info(
                "reduction-a3-elliptic",
                "A3 acting on S3, divided by the shifted kernel, gives the theta sum",
                1e-9,
                Identity,
                50,
            ),
            ell,
            |plan, ctx| reduction_suite("reduction-a3-elliptic", Elliptic, A3, plan, ctx),
        ),
        entry(
            info(
                "reduction-a3-hyperbolic",
                "hyperbolic A3 acting on S3, divided by the shifted kernel",
                1e-9,
                Identity,
                50,
            ),
            hyp,
            |plan, ctx| reduction_suite("reduction-a3-hyperbolic", Hyperbolic, A3, plan, ctx),
        ),
        entry(
            info(
                "multipliers-a2",
                "all six reduced A2 summands share one quasi-period multiplier",
                1e-9,
                Identity,
                100,
            ),
            ell,
            |plan, ctx| multiplier_suite("multipliers-a2", A2, plan, ctx),
        ),
        entry(
            info(
                "multipliers-a3",
                "all eight reduced A3 summands share one quasi-period multiplier",
                1e-9,
                Identity,
                100,
            ),
            ell,
            |plan, ctx| multiplier_suite("multipliers-a3", A3, plan, ctx),
        ),
        entry(
            info(
                "multipliers-unconstrained",
                "off the hyperplane the L and R multiplier exponents are 2,8,8 and 6,6,6",
                1e-8,
                Identity,
                100,
            ),
            Windows::Regime(Elliptic, false),
            multiplier_exponents,
        ),
        entry(
            info(
                "residues-independent-poles",
                "residues of L_r - R_r vanish at the six w-independent poles",
                1e-8,
                Identity,
                10,
            ),
            ell,
            |plan, ctx| residue_suite("residues-independent-poles", ResidueCheck::Independent, plan, ctx),
        ),
        entry(
            info(
                "residues-dependent-poles",
                "L_r and R_r have equal residues at the w-dependent poles",
                1e-8,
                Identity,
                10,
            ),
            ell,
            |plan, ctx| residue_suite("residues-dependent-poles", ResidueCheck::Dependent, plan, ctx),
        ),
        entry(
            info(
                "residues-nonvanishing",
                "off the hyperplane L - R has a nonzero residue at v1 = v2 + 2t",
                1e-3,
                Inequality,
                10,
            ),
            Windows::Regime(Elliptic, false),
            residue_nonvanishing,
        ),
        entry(
            info(
                "residues-stability",
                "doubling the contour nodes changes the residues by < 1e-12",
                1e-12,
                Identity,
                10,
            ),
            ell,
            |plan, ctx| residue_suite("residues-stability", ResidueCheck::Stability, plan, ctx),
        ),
        entry(
            info(
                "ratio-identities",
                "hyperbolic ratio identities (sum, first, second moment, b-form), also at a = pi",
                1e-10,
                Identity,
                200,
            ),
            hyp,
            ratio_identities,
        ),
        entry(
            info(
                "commutation-a2",
                "A2 operators commute for all four (delta, delta') pairs, elliptic and hyperbolic",
                1e-9,
                Identity,
                30,
            ),
            Windows::Regime(Elliptic, false),
            |plan, ctx| commutation_suite("commutation-a2", A2, plan, ctx),
        ),
        entry(
            info(
                "commutation-scalar",
                "scalar theta identity behind A2 commutativity is symmetric in mu, mu'",
                1e-9,
                Identity,
                100,
            ),
            Windows::Regime(Elliptic, false),
            scalar_commutation_suite,
        ),
        entry(
            info(
                "commutation-a3",
                "A3 operators with delta = + and - commute, elliptic and hyperbolic",
                1e-9,
                Identity,
                30,
            ),
            Windows::Regime(Elliptic, false),
            |plan, ctx| commutation_suite("commutation-a3", A3, plan, ctx),
        ),
        entry(
            info(
                "hamiltonian-a2-elliptic",
                "W^1/2 A2 W^-1/2 = H2 on the ordered chamber, with positivity witness",
                1e-9,
                Identity,
                50,
            ),
            Windows::Custom { re: 1.2, im: 0.0, constrained: false },
            |plan, ctx| hamiltonian_suite("hamiltonian-a2-elliptic", A2, Elliptic, plan, ctx),
        ),
        entry(
            info(
                "hamiltonian-a2-hyperbolic",
                "W^1/2 A2 W^-1/2 = H2 on the ordered chamber, with positivity witness",
                1e-9,
                Identity,
                50,
            ),
            Windows::Custom { re: 1.2, im: 0.0, constrained: false },
            |plan, ctx| hamiltonian_suite("hamiltonian-a2-hyperbolic", A2, Hyperbolic, plan, ctx),
        ),
        entry(
            info(
                "hamiltonian-a3-elliptic",
                "W^1/2 A3 W^-1/2 = H3 on the ordered chamber, with positivity witness",
                1e-9,
                Identity,
                50,
            ),
            Windows::Custom { re: 1.2, im: 0.0, constrained: false },
            |plan, ctx| hamiltonian_suite("hamiltonian-a3-elliptic", A3, Elliptic, plan, ctx),
        ),
        entry(
            info(
                "hamiltonian-a3-hyperbolic",
                "W^1/2 A3 W^-1/2 = H3 on the ordered chamber, with positivity witness",
                1e-9,
                Identity,
                50,
            ),
            Windows::Custom { re: 1.2, im: 0.0, constrained: false },
            |plan, ctx| hamiltonian_suite("hamiltonian-a3-hyperbolic", A3, Hyperbolic, plan, ctx),
        ),
        entry(
            info("bc-split", "2 A2 = c(2mu) B + C for the hyperbolic operators", 1e-10, Identity, 50),
            Windows::Regime(Hyperbolic, false),
            bc_split,
        ),
        entry(
            info("rational-identity", "rational A2 and A3 operators annihilate constants", 1e-12, Identity, 200),
            Windows::Regime(Regime::Rational, false),
            rational_identity,
        ),
        entry(
            info(
                "toda-nonrel",
                "rational operators with the nonrelativistic Toda kernels, sigma = +-",
                1e-8,
                Identity,
                50,
            ),
            Windows::Custom { re: 1.0, im: 0.3, constrained: false },
            toda_nonrel,
        ),
        entry(
            info("toda-rel", "B_delta with the relativistic Toda kernels, delta, tau = +-", 1e-8, Identity, 50),
            Windows::Custom { re: 0.6, im: 0.05, constrained: false },
            |plan, ctx| toda_rel("toda-rel", TodaOp::B, &Sign::BOTH, &Sign::BOTH, plan, ctx),
        ),
        entry(
            info("toda-rel-c-plus", "C_delta with the tau = + relativistic Toda kernel", 1e-8, Identity, 50),
            Windows::Custom { re: 0.6, im: 0.05, constrained: false },
            |plan, ctx| toda_rel("toda-rel-c-plus", TodaOp::C, &[Sign::Plus], &Sign::BOTH, plan, ctx),
        ),
        entry(
            info(
                "toda-rel-c-failure",
                "C_delta fails the tau = - relativistic Toda kernel identity",
                1e-3,
                Inequality,
                50,
            ),
            Windows::Custom { re: 0.6, im: 0.05, constrained: false },
            |plan, ctx| toda_rel("toda-rel-c-failure", TodaOp::C, &[Sign::Minus], &[Sign::Plus], plan, ctx),
        ),
    ]
}

fn entries() -> &'static [Entry] {
    static ENTRIES: OnceLock<Vec<Entry>> = OnceLock::new();
    ENTRIES.get_or_init(build_entries)
}

/// Every registered suite, in run order.
pub fn registry() -> Vec<SuiteInfo> {
    entries().iter().map(|e| e.info).collect()
}

pub fn suite_names() -> Vec<&'static str> {
    entries().iter().map(|e| e.info.name).collect()
}

fn run_entry(e: &Entry, ctx: &RunConfig) -> IdentityReport {
    let plan = plan_for(e.windows, &e.info, ctx);
    IdentityReport::assemble(&e.info, ctx, (e.run)(&plan, ctx))
}

/// The sample plan a suite uses under `ctx`.
pub fn suite_plan(name: &str, ctx: &RunConfig) -> Result<SamplePlan> {
    let e = entries().iter().find(|e| e.info.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(plan_for(e.windows, &e.info, ctx))
}

pub fn run_suite(name: &str, ctx: &RunConfig) -> Result<IdentityReport> {
    let e = entries().iter().find(|e| e.info.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(run_entry(e, ctx))
}

/// Runs every suite; reports come back in registry order whatever the
/// scheduling.
pub fn run_all(ctx: &RunConfig) -> Vec<IdentityReport> {
    entries().par_iter().map(|e| run_entry(e, ctx)).collect()
}
