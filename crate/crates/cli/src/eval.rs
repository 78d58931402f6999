//! Single-point evaluation of the library functions.

use gk_core::gamma::{elliptic_gamma, euler_gamma_c, hyper_c, hyper_s, hyperbolic_gamma, s_fn, theta_r, trig_gamma};
use gk_core::kernels::{s2_kernel, s3_kernel, weight, KernelSpec};
use gk_core::{Complex64, Error, EvalConfig, ModularParams, Regime, Sign};

/// Functions that `eval` knows, with the arguments each one reads.
pub const FUNCTIONS: &[(&str, &str)] = &[
    ("elliptic_gamma", "--z"),
    ("hyperbolic_gamma", "--z"),
    ("trig_gamma", "--z [--alpha]"),
    ("euler_gamma", "--z"),
    ("theta_R", "--z --delta"),
    ("s_fn", "--z --delta"),
    ("hyper_c", "--z --delta"),
    ("hyper_s", "--z --delta"),
    ("weight", "--regime --v"),
    ("s2_kernel", "--regime --v --w --z (three coordinates each)"),
    ("s3_kernel", "--regime --v --w (four coordinates each) [--d]"),
];

pub struct EvalArgs {
    pub params: ModularParams,
    pub regime: Regime,
    pub delta: Sign,
    pub alpha: Option<f64>,
    pub d: Complex64,
    pub z: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub w: Vec<Complex64>,
}

pub enum EvalError {
    /// Bad function name or arguments.
    Usage(String),
    /// The library refused the point.
    Library(Error),
}

impl From<Error> for EvalError {
    fn from(e: Error) -> Self {
        EvalError::Library(e)
    }
}

fn scalar(name: &str, xs: &[Complex64]) -> Result<Complex64, EvalError> {
    match xs {
        [z] => Ok(*z),
        _ => Err(EvalError::Usage(format!("{name} needs exactly one value"))),
    }
}

pub fn evaluate(function: &str, a: &EvalArgs, cfg: &EvalConfig) -> Result<Complex64, EvalError> {
    let p = &a.params;
    let z = || scalar("--z", &a.z);
    Ok(match function {
        "elliptic_gamma" => elliptic_gamma(p, z()?, cfg)?,
        "hyperbolic_gamma" => hyperbolic_gamma(p.a_plus, p.a_minus, z()?, cfg)?,
        "trig_gamma" => trig_gamma(p.r, a.alpha.unwrap_or(p.a_minus), z()?, cfg)?,
        "euler_gamma" => euler_gamma_c(z()?)?,
        "theta_R" => theta_r(p, a.delta, z()?, cfg)?,
        "s_fn" => s_fn(p, a.delta, z()?, cfg)?,
        "hyper_c" => hyper_c(p.a_delta(a.delta), z()?),
        "hyper_s" => hyper_s(p.a_delta(a.delta), z()?),
        "weight" => weight(a.regime, &a.v, p, cfg)?,
        "s2_kernel" => s2_kernel(&KernelSpec::a2(a.regime), &a.v, &a.w, &a.z, p, cfg)?,
        "s3_kernel" => s3_kernel(&KernelSpec::a3(a.regime, a.d), a.d, &a.v, &a.w, p, cfg)?,
        _ => return Err(EvalError::Usage(format!("unknown function '{function}'; see `gk eval --help`"))),
    })
}

/// `x` with 15 significant digits.
fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor();
    if (-5.0..15.0).contains(&mag) {
        format!("{:.*}", (14.0 - mag) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}

/// `re + im i` with 15 significant digits in each part.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", sig15(z.re), sig15(z.im.abs()))
}
