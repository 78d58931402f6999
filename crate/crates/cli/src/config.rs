//! Run settings: a flat TOML file overlaid with command-line flags.

use gk_core::verify::{suite_names, Mutation, RunConfig};
use gk_core::{Complex64, ModularParams};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Environment variable read when neither flag nor file sets the seed.
pub const SEED_ENV: &str = "GK_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected json or text)")),
        }
    }
}

pub fn parse_mutation(s: &str) -> Result<Mutation, String> {
    match s {
        "flip-delta2" => Ok(Mutation::FlipDelta2),
        _ => Err(format!("unknown mutation '{s}' (expected flip-delta2)")),
    }
}

/// Parses `0.41+0.2i`, `-0.3i`, `1.5` and the like.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let z = Complex64::from_str(&t).map_err(|_| format!("not a complex number: '{s}'"))?;
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite value: '{s}'"))
    }
}

/// Keys accepted in a config file. Complex values are strings such as `"0.41+0.2i"`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub r: Option<f64>,
    pub a_plus: Option<f64>,
    pub a_minus: Option<f64>,
    pub mu: Option<String>,
    pub mu_prime: Option<String>,
    pub d: Option<String>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub jobs: Option<usize>,
    pub tol: Option<f64>,
    pub failure_floor: Option<f64>,
    pub suites: Option<Vec<String>>,
    pub unconstrained: Option<bool>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
    pub mutate: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

/// Values given on the command line; each one overrides the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub suites: Vec<String>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub jobs: Option<usize>,
    pub tol: Option<f64>,
    pub unconstrained: bool,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub mutate: Option<Mutation>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub ctx: RunConfig,
    pub suites: Vec<&'static str>,
    pub jobs: Option<usize>,
    pub output: PathBuf,
    pub format: Format,
}

/// The failure-certification counterpart of an identity suite, if any.
pub fn unconstrained_counterpart(name: &str) -> Option<&'static str> {
    Some(match name {
        "a2-elliptic-kernel" => "a2-elliptic-unconstrained",
        "a2-hyperbolic-kernel" => "a2-hyperbolic-unconstrained",
        "a3-elliptic-kernel" => "a3-elliptic-unconstrained",
        "a3-hyperbolic-kernel" => "a3-hyperbolic-unconstrained",
        "reduced-a2-elliptic" => "reduced-a2-unconstrained",
        _ => return None,
    })
}

fn resolve_suite(name: &str) -> Result<&'static str, String> {
    suite_names().into_iter().find(|n| *n == name).ok_or_else(|| format!("unknown suite '{name}'"))
}

fn positive(name: &str, x: f64) -> Result<f64, String> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{name} must be a positive finite number, got {x}"))
    }
}

fn env_seed() -> Result<Option<u64>, String> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| format!("{SEED_ENV} is not an integer: '{s}'")),
        Err(_) => Ok(None),
    }
}

impl Settings {
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self, String> {
        let mut ctx = RunConfig::default();
        let p = ctx.params;
        ctx.params = ModularParams {
            r: file.r.unwrap_or(p.r),
            a_plus: file.a_plus.unwrap_or(p.a_plus),
            a_minus: file.a_minus.unwrap_or(p.a_minus),
        };
        ctx.params.validate().map_err(|e| e.to_string())?;
        if let Some(s) = &file.mu {
            ctx.mu = parse_complex(s)?;
        }
        if let Some(s) = &file.mu_prime {
            ctx.mu_prime = parse_complex(s)?;
        }
        if let Some(s) = &file.d {
            ctx.d = parse_complex(s)?;
        }
        if let Some(seed) = flags.seed.or(file.seed).map(Ok).or_else(|| env_seed().transpose()) {
            ctx.seed = seed?;
        }
        ctx.points = flags.points.or(file.points);
        if ctx.points == Some(0) {
            return Err("points must be at least 1".into());
        }
        if let Some(tol) = flags.tol.or(file.tol) {
            ctx.cfg.target_tol = positive("tol", tol)?;
        }
        ctx.cfg.validate().map_err(|e| e.to_string())?;
        if let Some(f) = file.failure_floor {
            ctx.failure_floor = positive("failure_floor", f)?;
        }
        ctx.mutation = match flags.mutate {
            Some(m) => Some(m),
            None => file.mutate.as_deref().map(parse_mutation).transpose()?,
        };
        let jobs = flags.jobs.or(file.jobs);
        if jobs == Some(0) {
            return Err("jobs must be at least 1".into());
        }
        let format = match flags.format {
            Some(f) => f,
            None => file.format.as_deref().map(Format::from_str).transpose()?.unwrap_or_default(),
        };

        let requested = if flags.suites.is_empty() { file.suites.unwrap_or_default() } else { flags.suites };
        let mut suites: Vec<&'static str> = if requested.is_empty() {
            suite_names()
        } else {
            requested.iter().map(|s| resolve_suite(s)).collect::<Result<_, _>>()?
        };
        if flags.unconstrained || file.unconstrained.unwrap_or(false) {
            suites = suites.into_iter().map(|s| unconstrained_counterpart(s).unwrap_or(s)).collect();
        }
        let mut seen = std::collections::HashSet::new();
        suites.retain(|s| seen.insert(*s));

        Ok(Settings {
            ctx,
            suites,
            jobs,
            output: flags.output.or(file.output).unwrap_or_else(|| PathBuf::from("gk-reports")),
            format,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_strings() {
        assert_eq!(parse_complex("0.41+0.2i").unwrap(), Complex64::new(0.41, 0.2));
        assert_eq!(parse_complex(" -0.3i ").unwrap(), Complex64::new(0.0, -0.3));
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("inf").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig =
            toml::from_str("seed = 7\npoints = 5\nmu = \"0.1+0.1i\"\nsuites = [\"gamma-ade\"]").unwrap();
        let s = Settings::resolve(file, Overrides { seed: Some(9), ..Overrides::default() }).unwrap();
        assert_eq!(s.ctx.seed, 9);
        assert_eq!(s.ctx.points, Some(5));
        assert_eq!(s.ctx.mu, Complex64::new(0.1, 0.1));
        assert_eq!(s.suites, vec!["gamma-ade"]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(toml::from_str::<FileConfig>("colour = 3").is_err());
        let bad = |f: &str| Settings::resolve(toml::from_str(f).unwrap(), Overrides::default()).is_err();
        assert!(bad("a_plus = -1.0"));
        assert!(bad("suites = [\"nope\"]"));
        assert!(bad("d = \"x\""));
        assert!(bad("points = 0"));
        assert!(bad("format = \"xml\""));
    }

    #[test]
    fn unconstrained_maps_kernel_suites() {
        let flags = Overrides {
            suites: vec!["a2-elliptic-kernel".into(), "gamma-ade".into()],
            unconstrained: true,
            ..Overrides::default()
        };
        let s = Settings::resolve(FileConfig::default(), flags).unwrap();
        assert_eq!(s.suites, vec!["a2-elliptic-unconstrained", "gamma-ade"]);
    }
}
