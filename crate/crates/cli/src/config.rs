use std::collections::BTreeMap;
use std::path::Path;

use clap::{Args, ValueEnum};
use selfsmall::exactalg::Ring;
use selfsmall::verify::{RunOptions, TowerSpec, ENTRY_KEYS};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{key}: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

fn bad(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { key: key.into(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    Z,
    Poly,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Flags of `verify`. Every flag is optional so that a config file can
/// supply it; flags win over the file.
#[derive(Args, Debug, Default, Clone)]
pub struct VerifyArgs {
    /// Flat `key=value` file using the flag names as keys.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    pub ring: Option<RingKind>,
    /// Characteristic of the coefficient field for `--ring poly`.
    #[arg(long = "char")]
    pub characteristic: Option<u64>,
    /// Ideal generator: a decimal integer, a polynomial such as `x^2+1`, or
    /// a coefficient list such as `[1,0,1]`.
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "oracle-bound")]
    pub oracle_bound: Option<u64>,
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Run a single entry and its prerequisites.
    #[arg(long)]
    pub lemma: Option<String>,
}

/// A validated run request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub tower: TowerSpec,
    pub format: Format,
    pub options: RunOptions,
}

const KEYS: [&str; 9] = ["ring", "char", "ideal", "depth", "format", "seed", "oracle-bound", "horizon", "lemma"];

/// Reads `key=value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(&format!("line {}", i + 1), "expected key=value"))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(bad(k, "unknown key"));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(bad(k, "given twice"));
        }
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| bad(key, format!("cannot parse `{v}`")))
}

fn file_values(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad("config", format!("{}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Merges the flags with the optional config file and validates the result.
pub fn resolve(args: &VerifyArgs) -> Result<RunConfig, ConfigError> {
    let file = match &args.config {
        Some(p) => file_values(p)?,
        None => BTreeMap::new(),
    };
    let get = |k: &str| file.get(k).map(String::as_str);

    let ring_kind = match (args.ring, get("ring")) {
        (Some(r), _) => r,
        (None, Some(v)) => RingKind::from_str(v, true).map_err(|_| bad("ring", format!("expected z or poly, got `{v}`")))?,
        (None, None) => RingKind::Z,
    };
    let characteristic = match (args.characteristic, get("char")) {
        (Some(c), _) => Some(c),
        (None, Some(v)) => Some(parse_value::<u64>("char", v)?),
        (None, None) => None,
    };
    let ring = match (ring_kind, characteristic) {
        (RingKind::Z, None) => Ring::Integers,
        (RingKind::Z, Some(_)) => return Err(bad("char", "only applies to --ring poly")),
        (RingKind::Poly, None) => return Err(bad("char", "required for --ring poly")),
        (RingKind::Poly, Some(p)) => Ring::polynomials(p).map_err(|e| bad("char", e.to_string()))?,
    };
    let ideal_text = args.ideal.clone().or_else(|| get("ideal").map(String::from)).unwrap_or_else(|| match ring {
        Ring::Integers => "2".into(),
        _ => "x".into(),
    });
    let ideal = canonical_ideal(&ring, &ideal_text)?;

    let depth = match (args.depth, get("depth")) {
        (Some(d), _) => d,
        (None, Some(v)) => parse_value("depth", v)?,
        (None, None) => 4,
    };
    if depth == 0 {
        return Err(bad("depth", "must be at least 1"));
    }
    let format = match (args.format, get("format")) {
        (Some(f), _) => f,
        (None, Some(v)) => Format::from_str(v, true).map_err(|_| bad("format", format!("expected text or json, got `{v}`")))?,
        (None, None) => Format::Text,
    };
    let defaults = RunOptions::default();
    let seed = match (args.seed, get("seed")) {
        (Some(s), _) => s,
        (None, Some(v)) => parse_value("seed", v)?,
        (None, None) => defaults.seed,
    };
    let oracle_bound = match (args.oracle_bound, get("oracle-bound")) {
        (Some(b), _) => b,
        (None, Some(v)) => parse_value("oracle-bound", v)?,
        (None, None) => defaults.oracle_bound,
    };
    if oracle_bound < 2 {
        return Err(bad("oracle-bound", "must be at least 2"));
    }
    let horizon = match (args.horizon, get("horizon")) {
        (Some(h), _) => h,
        (None, Some(v)) => parse_value("horizon", v)?,
        (None, None) => defaults.horizon,
    };
    if horizon == 0 {
        return Err(bad("horizon", "must be at least 1"));
    }
    let only = args.lemma.clone().or_else(|| get("lemma").map(String::from));
    if let Some(k) = &only {
        if !ENTRY_KEYS.contains(&k.as_str()) {
            return Err(bad("lemma", format!("unknown entry `{k}`; expected one of {}", ENTRY_KEYS.join(", "))));
        }
    }
    Ok(RunConfig {
        tower: TowerSpec { ring, ideal, depth },
        format,
        options: RunOptions { oracle_bound, seed, horizon, only, ..defaults },
    })
}

/// Parses a generator and returns it in canonical text form. Coefficient
/// lists are accepted for polynomial rings.
fn canonical_ideal(ring: &Ring, text: &str) -> Result<String, ConfigError> {
    let elem = if text.starts_with('[') {
        if ring.characteristic().is_none() {
            return Err(bad("ideal", "coefficient lists only apply to --ring poly"));
        }
        let coeffs: Vec<u64> =
            serde_json::from_str(text).map_err(|_| bad("ideal", format!("cannot parse coefficient list `{text}`")))?;
        let elem = ring.poly(&coeffs);
        if !ring.owns(&elem) || coeffs.last() == Some(&0) {
            return Err(bad("ideal", format!("`{text}` is not a reduced coefficient list")));
        }
        elem
    } else {
        ring.parse(text).map_err(|e| bad("ideal", e.to_string()))?
    };
    Ok(ring.format(&elem))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> VerifyArgs {
        VerifyArgs::default()
    }

    #[test]
    fn defaults() {
        let c = resolve(&args()).unwrap();
        assert_eq!(c.tower, TowerSpec { ring: Ring::Integers, ideal: "2".into(), depth: 4 });
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.options.oracle_bound, 4096);
    }

    #[test]
    fn polynomial_flags() {
        let a = VerifyArgs {
            ring: Some(RingKind::Poly),
            characteristic: Some(2),
            ideal: Some("x".into()),
            depth: Some(2),
            ..args()
        };
        let c = resolve(&a).unwrap();
        assert_eq!(c.tower.ring, Ring::polynomials(2).unwrap());
        assert_eq!(c.tower.ideal, "x");
        let a = VerifyArgs { ideal: Some("[1,1]".into()), ..a };
        assert_eq!(resolve(&a).unwrap().tower.ideal, "x+1");
    }

    #[test]
    fn rejects_bad_values() {
        assert_eq!(resolve(&VerifyArgs { depth: Some(0), ..args() }).unwrap_err().key, "depth");
        assert_eq!(resolve(&VerifyArgs { ring: Some(RingKind::Poly), ..args() }).unwrap_err().key, "char");
        assert_eq!(resolve(&VerifyArgs { characteristic: Some(3), ..args() }).unwrap_err().key, "char");
        assert_eq!(resolve(&VerifyArgs { ideal: Some("x".into()), ..args() }).unwrap_err().key, "ideal");
        assert_eq!(resolve(&VerifyArgs { oracle_bound: Some(1), ..args() }).unwrap_err().key, "oracle-bound");
        assert_eq!(resolve(&VerifyArgs { lemma: Some("nope".into()), ..args() }).unwrap_err().key, "lemma");
        let a = VerifyArgs { ring: Some(RingKind::Poly), characteristic: Some(4), ..args() };
        assert_eq!(resolve(&a).unwrap_err().key, "char");
    }

    #[test]
    fn config_text() {
        let m = parse_config_text("# tower\nring = z\nideal=3 # odd prime\n\ndepth=2\n").unwrap();
        assert_eq!(m.get("ideal").map(String::as_str), Some("3"));
        assert_eq!(parse_config_text("colour=red").unwrap_err().key, "colour");
        assert_eq!(parse_config_text("depth=1\ndepth=2").unwrap_err().key, "depth");
        assert!(parse_config_text("depth").is_err());
    }
}
