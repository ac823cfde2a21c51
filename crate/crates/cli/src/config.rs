//! Flag values, TOML config files and their validation.

use std::path::{Path, PathBuf};

use laguerre_hardy::Error;
use serde::Deserialize;

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Everything that ends the process early, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Budget(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Config(_) | Failure::Io(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Budget(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

pub fn config_err(field: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Config(format!("{field}: {msg}"))
}

pub fn parse_f64(field: &str, s: &str) -> CliResult<f64> {
    let v: f64 = s.trim().parse().map_err(|_| config_err(field, format!("{s:?} is not a number")))?;
    if !v.is_finite() {
        return Err(config_err(field, format!("{s:?} is not finite")));
    }
    Ok(v)
}

pub fn parse_f64_list(field: &str, s: &str) -> CliResult<Vec<f64>> {
    let v: Vec<f64> = s.split(',').filter(|p| !p.trim().is_empty()).map(|p| parse_f64(field, p)).collect::<CliResult<_>>()?;
    if v.is_empty() {
        return Err(config_err(field, "list is empty"));
    }
    Ok(v)
}

/// Nonnegative integer; scientific notation such as `1e6` is accepted when
/// it denotes an integer.
pub fn int_from_f64(field: &str, v: f64) -> CliResult<u64> {
    if !(v >= 0.0) || v.fract() != 0.0 || v > 9.007_199_254_740_992e15 {
        return Err(config_err(field, format!("{v} is not a nonnegative integer")));
    }
    Ok(v as u64)
}

pub fn parse_int(field: &str, s: &str) -> CliResult<u64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    int_from_f64(field, parse_f64(field, t)?)
}

/// `a..b` (inclusive), a comma list, or a single index.
pub fn parse_k(s: &str) -> CliResult<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (parse_int("k", a)?, parse_int("k", b)?);
        if b < a {
            return Err(config_err("k", format!("empty range {s}")));
        }
        if b - a > 1_000_000 {
            return Err(config_err("k", format!("range {s} has more than 1e6 entries")));
        }
        return Ok((a as usize..=b as usize).collect());
    }
    s.split(',').map(|p| parse_int("k", p).map(|v| v as usize)).collect()
}

/// Numbers in a config file may be written as TOML integers, floats or
/// strings (`"1e6"`, `"0..10"`, `"0.5,1"`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(i) => i.to_string(),
            Scalar::Float(f) => format!("{f:e}"),
            Scalar::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ListOrScalar {
    List(Vec<Scalar>),
    One(Scalar),
}

impl ListOrScalar {
    /// Comma-joined text, parsed by the same code as the flags.
    pub fn text(&self) -> String {
        match self {
            ListOrScalar::List(v) => v.iter().map(Scalar::text).collect::<Vec<_>>().join(","),
            ListOrScalar::One(s) => s.text(),
        }
    }
}

/// Keys accepted in a `--config` file. Flags given on the command line take
/// precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<ListOrScalar>,
    pub k: Option<ListOrScalar>,
    pub u: Option<ListOrScalar>,
    pub y: Option<ListOrScalar>,
    pub r: Option<ListOrScalar>,
    pub envelope_c: Option<Scalar>,
    pub nmax: Option<Scalar>,
    pub p: Option<Scalar>,
    pub t: Option<Scalar>,
    #[serde(rename = "K")]
    pub big_k: Option<Scalar>,
    pub eps: Option<Scalar>,
    pub count: Option<Scalar>,
    pub seed: Option<Scalar>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub threads: Option<Scalar>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Config(format!("config {}: {e}", path.display())))
    }
}

/// Flag text if present, otherwise the config file entry.
pub fn pick(flag: &Option<String>, file: &Option<ListOrScalar>) -> Option<String> {
    flag.clone().or_else(|| file.as_ref().map(ListOrScalar::text))
}

pub fn pick_scalar(flag: &Option<String>, file: &Option<Scalar>) -> Option<String> {
    flag.clone().or_else(|| file.as_ref().map(Scalar::text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(config_err("format", format!("{s:?} is not one of json, csv"))),
        }
    }

    /// Explicit format, else the output file extension, else JSON.
    pub fn resolve(explicit: Option<&str>, out: Option<&Path>) -> CliResult<Self> {
        if let Some(f) = explicit {
            return Self::parse(f);
        }
        match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Ok(Format::Csv),
            _ => Ok(Format::Json),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges_are_inclusive() {
        assert_eq!(parse_k("0..10").unwrap().len(), 11);
        assert_eq!(parse_k("3").unwrap(), vec![3]);
        assert_eq!(parse_k("1,4").unwrap(), vec![1, 4]);
        assert!(parse_k("5..2").is_err());
    }

    #[test]
    fn integers_accept_scientific() {
        assert_eq!(parse_int("K", "1e6").unwrap(), 1_000_000);
        assert!(parse_int("K", "1.5").is_err());
        assert!(parse_int("K", "-3").is_err());
    }

    #[test]
    fn config_errors_name_the_line() {
        let e = toml::from_str::<FileConfig>("alpha = 0.5\nbogus = 1\n").unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("bogus"), "{e}");
        let c: FileConfig = toml::from_str("alpha = [0.5, -0.5]\nK = 1e6\nk = \"0..3\"").unwrap();
        assert_eq!(pick(&None, &c.alpha).unwrap(), "5e-1,-5e-1");
        assert_eq!(parse_int("K", &pick_scalar(&None, &c.big_k).unwrap()).unwrap(), 1_000_000);
    }
}
