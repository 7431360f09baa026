//! Loss data and profile specifications.
//!
//! Loss data are realized outcomes of `X`: negative numbers are losses of
//! money and the reported risk is `-sup{m : P ∈ 𝒜^m}`, so a sample with a
//! worst outcome of `-10` has worst-case risk `10`.

use std::path::{Path, PathBuf};

use lvar_core::{mixture, Breakpoint, Cdf, LossProfile, Orientation};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSpec {
    pub x: f64,
    /// Left limit at `x`; defaults to `value`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<f64>,
    pub value: f64,
}

impl PointSpec {
    fn breakpoint(&self) -> Breakpoint {
        Breakpoint::new(self.x, self.left.unwrap_or(self.value), self.value)
    }
}

fn breakpoints(points: &[PointSpec]) -> Vec<Breakpoint> {
    points.iter().map(PointSpec::breakpoint).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistSpec {
    Empirical { samples: Vec<f64> },
    Dirac { x: f64 },
    Uniform { a: f64, b: f64 },
    /// `weight · first + (1 - weight) · second`.
    Mixture {
        weight: f64,
        first: Box<DistSpec>,
        second: Box<DistSpec>,
    },
    Piecewise { points: Vec<PointSpec> },
}

impl DistSpec {
    pub fn build(&self) -> CliResult<Cdf> {
        Ok(match self {
            DistSpec::Empirical { samples } => Cdf::from_samples(samples)?,
            DistSpec::Dirac { x } => Cdf::dirac(*x)?,
            DistSpec::Uniform { a, b } => Cdf::uniform(*a, *b)?,
            DistSpec::Mixture {
                weight,
                first,
                second,
            } => mixture(&first.build()?, &second.build()?, *weight)?,
            DistSpec::Piecewise { points } => Cdf::from_points(breakpoints(points))?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationSpec {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProfileSpec {
    Constant {
        lambda: f64,
    },
    Step {
        lambda_min: f64,
        lambda_max: f64,
        threshold: f64,
    },
    Piecewise {
        points: Vec<PointSpec>,
        orientation: OrientationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tails: Option<(f64, f64)>,
    },
}

impl ProfileSpec {
    pub fn build(&self) -> CliResult<LossProfile> {
        Ok(match self {
            ProfileSpec::Constant { lambda } => LossProfile::constant(*lambda)?,
            ProfileSpec::Step {
                lambda_min,
                lambda_max,
                threshold,
            } => LossProfile::step(*lambda_min, *lambda_max, *threshold)?,
            ProfileSpec::Piecewise {
                points,
                orientation,
                tails,
            } => {
                let bps = breakpoints(points);
                let tails = match (tails, bps.first(), bps.last()) {
                    (Some(t), _, _) => *t,
                    (None, Some(a), Some(b)) => (a.left, b.value),
                    _ => return Err(CliError::Parse("piecewise profile has no points".into())),
                };
                let orientation = match orientation {
                    OrientationSpec::Increasing => Orientation::Nondecreasing,
                    OrientationSpec::Decreasing => Orientation::Nonincreasing,
                };
                LossProfile::piecewise(bps, tails, orientation)?
            }
        })
    }
}

/// Provenance of a data file as echoed in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataEcho {
    pub path: String,
    pub format: String,
    pub sha256: String,
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// One number per line, optionally preceded by a `value` header.
pub fn parse_csv(bytes: &[u8]) -> CliResult<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(bytes);
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Parse(format!("csv: {e}")))?;
        if record.len() != 1 {
            return Err(CliError::Parse(format!(
                "csv line {}: expected one value, found {}",
                i + 1,
                record.len()
            )));
        }
        let field = &record[0];
        if i == 0 && field.eq_ignore_ascii_case("value") {
            continue;
        }
        let v: f64 = field
            .parse()
            .map_err(|_| CliError::Parse(format!("csv line {}: {field:?} is not a number", i + 1)))?;
        if !v.is_finite() {
            return Err(CliError::Parse(format!("csv line {}: value must be finite", i + 1)));
        }
        out.push(v);
    }
    Ok(out)
}

/// Loads a distribution from a CSV of outcomes or a distribution JSON file.
pub fn load_data(path: &Path) -> CliResult<(Cdf, DataEcho)> {
    let bytes = read(path)?;
    let (cdf, format) = if is_json(path) {
        let spec: DistSpec = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        (spec.build()?, "json")
    } else {
        (Cdf::from_samples(&parse_csv(&bytes)?)?, "csv")
    };
    let echo = DataEcho {
        path: path.display().to_string(),
        format: format.into(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    Ok((cdf, echo))
}

pub fn load_profile(path: &Path) -> CliResult<ProfileSpec> {
    let bytes = read(path)?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn require(path: &Option<PathBuf>, flag: &str) -> CliResult<PathBuf> {
    path.clone()
        .ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}
