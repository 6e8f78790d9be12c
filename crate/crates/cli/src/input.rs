//! Parsing of command-line values into measure operands and parameters.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use simcat_core::chi_square::{estimate_covariance, Inversion};
use simcat_core::rearrangement::EditCosts;
use simcat_core::{
    normalize, DataSample, FeatureRanges, Histogram, InputKind, MeasureError, Operand, Params, Pdf,
    RangeSize, RealVector, SymbolString, SymbolWeights,
};

use crate::CliError;

/// How raw rows are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFormat {
    Vector,
    Pdf,
    Histogram,
    Text,
}

pub fn parse_numbers(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("not a number: {t:?} in {text:?}")))
        })
        .collect()
}

/// Builds an operand for a measure expecting `kind` from one raw value.
pub fn operand(kind: InputKind, format: RowFormat, raw: &str) -> Result<Operand, CliError> {
    let op = match format {
        RowFormat::Text => Operand::Text(SymbolString::from(raw)),
        RowFormat::Vector => {
            let v = parse_numbers(raw)?;
            match kind {
                InputKind::Pdf => Operand::Pdf(Pdf::new(v)?),
                _ => Operand::Vector(RealVector::new(v)?),
            }
        }
        RowFormat::Pdf => Operand::Pdf(Pdf::new(parse_numbers(raw)?)?),
        RowFormat::Histogram => Operand::Pdf(normalize(&Histogram::new(parse_numbers(raw)?)?)?),
    };
    let accepted = match kind {
        InputKind::String => matches!(op, Operand::Text(_)),
        _ => !matches!(op, Operand::Text(_)),
    };
    if accepted {
        Ok(op)
    } else {
        Err(CliError::Usage(format!(
            "{} input given to a {kind} measure",
            op.kind_name()
        )))
    }
}

/// `"2:6,1:6,2:10"`.
pub fn parse_ranges(text: &str, size: RangeSize) -> Result<FeatureRanges, CliError> {
    let bounds = text
        .split(',')
        .map(|pair| {
            let (lo, hi) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("range {pair:?} is not LOW:HIGH")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("not a number: {s:?}")))
            };
            Ok((num(lo)?, num(hi)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(FeatureRanges::new(bounds, size)?)
}

/// `"a=1,b=1,c=4"`.
pub fn parse_weights(text: &str) -> Result<SymbolWeights, CliError> {
    let mut map = HashMap::new();
    for item in text.split(',') {
        let (sym, w) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("weight {item:?} is not SYMBOL=WEIGHT")))?;
        let mut chars = sym.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(CliError::Usage(format!(
                "weight key {sym:?} is not a single symbol"
            )));
        };
        let w = w
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number: {w:?}")))?;
        map.insert(c, w);
    }
    Ok(SymbolWeights::new(map)?)
}

/// Headerless CSV, one observation per line.
pub fn read_dataset(path: &Path) -> Result<DataSample, CliError> {
    let text = read_file(path)?;
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_numbers)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DataSample::new(rows)?)
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Rows of a data file: every non-empty line for numeric formats, every
/// line verbatim (minus the line terminator) for strings.
pub fn read_rows(path: &Path, format: RowFormat) -> Result<Vec<String>, CliError> {
    let text = read_file(path)?;
    Ok(match format {
        RowFormat::Text => text.lines().map(str::to_string).collect(),
        _ => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_string)
            .collect(),
    })
}

/// Measure parameters as given on the command line; echoed in JSON output
/// so that a record can be re-evaluated.
#[derive(Debug, Clone, Default, Serialize, clap::Args)]
pub struct ParamArgs {
    /// Minkowski order; `inf` selects Chebyshev.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Gower feature ranges, e.g. "2:6,1:6,2:10".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranges: Option<String>,
    /// How Gower range sizes are measured.
    #[arg(long, value_parser = ["count", "span"], default_value = "count")]
    pub range_size: String,
    /// Variant keyword: lorentzian `log`, sed `paper-literal`, spearman
    /// `classic`, jaro `standard`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Jaro-Winkler prefix scale.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    /// Jaro-Winkler prefix cap.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_prefix: Option<usize>,
    /// N-gram length.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// LCSk block length.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// HCS symbol weights, e.g. "a=1,b=1,c=4".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<String>,
    /// Levenshtein substitution cost.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub: Option<f64>,
    /// Levenshtein insertion cost.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ins: Option<f64>,
    /// Levenshtein deletion cost.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub del: Option<f64>,
    /// Additive smoothing for entropy-family measures.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Mahalanobis data sample: headerless CSV.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<std::path::PathBuf>,
    /// Use the spectral pseudo-inverse for a singular covariance.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub pinv: bool,
}

impl ParamArgs {
    pub fn to_params(&self) -> Result<Params, CliError> {
        let size = if self.range_size == "span" {
            RangeSize::Span
        } else {
            RangeSize::Count
        };
        let edit_costs = match (self.sub, self.ins, self.del) {
            (None, None, None) => None,
            (s, i, d) => Some(EditCosts::new(
                s.unwrap_or(1.0),
                i.unwrap_or(1.0),
                d.unwrap_or(1.0),
            )?),
        };
        let covariance = match &self.dataset {
            None => None,
            Some(path) => {
                let inversion = if self.pinv {
                    Inversion::Pseudo
                } else {
                    Inversion::Exact
                };
                Some(Arc::new(estimate_covariance(
                    &read_dataset(path)?,
                    inversion,
                )?))
            }
        };
        Ok(Params {
            p: self.p,
            ranges: self
                .ranges
                .as_deref()
                .map(|r| parse_ranges(r, size))
                .transpose()?,
            mode: self.mode.clone(),
            scale: self.scale,
            max_prefix: self.max_prefix,
            n: self.n,
            k: self.k,
            weights: self.weights.as_deref().map(parse_weights).transpose()?,
            edit_costs,
            covariance,
            epsilon: self.epsilon,
        })
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        CliError::Measure(e)
    }
}
