//! Uniform access to every measure by identifier.

use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::chi_square::{self, CovarianceModel, SpearmanMode};
use crate::entropy::{self, SedMode};
use crate::error::{MeasureError, Result};
use crate::fidelity;
use crate::inner_product;
use crate::intersection;
use crate::minkowski::{self, LorentzianMode, PExponent};
use crate::rearrangement::{self, Conversion, EditCosts};
use crate::string_similarity::{self as strsim, JaroMode};
use crate::types::{FeatureRanges, Pdf, RealVector, SimDistPair, SymbolString, SymbolWeights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    InnerProduct,
    Minkowski,
    Intersection,
    Entropy,
    Chi2,
    Fidelity,
    StringRearrangement,
    StringSimilarity,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::InnerProduct,
        Family::Minkowski,
        Family::Intersection,
        Family::Entropy,
        Family::Chi2,
        Family::Fidelity,
        Family::StringRearrangement,
        Family::StringSimilarity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::InnerProduct => "inner-product",
            Family::Minkowski => "minkowski",
            Family::Intersection => "intersection",
            Family::Entropy => "entropy",
            Family::Chi2 => "chi2",
            Family::Fidelity => "fidelity",
            Family::StringRearrangement => "string-rearrangement",
            Family::StringSimilarity => "string-similarity",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == tag)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InputKind {
    #[serde(rename = "vector")]
    Vector,
    #[serde(rename = "pdf")]
    Pdf,
    #[serde(rename = "string")]
    String,
    /// Two vectors plus a covariance model estimated from a data sample.
    #[serde(rename = "dataset+vector")]
    DatasetVector,
}

impl InputKind {
    pub fn tag(self) -> &'static str {
        match self {
            InputKind::Vector => "vector",
            InputKind::Pdf => "pdf",
            InputKind::String => "string",
            InputKind::DatasetVector => "dataset+vector",
        }
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

/// Metric status asserted for a measure by its literature source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricClaim {
    Metric,
    SemiMetric,
    NotMetric,
    /// No assertion is made either way.
    Unknown,
}

impl MetricClaim {
    pub fn tag(self) -> &'static str {
        match self {
            MetricClaim::Metric => "metric",
            MetricClaim::SemiMetric => "semi-metric",
            MetricClaim::NotMetric => "not-metric",
            MetricClaim::Unknown => "unknown",
        }
    }

    pub fn from_tag(tag: &str) -> Option<MetricClaim> {
        [
            MetricClaim::Metric,
            MetricClaim::SemiMetric,
            MetricClaim::NotMetric,
            MetricClaim::Unknown,
        ]
        .into_iter()
        .find(|c| c.tag() == tag)
    }
}

impl fmt::Display for MetricClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureDescriptor {
    pub id: &'static str,
    pub family: Family,
    pub input_kind: InputKind,
    pub claimed_metric: MetricClaim,
    pub value_range: &'static str,
    pub aliases: &'static [&'static str],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

/// An argument to a registered measure.
#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Vector(RealVector),
    Pdf(Pdf),
    Text(SymbolString),
}

impl Operand {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Operand::Vector(_) => "vector",
            Operand::Pdf(_) => "pdf",
            Operand::Text(_) => "string",
        }
    }
}

/// Result of evaluating a registered measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Distance(f64),
    Similarity(f64),
    Pair(SimDistPair),
    /// No operator sequence converts one string into the other.
    NoConversion,
}

impl Outcome {
    pub fn similarity(&self) -> Option<f64> {
        match *self {
            Outcome::Similarity(s) => Some(s),
            Outcome::Pair(p) => Some(p.similarity),
            _ => None,
        }
    }

    pub fn distance(&self) -> Option<f64> {
        match *self {
            Outcome::Distance(d) => Some(d),
            Outcome::Pair(p) => Some(p.distance),
            _ => None,
        }
    }

    /// Distance with [`Outcome::NoConversion`] read as `+∞`; `None` for a
    /// similarity-only outcome.
    pub fn extended_distance(&self) -> Option<f64> {
        match self {
            Outcome::NoConversion => Some(f64::INFINITY),
            other => other.distance(),
        }
    }
}

impl From<Conversion> for Outcome {
    fn from(c: Conversion) -> Self {
        match c {
            Conversion::Steps(k) => Outcome::Distance(k as f64),
            Conversion::NoConversion => Outcome::NoConversion,
        }
    }
}

/// Optional parameters. Measures ignore the fields they do not use.
#[derive(Debug, Clone, Default)]
pub struct Params {
    /// Minkowski order (default 3); `f64::INFINITY` selects Chebyshev.
    pub p: Option<f64>,
    /// Feature ranges for Gower.
    pub ranges: Option<FeatureRanges>,
    /// Mode keyword for measures with variants (Lorentzian, SED, Spearman,
    /// Jaro): e.g. `log`, `paper-literal`, `classic`, `standard`.
    pub mode: Option<String>,
    /// Jaro-Winkler prefix scale (default 0.1).
    pub scale: Option<f64>,
    /// Jaro-Winkler prefix cap (default 4).
    pub max_prefix: Option<usize>,
    /// N-gram length (default 2).
    pub n: Option<usize>,
    /// LCSk block length (required).
    pub k: Option<usize>,
    /// HCS weights (required).
    pub weights: Option<SymbolWeights>,
    /// Levenshtein operation costs (default unit).
    pub edit_costs: Option<EditCosts>,
    /// Mahalanobis covariance model (required).
    pub covariance: Option<Arc<CovarianceModel>>,
    /// Additive smoothing applied to both PDFs before entropy-family
    /// measures.
    pub epsilon: Option<f64>,
}

impl Params {
    fn mode<M: DeserializeOwned + Default>(&self) -> Result<M> {
        match &self.mode {
            None => Ok(M::default()),
            Some(m) => serde_json::from_value(serde_json::Value::String(m.clone())).map_err(|_| {
                MeasureError::InvalidParameter {
                    parameter: "mode",
                    value: m.clone(),
                }
            }),
        }
    }

    fn smoothed(&self, p: &Pdf, q: &Pdf) -> Result<(Pdf, Pdf)> {
        match self.epsilon {
            None => Ok((p.clone(), q.clone())),
            Some(e) if e > 0.0 && e.is_finite() => {
                Ok((entropy::smooth(p, e), entropy::smooth(q, e)))
            }
            Some(e) => Err(MeasureError::InvalidParameter {
                parameter: "epsilon",
                value: e.to_string(),
            }),
        }
    }
}

type VectorFn = fn(&RealVector, &RealVector, &Params) -> Result<Outcome>;
type PdfFn = fn(&Pdf, &Pdf, &Params) -> Result<Outcome>;
type TextFn = fn(&[char], &[char], &Params) -> Result<Outcome>;

#[derive(Clone, Copy)]
enum Eval {
    Vector(VectorFn),
    Pdf(PdfFn),
    Text(TextFn),
}

struct Entry {
    desc: MeasureDescriptor,
    eval: Eval,
}

const fn d(
    id: &'static str,
    family: Family,
    input_kind: InputKind,
    claimed_metric: MetricClaim,
    value_range: &'static str,
) -> MeasureDescriptor {
    MeasureDescriptor {
        id,
        family,
        input_kind,
        claimed_metric,
        value_range,
        aliases: &[],
        note: None,
    }
}

const fn aka(mut desc: MeasureDescriptor, aliases: &'static [&'static str]) -> MeasureDescriptor {
    desc.aliases = aliases;
    desc
}

const fn note(mut desc: MeasureDescriptor, text: &'static str) -> MeasureDescriptor {
    desc.note = Some(text);
    desc
}

fn dist(r: Result<f64>) -> Result<Outcome> {
    r.map(Outcome::Distance)
}

fn pair(r: Result<SimDistPair>) -> Result<Outcome> {
    r.map(Outcome::Pair)
}

fn required<T: Clone>(value: &Option<T>, measure: &str, parameter: &'static str) -> Result<T> {
    value.clone().ok_or_else(|| MeasureError::MissingParameter {
        measure: measure.to_string(),
        parameter,
    })
}

use Family::*;
use InputKind::{DatasetVector, Pdf as PdfIn, String as Str, Vector as Vec_};
use MetricClaim::{Metric, NotMetric, Unknown};

static REGISTRY: &[Entry] = &[
    // inner-product family
    Entry {
        desc: note(
            d("inner-product", InnerProduct, Vec_, Metric, "similarity (-inf, inf); distance [0, inf)"),
            "similarity is the dot product; the distance is the norm-induced metric ||p - q||",
        ),
        eval: Eval::Vector(|a, b, _| pair(inner_product::inner_product(a, b))),
    },
    Entry {
        desc: aka(
            d("cosine-distance", InnerProduct, Vec_, NotMetric, "similarity [-1, 1]; distance [0, 2]"),
            &["cosine"],
        ),
        eval: Eval::Vector(|a, b, _| pair(inner_product::cosine(a, b))),
    },
    Entry {
        desc: aka(d("angular-distance", InnerProduct, Vec_, Metric, "[0, 1]"), &["angular"]),
        eval: Eval::Vector(|a, b, _| pair(inner_product::angular(a, b))),
    },
    Entry {
        desc: note(
            aka(
                d("jaccard-vector", InnerProduct, Vec_, Metric, "distance [0, 1] on non-negative vectors"),
                &["tanimoto"],
            ),
            "metric on non-negative vectors; signed inputs can give negative similarity",
        ),
        eval: Eval::Vector(|a, b, _| pair(inner_product::jaccard_vector(a, b))),
    },
    Entry {
        desc: d("dice", InnerProduct, Vec_, NotMetric, "distance [0, 1] on non-negative vectors"),
        eval: Eval::Vector(|a, b, _| pair(inner_product::dice(a, b))),
    },
    // Minkowski family
    Entry {
        desc: aka(d("manhattan", Minkowski, Vec_, Metric, "[0, inf)"), &["l1", "city-block"]),
        eval: Eval::Vector(|a, b, _| dist(minkowski::minkowski(a, b, PExponent::Finite(1.0)))),
    },
    Entry {
        desc: aka(d("euclidean", Minkowski, Vec_, Metric, "[0, inf)"), &["l2"]),
        eval: Eval::Vector(|a, b, _| dist(minkowski::minkowski(a, b, PExponent::Finite(2.0)))),
    },
    Entry {
        desc: note(
            aka(d("minkowski", Minkowski, Vec_, Metric, "[0, inf)"), &["lp"]),
            "order p >= 1 from the p parameter, default 3",
        ),
        eval: Eval::Vector(|a, b, prm| dist(minkowski::minkowski(a, b, PExponent::new(prm.p.unwrap_or(3.0))?))),
    },
    Entry {
        desc: aka(d("chebyshev", Minkowski, Vec_, Metric, "[0, inf)"), &["l-inf"]),
        eval: Eval::Vector(|a, b, _| dist(minkowski::minkowski(a, b, PExponent::Infinity))),
    },
    Entry {
        desc: d("squared-euclidean", Minkowski, Vec_, Unknown, "[0, inf)"),
        eval: Eval::Vector(|a, b, _| dist(minkowski::squared_euclidean(a, b))),
    },
    Entry {
        desc: note(
            d("gower", Minkowski, Vec_, Unknown, "[0, 1] inside the declared ranges"),
            "requires per-feature ranges",
        ),
        eval: Eval::Vector(|a, b, prm| dist(minkowski::gower(a, b, &required(&prm.ranges, "gower", "ranges")?))),
    },
    Entry {
        desc: d("soergel", Minkowski, Vec_, Unknown, "[0, 1] on non-negative vectors"),
        eval: Eval::Vector(|a, b, _| dist(minkowski::soergel(a, b))),
    },
    Entry {
        desc: d("kulczynski", Minkowski, Vec_, Unknown, "[0, inf)"),
        eval: Eval::Vector(|a, b, _| dist(minkowski::kulczynski_vector(a, b))),
    },
    Entry {
        desc: d("canberra", Minkowski, Vec_, Unknown, "[0, d]"),
        eval: Eval::Vector(|a, b, _| dist(minkowski::canberra(a, b, false))),
    },
    Entry {
        desc: d("canberra-adkins", Minkowski, Vec_, Unknown, "[0, 1]"),
        eval: Eval::Vector(|a, b, _| dist(minkowski::canberra(a, b, true))),
    },
    Entry {
        desc: note(
            d("lorentzian", Minkowski, Vec_, NotMetric, "[0, inf)"),
            "pseudo-Euclidean body formula; zero for distinct points on the light cone; mode=log selects the log form",
        ),
        eval: Eval::Vector(|a, b, prm| dist(minkowski::lorentzian(a, b, prm.mode::<LorentzianMode>()?))),
    },
    Entry {
        desc: d("lorentzian-log", Minkowski, Vec_, Unknown, "[0, inf)"),
        eval: Eval::Vector(|a, b, _| dist(minkowski::lorentzian(a, b, LorentzianMode::Log))),
    },
    // intersection family
    Entry {
        desc: d("intersection", Intersection, PdfIn, Unknown, "similarity [0, 1]; distance [0, 1]"),
        eval: Eval::Pdf(|a, b, _| pair(intersection::intersection(a, b))),
    },
    Entry {
        desc: d("wave-hedges", Intersection, PdfIn, Unknown, "[0, d]"),
        eval: Eval::Pdf(|a, b, _| dist(intersection::wave_hedges(a, b))),
    },
    Entry {
        desc: aka(
            d("sorensen", Intersection, PdfIn, Unknown, "similarity [0, 1]; distance [0, 1]"),
            &["czekanowski", "bray-curtis"],
        ),
        eval: Eval::Pdf(|a, b, _| pair(intersection::sorensen(a, b))),
    },
    Entry {
        desc: note(
            d("motyka", Intersection, PdfIn, NotMetric, "similarity [0, 1/2]; distance [1/2, 1]"),
            "self-similarity is 1/2, so d(x, x) = 1/2",
        ),
        eval: Eval::Pdf(|a, b, _| pair(intersection::motyka(a, b))),
    },
    Entry {
        desc: note(
            d("kulczynski-pdf", Intersection, PdfIn, Unknown, "similarity (0, inf); distance (0, inf)"),
            "undefined at identical inputs and for disjoint supports",
        ),
        eval: Eval::Pdf(|a, b, _| pair(intersection::kulczynski_pdf(a, b))),
    },
    Entry {
        desc: aka(
            d("jaccard-pdf", Intersection, PdfIn, Unknown, "similarity [0, 1]; distance [0, 1]"),
            &["ruzicka", "tanimoto-pdf"],
        ),
        eval: Eval::Pdf(|a, b, _| pair(intersection::jaccard_pdf(a, b))),
    },
    // entropy family
    Entry {
        desc: aka(d("kl", Entropy, PdfIn, NotMetric, "[0, inf)"), &["kullback-leibler"]),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::kl_divergence(&a, &b))
        }),
    },
    Entry {
        desc: d("cross-entropy", Entropy, PdfIn, Unknown, "[H(p), inf)"),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::cross_entropy(&a, &b))
        }),
    },
    Entry {
        desc: aka(d("j-divergence", Entropy, PdfIn, Unknown, "[0, inf)"), &["jeffreys"]),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::j_divergence(&a, &b))
        }),
    },
    Entry {
        desc: d("k-divergence", Entropy, PdfIn, Unknown, "[0, ln 2]"),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::k_divergence(&a, &b))
        }),
    },
    Entry {
        desc: d("topsoe", Entropy, PdfIn, Unknown, "[0, 2 ln 2]"),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::topsoe(&a, &b))
        }),
    },
    Entry {
        desc: aka(d("jensen-shannon", Entropy, PdfIn, Unknown, "[0, ln 2]"), &["js"]),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::jensen_shannon(&a, &b))
        }),
    },
    Entry {
        desc: note(
            d("jensen-shannon-sqrt", Entropy, PdfIn, Metric, "[0, sqrt(ln 2)]"),
            "square root of the Jensen-Shannon divergence",
        ),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::jensen_shannon_distance(&a, &b))
        }),
    },
    Entry {
        desc: d("jensen-difference", Entropy, PdfIn, Unknown, "[0, ln 2]"),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::jensen_difference(&a, &b))
        }),
    },
    Entry {
        desc: note(
            d("sed", Entropy, PdfIn, Unknown, "[0, inf) in entropy mode"),
            "structural entropic distance; mode=paper-literal uses the printed complexity sign",
        ),
        eval: Eval::Pdf(|a, b, prm| {
            let (a, b) = prm.smoothed(a, b)?;
            dist(entropy::sed(&a, &b, prm.mode::<SedMode>()?))
        }),
    },
    // chi-square family
    Entry {
        desc: d("pearson-chi2", Chi2, PdfIn, NotMetric, "[0, inf)"),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::pearson_chi2(a, b))),
    },
    Entry {
        desc: d("neyman-chi2", Chi2, PdfIn, NotMetric, "[0, inf)"),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::neyman_chi2(a, b))),
    },
    Entry {
        desc: d("additive-symmetric-chi2", Chi2, PdfIn, Unknown, "[0, inf)"),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::additive_symmetric_chi2(a, b))),
    },
    Entry {
        desc: aka(d("squared-chi2", Chi2, PdfIn, Unknown, "[0, 2]"), &["triangular-discrimination"]),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::squared_chi2(a, b, false))),
    },
    Entry {
        desc: d("probabilistic-symmetric-chi2", Chi2, PdfIn, Unknown, "[0, 4]"),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::squared_chi2(a, b, true))),
    },
    Entry {
        desc: d("divergence", Chi2, PdfIn, Unknown, "[0, 2d]"),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::divergence_distance(a, b))),
    },
    Entry {
        desc: aka(d("clark", Chi2, PdfIn, Unknown, "[0, sqrt(d)]"), &["coefficient-of-divergence"]),
        eval: Eval::Pdf(|a, b, _| dist(chi_square::clark(a, b))),
    },
    Entry {
        desc: note(
            d("pearson-correlation", Chi2, Vec_, Unknown, "similarity [-1, 1]; distance [0, 2]"),
            "similarity is the correlation coefficient, distance 1 - rho",
        ),
        eval: Eval::Vector(|a, b, _| chi_square::pearson_correlation(a, b).map(|r| Outcome::Pair(SimDistPair::from_similarity(r)))),
    },
    Entry {
        desc: note(
            d("spearman", Chi2, Vec_, Unknown, "correlation 1 - distance"),
            "rank correlation; default denominator n(n-1), mode=classic uses n(n^2-1)",
        ),
        eval: Eval::Vector(|a, b, prm| pair(chi_square::spearman(a, b, prm.mode::<SpearmanMode>()?))),
    },
    Entry {
        desc: note(
            d("mahalanobis", Chi2, DatasetVector, Metric, "[0, inf)"),
            "needs a covariance model estimated from a data sample",
        ),
        eval: Eval::Vector(|a, b, prm| {
            let model = required(&prm.covariance, "mahalanobis", "dataset")?;
            dist(chi_square::mahalanobis(a, b, &model))
        }),
    },
    // fidelity family
    Entry {
        desc: note(
            aka(d("fidelity", Fidelity, PdfIn, Unknown, "similarity [0, 1]"), &["bhattacharyya-coefficient"]),
            "similarity only",
        ),
        eval: Eval::Pdf(|a, b, _| fidelity::bhattacharyya_coefficient(a, b).map(Outcome::Similarity)),
    },
    Entry {
        desc: note(
            d("bhattacharyya", Fidelity, PdfIn, Metric, "[0, inf)"),
            "claimed to be a metric bounded by 1; it is unbounded and violates the triangle inequality",
        ),
        eval: Eval::Pdf(|a, b, _| dist(fidelity::bhattacharyya_distance(a, b))),
    },
    Entry {
        desc: d("hellinger", Fidelity, PdfIn, Unknown, "[0, 1]"),
        eval: Eval::Pdf(|a, b, _| dist(fidelity::hellinger(a, b))),
    },
    Entry {
        desc: d("matusita", Fidelity, PdfIn, Unknown, "[0, sqrt(2)]"),
        eval: Eval::Pdf(|a, b, _| dist(fidelity::matusita(a, b))),
    },
    Entry {
        desc: d("squared-chord", Fidelity, PdfIn, Unknown, "similarity [-1, 1]; distance [0, 2]"),
        eval: Eval::Pdf(|a, b, _| pair(fidelity::squared_chord(a, b))),
    },
    // string rearrangement
    Entry {
        desc: note(d("hamming", StringRearrangement, Str, Metric, "{0, ..., n}"), "equal lengths only"),
        eval: Eval::Text(|a, b, _| rearrangement::hamming(a, b).map(|h| Outcome::Distance(h as f64))),
    },
    Entry {
        desc: aka(d("levenshtein", StringRearrangement, Str, Metric, "[0, inf)"), &["edit"]),
        eval: Eval::Text(|a, b, prm| {
            let costs = prm.edit_costs.unwrap_or_default();
            Ok(Outcome::Distance(rearrangement::levenshtein(a, b, &costs)))
        }),
    },
    Entry {
        desc: note(
            d("damerau-levenshtein", StringRearrangement, Str, Unknown, "{0, 1, ...}"),
            "restricted (optimal string alignment) variant",
        ),
        eval: Eval::Text(|a, b, _| Ok(Outcome::Distance(rearrangement::damerau_levenshtein(a, b) as f64))),
    },
    Entry {
        desc: note(
            d("swap", StringRearrangement, Str, NotMetric, "{0, 1, ...} or no conversion"),
            "disjoint adjacent transpositions",
        ),
        eval: Eval::Text(|a, b, _| rearrangement::swap_distance(a, b).map(Outcome::from)),
    },
    Entry {
        desc: d("interchange", StringRearrangement, Str, Unknown, "{0, 1, ...} or no conversion"),
        eval: Eval::Text(|a, b, _| rearrangement::interchange_distance(a, b).map(Outcome::from)),
    },
    Entry {
        desc: d("parallel-interchange", StringRearrangement, Str, NotMetric, "{0, 1, ...} or no conversion"),
        eval: Eval::Text(|a, b, _| rearrangement::parallel_interchange_distance(a, b).map(Outcome::from)),
    },
    // string similarity
    Entry {
        desc: note(
            d("lcs", StringSimilarity, Str, Unknown, "similarity {0, ..., min(|p|, |q|)}"),
            "distance is the insert/delete edit distance |p| + |q| - 2 LCS",
        ),
        eval: Eval::Text(|a, b, _| {
            let l = strsim::lcs(a, b);
            Ok(Outcome::Pair(SimDistPair::new(l as f64, (a.len() + b.len() - 2 * l) as f64)))
        }),
    },
    Entry {
        desc: note(d("lcsk", StringSimilarity, Str, Unknown, "similarity {0, 1, ...}"), "needs k; similarity only"),
        eval: Eval::Text(|a, b, prm| {
            let k = required(&prm.k, "lcsk", "k")?;
            strsim::lcsk(a, b, k).map(|l| Outcome::Similarity(l as f64))
        }),
    },
    Entry {
        desc: note(d("hcs", StringSimilarity, Str, Unknown, "similarity [0, inf)"), "needs symbol weights; similarity only"),
        eval: Eval::Text(|a, b, prm| {
            let w = required(&prm.weights, "hcs", "weights")?;
            strsim::hcs(a, b, &w).map(Outcome::Similarity)
        }),
    },
    Entry {
        desc: aka(
            d("jaro", StringSimilarity, Str, NotMetric, "similarity [0, 1]; distance [0, 1]"),
            &["jaro-distance"],
        ),
        eval: Eval::Text(|a, b, prm| Ok(Outcome::Pair(strsim::jaro(a, b, prm.mode::<JaroMode>()?)))),
    },
    Entry {
        desc: note(
            d("jaro-winkler", StringSimilarity, Str, NotMetric, "similarity [0, 1]; distance [0, 1]"),
            "scale default 0.1, prefix cap default 4",
        ),
        eval: Eval::Text(|a, b, prm| {
            pair(strsim::jaro_winkler(
                a,
                b,
                prm.scale.unwrap_or(0.1),
                prm.max_prefix.unwrap_or(4),
                prm.mode::<JaroMode>()?,
            ))
        }),
    },
    Entry {
        desc: note(
            aka(d("ngram", StringSimilarity, Str, NotMetric, "similarity and distance {0, 1, ...}"), &["qgram"]),
            "n default 2",
        ),
        eval: Eval::Text(|a, b, prm| pair(strsim::ngram_measure(a, b, prm.n.unwrap_or(2)))),
    },
    Entry {
        desc: d("ngram-jaccard", StringSimilarity, Str, Unknown, "similarity [0, 1]; distance [0, 1]"),
        eval: Eval::Text(|a, b, prm| pair(strsim::ngram_jaccard(a, b, prm.n.unwrap_or(2)))),
    },
    Entry {
        desc: d("ngram-cosine", StringSimilarity, Str, Unknown, "similarity [0, 1]; distance [0, 1]"),
        eval: Eval::Text(|a, b, prm| pair(strsim::ngram_cosine(a, b, prm.n.unwrap_or(2)))),
    },
];

fn find(id: &str) -> Option<&'static Entry> {
    REGISTRY
        .iter()
        .find(|e| e.desc.id == id || e.desc.aliases.contains(&id))
}

/// All descriptors, ordered by family and then id.
pub fn registry_list() -> Vec<&'static MeasureDescriptor> {
    let mut all: Vec<_> = REGISTRY.iter().map(|e| &e.desc).collect();
    all.sort_by_key(|d| (d.family, d.id));
    all
}

/// Descriptor for an id or alias.
pub fn lookup(id: &str) -> Result<&'static MeasureDescriptor> {
    find(id)
        .map(|e| &e.desc)
        .ok_or_else(|| MeasureError::UnknownMeasure(id.to_string()))
}

/// Evaluates the measure `id` on `a` and `b`.
///
/// PDFs are accepted where vectors are expected; vector measures see their
/// probabilities as plain coordinates.
pub fn evaluate(id: &str, a: &Operand, b: &Operand, params: &Params) -> Result<Outcome> {
    let entry = find(id).ok_or_else(|| MeasureError::UnknownMeasure(id.to_string()))?;
    let mismatch = |found: &Operand| MeasureError::IncompatibleOperand {
        measure: entry.desc.id.to_string(),
        expected: entry.desc.input_kind.tag(),
        found: found.kind_name(),
    };
    match entry.eval {
        Eval::Vector(f) => {
            let va = as_vector(a).ok_or_else(|| mismatch(a))?;
            let vb = as_vector(b).ok_or_else(|| mismatch(b))?;
            f(&va, &vb, params)
        }
        Eval::Pdf(f) => match (a, b) {
            (Operand::Pdf(pa), Operand::Pdf(pb)) => f(pa, pb, params),
            (Operand::Pdf(_), other) | (other, _) => Err(mismatch(other)),
        },
        Eval::Text(f) => match (a, b) {
            (Operand::Text(ta), Operand::Text(tb)) => f(ta, tb, params),
            (Operand::Text(_), other) | (other, _) => Err(mismatch(other)),
        },
    }
}

fn as_vector(op: &Operand) -> Option<std::borrow::Cow<'_, RealVector>> {
    match op {
        Operand::Vector(v) => Some(std::borrow::Cow::Borrowed(v)),
        Operand::Pdf(p) => RealVector::new(p.to_vec())
            .ok()
            .map(std::borrow::Cow::Owned),
        Operand::Text(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{mahalanobis_sample, p_star, q_star, v1, v2};
    use std::collections::HashSet;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn catalog_shape() {
        let all = registry_list();
        assert!(all.len() >= 50, "{}", all.len());
        let mut names = HashSet::new();
        for d in &all {
            assert!(names.insert(d.id), "duplicate {}", d.id);
            for a in d.aliases {
                assert!(names.insert(a), "duplicate alias {a}");
            }
        }
        let euclid = lookup("euclidean").unwrap();
        assert_eq!(euclid.claimed_metric, MetricClaim::Metric);
        assert_eq!(
            lookup("cosine-distance").unwrap().claimed_metric,
            MetricClaim::NotMetric
        );
        assert_eq!(
            all.iter().filter(|d| d.family == Family::Entropy).count(),
            9
        );
        assert!(all
            .iter()
            .any(|d| d.family == Family::Chi2 && d.id == "mahalanobis"));
        // family, then id
        for w in all.windows(2) {
            assert!((w[0].family, w[0].id) < (w[1].family, w[1].id));
        }
        assert_eq!(lookup("czekanowski").unwrap().id, "sorensen");
        assert_eq!(
            lookup("nope"),
            Err(MeasureError::UnknownMeasure("nope".into()))
        );
    }

    #[test]
    fn dispatch() {
        let none = Params::default();
        let (a, b) = (Operand::Vector(v1()), Operand::Vector(v2()));
        let r = evaluate("euclidean", &a, &b, &none).unwrap();
        assert!(close(r.distance().unwrap(), 22f64.sqrt(), 1e-12));
        let (p, q) = (Operand::Pdf(p_star()), Operand::Pdf(q_star()));
        assert!(close(
            evaluate("kl", &p, &q, &none).unwrap().distance().unwrap(),
            0.057,
            5e-4
        ));
        assert!(matches!(
            evaluate("kl", &a, &b, &none),
            Err(MeasureError::IncompatibleOperand { .. })
        ));
        // PDFs are valid vectors
        assert!(evaluate("euclidean", &p, &q, &none).is_ok());
        let (s, t) = (Operand::Text("abc".into()), Operand::Text("cab".into()));
        assert_eq!(
            evaluate("swap", &s, &t, &none).unwrap(),
            Outcome::NoConversion
        );
        assert_eq!(
            evaluate("swap", &s, &t, &none).unwrap().extended_distance(),
            Some(f64::INFINITY)
        );
        assert!(matches!(
            evaluate("lcsk", &s, &t, &none),
            Err(MeasureError::MissingParameter { parameter: "k", .. })
        ));
    }

    #[test]
    fn parameters() {
        let (a, b) = (Operand::Vector(v1()), Operand::Vector(v2()));
        let mut prm = Params {
            mode: Some("log".into()),
            ..Params::default()
        };
        let r = evaluate("lorentzian", &a, &b, &prm)
            .unwrap()
            .distance()
            .unwrap();
        assert!(close(r, 48f64.ln(), 1e-12));
        prm.mode = Some("bogus".into());
        assert!(matches!(
            evaluate("lorentzian", &a, &b, &prm),
            Err(MeasureError::InvalidParameter {
                parameter: "mode",
                ..
            })
        ));
        let m = crate::chi_square::estimate_covariance(&mahalanobis_sample(), Default::default())
            .unwrap();
        let prm = Params {
            covariance: Some(Arc::new(m)),
            ..Params::default()
        };
        let x = Operand::Vector(RealVector::new(vec![66.0, 640.0, 44.0]).unwrap());
        let mu = Operand::Vector(prm.covariance.as_ref().unwrap().mean().clone());
        assert!(close(
            evaluate("mahalanobis", &x, &mu, &prm)
                .unwrap()
                .distance()
                .unwrap(),
            5.33,
            5e-3
        ));
        let prm = Params {
            p: Some(f64::INFINITY),
            ..Params::default()
        };
        assert_eq!(
            evaluate("minkowski", &a, &b, &prm).unwrap().distance(),
            Some(3.0)
        );
    }

    #[test]
    fn smoothing_epsilon() {
        let p = Operand::Pdf(Pdf::new(vec![0.5, 0.5]).unwrap());
        let q = Operand::Pdf(Pdf::new(vec![1.0, 0.0]).unwrap());
        assert!(evaluate("kl", &p, &q, &Params::default()).is_err());
        let prm = Params {
            epsilon: Some(1e-6),
            ..Params::default()
        };
        assert!(evaluate("kl", &p, &q, &prm)
            .unwrap()
            .distance()
            .unwrap()
            .is_finite());
    }
}
