//! Randomized falsification of the metric axioms.
//!
//! Each trial samples a triple `(x, y, z)` from a [`DomainSpec`] (half
//! independent, half with `y` between `x` and `z`) and checks
//! non-negativity, identity of indiscernibles, symmetry and the triangle
//! inequality. The first violation of each axiom is shrunk by random
//! simplification and kept as a replayable witness. Everything is driven by
//! a single seed.

mod domain;
mod relations;
mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chi_square::{estimate_covariance, Inversion};
use crate::error::{MeasureError, Result};
use crate::registry::{evaluate, lookup, MeasureDescriptor, Operand, Outcome, Params};
use crate::types::{DataSample, FeatureRanges, RangeSize, SymbolWeights};

pub use domain::{DomainSpec, Sign};
pub use relations::{relation_suite, RelationReport, RelationResult};
pub use report::{
    consistent, AuditReport, Axiom, AxiomResult, Value, Verdict, Witness, WitnessInput,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const SHRINK_ROUNDS: usize = 100;

/// Audits `measure_id` on `domain`.
pub fn audit(
    measure_id: &str,
    domain: &DomainSpec,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<AuditReport> {
    let desc = lookup(measure_id)?;
    if !domain.compatible_with(desc.input_kind) {
        return Err(MeasureError::IncompatibleDomain {
            measure: desc.id.to_string(),
            domain: domain.to_string(),
        });
    }
    let (params, mut notes) = audit_params(desc, domain, seed)?;
    notes.extend(domain_notes(desc));
    let auditor = Auditor {
        id: desc.id,
        params: &params,
        tol,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = [0usize; 4];
    let mut first: [Option<(usize, Vec<Operand>)>; 4] = Default::default();
    let mut excluded: BTreeMap<&'static str, usize> = BTreeMap::new();

    for trial in 0..trials {
        let x = domain.sample(&mut rng);
        let (y, z) = if trial % 2 == 0 {
            (domain.sample(&mut rng), domain.sample(&mut rng))
        } else if let Operand::Text(_) = x {
            let y = domain.mutate(&x, &mut rng);
            let z = domain.mutate(&y, &mut rng);
            (y, z)
        } else {
            let z = domain.sample(&mut rng);
            (domain.between(&x, &z, &mut rng), z)
        };
        let triple = [x, y, z];
        for (k, axiom) in Axiom::ALL.into_iter().enumerate() {
            if first[k].is_some() {
                continue;
            }
            let tuple = &triple[..axiom_arity(axiom)];
            match auditor.check(axiom, tuple) {
                Check::Holds => checks[k] += 1,
                Check::Violated(_) => first[k] = Some((trial, tuple.to_vec())),
                Check::Excluded(e) if is_fatal(&e) => return Err(e),
                Check::Excluded(e) => *excluded.entry(e.kind()).or_default() += 1,
            }
        }
    }

    let axioms: Vec<AxiomResult> = Axiom::ALL
        .into_iter()
        .zip(first)
        .zip(checks)
        .map(|((axiom, hit), checks)| {
            let verdict = match hit {
                None => Verdict::Passed { checks },
                Some((trial, tuple)) => {
                    let stream = seed ^ (0x5eed_0000 + axiom as u64);
                    let (tuple, values) = auditor.shrink(axiom, tuple, domain, stream);
                    Verdict::Violated {
                        witness: Witness {
                            trial,
                            inputs: tuple.into_iter().map(WitnessInput).collect(),
                            values,
                        },
                    }
                }
            };
            AxiomResult { axiom, verdict }
        })
        .collect();

    if !excluded.is_empty() {
        notes.push("checks that raised a typed error are excluded from the sampled domain".into());
    }
    let observed = report::classify(&axioms);
    Ok(AuditReport {
        measure: desc.id.to_string(),
        domain: domain.to_string(),
        trials,
        seed,
        tolerance: tol,
        claimed_metric: desc.claimed_metric,
        observed,
        consistent: consistent(desc.claimed_metric, observed),
        axioms,
        excluded,
        notes,
    })
}

/// Audits on the measure's default domain ([`DomainSpec::default_for`]).
pub fn audit_default(measure_id: &str, trials: usize, seed: u64, tol: f64) -> Result<AuditReport> {
    let desc = lookup(measure_id)?;
    audit(desc.id, &DomainSpec::default_for(desc), trials, seed, tol)
}

/// Errors that no choice of inputs avoids.
fn is_fatal(e: &MeasureError) -> bool {
    matches!(
        e,
        MeasureError::SimilarityOnly(_)
            | MeasureError::MissingParameter { .. }
            | MeasureError::InvalidParameter { .. }
            | MeasureError::IncompatibleOperand { .. }
    )
}

fn axiom_arity(axiom: Axiom) -> usize {
    match axiom {
        Axiom::Triangle => 3,
        _ => 2,
    }
}

/// Parameters a measure needs before it can be audited: Gower ranges from
/// the domain bounds, a Mahalanobis covariance estimated from a seeded
/// sample of the domain.
fn audit_params(
    desc: &MeasureDescriptor,
    domain: &DomainSpec,
    seed: u64,
) -> Result<(Params, Vec<String>)> {
    let mut params = Params::default();
    let mut notes = Vec::new();
    match desc.id {
        "gower" => {
            let (dim, low, high) = match *domain {
                DomainSpec::Vector { dim, low, high, .. } => (dim, low, high),
                DomainSpec::Pdf { dim, .. } => (dim, 0.0, 1.0),
                DomainSpec::Text { .. } => unreachable!("checked compatibility"),
            };
            let (low, high) = if low == high {
                (low, low + 1.0)
            } else {
                (low, high)
            };
            params.ranges = Some(FeatureRanges::uniform(dim, low, high, RangeSize::Span)?);
            notes.push(format!(
                "feature ranges [{low}, {high}] on every coordinate"
            ));
        }
        "mahalanobis" => {
            let dim = domain.dim().expect("vector domain");
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0_7a71);
            let n = (4 * dim).max(20);
            let rows = (0..n)
                .map(|_| match domain.sample(&mut rng) {
                    Operand::Vector(v) => v.into_inner(),
                    Operand::Pdf(p) => p.to_vec(),
                    Operand::Text(_) => unreachable!("checked compatibility"),
                })
                .collect();
            let model = estimate_covariance(&DataSample::new(rows)?, Inversion::Pseudo)?;
            params.covariance = Some(Arc::new(model));
            notes.push(format!(
                "covariance estimated from {n} seeded samples of the domain"
            ));
        }
        "lcsk" => params.k = Some(2),
        "hcs" => {
            if let DomainSpec::Text { alphabet, .. } = domain {
                params.weights = Some(SymbolWeights::uniform(alphabet.iter().copied(), 1.0)?);
            }
        }
        _ => {}
    }
    Ok((params, notes))
}

fn domain_notes(desc: &MeasureDescriptor) -> Option<String> {
    let note = match desc.id {
        "jaccard-vector" => {
            "metric claim audited on 0/1 indicator vectors (sets); real non-negative vectors can break the \
             triangle inequality and signed vectors can give negative similarity"
        }
        "dice" => "audited on non-negative vectors; signed vectors can give negative similarity",
        "motyka" => "self-similarity is 1/2, so d(x, x) = 1/2",
        "kulczynski-pdf" => "undefined at identical inputs; those checks are excluded",
        "bhattacharyya" => "claimed metric, but the triangle inequality fails once one distribution nearly vanishes on a bin",
        "jaro" | "jaro-winkler" => "two empty strings have similarity 0, so d(x, x) = 1",
        "ngram" => "strings shorter than n share the empty profile and are at distance 0",
        _ => return None,
    };
    Some(note.into())
}

enum Check {
    Holds,
    Violated(Vec<Value>),
    Excluded(MeasureError),
}

struct Auditor<'a> {
    id: &'static str,
    params: &'a Params,
    tol: f64,
}

impl Auditor<'_> {
    fn d(&self, a: &Operand, b: &Operand) -> std::result::Result<f64, MeasureError> {
        match evaluate(self.id, a, b, self.params)? {
            Outcome::Similarity(_) => Err(MeasureError::SimilarityOnly(self.id.to_string())),
            other => Ok(other.extended_distance().expect("distance outcome")),
        }
    }

    fn slack(&self, values: &[f64]) -> f64 {
        let scale = values
            .iter()
            .filter(|v| v.is_finite())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        self.tol * (1.0 + scale)
    }

    fn check(&self, axiom: Axiom, t: &[Operand]) -> Check {
        match self.try_check(axiom, t) {
            Ok(None) => Check::Holds,
            Ok(Some(values)) => Check::Violated(values),
            Err(e) => Check::Excluded(e),
        }
    }

    fn try_check(
        &self,
        axiom: Axiom,
        t: &[Operand],
    ) -> std::result::Result<Option<Vec<Value>>, MeasureError> {
        let v = |label: &str, value: f64| Value {
            label: label.to_string(),
            value,
        };
        Ok(match axiom {
            Axiom::NonNegativity => {
                let dxy = self.d(&t[0], &t[1])?;
                (dxy < -self.slack(&[dxy])).then(|| vec![v("d(x,y)", dxy)])
            }
            Axiom::Identity => {
                let dxx = self.d(&t[0], &t[0])?;
                if dxx.abs() > self.slack(&[dxx]) {
                    Some(vec![v("d(x,x)", dxx)])
                } else if t[0] != t[1] {
                    let dxy = self.d(&t[0], &t[1])?;
                    (dxy.abs() <= self.tol).then(|| vec![v("d(x,y)", dxy)])
                } else {
                    None
                }
            }
            Axiom::Symmetry => {
                let dxy = self.d(&t[0], &t[1])?;
                let dyx = self.d(&t[1], &t[0])?;
                let broken = if dxy.is_infinite() || dyx.is_infinite() {
                    dxy != dyx
                } else {
                    (dxy - dyx).abs() > self.slack(&[dxy, dyx])
                };
                broken.then(|| vec![v("d(x,y)", dxy), v("d(y,x)", dyx)])
            }
            Axiom::Triangle => {
                let dxy = self.d(&t[0], &t[1])?;
                let dyz = self.d(&t[1], &t[2])?;
                let dxz = self.d(&t[0], &t[2])?;
                let rhs = dxy + dyz;
                let broken = if rhs.is_infinite() {
                    false
                } else {
                    dxz > rhs + self.slack(&[dxy, dyz, dxz])
                };
                broken.then(|| vec![v("d(x,y)", dxy), v("d(y,z)", dyz), v("d(x,z)", dxz)])
            }
        })
    }

    /// Random-restart shrinking: replace one input by a simpler candidate
    /// and keep it while the axiom stays violated.
    fn shrink(
        &self,
        axiom: Axiom,
        mut tuple: Vec<Operand>,
        domain: &DomainSpec,
        stream: u64,
    ) -> (Vec<Operand>, Vec<Value>) {
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let Check::Violated(mut values) = self.check(axiom, &tuple) else {
            unreachable!("shrinking starts from a violation")
        };
        for _ in 0..SHRINK_ROUNDS {
            let i = rng.random_range(0..tuple.len());
            let Some(cand) = domain.shrink(&tuple[i], &mut rng) else {
                continue;
            };
            let mut next = tuple.clone();
            next[i] = cand;
            if let Check::Violated(vals) = self.check(axiom, &next) {
                tuple = next;
                values = vals;
            }
        }
        if axiom == Axiom::Identity && values[0].label == "d(x,x)" {
            tuple.truncate(1);
        }
        (tuple, values)
    }
}
