//! Cross-measure identities evaluated on seeded random inputs.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::domain::DomainSpec;
use crate::chi_square as chi;
use crate::entropy as ent;
use crate::error::Result;
use crate::fidelity as fid;
use crate::intersection as int;
use crate::minkowski::{self as mk, PExponent};
use crate::rearrangement::{levenshtein, EditCosts};
use crate::registry::{evaluate, registry_list, MetricClaim, Operand, Params};
use crate::string_similarity::lcs;
use crate::types::{Pdf, RealVector, SymbolString};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationResult {
    pub name: &'static str,
    /// Largest `|lhs − rhs| / max(1, |lhs|, |rhs|)` over the evaluated
    /// samples: absolute for values up to 1, relative beyond.
    pub max_deviation: f64,
    pub samples: usize,
    /// Samples where either side raised a typed error.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub seed: u64,
    pub trials: usize,
    pub relations: Vec<RelationResult>,
}

impl RelationReport {
    pub fn get(&self, name: &str) -> Option<&RelationResult> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn worst(&self) -> f64 {
        self.relations
            .iter()
            .map(|r| r.max_deviation)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relations ({} trials, seed {})", self.trials, self.seed)?;
        for r in &self.relations {
            write!(
                f,
                "  {:<44} max deviation {:.3e} over {}",
                r.name, r.max_deviation, r.samples
            )?;
            if r.skipped > 0 {
                write!(f, " ({} skipped)", r.skipped)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

type PdfRelation = (&'static str, fn(&Pdf, &Pdf) -> Result<(f64, f64)>);

fn l1(p: &Pdf, q: &Pdf) -> Result<f64> {
    let (a, b) = (RealVector::new(p.to_vec())?, RealVector::new(q.to_vec())?);
    mk::minkowski(&a, &b, PExponent::Finite(1.0))
}

fn soergel(p: &Pdf, q: &Pdf) -> Result<f64> {
    mk::soergel(&RealVector::new(p.to_vec())?, &RealVector::new(q.to_vec())?)
}

const PDF_RELATIONS: &[PdfRelation] = &[
    ("topsoe = 2 js", |p, q| {
        Ok((ent::topsoe(p, q)?, 2.0 * ent::jensen_shannon(p, q)?))
    }),
    ("jensen-difference = js", |p, q| {
        Ok((ent::jensen_difference(p, q)?, ent::jensen_shannon(p, q)?))
    }),
    ("k(p,q) + k(q,p) = topsoe", |p, q| {
        Ok((
            ent::k_divergence(p, q)? + ent::k_divergence(q, p)?,
            ent::topsoe(p, q)?,
        ))
    }),
    ("j = kl(p,q) + kl(q,p)", |p, q| {
        Ok((
            ent::j_divergence(p, q)?,
            ent::kl_divergence(p, q)? + ent::kl_divergence(q, p)?,
        ))
    }),
    ("js-sqrt^2 = js", |p, q| {
        Ok((
            ent::jensen_shannon_distance(p, q)?.powi(2),
            ent::jensen_shannon(p, q)?,
        ))
    }),
    ("hellinger^2 = 1 - bc", |p, q| {
        Ok((
            fid::hellinger(p, q)?.powi(2),
            1.0 - fid::bhattacharyya_coefficient(p, q)?,
        ))
    }),
    ("matusita = sqrt2 hellinger", |p, q| {
        Ok((fid::matusita(p, q)?, 2f64.sqrt() * fid::hellinger(p, q)?))
    }),
    ("squared-chord = 2 - 2 bc", |p, q| {
        Ok((
            fid::squared_chord(p, q)?.distance,
            2.0 - 2.0 * fid::bhattacharyya_coefficient(p, q)?,
        ))
    }),
    ("2 clark^2 = divergence", |p, q| {
        Ok((
            2.0 * chi::clark(p, q)?.powi(2),
            chi::divergence_distance(p, q)?,
        ))
    }),
    ("additive-symmetric = pearson + neyman", |p, q| {
        Ok((
            chi::additive_symmetric_chi2(p, q)?,
            chi::pearson_chi2(p, q)? + chi::neyman_chi2(p, q)?,
        ))
    }),
    ("probabilistic-symmetric = 2 squared-chi2", |p, q| {
        Ok((
            chi::squared_chi2(p, q, true)?,
            2.0 * chi::squared_chi2(p, q, false)?,
        ))
    }),
    ("intersection dist = l1 / 2", |p, q| {
        Ok((int::intersection(p, q)?.distance, 0.5 * l1(p, q)?))
    }),
    ("soergel = jaccard-pdf dist", |p, q| {
        Ok((soergel(p, q)?, int::jaccard_pdf(p, q)?.distance))
    }),
    ("jaccard-pdf sim + dist = 1", |p, q| {
        let j = int::jaccard_pdf(p, q)?;
        Ok((j.similarity + j.distance, 1.0))
    }),
    ("motyka sim = sorensen sim / 2", |p, q| {
        Ok((
            int::motyka(p, q)?.similarity,
            0.5 * int::sorensen(p, q)?.similarity,
        ))
    }),
    ("kulczynski sim * dist = 1", |p, q| {
        let k = int::kulczynski_pdf(p, q)?;
        Ok((k.similarity * k.distance, 1.0))
    }),
];

/// Evaluates every cross-measure identity on `trials` seeded samples and
/// reports the largest deviation per identity.
pub fn relation_suite(seed: u64, trials: usize) -> RelationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relations = Vec::new();

    let pdf_domains: Vec<DomainSpec> = (2..=8).map(DomainSpec::pdf).collect();
    let pdf_pairs: Vec<(Pdf, Pdf)> = (0..trials)
        .map(|i| {
            let d = &pdf_domains[i % pdf_domains.len()];
            match (d.sample(&mut rng), d.sample(&mut rng)) {
                (Operand::Pdf(p), Operand::Pdf(q)) => (p, q),
                _ => unreachable!("pdf domain"),
            }
        })
        .collect();
    for &(name, f) in PDF_RELATIONS {
        relations.push(tally(name, pdf_pairs.iter().map(|(p, q)| f(p, q))));
    }

    let text = DomainSpec::text("abcd", 8);
    let strings: Vec<(SymbolString, SymbolString)> = (0..trials)
        .map(|_| match (text.sample(&mut rng), text.sample(&mut rng)) {
            (Operand::Text(a), Operand::Text(b)) => (a, b),
            _ => unreachable!("text domain"),
        })
        .collect();
    let indel = EditCosts::new(2.0, 1.0, 1.0).expect("positive costs");
    relations.push(tally(
        "levenshtein(sub=2) = |p| + |q| - 2 lcs",
        strings.iter().map(|(a, b)| {
            Ok((
                levenshtein(a, b, &indel),
                (a.len() + b.len()) as f64 - 2.0 * lcs(a, b) as f64,
            ))
        }),
    ));

    // d(x, x) = 0 for every distance claimed to be a metric.
    let mut self_dev = 0.0f64;
    let (mut samples, mut skipped) = (0, 0);
    let params = Params::default();
    let claimed: Vec<_> = registry_list()
        .into_iter()
        .filter(|d| d.claimed_metric == MetricClaim::Metric && d.id != "mahalanobis")
        .collect();
    for i in 0..trials {
        let desc = claimed[i % claimed.len()];
        let x = DomainSpec::default_for(desc).sample(&mut rng);
        match evaluate(desc.id, &x, &x, &params) {
            Ok(o) => {
                samples += 1;
                self_dev = self_dev.max(o.extended_distance().map_or(f64::INFINITY, f64::abs));
            }
            Err(_) => skipped += 1,
        }
    }
    relations.push(RelationResult {
        name: "d(x,x) = 0 for claimed metrics",
        max_deviation: self_dev,
        samples,
        skipped,
    });

    RelationReport {
        seed,
        trials,
        relations,
    }
}

fn tally(name: &'static str, values: impl Iterator<Item = Result<(f64, f64)>>) -> RelationResult {
    let mut r = RelationResult {
        name,
        max_deviation: 0.0,
        samples: 0,
        skipped: 0,
    };
    for v in values {
        match v {
            Ok((lhs, rhs)) => {
                r.samples += 1;
                let dev = (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs());
                r.max_deviation = if dev.is_nan() {
                    f64::INFINITY
                } else {
                    r.max_deviation.max(dev)
                };
            }
            Err(_) => r.skipped += 1,
        }
    }
    r
}
