//! Audit verdicts and their plain-text and JSON forms.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};

use crate::registry::{MetricClaim, Operand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    NonNegativity,
    #[serde(rename = "identity-of-indiscernibles")]
    Identity,
    Symmetry,
    #[serde(rename = "triangle-inequality")]
    Triangle,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::NonNegativity,
        Axiom::Identity,
        Axiom::Symmetry,
        Axiom::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::NonNegativity => "non-negativity",
            Axiom::Identity => "identity-of-indiscernibles",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle-inequality",
        }
    }

    /// Short form used in golden files.
    pub fn short(self) -> &'static str {
        match self {
            Axiom::NonNegativity => "nonneg",
            Axiom::Identity => "identity",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sampled input, serialized as a plain array or string.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessInput(pub Operand);

impl Serialize for WitnessInput {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Operand::Vector(v) => v.as_slice().serialize(s),
            Operand::Pdf(p) => p.probs().serialize(s),
            Operand::Text(t) => t.to_string().serialize(s),
        }
    }
}

impl fmt::Display for WitnessInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums = |f: &mut fmt::Formatter<'_>, xs: &[f64]| {
            let parts: Vec<String> = xs.iter().map(|x| format!("{x}")).collect();
            write!(f, "({})", parts.join(", "))
        };
        match &self.0 {
            Operand::Vector(v) => nums(f, v),
            Operand::Pdf(p) => nums(f, p),
            Operand::Text(t) => write!(f, "{:?}", t.to_string()),
        }
    }
}

/// A computed distance, with non-finite values serialized as strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Value {
    pub label: String,
    pub value: f64,
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Value", 2)?;
        st.serialize_field("label", &self.label)?;
        if self.value.is_finite() {
            st.serialize_field("value", &self.value)?;
        } else {
            st.serialize_field("value", &self.value.to_string())?;
        }
        st.end()
    }
}

/// Replayable counterexample: the sampled inputs (named x, y, z in order)
/// and the distances that break the axiom.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub inputs: Vec<WitnessInput>,
    pub values: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Passed { checks: usize },
    Violated { witness: Witness },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Passed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub measure: String,
    pub domain: String,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub claimed_metric: MetricClaim,
    pub observed: MetricClaim,
    pub consistent: bool,
    pub axioms: Vec<AxiomResult>,
    /// Checks skipped because the measure raised a typed error, by kind.
    pub excluded: BTreeMap<&'static str, usize>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn verdict(&self, axiom: Axiom) -> &Verdict {
        &self
            .axioms
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("every axiom is reported")
            .verdict
    }

    pub fn violated(&self) -> Vec<Axiom> {
        self.axioms
            .iter()
            .filter(|r| !r.verdict.passed())
            .map(|r| r.axiom)
            .collect()
    }

    /// One line per measure, stable across runs with the same seed.
    pub fn golden_line(&self) -> String {
        let mut line = format!(
            "{} claim={} observed={}",
            self.measure, self.claimed_metric, self.observed
        );
        for r in &self.axioms {
            let v = if r.verdict.passed() {
                "pass"
            } else {
                "VIOLATED"
            };
            let _ = write!(line, " {}={v}", r.axiom.short());
        }
        line
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Classification implied by a set of axiom verdicts.
pub(crate) fn classify(axioms: &[AxiomResult]) -> MetricClaim {
    let ok = |a: Axiom| axioms.iter().any(|r| r.axiom == a && r.verdict.passed());
    match (
        ok(Axiom::NonNegativity) && ok(Axiom::Identity) && ok(Axiom::Symmetry),
        ok(Axiom::Triangle),
    ) {
        (true, true) => MetricClaim::Metric,
        (true, false) => MetricClaim::SemiMetric,
        _ => MetricClaim::NotMetric,
    }
}

/// Whether an observed classification agrees with a claim. `unknown` claims
/// agree with everything; `not-metric` needs at least one violation.
pub fn consistent(claim: MetricClaim, observed: MetricClaim) -> bool {
    match claim {
        MetricClaim::Unknown => true,
        MetricClaim::Metric => observed == MetricClaim::Metric,
        MetricClaim::SemiMetric => observed != MetricClaim::NotMetric,
        MetricClaim::NotMetric => observed != MetricClaim::Metric,
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "audit {} on {} ({} trials, seed {}, tol {:e})",
            self.measure, self.domain, self.trials, self.seed, self.tolerance
        )?;
        for r in &self.axioms {
            match &r.verdict {
                Verdict::Passed { checks } => {
                    writeln!(f, "  {:<28} passed ({checks} checks)", r.axiom.name())?
                }
                Verdict::Violated { witness } => {
                    writeln!(
                        f,
                        "  {:<28} VIOLATED at trial {}",
                        r.axiom.name(),
                        witness.trial
                    )?;
                    for (name, input) in ["x", "y", "z"].iter().zip(&witness.inputs) {
                        writeln!(f, "      {name} = {input}")?;
                    }
                    for v in &witness.values {
                        writeln!(f, "      {} = {}", v.label, v.value)?;
                    }
                }
            }
        }
        writeln!(
            f,
            "claimed: {}; observed: {}; consistent: {}",
            self.claimed_metric,
            self.observed,
            if self.consistent { "yes" } else { "no" }
        )?;
        for (kind, n) in &self.excluded {
            writeln!(f, "excluded: {n} checks raised {kind}")?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}
