//! Sample spaces for the metric audit.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::MeasureError;
use crate::registry::{InputKind, MeasureDescriptor, Operand};
use crate::types::{Pdf, RealVector, SymbolString};

/// Sign restriction on sampled vector coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Any,
    /// Any signs, but never the zero vector.
    NonZero,
    NonNegative,
    /// Every coordinate strictly positive.
    Positive,
}

/// Where audit inputs are drawn from. Every sampled instance satisfies the
/// invariants of its operand type; measure-specific singular sets surface as
/// typed errors and are excluded per check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainSpec {
    Vector {
        dim: usize,
        low: f64,
        high: f64,
        sign: Sign,
        /// Integer coordinates only.
        lattice: bool,
    },
    Pdf {
        dim: usize,
        allow_zeros: bool,
    },
    Text {
        alphabet: Vec<char>,
        max_len: usize,
        /// All strings have length `max_len`.
        equal_length: bool,
    },
}

impl DomainSpec {
    pub fn vector(dim: usize, low: f64, high: f64, sign: Sign) -> Self {
        DomainSpec::Vector {
            dim,
            low,
            high,
            sign,
            lattice: false,
        }
        .normalized()
    }

    pub fn pdf(dim: usize) -> Self {
        DomainSpec::Pdf {
            dim,
            allow_zeros: false,
        }
    }

    pub fn text(alphabet: &str, max_len: usize) -> Self {
        DomainSpec::Text {
            alphabet: alphabet.chars().collect(),
            max_len,
            equal_length: false,
        }
    }

    /// Default sample space for a measure, chosen so that the measure's
    /// preconditions hold: 0/1 indicator vectors (sets) for Jaccard,
    /// non-negative inputs for the other set-like measures, equal lengths for
    /// Hamming, a small integer lattice for Lorentzian.
    pub fn default_for(desc: &MeasureDescriptor) -> Self {
        match desc.input_kind {
            InputKind::Pdf => DomainSpec::pdf(4),
            InputKind::DatasetVector => DomainSpec::vector(3, -10.0, 10.0, Sign::Any),
            InputKind::String => DomainSpec::Text {
                alphabet: vec!['a', 'b', 'c'],
                max_len: 6,
                equal_length: desc.id == "hamming",
            },
            InputKind::Vector => match desc.id {
                "cosine-distance" | "angular-distance" => {
                    DomainSpec::vector(4, -10.0, 10.0, Sign::NonZero)
                }
                "jaccard-vector" => DomainSpec::Vector {
                    dim: 6,
                    low: 0.0,
                    high: 1.0,
                    sign: Sign::NonNegative,
                    lattice: true,
                },
                "dice" | "soergel" => DomainSpec::vector(4, 0.0, 10.0, Sign::NonNegative),
                "kulczynski" | "canberra" | "canberra-adkins" => {
                    DomainSpec::vector(4, 0.0, 10.0, Sign::Positive)
                }
                "lorentzian" => DomainSpec::Vector {
                    dim: 3,
                    low: -3.0,
                    high: 3.0,
                    sign: Sign::Any,
                    lattice: true,
                },
                _ => DomainSpec::vector(4, -10.0, 10.0, Sign::Any),
            },
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            DomainSpec::Vector { dim, .. } | DomainSpec::Pdf { dim, .. } => Some(*dim),
            DomainSpec::Text { .. } => None,
        }
    }

    /// Whether operands from this domain are accepted by `kind`.
    pub fn compatible_with(&self, kind: InputKind) -> bool {
        matches!(
            (self, kind),
            (
                DomainSpec::Vector { .. },
                InputKind::Vector | InputKind::DatasetVector
            ) | (DomainSpec::Pdf { .. }, InputKind::Vector | InputKind::Pdf)
                | (DomainSpec::Text { .. }, InputKind::String)
        )
    }

    fn normalized(self) -> Self {
        match self {
            DomainSpec::Vector {
                dim,
                low,
                high,
                sign,
                lattice,
            } => {
                let low = match sign {
                    Sign::NonNegative | Sign::Positive => low.max(0.0),
                    _ => low,
                };
                DomainSpec::Vector {
                    dim,
                    low,
                    high: high.max(low),
                    sign,
                    lattice,
                }
            }
            other => other,
        }
    }

    fn validate(&self) -> Result<(), String> {
        match self {
            DomainSpec::Vector {
                dim,
                low,
                high,
                sign,
                lattice,
            } => {
                if *dim == 0 {
                    return Err("dim must be positive".into());
                }
                if !(low.is_finite() && high.is_finite()) || low > high {
                    return Err("range must be finite with low <= high".into());
                }
                if *lattice && low.ceil() > high.floor() {
                    return Err("lattice range contains no integer".into());
                }
                let has_nonzero = if *lattice {
                    low.ceil() != 0.0 || high.floor() != 0.0
                } else {
                    low != high || *low != 0.0
                };
                if matches!(sign, Sign::NonZero | Sign::Positive) && !has_nonzero {
                    return Err("range admits only zero".into());
                }
                if *sign == Sign::Positive && *high <= 0.0 {
                    return Err("positive sign needs high > 0".into());
                }
                if *sign == Sign::Positive && *lattice && high.floor() < 1.0 {
                    return Err("positive lattice needs high >= 1".into());
                }
                Ok(())
            }
            DomainSpec::Pdf { dim, .. } if *dim == 0 => Err("dim must be positive".into()),
            DomainSpec::Pdf { .. } => Ok(()),
            DomainSpec::Text { alphabet, .. } if alphabet.is_empty() => {
                Err("alphabet must not be empty".into())
            }
            DomainSpec::Text { .. } => Ok(()),
        }
    }

    /// Membership test for shrunk candidates.
    pub fn contains(&self, op: &Operand) -> bool {
        match (self, op) {
            (
                DomainSpec::Vector {
                    dim,
                    low,
                    high,
                    sign,
                    lattice,
                },
                Operand::Vector(v),
            ) => {
                v.dim() == *dim
                    && v.iter()
                        .all(|&x| x >= *low && x <= *high && (!lattice || x.fract() == 0.0))
                    && match sign {
                        Sign::Any => true,
                        Sign::NonZero => v.iter().any(|&x| x != 0.0),
                        Sign::NonNegative => v.iter().all(|&x| x >= 0.0),
                        Sign::Positive => v.iter().all(|&x| x > 0.0),
                    }
            }
            (DomainSpec::Pdf { dim, allow_zeros }, Operand::Pdf(p)) => {
                p.dim() == *dim && (*allow_zeros || p.iter().all(|&x| x > 0.0))
            }
            (
                DomainSpec::Text {
                    alphabet,
                    max_len,
                    equal_length,
                },
                Operand::Text(s),
            ) => {
                let len_ok = if *equal_length {
                    s.len() == *max_len
                } else {
                    s.len() <= *max_len
                };
                len_ok && s.iter().all(|c| alphabet.contains(c))
            }
            _ => false,
        }
    }

    pub(crate) fn sample<R: Rng>(&self, rng: &mut R) -> Operand {
        match self {
            DomainSpec::Vector { dim, sign, .. } => loop {
                let v: Vec<f64> = (0..*dim).map(|_| self.coordinate(rng)).collect();
                if *sign == Sign::NonZero && v.iter().all(|&x| x == 0.0) {
                    continue;
                }
                return Operand::Vector(RealVector::new(v).expect("finite coordinates"));
            },
            DomainSpec::Pdf { dim, allow_zeros } => {
                // Half flat, half spiky weights so that near-disjoint pairs
                // show up as often as near-uniform ones.
                let spiky = rng.random_bool(0.5);
                let w: Vec<f64> = (0..*dim)
                    .map(|_| {
                        if *allow_zeros && rng.random_bool(0.2) {
                            return 0.0;
                        }
                        let u: f64 = rng.random_range(0.0..1.0);
                        if spiky {
                            u.powi(8) + 1e-9
                        } else {
                            u + 0.01
                        }
                    })
                    .collect();
                Operand::Pdf(to_pdf(w, *dim))
            }
            DomainSpec::Text {
                alphabet,
                max_len,
                equal_length,
            } => {
                let len = if *equal_length {
                    *max_len
                } else {
                    rng.random_range(0..=*max_len)
                };
                let s: Vec<char> = (0..len)
                    .map(|_| *alphabet.choose(rng).expect("non-empty"))
                    .collect();
                Operand::Text(SymbolString::new(s))
            }
        }
    }

    fn coordinate<R: Rng>(&self, rng: &mut R) -> f64 {
        let DomainSpec::Vector {
            low,
            high,
            sign,
            lattice,
            ..
        } = *self
        else {
            unreachable!("coordinate of a non-vector domain")
        };
        loop {
            let x = if lattice {
                rng.random_range(low.ceil() as i64..=high.floor() as i64) as f64
            } else if low == high {
                low
            } else {
                rng.random_range(low..high)
            };
            if sign != Sign::Positive || x > 0.0 {
                return x;
            }
        }
    }

    /// A point between `a` and `b` (strings: a few random edits of `a`).
    pub(crate) fn between<R: Rng>(&self, a: &Operand, b: &Operand, rng: &mut R) -> Operand {
        let t: f64 = rng.random_range(0.05..0.95);
        match (self, a, b) {
            (DomainSpec::Vector { lattice, .. }, Operand::Vector(x), Operand::Vector(z)) => {
                let v: Vec<f64> = x
                    .iter()
                    .zip(z.iter())
                    .map(|(p, q)| {
                        let m = p + t * (q - p);
                        if *lattice {
                            m.round()
                        } else {
                            m
                        }
                    })
                    .collect();
                let cand = Operand::Vector(RealVector::new(v).expect("finite"));
                if self.contains(&cand) {
                    cand
                } else {
                    self.sample(rng)
                }
            }
            (DomainSpec::Pdf { dim, .. }, Operand::Pdf(x), Operand::Pdf(z)) => {
                let w = x
                    .iter()
                    .zip(z.iter())
                    .map(|(p, q)| p + t * (q - p))
                    .collect();
                Operand::Pdf(to_pdf(w, *dim))
            }
            (DomainSpec::Text { .. }, Operand::Text(_), _) => self.mutate(a, rng),
            _ => self.sample(rng),
        }
    }

    /// One or two random edits, biased towards rearrangements so that chained
    /// strings are often anagrams of each other.
    pub(crate) fn mutate<R: Rng>(&self, a: &Operand, rng: &mut R) -> Operand {
        let (
            DomainSpec::Text {
                alphabet,
                max_len,
                equal_length,
            },
            Operand::Text(s),
        ) = (self, a)
        else {
            return self.sample(rng);
        };
        let mut s = s.to_vec();
        for _ in 0..rng.random_range(1..=2) {
            let n = s.len();
            match rng.random_range(0..6) {
                0 | 1 if n >= 2 => {
                    let i = rng.random_range(0..n - 1);
                    s.swap(i, i + 1);
                }
                2 | 3 if n >= 2 => {
                    let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
                    s.swap(i, j);
                }
                4 if n >= 1 => {
                    let i = rng.random_range(0..n);
                    s[i] = *alphabet.choose(rng).expect("non-empty");
                }
                5 if !equal_length => {
                    if n < *max_len && (n == 0 || rng.random_bool(0.5)) {
                        let i = rng.random_range(0..=n);
                        s.insert(i, *alphabet.choose(rng).expect("non-empty"));
                    } else if n > 0 {
                        s.remove(rng.random_range(0..n));
                    }
                }
                _ => {}
            }
        }
        Operand::Text(SymbolString::new(s))
    }

    /// A simpler candidate near `x`, or `None` when the attempted
    /// simplification leaves the domain.
    pub(crate) fn shrink<R: Rng>(&self, x: &Operand, rng: &mut R) -> Option<Operand> {
        let cand = match (self, x) {
            (DomainSpec::Vector { lattice, .. }, Operand::Vector(v)) => {
                let mut v = v.to_vec();
                let i = rng.random_range(0..v.len());
                v[i] = match (lattice, rng.random_range(0..3)) {
                    (true, 0) => 0.0,
                    (true, _) => v[i] - v[i].signum(),
                    (false, 0) => 0.0,
                    (false, 1) => v[i].round(),
                    (false, _) => (v[i] * 10.0).round() / 10.0,
                };
                Operand::Vector(RealVector::new(v).ok()?)
            }
            (DomainSpec::Pdf { dim, .. }, Operand::Pdf(p)) => {
                let w: Vec<f64> = match rng.random_range(0..3) {
                    0 => p.iter().map(|x| (x * 10.0).round() / 10.0).collect(),
                    1 => p.iter().map(|x| (x * 100.0).round() / 100.0).collect(),
                    _ => {
                        let (i, j) = (rng.random_range(0..*dim), rng.random_range(0..*dim));
                        let mut w = p.to_vec();
                        let half = w[i] / 2.0;
                        w[i] -= half;
                        w[j] += half;
                        w
                    }
                };
                if w.iter().sum::<f64>() <= 0.0 {
                    return None;
                }
                Operand::Pdf(to_pdf(w, *dim))
            }
            (
                DomainSpec::Text {
                    alphabet,
                    equal_length,
                    ..
                },
                Operand::Text(s),
            ) => {
                let mut s = s.to_vec();
                if s.is_empty() {
                    return None;
                }
                let i = rng.random_range(0..s.len());
                if !equal_length && rng.random_bool(0.5) {
                    s.remove(i);
                } else {
                    s[i] = alphabet[0];
                }
                Operand::Text(SymbolString::new(s))
            }
            _ => return None,
        };
        (cand != *x && self.contains(&cand)).then_some(cand)
    }
}

fn to_pdf(w: Vec<f64>, dim: usize) -> Pdf {
    let total: f64 = w.iter().sum();
    Pdf::new(w.into_iter().map(|x| x / total).collect())
        .or_else(|_| Pdf::new(vec![1.0 / dim as f64; dim]))
        .expect("uniform pdf")
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Vector {
                dim,
                low,
                high,
                sign,
                lattice,
            } => {
                write!(
                    f,
                    "vector:dim={dim}:range={}..{}",
                    fmt_num(*low),
                    fmt_num(*high)
                )?;
                match sign {
                    Sign::Any => {}
                    Sign::NonZero => f.write_str(":nonzero")?,
                    Sign::NonNegative => f.write_str(":nonneg")?,
                    Sign::Positive => f.write_str(":positive")?,
                }
                if *lattice {
                    f.write_str(":lattice")?;
                }
                Ok(())
            }
            DomainSpec::Pdf { dim, allow_zeros } => {
                write!(f, "pdf:dim={dim}")?;
                if *allow_zeros {
                    f.write_str(":zeros")?;
                }
                Ok(())
            }
            DomainSpec::Text {
                alphabet,
                max_len,
                equal_length,
            } => {
                let a: String = alphabet.iter().collect();
                write!(f, "string:alphabet={a}:len={max_len}")?;
                if *equal_length {
                    f.write_str(":equal")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `kind[:option]*`, e.g. `vector:nonneg`, `vector:dim=3:range=-2..2:lattice`,
/// `pdf:dim=5:zeros`, `string:alphabet=ab:len=5:equal`.
impl FromStr for DomainSpec {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, MeasureError> {
        let bad = |why: String| MeasureError::InvalidParameter {
            parameter: "domain",
            value: format!("{s} ({why})"),
        };
        let mut parts = s.split(':');
        let mut spec = match parts.next().unwrap_or("") {
            "vector" => DomainSpec::vector(4, -10.0, 10.0, Sign::Any),
            "pdf" => DomainSpec::pdf(4),
            "string" => DomainSpec::text("abc", 6),
            other => return Err(bad(format!("unknown kind {other:?}"))),
        };
        let mut range_given = false;
        for opt in parts {
            let (key, value) = opt.split_once('=').unwrap_or((opt, ""));
            let num = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| bad(format!("bad number {v:?}")))
            };
            let count = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| bad(format!("bad count {v:?}")))
            };
            match (&mut spec, key) {
                (DomainSpec::Vector { dim, .. } | DomainSpec::Pdf { dim, .. }, "dim") => {
                    *dim = count(value)?
                }
                (DomainSpec::Vector { low, high, .. }, "range") => {
                    let (l, h) = value
                        .split_once("..")
                        .ok_or_else(|| bad("range is LOW..HIGH".into()))?;
                    (*low, *high) = (num(l)?, num(h)?);
                    range_given = true;
                }
                (DomainSpec::Vector { sign, .. }, "any") => *sign = Sign::Any,
                (DomainSpec::Vector { sign, .. }, "nonzero") => *sign = Sign::NonZero,
                (DomainSpec::Vector { sign, .. }, "nonneg") => *sign = Sign::NonNegative,
                (DomainSpec::Vector { sign, .. }, "positive") => *sign = Sign::Positive,
                (DomainSpec::Vector { lattice, .. }, "lattice") => *lattice = true,
                (DomainSpec::Pdf { allow_zeros, .. }, "zeros") => *allow_zeros = true,
                (DomainSpec::Pdf { allow_zeros, .. }, "positive") => *allow_zeros = false,
                (DomainSpec::Text { alphabet, .. }, "alphabet") => {
                    *alphabet = value.chars().collect()
                }
                (DomainSpec::Text { max_len, .. }, "len") => *max_len = count(value)?,
                (DomainSpec::Text { equal_length, .. }, "equal") => *equal_length = true,
                _ => return Err(bad(format!("unknown option {opt:?}"))),
            }
        }
        if let DomainSpec::Vector {
            low, high, sign, ..
        } = &mut spec
        {
            if !range_given && matches!(sign, Sign::NonNegative | Sign::Positive) {
                (*low, *high) = (0.0, 10.0);
            }
        }
        let spec = spec.normalized();
        spec.validate().map_err(bad)?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_roundtrip() {
        for s in [
            "vector",
            "vector:nonneg",
            "vector:dim=3:range=-2..2:lattice",
            "vector:positive:range=1..5",
            "pdf:dim=5:zeros",
            "string:alphabet=ab:len=5:equal",
        ] {
            let d: DomainSpec = s.parse().unwrap();
            let again: DomainSpec = d.to_string().parse().unwrap();
            assert_eq!(d, again, "{s}");
        }
        assert_eq!(
            "vector:nonneg".parse::<DomainSpec>().unwrap(),
            DomainSpec::vector(4, 0.0, 10.0, Sign::NonNegative)
        );
        assert!("matrix".parse::<DomainSpec>().is_err());
        assert!("vector:dim=0".parse::<DomainSpec>().is_err());
        assert!("vector:range=0..0:nonzero".parse::<DomainSpec>().is_err());
        assert!("pdf:lattice".parse::<DomainSpec>().is_err());
    }

    #[test]
    fn samples_stay_in_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in [
            "vector",
            "vector:positive",
            "vector:dim=3:range=-3..3:lattice:nonzero",
            "pdf",
            "pdf:zeros:dim=2",
            "string",
            "string:len=4:equal",
        ] {
            let d: DomainSpec = s.parse().unwrap();
            for _ in 0..500 {
                let a = d.sample(&mut rng);
                let b = d.sample(&mut rng);
                assert!(d.contains(&a), "{s}: {a:?}");
                let m = d.between(&a, &b, &mut rng);
                assert!(d.contains(&m), "{s}: {m:?}");
                if let Some(c) = d.shrink(&a, &mut rng) {
                    assert!(d.contains(&c), "{s}: {c:?}");
                }
            }
        }
    }
}
