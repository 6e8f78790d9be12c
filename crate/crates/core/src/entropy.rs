//! Shannon-entropy based divergences between PDFs.
//!
//! Natural logarithms throughout and `0·ln 0 = 0`. [`shannon_entropy`]
//! returns the non-negative `H(P) = −Σ P_i ln P_i`; the signed sum
//! `Σ P_i ln P_i` appears only inside [`sed`]'s literal mode.

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, MeasureError, Result};
use crate::types::Pdf;

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `x ln(x / y)` with `0 ln(0/y) = 0`; caller guarantees `y > 0` when `x > 0`.
fn xlog_ratio(x: f64, y: f64) -> f64 {
    if x > 0.0 {
        x * (x / y).ln()
    } else {
        0.0
    }
}

fn check_continuity(p: &[f64], q: &[f64]) -> Result<()> {
    match p.iter().zip(q).position(|(&a, &b)| a > 0.0 && b == 0.0) {
        Some(index) => Err(MeasureError::AbsoluteContinuityViolation { index }),
        None => Ok(()),
    }
}

/// `H(P) = −Σ P_i ln P_i ≥ 0`.
pub fn shannon_entropy(p: &Pdf) -> f64 {
    -p.iter().map(|&x| xlnx(x)).sum::<f64>()
}

/// Additive smoothing `(p_i + ε) / (1 + dε)`; removes zero bins before a
/// divergence that requires absolute continuity.
pub fn smooth(p: &Pdf, epsilon: f64) -> Pdf {
    let denom = 1.0 + p.dim() as f64 * epsilon;
    Pdf::from_normalized_unchecked(p.iter().map(|&x| (x + epsilon) / denom).collect())
}

/// `Σ p_i ln(p_i / q_i)`.
pub fn kl_divergence(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    check_continuity(p, q)?;
    Ok(p.iter()
        .zip(q.iter())
        .map(|(&a, &b)| xlog_ratio(a, b))
        .sum())
}

/// `−Σ p_i ln q_i`, which equals `KL(p, q) + H(p)`.
pub fn cross_entropy(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    check_continuity(p, q)?;
    Ok(-p
        .iter()
        .zip(q.iter())
        .map(|(&a, &b)| if a > 0.0 { a * b.ln() } else { 0.0 })
        .sum::<f64>())
}

/// Jeffreys divergence `Σ (p_i − q_i) ln(p_i / q_i)`; requires the two
/// supports to coincide.
pub fn j_divergence(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    check_continuity(p, q)?;
    check_continuity(q, p)?;
    Ok(p.iter()
        .zip(q.iter())
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| (a - b) * (a / b).ln())
        .sum())
}

/// `Σ p_i ln(2p_i / (p_i + q_i))`, the KL divergence from `p` to the mixture.
pub fn k_divergence(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.iter()
        .zip(q.iter())
        .map(|(&a, &b)| xlog_ratio(a, (a + b) / 2.0))
        .sum())
}

fn topsoe_sum(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(&a, &b)| {
            let m = (a + b) / 2.0;
            xlog_ratio(a, m) + xlog_ratio(b, m)
        })
        .sum()
}

pub fn topsoe(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(topsoe_sum(p, q))
}

/// Jensen-Shannon divergence, bounded by `ln 2`.
pub fn jensen_shannon(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(0.5 * topsoe_sum(p, q))
}

/// Square root of [`jensen_shannon`]; a metric on PDFs.
pub fn jensen_shannon_distance(p: &Pdf, q: &Pdf) -> Result<f64> {
    jensen_shannon(p, q).map(|js| js.max(0.0).sqrt())
}

/// `Σ [(p_i ln p_i + q_i ln q_i)/2 − m_i ln m_i]`, `m = (p + q)/2`.
pub fn jensen_difference(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.iter()
        .zip(q.iter())
        .map(|(&a, &b)| (xlnx(a) + xlnx(b)) / 2.0 - xlnx((a + b) / 2.0))
        .sum())
}

/// Complexity convention for [`sed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SedMode {
    /// `C(X) = e^{H(X)}`; the result is ≥ 0 with equality iff `p = q`.
    #[default]
    Entropy,
    /// `C(X) = e^{Σ X_i ln X_i}` as printed; can be negative.
    PaperLiteral,
}

/// Structural entropic distance `C(m) / √(C(p) C(q)) − 1`.
pub fn sed(p: &Pdf, q: &Pdf, mode: SedMode) -> Result<f64> {
    check_dims(p, q)?;
    let signed = |x: &[f64]| x.iter().map(|&v| xlnx(v)).sum::<f64>();
    let mix: Vec<f64> = p.iter().zip(q.iter()).map(|(a, b)| (a + b) / 2.0).collect();
    let (sp, sq, sm) = (signed(p), signed(q), signed(&mix));
    // log C(m) − ½(log C(p) + log C(q))
    let log_ratio = match mode {
        SedMode::Entropy => -sm + 0.5 * (sp + sq),
        SedMode::PaperLiteral => sm - 0.5 * (sp + sq),
    };
    Ok(log_ratio.exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p_star, q_star};
    use crate::testutil::pdf_pair;
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    fn pdf(v: &[f64]) -> Pdf {
        Pdf::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    // Oracle values below come from term-by-term summation of the defining
    // formulas over (2,3,4,5)/14 and (1,2,5,6)/14 in an independent
    // extended-precision evaluation.
    const H_P: f64 = 1.333_736_027_202_81;
    const H_Q: f64 = 1.197_340_133_996_78;
    const KL_QP: f64 = 0.050_397_835_754_179;
    const CE_PQ: f64 = 1.390_772_291_218_36;
    const JS_PQ: f64 = 0.013_277_300_111_736;
    const SED_ENTROPY: f64 = 0.013_365_834_861_085;
    const SED_LITERAL: f64 = -0.013_189_545_573_063;

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&pdf(&[1.0, 0.0, 0.0])), 0.0);
        assert!(close(shannon_entropy(&pdf(&[0.5, 0.5])), LN_2, 1e-15));
        assert!(close(shannon_entropy(&p_star()), H_P, 1e-12));
        assert!(close(shannon_entropy(&q_star()), H_Q, 1e-12));
        // e^{-H(P*)} is the complexity 0.2635 of the literal SED example
        assert!(close((-shannon_entropy(&p_star())).exp(), 0.2635, 5e-5));
    }

    #[test]
    fn kl_examples() {
        assert!(close(
            kl_divergence(&p_star(), &q_star()).unwrap(),
            0.057,
            5e-4
        ));
        assert_eq!(kl_divergence(&p_star(), &p_star()).unwrap(), 0.0);
        let back = kl_divergence(&q_star(), &p_star()).unwrap();
        assert!(close(back, KL_QP, 1e-12));
        assert!((back - kl_divergence(&p_star(), &q_star()).unwrap()).abs() > 1e-3);
        assert_eq!(
            kl_divergence(&pdf(&[0.5, 0.5]), &pdf(&[1.0, 0.0])),
            Err(MeasureError::AbsoluteContinuityViolation { index: 1 })
        );
        // zero mass in p is fine
        assert!(close(
            kl_divergence(&pdf(&[1.0, 0.0]), &pdf(&[0.5, 0.5])).unwrap(),
            LN_2,
            1e-15
        ));
    }

    #[test]
    fn cross_entropy_examples() {
        assert!(close(
            cross_entropy(&p_star(), &q_star()).unwrap(),
            CE_PQ,
            1e-12
        ));
        assert!(close(
            cross_entropy(&p_star(), &p_star()).unwrap(),
            shannon_entropy(&p_star()),
            1e-15
        ));
        assert!(close(
            cross_entropy(&pdf(&[1.0, 0.0]), &pdf(&[0.5, 0.5])).unwrap(),
            LN_2,
            1e-15
        ));
        assert!(cross_entropy(&pdf(&[0.5, 0.5]), &pdf(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn j_k_topsoe_examples() {
        assert!(close(
            j_divergence(&p_star(), &q_star()).unwrap(),
            0.1074,
            5e-5
        ));
        assert_eq!(j_divergence(&p_star(), &p_star()).unwrap(), 0.0);
        assert_eq!(
            j_divergence(&pdf(&[1.0, 0.0]), &pdf(&[0.5, 0.5])),
            Err(MeasureError::AbsoluteContinuityViolation { index: 1 })
        );
        assert!(close(
            k_divergence(&p_star(), &q_star()).unwrap(),
            0.012,
            5e-4
        ));
        assert_eq!(k_divergence(&p_star(), &p_star()).unwrap(), 0.0);
        assert!(close(topsoe(&p_star(), &q_star()).unwrap(), 0.0266, 5e-4));
        assert_eq!(topsoe(&p_star(), &p_star()).unwrap(), 0.0);
    }

    #[test]
    fn jensen_examples() {
        assert!(close(
            jensen_shannon(&p_star(), &q_star()).unwrap(),
            JS_PQ,
            1e-12
        ));
        assert_eq!(jensen_shannon(&p_star(), &p_star()).unwrap(), 0.0);
        assert!(close(
            jensen_shannon(&pdf(&[1.0, 0.0]), &pdf(&[0.0, 1.0])).unwrap(),
            LN_2,
            1e-15
        ));
        assert!(close(
            jensen_difference(&p_star(), &q_star()).unwrap(),
            0.013,
            5e-4
        ));
        assert!(close(
            jensen_difference(&p_star(), &p_star()).unwrap(),
            0.0,
            1e-15
        ));
    }

    #[test]
    fn sed_examples() {
        assert!(close(
            sed(&p_star(), &q_star(), SedMode::Entropy).unwrap(),
            SED_ENTROPY,
            1e-12
        ));
        assert!(close(
            sed(&p_star(), &q_star(), SedMode::PaperLiteral).unwrap(),
            SED_LITERAL,
            1e-12
        ));
        for mode in [SedMode::Entropy, SedMode::PaperLiteral] {
            assert!(close(sed(&p_star(), &p_star(), mode).unwrap(), 0.0, 1e-15));
        }
    }

    #[test]
    fn smoothing_restores_continuity() {
        let p = pdf(&[0.5, 0.5]);
        let q = smooth(&pdf(&[1.0, 0.0]), 1e-3);
        assert!((q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(kl_divergence(&p, &q).unwrap().is_finite());
    }

    proptest! {
        #[test]
        fn identities((p, q) in pdf_pair(1..10, false)) {
            let js = jensen_shannon(&p, &q).unwrap();
            let top = topsoe(&p, &q).unwrap();
            prop_assert!(close(top, 2.0 * js, 1e-12));
            prop_assert!(close(jensen_difference(&p, &q).unwrap(), js, 1e-12));
            let k2 = k_divergence(&p, &q).unwrap() + k_divergence(&q, &p).unwrap();
            prop_assert!(close(k2, top, 1e-12));
            let mix = Pdf::new(p.iter().zip(q.iter()).map(|(a, b)| (a + b) / 2.0).collect()).unwrap();
            prop_assert!(close(k_divergence(&p, &q).unwrap(), kl_divergence(&p, &mix).unwrap(), 1e-12));
            prop_assert!((-1e-15..=LN_2 + 1e-12).contains(&js));
            prop_assert!(close(js, jensen_shannon(&q, &p).unwrap(), 1e-15));
        }

        #[test]
        fn kl_identities((p, q) in pdf_pair(1..10, false)) {
            let kl = kl_divergence(&p, &q).unwrap();
            prop_assert!(kl >= -1e-15);
            let ce = cross_entropy(&p, &q).unwrap();
            prop_assert!(close(ce, kl + shannon_entropy(&p), 1e-12));
            let j = j_divergence(&p, &q).unwrap();
            prop_assert!(close(j, kl + kl_divergence(&q, &p).unwrap(), 1e-12));
        }

        #[test]
        fn sed_entropy_nonnegative((p, q) in pdf_pair(1..10, true)) {
            prop_assert!(sed(&p, &q, SedMode::Entropy).unwrap() >= -1e-15);
            prop_assert!(sed(&p, &p, SedMode::Entropy).unwrap().abs() <= 1e-15);
            prop_assert!(sed(&p, &p, SedMode::PaperLiteral).unwrap().abs() <= 1e-15);
        }
    }
}
