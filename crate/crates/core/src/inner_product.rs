//! Measures built on the dot product of two real vectors.

use std::f64::consts::PI;

use crate::error::{check_dims, MeasureError, Result};
use crate::types::{RealVector, SimDistPair};

pub(crate) fn dot(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| a * b).sum()
}

fn norm_sq(p: &[f64]) -> f64 {
    dot(p, p)
}

/// Similarity `⟨p,q⟩`; distance `‖p − q‖`, the metric induced by the norm.
pub fn inner_product(p: &RealVector, q: &RealVector) -> Result<SimDistPair> {
    check_dims(p, q)?;
    let sim = dot(p, q);
    let dist = p
        .iter()
        .zip(q.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(SimDistPair::new(sim, dist))
}

fn cosine_similarity(p: &[f64], q: &[f64]) -> Result<f64> {
    check_dims(p, q)?;
    let (np, nq) = (norm_sq(p).sqrt(), norm_sq(q).sqrt());
    if np == 0.0 || nq == 0.0 {
        return Err(MeasureError::ZeroVector);
    }
    Ok((dot(p, q) / (np * nq)).clamp(-1.0, 1.0))
}

/// Cosine of the angle between `p` and `q`; distance `1 − cos`.
pub fn cosine(p: &RealVector, q: &RealVector) -> Result<SimDistPair> {
    cosine_similarity(p, q).map(SimDistPair::from_similarity)
}

/// Normalized angle `arccos(cos)/π ∈ [0, 1]`; similarity is its complement.
///
/// The angle is computed as `2·atan2(‖û − v̂‖, ‖û + v̂‖)` on the unit
/// vectors, which stays exact near 0 and π where `acos` loses half the digits.
pub fn angular(p: &RealVector, q: &RealVector) -> Result<SimDistPair> {
    check_dims(p, q)?;
    let (np, nq) = (norm_sq(p).sqrt(), norm_sq(q).sqrt());
    if np == 0.0 || nq == 0.0 {
        return Err(MeasureError::ZeroVector);
    }
    let (mut diff, mut sum) = (0.0, 0.0);
    for (a, b) in p.iter().zip(q.iter()) {
        let (u, v) = (a / np, b / nq);
        diff += (u - v) * (u - v);
        sum += (u + v) * (u + v);
    }
    let angle = 2.0 * diff.sqrt().atan2(sum.sqrt());
    Ok(SimDistPair::from_distance(angle / PI))
}

/// Tanimoto form `⟨p,q⟩ / (‖p‖² + ‖q‖² − ⟨p,q⟩)`. Signed inputs can give
/// negative similarities; they are returned unchanged.
pub fn jaccard_vector(p: &RealVector, q: &RealVector) -> Result<SimDistPair> {
    check_dims(p, q)?;
    let pq = dot(p, q);
    let denom = norm_sq(p) + norm_sq(q) - pq;
    if denom == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    let diff_sq: f64 = p.iter().zip(q.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(SimDistPair::new(pq / denom, diff_sq / denom))
}

/// Dice coefficient `2⟨p,q⟩ / (‖p‖² + ‖q‖²)`.
pub fn dice(p: &RealVector, q: &RealVector) -> Result<SimDistPair> {
    check_dims(p, q)?;
    let denom = norm_sq(p) + norm_sq(q);
    if denom == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    Ok(SimDistPair::from_similarity(2.0 * dot(p, q) / denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f1, f2};
    use crate::minkowski::{minkowski, PExponent};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn rv(v: &[f64]) -> RealVector {
        RealVector::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn inner_product_examples() {
        let r = inner_product(&f1(), &f2()).unwrap();
        assert_eq!(r.similarity, -30.0);
        assert!(close(r.distance, 120f64.sqrt(), 1e-12));
        assert!(close(r.distance, 10.95, 5e-3));
        assert_eq!(inner_product(&f1(), &f1()).unwrap().distance, 0.0);
        let r = inner_product(&rv(&[1.0, 0.0]), &rv(&[0.0, 1.0])).unwrap();
        assert_eq!(r.similarity, 0.0);
        assert!(close(r.distance, 2f64.sqrt(), 1e-15));
    }

    #[test]
    fn flattened_trace_equals_dot() {
        // tr(AᵀB) for A=[[1,2],[3,4]], B=[[5,6],[7,8]] = 1*5+2*6+3*7+4*8
        let a = rv(&[1.0, 2.0, 3.0, 4.0]);
        let b = rv(&[5.0, 6.0, 7.0, 8.0]);
        assert_eq!(inner_product(&a, &b).unwrap().similarity, 70.0);
    }

    #[test]
    fn cosine_examples() {
        let r = cosine(&f1(), &f2()).unwrap();
        assert!(close(r.similarity, -1.0, 1e-12) && close(r.distance, 2.0, 1e-12));
        let r = cosine(&f1(), &f1()).unwrap();
        assert!(close(r.similarity, 1.0, 1e-12) && close(r.distance, 0.0, 1e-12));
        let r = cosine(&rv(&[1.0, 0.0]), &rv(&[0.0, 1.0])).unwrap();
        assert_eq!((r.similarity, r.distance), (0.0, 1.0));
        assert_eq!(
            cosine(&rv(&[0.0, 0.0]), &rv(&[1.0, 1.0])),
            Err(MeasureError::ZeroVector)
        );
        assert!(matches!(
            cosine(&rv(&[1.0]), &rv(&[1.0, 1.0])),
            Err(MeasureError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn angular_examples() {
        let r = angular(&f1(), &f2()).unwrap();
        assert!(close(r.distance, 1.0, 1e-12) && close(r.similarity, 0.0, 1e-12));
        assert!(close(angular(&f1(), &f1()).unwrap().distance, 0.0, 1e-7));
        // arccos(0)/π = (π/2)/π
        let r = angular(&rv(&[1.0, 0.0]), &rv(&[0.0, 1.0])).unwrap();
        assert!(close(r.distance, 0.5, 1e-15));
    }

    // |A∩B| / |A∪B| on support sets of binary vectors
    fn set_jaccard(a: &[f64], b: &[f64]) -> f64 {
        let sa: BTreeSet<usize> = (0..a.len()).filter(|&i| a[i] != 0.0).collect();
        let sb: BTreeSet<usize> = (0..b.len()).filter(|&i| b[i] != 0.0).collect();
        sa.intersection(&sb).count() as f64 / sa.union(&sb).count() as f64
    }

    fn set_dice(a: &[f64], b: &[f64]) -> f64 {
        let na = a.iter().filter(|&&x| x != 0.0).count();
        let nb = b.iter().filter(|&&x| x != 0.0).count();
        let inter = a
            .iter()
            .zip(b)
            .filter(|(&x, &y)| x != 0.0 && y != 0.0)
            .count();
        2.0 * inter as f64 / (na + nb) as f64
    }

    #[test]
    fn jaccard_examples() {
        let r = jaccard_vector(&f1(), &f2()).unwrap();
        assert!(close(r.similarity, -1.0 / 3.0, 1e-12));
        assert!(close(r.distance, 4.0 / 3.0, 1e-12));
        let r = jaccard_vector(&f1(), &f1()).unwrap();
        assert_eq!((r.similarity, r.distance), (1.0, 0.0));
        let (a, b) = ([1.0, 1.0, 0.0], [1.0, 0.0, 1.0]);
        let r = jaccard_vector(&rv(&a), &rv(&b)).unwrap();
        assert!(close(r.similarity, set_jaccard(&a, &b), 1e-15));
        assert!(close(r.similarity, 1.0 / 3.0, 1e-15));
        assert_eq!(
            jaccard_vector(&rv(&[0.0]), &rv(&[0.0])),
            Err(MeasureError::DegenerateDenominator)
        );
    }

    #[test]
    fn dice_examples() {
        let r = dice(&f1(), &f2()).unwrap();
        assert!(close(r.similarity, -1.0, 1e-12) && close(r.distance, 2.0, 1e-12));
        assert_eq!(dice(&f1(), &f1()).unwrap().distance, 0.0);
        let (a, b) = ([1.0, 1.0, 0.0], [1.0, 0.0, 1.0]);
        let r = dice(&rv(&a), &rv(&b)).unwrap();
        assert!(close(r.similarity, set_dice(&a, &b), 1e-15));
        assert!(close(r.similarity, 0.5, 1e-15));
        assert_eq!(
            dice(&rv(&[0.0, 0.0]), &rv(&[0.0, 0.0])),
            Err(MeasureError::DegenerateDenominator)
        );
    }

    fn vec_pair(dim: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (
            prop::collection::vec(-10.0f64..10.0, dim),
            prop::collection::vec(-10.0f64..10.0, dim),
        )
    }

    proptest! {
        #[test]
        fn induced_norm_is_l2((a, b) in (1usize..8).prop_flat_map(vec_pair)) {
            let (a, b) = (rv(&a), rv(&b));
            let ip = inner_product(&a, &b).unwrap().distance;
            let l2 = minkowski(&a, &b, PExponent::Finite(2.0)).unwrap();
            prop_assert!(close(ip, l2, 1e-12));
        }

        #[test]
        fn cosine_scale_invariant((a, b) in (1usize..8).prop_flat_map(vec_pair), s in 0.01f64..100.0, t in 0.01f64..100.0) {
            prop_assume!(norm_sq(&a) > 1e-6 && norm_sq(&b) > 1e-6);
            let base = cosine(&rv(&a), &rv(&b)).unwrap();
            let sa: Vec<f64> = a.iter().map(|x| x * s).collect();
            let tb: Vec<f64> = b.iter().map(|x| x * t).collect();
            let scaled = cosine(&rv(&sa), &rv(&tb)).unwrap();
            prop_assert!(close(base.similarity, scaled.similarity, 1e-12));
            prop_assert!(close(base.distance, scaled.distance, 1e-12));
        }

        #[test]
        fn dice_from_jaccard((a, b) in (1usize..8).prop_flat_map(vec_pair)) {
            let (a, b) = (rv(&a), rv(&b));
            if let (Ok(j), Ok(d)) = (jaccard_vector(&a, &b), dice(&a, &b)) {
                prop_assume!((1.0 + j.similarity).abs() > 1e-6);
                let via = 2.0 * j.similarity / (1.0 + j.similarity);
                prop_assert!(close(d.similarity, via, 1e-12 * (1.0 + via.abs())));
            }
        }

        #[test]
        fn complements((a, b) in (1usize..8).prop_flat_map(vec_pair)) {
            let (a, b) = (rv(&a), rv(&b));
            for r in [cosine(&a, &b), angular(&a, &b), jaccard_vector(&a, &b), dice(&a, &b)].into_iter().flatten() {
                prop_assert!(close(r.similarity + r.distance, 1.0, 1e-12));
            }
        }
    }
}
