//! Measures derived from the Bhattacharyya coefficient `BC = Σ √(p_i q_i)`.
//!
//! The distances are computed from `Σ (√p_i − √q_i)² = 2 − 2BC` rather than
//! from `BC` itself, which keeps `d(x, x)` exactly zero instead of the `√ε`
//! left by `√(1 − BC)`.

use crate::error::{check_dims, MeasureError, Result};
use crate::types::{Pdf, SimDistPair};

/// `Σ √(p_i q_i) ∈ [0, 1]`, also called fidelity.
pub fn bhattacharyya_coefficient(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    let bc: f64 = p.iter().zip(q.iter()).map(|(a, b)| (a * b).sqrt()).sum();
    Ok(bc.min(1.0))
}

/// `−ln BC`. Unbounded above and not a metric; disjoint supports are an error.
pub fn bhattacharyya_distance(p: &Pdf, q: &Pdf) -> Result<f64> {
    let bc = bhattacharyya_coefficient(p, q)?;
    if bc == 0.0 {
        return Err(MeasureError::DisjointSupport);
    }
    Ok(-bc.ln())
}

fn chord_sq(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.iter()
        .zip(q.iter())
        .map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2))
        .sum())
}

/// `√(1 − BC) ∈ [0, 1]`.
pub fn hellinger(p: &Pdf, q: &Pdf) -> Result<f64> {
    Ok((chord_sq(p, q)? / 2.0).sqrt())
}

/// `√(2 − 2BC) = √(Σ (√p_i − √q_i)²)`.
pub fn matusita(p: &Pdf, q: &Pdf) -> Result<f64> {
    Ok(chord_sq(p, q)?.sqrt())
}

/// Distance `Σ (√p_i − √q_i)² = 2 − 2BC`, similarity `2BC − 1`.
pub fn squared_chord(p: &Pdf, q: &Pdf) -> Result<SimDistPair> {
    Ok(SimDistPair::from_distance(chord_sq(p, q)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p_star, q_star};
    use crate::testutil::{pdf_pair, pdf_triple};
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    fn pdf(v: &[f64]) -> Pdf {
        Pdf::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    // √(2·1)+√(3·2)+√(4·5)+√(5·6), all over 14
    fn bc_oracle() -> f64 {
        (2f64.sqrt() + 6f64.sqrt() + 20f64.sqrt() + 30f64.sqrt()) / 14.0
    }

    #[test]
    fn coefficient_examples() {
        let bc = bhattacharyya_coefficient(&p_star(), &q_star()).unwrap();
        assert!(close(bc, bc_oracle(), 1e-15));
        assert!(close(bc, 0.986_65, 5e-6));
        assert!(close(
            bhattacharyya_coefficient(&p_star(), &p_star()).unwrap(),
            1.0,
            1e-15
        ));
        assert_eq!(
            bhattacharyya_coefficient(&pdf(&[1.0, 0.0]), &pdf(&[0.0, 1.0])).unwrap(),
            0.0
        );
    }

    #[test]
    fn distance_examples() {
        assert!(close(
            bhattacharyya_distance(&p_star(), &q_star()).unwrap(),
            -bc_oracle().ln(),
            1e-15
        ));
        assert!(close(
            bhattacharyya_distance(&p_star(), &q_star()).unwrap(),
            0.014,
            1e-3
        ));
        assert!(close(
            bhattacharyya_distance(&p_star(), &p_star()).unwrap(),
            0.0,
            1e-15
        ));
        assert_eq!(
            bhattacharyya_distance(&pdf(&[1.0, 0.0]), &pdf(&[0.0, 1.0])),
            Err(MeasureError::DisjointSupport)
        );
    }

    #[test]
    fn hellinger_matusita_examples() {
        let h = hellinger(&p_star(), &q_star()).unwrap();
        assert!(close(h, (1.0 - bc_oracle()).sqrt(), 1e-9));
        assert!(close(h, 0.118, 3e-3));
        assert!(close(hellinger(&p_star(), &p_star()).unwrap(), 0.0, 1e-7));
        assert_eq!(
            hellinger(&pdf(&[1.0, 0.0]), &pdf(&[0.0, 1.0])).unwrap(),
            1.0
        );
        let m = matusita(&p_star(), &q_star()).unwrap();
        assert!(close(m, 0.1634, 5e-5));
        assert!(close(
            matusita(&pdf(&[1.0, 0.0]), &pdf(&[0.0, 1.0])).unwrap(),
            SQRT_2,
            1e-15
        ));
    }

    #[test]
    fn chord_examples() {
        let r = squared_chord(&p_star(), &q_star()).unwrap();
        assert!(close(r.distance, 0.026, 1e-3) && close(r.similarity, 0.974, 1e-3));
        let r = squared_chord(&p_star(), &p_star()).unwrap();
        assert!(close(r.distance, 0.0, 1e-15) && close(r.similarity, 1.0, 1e-15));
        let r = squared_chord(&pdf(&[1.0, 0.0]), &pdf(&[0.0, 1.0])).unwrap();
        assert_eq!((r.distance, r.similarity), (2.0, -1.0));
    }

    #[test]
    fn bhattacharyya_breaks_triangle() {
        // d(x,z) > d(x,y) + d(y,z) for a midpoint y
        let (x, y, z) = (pdf(&[1.0, 0.0]), pdf(&[0.5, 0.5]), pdf(&[0.01, 0.99]));
        let dxz = bhattacharyya_distance(&x, &z).unwrap();
        let via = bhattacharyya_distance(&x, &y).unwrap() + bhattacharyya_distance(&y, &z).unwrap();
        assert!(dxz > via, "{dxz} <= {via}");
    }

    proptest! {
        #[test]
        fn family_identities((p, q) in pdf_pair(1..10, true)) {
            let bc = bhattacharyya_coefficient(&p, &q).unwrap();
            prop_assert!(bc <= 1.0);
            let h = hellinger(&p, &q).unwrap();
            prop_assert!(close(h * h, 1.0 - bc, 1e-12));
            prop_assert!(close(matusita(&p, &q).unwrap(), SQRT_2 * h, 1e-12));
            let chord = squared_chord(&p, &q).unwrap().distance;
            prop_assert!(close(chord, 2.0 - 2.0 * bc, 1e-12));
            let direct: f64 = p.iter().zip(q.iter()).map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2)).sum();
            prop_assert!(close(chord, direct, 1e-12));
            prop_assert_eq!(bc, bhattacharyya_coefficient(&q, &p).unwrap());
        }

        #[test]
        fn hellinger_triangle((x, y, z) in pdf_triple(1..8, true)) {
            let (xy, yz, xz) = (hellinger(&x, &y).unwrap(), hellinger(&y, &z).unwrap(), hellinger(&x, &z).unwrap());
            prop_assert!(xz <= xy + yz + 1e-9);
        }
    }
}
