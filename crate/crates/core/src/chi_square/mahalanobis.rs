use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{MeasureError, Result};
use crate::types::{DataSample, RealVector};

/// Eigenvalues below this fraction of the largest are treated as zero.
const EIGEN_CUTOFF: f64 = 1e-10;

/// How [`estimate_covariance`] inverts the covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inversion {
    /// Ordinary inverse; a (numerically) singular matrix is an error.
    #[default]
    Exact,
    /// Spectral pseudo-inverse dropping eigenvalues below `1e-10 · λ_max`.
    Pseudo,
}

/// Mean, covariance and inverse covariance of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceModel {
    mean: RealVector,
    cov: DMatrix<f64>,
    inv: DMatrix<f64>,
    source_n: usize,
}

impl CovarianceModel {
    /// Zero mean and identity covariance; Mahalanobis then reduces to L2.
    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self {
            mean: RealVector::new(vec![0.0; dim])?,
            cov: DMatrix::identity(dim, dim),
            inv: DMatrix::identity(dim, dim),
            source_n: 0,
        })
    }

    pub fn mean(&self) -> &RealVector {
        &self.mean
    }

    pub fn dim(&self) -> usize {
        self.mean.dim()
    }

    /// Number of rows the model was estimated from (0 for [`Self::identity`]).
    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn covariance(&self) -> Vec<Vec<f64>> {
        rows(&self.cov)
    }

    pub fn inverse(&self) -> Vec<Vec<f64>> {
        rows(&self.inv)
    }
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Column means and the unbiased `1/(n−1)` covariance of `sample`.
pub fn estimate_covariance(sample: &DataSample, inversion: Inversion) -> Result<CovarianceModel> {
    let (n, d) = (sample.n(), sample.dim());
    let data = DMatrix::from_fn(n, d, |i, j| sample.rows()[i][j]);
    let mean: Vec<f64> = (0..d).map(|j| data.column(j).sum() / n as f64).collect();
    let centred = DMatrix::from_fn(n, d, |i, j| data[(i, j)] - mean[j]);
    let mut cov = centred.transpose() * &centred / (n as f64 - 1.0);
    // restore exact symmetry lost to rounding
    cov = (&cov + cov.transpose()) * 0.5;

    let eig = SymmetricEigen::new(cov.clone());
    let lmax = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let inv = match inversion {
        Inversion::Exact => {
            let lmin = eig.eigenvalues.iter().fold(f64::INFINITY, |m, &l| m.min(l));
            if lmax == 0.0 || lmin <= EIGEN_CUTOFF * lmax {
                return Err(MeasureError::SingularCovariance);
            }
            cov.clone()
                .try_inverse()
                .ok_or(MeasureError::SingularCovariance)?
        }
        Inversion::Pseudo => {
            let recip = eig.eigenvalues.map(|l| {
                if lmax > 0.0 && l > EIGEN_CUTOFF * lmax {
                    1.0 / l
                } else {
                    0.0
                }
            });
            &eig.eigenvectors * DMatrix::from_diagonal(&recip) * eig.eigenvectors.transpose()
        }
    };
    Ok(CovarianceModel {
        mean: RealVector::new(mean)?,
        cov,
        inv,
        source_n: n,
    })
}

/// `√((p − q)ᵀ Σ⁻¹ (p − q))`. For the distance of a point to the sample,
/// pass `model.mean()` as `q`.
pub fn mahalanobis(p: &RealVector, q: &RealVector, model: &CovarianceModel) -> Result<f64> {
    for v in [p, q] {
        if v.dim() != model.dim() {
            return Err(MeasureError::DimensionMismatch {
                left: v.dim(),
                right: model.dim(),
            });
        }
    }
    let diff = DVector::from_iterator(p.dim(), p.iter().zip(q.iter()).map(|(a, b)| a - b));
    let form = diff.dot(&(&model.inv * &diff));
    if form < -1e-9 {
        return Err(MeasureError::NegativeQuadraticForm(form));
    }
    Ok(form.max(0.0).sqrt())
}
