//! Worked-example inputs reused by tests, benches and documentation.

use crate::types::{DataSample, Pdf, RealVector, SymbolString};

/// `(5, 3, 4)`
pub fn v1() -> RealVector {
    RealVector::new(vec![5.0, 3.0, 4.0]).unwrap()
}

/// `(2, 5, 7)`
pub fn v2() -> RealVector {
    RealVector::new(vec![2.0, 5.0, 7.0]).unwrap()
}

/// The 2×2 matrix `[[1, 2], [3, 4]]`, flattened row-major.
pub fn f1() -> RealVector {
    RealVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap()
}

/// `-F1`, flattened row-major.
pub fn f2() -> RealVector {
    RealVector::new(vec![-1.0, -2.0, -3.0, -4.0]).unwrap()
}

/// `(2, 3, 4, 5) / 14`
pub fn p_star() -> Pdf {
    Pdf::new([2.0, 3.0, 4.0, 5.0].iter().map(|c| c / 14.0).collect()).unwrap()
}

/// `(1, 2, 5, 6) / 14`
pub fn q_star() -> Pdf {
    Pdf::new([1.0, 2.0, 5.0, 6.0].iter().map(|c| c / 14.0).collect()).unwrap()
}

pub fn s1() -> SymbolString {
    "abrakadabra".into()
}

/// Five 3-dimensional observations used for the Mahalanobis examples.
pub fn mahalanobis_sample() -> DataSample {
    DataSample::new(vec![
        vec![64.0, 580.0, 29.0],
        vec![66.0, 570.0, 33.0],
        vec![68.0, 590.0, 37.0],
        vec![69.0, 660.0, 46.0],
        vec![73.0, 600.0, 55.0],
    ])
    .unwrap()
}

/// First string of the subsequence/Jaro/N-gram examples.
pub const SUBSEQ_P: &str = "abcbabab";
/// Partner used by LCS, the second Jaro example and the N-gram examples.
pub const SUBSEQ_Q: &str = "abbaabcc";
/// Partner used by the LCSk examples.
pub const LCSK_Q: &str = "baababcc";
/// Partner used by HCS and the first Jaro example.
pub const HCS_Q: &str = "cabbaabc";
