//! Proptest strategies shared by the unit tests.

use std::ops::Range;

use proptest::prelude::*;

use crate::types::Pdf;

fn weights(dim: usize, allow_zeros: bool) -> BoxedStrategy<Vec<f64>> {
    let cell = if allow_zeros {
        prop_oneof![1 => Just(0.0), 3 => 0.001f64..1.0].boxed()
    } else {
        (0.001f64..1.0).boxed()
    };
    prop::collection::vec(cell, dim)
        .prop_filter("needs positive mass", |w| w.iter().sum::<f64>() > 0.0)
        .boxed()
}

fn to_pdf(w: Vec<f64>) -> Pdf {
    let total: f64 = w.iter().sum();
    Pdf::new(w.into_iter().map(|x| x / total).collect()).unwrap()
}

/// Two PDFs of a common dimension drawn from `dims`. With `allow_zeros`,
/// roughly a quarter of the bins are exactly zero.
pub(crate) fn pdf_pair(dims: Range<usize>, allow_zeros: bool) -> impl Strategy<Value = (Pdf, Pdf)> {
    dims.prop_flat_map(move |d| (weights(d, allow_zeros), weights(d, allow_zeros)))
        .prop_map(|(a, b)| (to_pdf(a), to_pdf(b)))
}

/// Three PDFs of a common dimension.
pub(crate) fn pdf_triple(
    dims: Range<usize>,
    allow_zeros: bool,
) -> impl Strategy<Value = (Pdf, Pdf, Pdf)> {
    dims.prop_flat_map(move |d| {
        (
            weights(d, allow_zeros),
            weights(d, allow_zeros),
            weights(d, allow_zeros),
        )
    })
    .prop_map(|(a, b, c)| (to_pdf(a), to_pdf(b), to_pdf(c)))
}
