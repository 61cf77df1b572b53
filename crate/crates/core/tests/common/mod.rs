#![allow(dead_code)]

use pairgap::extensions::MarginalVector;
use pairgap::setfn::{self, SetFunction};
use pairgap::{q, Rational};
use proptest::prelude::*;

/// A rational in `[0, 1]` with denominator at most `max_den`.
pub fn unit(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |a| q(a, d)))
}

pub fn marginals(n: usize, max_den: i64) -> impl Strategy<Value = MarginalVector> {
    prop::collection::vec(unit(max_den), n).prop_map(|v| MarginalVector::new(v).unwrap())
}

/// Normalized monotone submodular function on three elements: a convex
/// combination of the eight extreme points with integer weights.
pub fn extremal_mix_n3() -> impl Strategy<Value = SetFunction> {
    prop::collection::vec(0i64..6, 8)
        .prop_filter("some weight positive", |w| w.iter().any(|&v| v > 0))
        .prop_map(|w| {
            let total: i64 = w.iter().sum();
            let catalog = setfn::extremal_catalog(3, None).unwrap();
            SetFunction::from_fn(3, |s| {
                catalog.iter().zip(&w).map(|(e, &wi)| q(wi, total) * e.value(s)).sum()
            })
            .unwrap()
        })
}

/// Random weighted coverage function on `n` elements over up to five items.
pub fn coverage(n: usize) -> impl Strategy<Value = SetFunction> {
    (1usize..=5).prop_flat_map(move |m| {
        (
            prop::collection::vec(1i64..6, m),
            prop::collection::vec(prop::collection::vec(any::<bool>(), m), n),
        )
            .prop_map(move |(w, masks)| {
                let weights: Vec<Rational> = w.into_iter().map(Rational::from).collect();
                let covers: Vec<Vec<usize>> = masks
                    .iter()
                    .map(|mask| (1..=m).filter(|&j| mask[j - 1]).collect())
                    .collect();
                setfn::weighted_coverage(n, &weights, &covers).unwrap()
            })
    })
}

/// `(f, x)` with `f` a coverage function on `lo..=hi` elements.
pub fn coverage_instance(lo: usize, hi: usize, max_den: i64) -> impl Strategy<Value = (SetFunction, MarginalVector)> {
    (lo..=hi).prop_flat_map(move |n| (coverage(n), marginals(n, max_den)))
}

/// Arbitrary nonnegative set function on `n` elements.
pub fn any_setfn(n: usize) -> impl Strategy<Value = SetFunction> {
    prop::collection::vec((0i64..8, 1i64..5), 1 << n)
        .prop_map(move |v| setfn::make_setfn(n, v.into_iter().map(|(a, b)| q(a, b)).collect()).unwrap())
}
