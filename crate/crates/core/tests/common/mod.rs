#![allow(dead_code)]

use pathideal::{Monomial, MonomialIdeal};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Nonconstant monomial in `ambient` variables supported on
/// `offset+1 ..= offset+width`, exponents at most `max_exp`.
pub fn monomial_in(
    ambient: usize,
    offset: usize,
    width: usize,
    max_exp: u32,
) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, width)
        .prop_filter("nonconstant", |e| e.iter().any(|&x| x > 0))
        .prop_map(move |block| {
            let mut e = vec![0; ambient];
            e[offset..offset + width].copy_from_slice(&block);
            Monomial::new(e).unwrap()
        })
}

/// Nonzero proper monomial ideal on the variables `offset+1 ..= offset+width`.
pub fn ideal_in(
    ambient: usize,
    offset: usize,
    width: usize,
    max_gens: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial_in(ambient, offset, width, 2), 1..=max_gens)
        .prop_map(move |gens| MonomialIdeal::new(ambient, gens).unwrap())
}

pub fn ideal(ambient: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    ideal_in(ambient, 0, ambient, max_gens)
}

/// Pair of ideals on disjoint blocks of variables in one ring.
pub fn disjoint_pair() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(a, b)| (ideal_in(a + b, 0, a, 3), ideal_in(a + b, a, b, 3)))
}

/// `(I, m)` with `m ∉ I`.
pub fn ideal_and_outside_monomial() -> impl Strategy<Value = (MonomialIdeal, Monomial)> {
    (2usize..=4)
        .prop_flat_map(|k| (ideal(k, 4), monomial_in(k, 0, k, 2)))
        .prop_filter("m outside I", |(i, m)| !i.contains(m).unwrap())
}

/// A runner that draws the same cases on every run.
pub fn deterministic_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}
