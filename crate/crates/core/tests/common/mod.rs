#![allow(dead_code)]

use proptest::prelude::*;

use riordan::lie::LieElement;
use riordan::rational::rat;
use riordan::{Fps, MonomialGenerator, Rational, RiordanMatrix};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// Up to `terms` random leading coefficients, padded to `trunc`.
pub fn series(terms: usize, trunc: usize) -> impl Strategy<Value = Fps> {
    prop::collection::vec(rational(), terms).prop_map(move |c| Fps::new(c, trunc))
}

pub fn unit_series(terms: usize, trunc: usize) -> impl Strategy<Value = Fps> {
    (nonzero_rational(), prop::collection::vec(rational(), terms - 1)).prop_map(move |(c0, rest)| {
        Fps::new(std::iter::once(c0).chain(rest).collect(), trunc)
    })
}

/// Series with constant term 1.
pub fn one_series(terms: usize, trunc: usize) -> impl Strategy<Value = Fps> {
    prop::collection::vec(rational(), terms - 1)
        .prop_map(move |rest| Fps::new(std::iter::once(rat(1, 1)).chain(rest).collect(), trunc))
}

/// Series of order at least `k`.
pub fn series_of_order(k: usize, terms: usize, trunc: usize) -> impl Strategy<Value = Fps> {
    series(terms, trunc).prop_map(move |f| f.mul_x_pow(k))
}

pub fn riordan(trunc: usize) -> impl Strategy<Value = RiordanMatrix> {
    (unit_series(4, trunc), unit_series(4, trunc)).prop_map(|(f, g)| RiordanMatrix::new(f, g).unwrap())
}

pub fn lie_element(trunc: usize) -> impl Strategy<Value = LieElement> {
    (series(4, trunc), series(4, trunc)).prop_map(|(chi, alpha)| LieElement::new(chi, alpha))
}

pub fn nilpotent_lie_element(trunc: usize) -> impl Strategy<Value = LieElement> {
    (series_of_order(1, 3, trunc), series_of_order(1, 3, trunc)).prop_map(|(chi, alpha)| LieElement::new(chi, alpha))
}

pub fn monomial(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = MonomialGenerator> {
    (rational(), rational(), n).prop_map(|(a, b, n)| MonomialGenerator::new(a, b, n))
}
