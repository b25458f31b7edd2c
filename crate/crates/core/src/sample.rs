//! Seeded random inputs for property checks.
//!
//! Everything is driven by a [`ChaCha8Rng`] so a seed reproduces the same
//! cases on every platform.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fps::Fps;
use crate::lie::LieElement;
use crate::rational::{rat, Rational};
use crate::riordan::RiordanMatrix;

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `-5..=5`, denominator in `1..=4`.
pub fn rational(rng: &mut SampleRng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut SampleRng) -> Rational {
    loop {
        let r = rational(rng);
        if r != rat(0, 1) {
            return r;
        }
    }
}

/// A series with `terms` random leading coefficients.
pub fn series(rng: &mut SampleRng, terms: usize, trunc: usize) -> Fps {
    Fps::new((0..terms).map(|_| rational(rng)).collect(), trunc)
}

pub fn unit_series(rng: &mut SampleRng, terms: usize, trunc: usize) -> Fps {
    let mut coeffs: Vec<Rational> = (0..terms).map(|_| rational(rng)).collect();
    if let Some(c0) = coeffs.first_mut() {
        *c0 = nonzero_rational(rng);
    }
    Fps::new(coeffs, trunc)
}

/// A Riordan matrix whose `f` and `g` are random polynomials of degree < 4.
pub fn riordan(rng: &mut SampleRng, trunc: usize) -> RiordanMatrix {
    RiordanMatrix::new(unit_series(rng, 4, trunc), unit_series(rng, 4, trunc)).expect("unit constant terms")
}

pub fn lie_element(rng: &mut SampleRng, trunc: usize) -> LieElement {
    LieElement::new(series(rng, 4, trunc), series(rng, 4, trunc))
}

pub fn nilpotent_lie_element(rng: &mut SampleRng, trunc: usize) -> LieElement {
    let mut chi = series(rng, 4, trunc).into_coeffs();
    let mut alpha = series(rng, 4, trunc).into_coeffs();
    chi[0] = rat(0, 1);
    alpha[0] = rat(0, 1);
    LieElement::new(Fps::new(chi, trunc), Fps::new(alpha, trunc))
}
