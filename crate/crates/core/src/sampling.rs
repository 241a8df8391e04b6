use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::vector::Field;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard Gaussian entry: real, or circular complex.
pub(crate) fn gaussian(rng: &mut impl Rng, field: Field) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    match field {
        Field::Real => Complex64::new(re, 0.0),
        Field::Complex => Complex64::new(re, rng.sample(StandardNormal)),
    }
}

pub(crate) fn gaussian_vec(rng: &mut impl Rng, len: usize, field: Field) -> Vec<Complex64> {
    (0..len).map(|_| gaussian(rng, field)).collect()
}

/// Unimodular entry: a random sign for real fields, a random phase otherwise.
pub(crate) fn unimodular(rng: &mut impl Rng, field: Field) -> Complex64 {
    match field {
        Field::Real => Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0),
        Field::Complex => Complex64::from_polar(1.0, rng.random_range(0.0..TAU)),
    }
}

pub(crate) fn unimodular_vec(rng: &mut impl Rng, len: usize, field: Field) -> Vec<Complex64> {
    (0..len).map(|_| unimodular(rng, field)).collect()
}
