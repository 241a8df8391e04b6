#![allow(dead_code)]

use normbound::{Complex64, ExtIndex, Field, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn idx(p: f64) -> ExtIndex {
    ExtIndex::new(p).unwrap()
}

/// The exponent grid used throughout: 1, 1.5, 2, 3, ∞.
pub fn grid() -> Vec<ExtIndex> {
    [1.0, 1.5, 2.0, 3.0, f64::INFINITY].into_iter().map(idx).collect()
}

pub fn real(rows: &[Vec<f64>]) -> Matrix {
    Matrix::from_real_rows(rows).unwrap()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Gaussian `n × m` matrix.
pub fn gaussian(n: usize, m: usize, field: Field, seed: u64) -> Matrix {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * m)
        .map(|_| {
            let re: f64 = g.sample(StandardNormal);
            let im: f64 = if field == Field::Complex { g.sample(StandardNormal) } else { 0.0 };
            Complex64::new(re, im)
        })
        .collect();
    Matrix::new(n, m, data, field).unwrap()
}

/// `n × m` matrix with entries drawn from {−1, 0, 1}; never the zero matrix.
pub fn ternary(n: usize, m: usize, seed: u64) -> Matrix {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let data: Vec<Complex64> = (0..n * m).map(|_| Complex64::new(g.random_range(-1..=1) as f64, 0.0)).collect();
        if data.iter().any(|z| z.re != 0.0) {
            return Matrix::new(n, m, data, Field::Real).unwrap();
        }
    }
}

/// Random `n × m` matrix whose entry moduli lie in [0.25, 2]: random signs
/// (real) or phases (complex). Keeps random suites away from matrices that
/// sit within estimator noise of a structured one.
pub fn separated(n: usize, m: usize, field: Field, seed: u64) -> Matrix {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * m)
        .map(|_| {
            let r = g.random_range(0.25..2.0);
            match field {
                Field::Real => Complex64::new(if g.random::<bool>() { r } else { -r }, 0.0),
                Field::Complex => Complex64::from_polar(r, g.random_range(0.0..std::f64::consts::TAU)),
            }
        })
        .collect();
    Matrix::new(n, m, data, field).unwrap()
}
