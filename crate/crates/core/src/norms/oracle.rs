//! Sampling oracle for `‖A‖_{p,q}`, kept independent of the closed forms so
//! tests can check one against the other.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::Rng;

use super::estimate::ascend;
use super::{ratio_of, unit, Certainty, NormResult};
use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::sampling::{gaussian, gaussian_vec, rng, unimodular_vec};
use crate::vector::Field;

const POLISHED: usize = 10;

/// Best `POLISHED` candidates seen so far, highest ratio first.
struct Top {
    items: Vec<(f64, Vec<Complex64>)>,
}

impl Top {
    fn offer(&mut self, v: f64, x: &[Complex64]) {
        if !v.is_finite() {
            return;
        }
        if self.items.len() == POLISHED && v <= self.items[POLISHED - 1].0 {
            return;
        }
        let at = self.items.iter().position(|(w, _)| v > *w).unwrap_or(self.items.len());
        self.items.insert(at, (v, x.to_vec()));
        self.items.truncate(POLISHED);
    }
}

/// Point on the unit 2-sphere from hyperspherical angles.
fn spherical(angles: &[f64], out: &mut [f64]) {
    let mut s = 1.0;
    for (k, t) in angles.iter().enumerate() {
        out[k] = s * t.cos();
        s *= t.sin();
    }
    out[angles.len()] = s;
}

/// Lower bound on `‖A‖_{p,q}` by sampling: half the budget on a deterministic
/// grid (angles for real matrices, moduli × phases for complex ones), half on
/// Gaussian, unimodular and sparse random vectors, plus coordinate vectors and
/// (for `m ≤ 10`) all sign vectors. The best ten samples are then polished by
/// ascent. Deterministic for a given `seed`.
pub fn norm_bruteforce(a: &Matrix, p: ExtIndex, q: ExtIndex, budget: usize, seed: u64) -> NormResult {
    let m = a.cols();
    let field = a.field();
    let mut top = Top { items: Vec::new() };
    let eval = |x: &[Complex64], top: &mut Top| top.offer(ratio_of(a, x, p, q), x);

    for j in 0..m {
        eval(&unit(m, j), &mut top);
    }
    if m <= 10 {
        for mask in 0u32..(1 << (m - 1)) {
            let x: Vec<Complex64> = (0..m)
                .map(|j| Complex64::new(if j > 0 && mask >> (j - 1) & 1 == 1 { -1.0 } else { 1.0 }, 0.0))
                .collect();
            eval(&x, &mut top);
        }
    }

    let grid_budget = budget / 2;
    if m > 1 && grid_budget > 0 {
        let d = m - 1;
        let mut moduli = vec![0.0; m];
        let mut x = vec![Complex64::new(0.0, 0.0); m];
        match field {
            Field::Real => {
                let k = ((grid_budget as f64).powf(1.0 / d as f64).floor() as usize).max(2);
                let mut angles = vec![0.0; d];
                let total = k.checked_pow(d as u32).unwrap_or(usize::MAX).min(grid_budget);
                for idx in 0..total {
                    let mut r = idx;
                    for t in angles.iter_mut() {
                        *t = PI * (r % k) as f64 / k as f64;
                        r /= k;
                    }
                    spherical(&angles, &mut moduli);
                    for (xi, &v) in x.iter_mut().zip(&moduli) {
                        *xi = Complex64::new(v, 0.0);
                    }
                    eval(&x, &mut top);
                }
            }
            Field::Complex => {
                let k = ((grid_budget as f64).powf(1.0 / (2 * d) as f64).floor() as usize).max(2);
                let mut angles = vec![0.0; d];
                // Too many columns for even a two-point grid: leave it to sampling.
                let cells = match k.checked_pow(d as u32) {
                    Some(c) if c.saturating_mul(c) <= 2 * grid_budget => c,
                    _ => 0,
                };
                for idx_mod in 0..cells {
                    let mut r = idx_mod;
                    for t in angles.iter_mut() {
                        // Orthant of the sphere, endpoints included.
                        *t = FRAC_PI_2 * (r % k) as f64 / (k - 1) as f64;
                        r /= k;
                    }
                    spherical(&angles, &mut moduli);
                    for idx_ph in 0..cells {
                        let mut r = idx_ph;
                        x[0] = Complex64::new(moduli[0], 0.0);
                        for j in 1..m {
                            x[j] = Complex64::from_polar(moduli[j], TAU * (r % k) as f64 / k as f64);
                            r /= k;
                        }
                        eval(&x, &mut top);
                    }
                }
            }
        }
    }

    let mut rng = rng(seed);
    for s in 0..budget - grid_budget {
        let x = match s % 3 {
            0 => gaussian_vec(&mut rng, m, field),
            1 => unimodular_vec(&mut rng, m, field),
            _ => {
                let mut x = vec![Complex64::new(0.0, 0.0); m];
                let support = rng.random_range(1..=m);
                for _ in 0..support {
                    let j = rng.random_range(0..m);
                    x[j] = gaussian(&mut rng, field);
                }
                x
            }
        };
        eval(&x, &mut top);
    }

    let mut best: (f64, Vec<Complex64>) = (f64::NEG_INFINITY, unit(m, 0));
    for (v, x) in top.items {
        if v > best.0 {
            best = (v, x.clone());
        }
        let (y, w) = ascend(a, x, p, q, 400, 1e-14);
        if w > best.0 {
            best = (w, y);
        }
    }
    NormResult::from_witness(a, best.1, p, q, Certainty::LowerBoundEstimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn oracle_examples() {
        let d = Matrix::from_real_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let r = norm_bruteforce(&d, ExtIndex::Two, ExtIndex::Two, 100_000, 0);
        assert!((r.value - 2.0).abs() <= 1e-4);

        let rot = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let r = norm_bruteforce(&rot, ExtIndex::Inf, ExtIndex::One, 10_000, 0);
        assert!((r.value - 2.0).abs() <= 1e-6);

        let mut single = Matrix::zeros(3, 3, Field::Real);
        single[(1, 2)] = Complex64::new(5.0, 0.0);
        for (p, q) in [(1.0, 1.0), (1.5, 3.0), (2.0, 2.0), (f64::INFINITY, 1.0), (4.0, 1.2)] {
            let r = norm_bruteforce(&single, ExtIndex::new(p).unwrap(), ExtIndex::new(q).unwrap(), 10_000, 3);
            assert!((r.value - 5.0).abs() <= 1e-4, "({p},{q}): {}", r.value);
        }
    }

    #[test]
    fn oracle_is_deterministic_and_consistent() {
        let a = Matrix::from_complex_rows(&[
            vec![Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(0.8, 0.1)],
        ])
        .unwrap();
        let (p, q) = (ExtIndex::new(3.0).unwrap(), ExtIndex::new(1.5).unwrap());
        let r1 = norm_bruteforce(&a, p, q, 10_000, 9);
        let r2 = norm_bruteforce(&a, p, q, 10_000, 9);
        assert_eq!(r1.value, r2.value);
        assert_relative_eq!(r1.witness.norm(p), 1.0, max_relative = 1e-12);
        assert_relative_eq!(ratio_of(&a, r1.witness.entries(), p, q), r1.value, max_relative = 1e-12);
    }
}
