//! Norms with `p = ∞` by searching the vertices of the unit cube.
//!
//! `x ↦ ‖Ax‖_q` is convex, so over the ℓ∞ unit ball it peaks at a vertex. For
//! real matrices the vertices are the sign vectors and enumeration is exact;
//! for complex matrices the "vertices" form a torus of phases, which is only
//! sampled.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::estimate::{ascend, norm_estimate, EstimatorSettings};
use super::{Certainty, NormResult};
use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::vector::{norm_of, Field};
use crate::Error;

/// Largest column count for exhaustive sign enumeration.
pub const REAL_ENUMERATION_LIMIT: usize = 24;
/// Largest column count for the complex phase grid.
pub const COMPLEX_GRID_LIMIT: usize = 6;

/// Exact `‖A‖_{∞,q}` of a real matrix by enumerating `x ∈ {−1,+1}^m` with
/// `x_1 = +1` (the norm is even in `x`). Steps follow a Gray code so that each
/// step updates `Ax` by one column.
pub fn norm_inf_enumerate(a: &Matrix, q: ExtIndex) -> Result<NormResult, Error> {
    if a.field() != Field::Real {
        return Err(Error::Precondition("sign enumeration needs a real matrix".into()));
    }
    let m = a.cols();
    if m > REAL_ENUMERATION_LIMIT {
        return Err(Error::DimensionTooLarge { what: "sign enumeration", limit: REAL_ENUMERATION_LIMIT, got: m });
    }
    let cols: Vec<Vec<f64>> = (0..m).map(|j| a.column(j).iter().map(|z| z.re).collect()).collect();
    let mut signs = vec![1.0f64; m];
    let mut y: Vec<f64> = (0..a.rows()).map(|i| cols.iter().map(|c| c[i]).sum()).collect();
    let mut best = (real_norm(&y, q), signs.clone());
    let steps: u64 = 1 << (m - 1);
    for k in 1..steps {
        // Gray code: flip the bit at the lowest set position of k, offset past x_1.
        let j = k.trailing_zeros() as usize + 1;
        let delta = -2.0 * signs[j];
        signs[j] = -signs[j];
        if k % 4096 == 0 {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = cols.iter().zip(&signs).map(|(c, s)| c[i] * s).sum();
            }
        } else {
            for (yi, c) in y.iter_mut().zip(&cols[j]) {
                *yi += delta * c;
            }
        }
        let v = real_norm(&y, q);
        if v > best.0 {
            best = (v, signs.clone());
        }
    }
    let x = best.1.into_iter().map(|s| Complex64::new(s, 0.0)).collect();
    Ok(NormResult::from_witness(a, x, ExtIndex::Inf, q, Certainty::ExactEnumeration))
}

fn real_norm(y: &[f64], q: ExtIndex) -> f64 {
    match q {
        ExtIndex::One => y.iter().map(|v| v.abs()).sum(),
        ExtIndex::Two => y.iter().map(|v| v * v).sum::<f64>().sqrt(),
        ExtIndex::Inf => y.iter().fold(0.0, |acc, v| acc.max(v.abs())),
        ExtIndex::Finite(t) => y.iter().map(|v| v.abs().powf(t)).sum::<f64>().powf(1.0 / t),
    }
}

fn grid_resolution(m: usize) -> usize {
    match m {
        0..=2 => 256,
        3 => 64,
        4 => 24,
        5 => 12,
        _ => 8,
    }
}

/// Lower bound on `‖A‖_{∞,q}` for a complex matrix: a uniform grid of phases
/// (with `x_1 = 1`) followed by ascent from the best grid points.
pub fn norm_inf_phase_grid(a: &Matrix, q: ExtIndex, settings: &EstimatorSettings) -> Result<NormResult, Error> {
    let m = a.cols();
    if m > COMPLEX_GRID_LIMIT {
        return Err(Error::DimensionTooLarge { what: "phase grid", limit: COMPLEX_GRID_LIMIT, got: m });
    }
    let k = grid_resolution(m);
    let roots: Vec<Complex64> = (0..k).map(|t| Complex64::from_polar(1.0, TAU * t as f64 / k as f64)).collect();
    let total = k.pow((m - 1) as u32);
    let keep = 8;
    let mut top: Vec<(f64, Vec<Complex64>)> = Vec::new();
    let mut x = vec![Complex64::new(1.0, 0.0); m];
    for idx in 0..total {
        let mut r = idx;
        for xj in x.iter_mut().skip(1) {
            *xj = roots[r % k];
            r /= k;
        }
        let v = norm_of(&a.apply(&x), q);
        if top.len() < keep || v > top[top.len() - 1].0 {
            top.push((v, x.clone()));
            top.sort_by(|s, t| t.0.partial_cmp(&s.0).expect("finite norms"));
            top.truncate(keep);
        }
    }
    let mut best: (f64, Vec<Complex64>) = (f64::NEG_INFINITY, Vec::new());
    for (_, x0) in top {
        let (x, v) = ascend(a, x0, ExtIndex::Inf, q, 4 * settings.max_iter, settings.tol);
        if v > best.0 {
            best = (v, x);
        }
    }
    Ok(NormResult::from_witness(a, best.1, ExtIndex::Inf, q, Certainty::LowerBoundEstimate))
}

/// `‖A‖_{∞,1}`: exact by sign enumeration for real matrices (`m ≤ 24`), a
/// phase-grid lower bound for complex ones (`m ≤ 6`).
pub fn norm_infty_one_exact(a: &Matrix) -> Result<NormResult, Error> {
    match a.field() {
        Field::Real => norm_inf_enumerate(a, ExtIndex::One),
        Field::Complex => {
            let settings = EstimatorSettings::default();
            let grid = norm_inf_phase_grid(a, ExtIndex::One, &settings)?;
            let est = norm_estimate(a, ExtIndex::Inf, ExtIndex::One, &settings);
            let mut best = if est.value > grid.value { est } else { grid };
            best.certainty = Certainty::LowerBoundEstimate;
            Ok(best)
        }
    }
}
