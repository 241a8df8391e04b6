//! Restarted ascent for `‖A‖_{p,q}`.
//!
//! One step maps `x` to the ℓp-unit vector that best aligns with
//! `A*·g`, where `g` is the ℓ_{q*}-unit dual vector of `Ax`. Each step
//! does not decrease `‖Ax‖_q`, and fixed points satisfy the equality case of
//! Hölder's inequality for both pairings. At the boundary exponents the dual
//! vector is a subgradient: the phase vector at exponent 1 and the lowest-index
//! peak coordinate at exponent ∞.

use num_complex::Complex64;

use super::{norm_closed_form, normalize_p, ratio_of, unit, Certainty, NormResult};
use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::sampling::{gaussian_vec, rng, unimodular_vec};
use crate::vector::{norm_of, Vector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorSettings {
    /// Random starting vectors, in addition to the `m` coordinate vectors and
    /// the all-ones vector.
    pub random_starts: usize,
    pub max_iter: usize,
    /// Relative change of the ratio below which a run stops.
    pub tol: f64,
    pub seed: u64,
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        EstimatorSettings { random_starts: 32, max_iter: 200, tol: 1e-10, seed: 0 }
    }
}

fn phase(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r > 0.0 {
        z / r
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Dual vector of `w` for the ℓt norm: `g` with `‖g‖_{t*} = 1` and
/// `Σ conj(g_i)·w_i = ‖w‖_t`. Entrywise `g_i ∝ |w_i|^{t−1}·phase(w_i)`.
pub(crate) fn dual_vector(w: &[Complex64], t: ExtIndex) -> Vec<Complex64> {
    let max = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return unit(w.len(), 0);
    }
    match t {
        ExtIndex::One => w.iter().map(|&z| phase(z)).collect(),
        ExtIndex::Inf => {
            let k = w.iter().position(|z| z.norm() == max).expect("max attained");
            let mut g = vec![Complex64::new(0.0, 0.0); w.len()];
            g[k] = phase(w[k]);
            g
        }
        ExtIndex::Two => {
            let n = norm_of(w, t);
            w.iter().map(|z| z / n).collect()
        }
        ExtIndex::Finite(t) => {
            let scaled: Vec<Complex64> = w
                .iter()
                .map(|&z| phase(z) * (z.norm() / max).powf(t - 1.0))
                .collect();
            let ts = t / (t - 1.0);
            let n = scaled.iter().map(|z| z.norm().powf(ts)).sum::<f64>().powf(1.0 / ts);
            scaled.into_iter().map(|z| z / n).collect()
        }
    }
}

/// Runs the ascent from `x0`; returns the best unit-ℓp vector and its ratio.
pub(crate) fn ascend(
    a: &Matrix,
    x0: Vec<Complex64>,
    p: ExtIndex,
    q: ExtIndex,
    max_iter: usize,
    tol: f64,
) -> (Vec<Complex64>, f64) {
    let ps = p.conjugate();
    let mut x = normalize_p(x0, p);
    let mut val = ratio_of(a, &x, p, q);
    for _ in 0..max_iter {
        let y = a.apply(&x);
        if y.iter().all(|z| z.norm() == 0.0) {
            break;
        }
        let z = a.apply_adjoint(&dual_vector(&y, q));
        if z.iter().all(|z| z.norm() == 0.0) {
            break;
        }
        let x_new = dual_vector(&z, ps);
        let val_new = ratio_of(a, &x_new, p, q);
        if val_new < val {
            break;
        }
        let step = x_new
            .iter()
            .zip(&x)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        let gain = val_new - val;
        x = x_new;
        val = val_new;
        if gain <= tol * val && step <= 1e-9 {
            break;
        }
    }
    (x, val)
}

fn starts(a: &Matrix, settings: &EstimatorSettings, extra: usize) -> Vec<Vec<Complex64>> {
    let m = a.cols();
    let field = a.field();
    let mut out: Vec<Vec<Complex64>> = (0..m).map(|j| unit(m, j)).collect();
    out.push(vec![Complex64::new(1.0, 0.0); m]);
    let mut r = rng(settings.seed);
    let total = settings.random_starts + extra;
    for k in 0..total {
        if k % 4 == 3 {
            out.push(unimodular_vec(&mut r, m, field));
        } else {
            out.push(gaussian_vec(&mut r, m, field));
        }
    }
    out
}

/// Lower-bound estimate of `‖A‖_{p,q}`; returns the closed form when one
/// exists.
pub fn norm_estimate(a: &Matrix, p: ExtIndex, q: ExtIndex, settings: &EstimatorSettings) -> NormResult {
    if let Some(r) = norm_closed_form(a, p, q) {
        return r;
    }
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    for x0 in starts(a, settings, 0) {
        let (x, v) = ascend(a, x0, p, q, settings.max_iter, settings.tol);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((x, v));
        }
    }
    let (x, _) = best.expect("at least one start");
    NormResult::from_witness(a, x, p, q, Certainty::LowerBoundEstimate)
}

/// Up to `count` pairwise non-proportional vectors whose ratio is within
/// `1e-6` (relative) of the best ratio found.
///
/// Closed-form cases contribute every tied coordinate or row maximiser; the
/// rest come from ascent runs started at coordinate, all-ones and random
/// vectors.
pub fn maximizer_set_probe(a: &Matrix, p: ExtIndex, q: ExtIndex, count: usize, seed: u64) -> Vec<Vector> {
    let (n, m) = (a.rows(), a.cols());
    let mut found: Vec<(Vec<Complex64>, f64)> = Vec::new();
    if p.is_one() {
        for j in 0..m {
            let e = unit(m, j);
            let v = ratio_of(a, &e, p, q);
            found.push((e, v));
        }
    } else if q.is_inf() {
        let ps = p.conjugate();
        for i in 0..n {
            let row: Vec<Complex64> = a.row(i).iter().map(|z| z.conj()).collect();
            let x = normalize_p(dual_vector(&row, ps), p);
            let v = ratio_of(a, &x, p, q);
            found.push((x, v));
        }
    }
    let settings = EstimatorSettings { seed, ..EstimatorSettings::default() };
    for x0 in starts(a, &settings, 4 * count) {
        found.push(ascend(a, x0, p, q, 4 * settings.max_iter, 1e-14));
    }
    let best = found.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    found.sort_by(|x, y| y.1.partial_cmp(&x.1).expect("finite ratios"));
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for (x, v) in found {
        if out.len() == count {
            break;
        }
        if v < best * (1.0 - 1e-6) {
            break;
        }
        if out.iter().all(|y| !proportional(&x, y, 1e-6)) {
            out.push(x);
        }
    }
    out.into_iter().map(|x| Vector::from_parts(x, a.field())).collect()
}

/// `|⟨x, y⟩| ≥ (1 − tol)·‖x‖₂‖y‖₂`.
pub(crate) fn proportional(x: &[Complex64], y: &[Complex64], tol: f64) -> bool {
    let dot: Complex64 = x.iter().zip(y).map(|(u, v)| u.conj() * v).sum();
    let nx = norm_of(x, ExtIndex::Two);
    let ny = norm_of(y, ExtIndex::Two);
    dot.norm() >= (1.0 - tol) * nx * ny
}
