//! Searches for constant-modulus vectors inside subspaces, shared by the
//! eigenvector and singular-vector checks.

use num_complex::Complex64;

use super::phase;
use crate::generators::unitary_with_first_column;
use crate::matrix::Matrix;
use crate::svd::SvdFactors;
use crate::vector::{norm_of, Vector};
use crate::index::ExtIndex;

const RESYNC: u64 = 4096;

/// Visits every `x ∈ {±1}^m` with `x_0 = +1` (Gray-code order) together with
/// `y = A x`, for a real matrix. Stops early when `visit` returns `false`.
pub(crate) fn gray_sign_walk(a: &Matrix, mut visit: impl FnMut(&[f64], &[f64]) -> bool) {
    let (n, m) = (a.rows(), a.cols());
    let col: Vec<Vec<f64>> = (0..m).map(|j| a.column(j).iter().map(|z| z.re).collect()).collect();
    let mut x = vec![1.0; m];
    let full = |x: &[f64]| -> Vec<f64> { (0..n).map(|i| (0..m).map(|j| col[j][i] * x[j]).sum()).collect() };
    let mut y = full(&x);
    if !visit(&x, &y) {
        return;
    }
    let total: u64 = 1 << (m - 1);
    for t in 1..total {
        let j = t.trailing_zeros() as usize + 1;
        x[j] = -x[j];
        if t % RESYNC == 0 {
            y = full(&x);
        } else {
            let s = 2.0 * x[j];
            for (yi, c) in y.iter_mut().zip(&col[j]) {
                *yi += s * c;
            }
        }
        if !visit(&x, &y) {
            return;
        }
    }
}

/// The first `k` columns of `b`.
pub(crate) fn leading_columns(b: &Matrix, k: usize) -> Matrix {
    let mut out = Matrix::zeros(b.rows(), k, b.field());
    for i in 0..b.rows() {
        for j in 0..k {
            out[(i, j)] = b[(i, j)];
        }
    }
    out
}

/// `I − B B*` for a basis `B` with orthonormal columns.
pub(crate) fn complement_projector(b: &Matrix) -> Matrix {
    let mut p = b.matmul(&b.adjoint()).scaled(Complex64::new(-1.0, 0.0));
    for i in 0..p.rows() {
        p[(i, i)] += 1.0;
    }
    p
}

/// Relative spread `(max − min)/max` of the entry moduli; 0 for the zero vector.
pub(crate) fn modulus_spread(y: &[Complex64]) -> f64 {
    let max = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let min = y.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    (max - min) / max
}

fn unit_coeffs(mut c: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let nrm = norm_of(&c, ExtIndex::Two);
    if nrm == 0.0 || !nrm.is_finite() {
        return None;
    }
    c.iter_mut().for_each(|z| *z /= nrm);
    Some(c)
}

/// Alternating projection for coefficients `c` such that every `B c`,
/// `B ∈ bases`, has entries of one modulus. Each basis has orthonormal
/// columns and the same column count. Returns the first `c` (unit 2-norm)
/// whose worst spread is at most `tol`, trying the starts in order.
pub(crate) fn constant_modulus_search(bases: &[&Matrix], starts: &[Vec<Complex64>], max_iter: usize, tol: f64) -> Option<Vec<Complex64>> {
    let k = bases.first()?.cols();
    let spread = |c: &[Complex64]| bases.iter().map(|b| modulus_spread(&b.apply(c))).fold(0.0, f64::max);
    for start in starts {
        let Some(mut c) = unit_coeffs(start.clone()) else { continue };
        let mut best = spread(&c);
        let mut stall = 0;
        for _ in 0..max_iter {
            if best <= tol {
                break;
            }
            let mut next = vec![Complex64::new(0.0, 0.0); k];
            for b in bases {
                let y = b.apply(&c);
                let mu = norm_of(&y, ExtIndex::Two) / (y.len() as f64).sqrt();
                let w: Vec<Complex64> = y.iter().map(|z| phase(*z) * mu).collect();
                for (acc, z) in next.iter_mut().zip(b.apply_adjoint(&w)) {
                    *acc += z;
                }
            }
            let Some(nc) = unit_coeffs(next) else { break };
            c = nc;
            let s = spread(&c);
            if s < best * (1.0 - 1e-6) {
                stall = 0;
            } else {
                stall += 1;
                if stall > 50 {
                    best = best.min(s);
                    break;
                }
            }
            best = best.min(s);
        }
        if spread(&c) <= tol {
            return Some(c);
        }
    }
    None
}

/// Replaces the leading `k` singular vectors by `V_k Q`, `U_k Q` with `Q`
/// unitary and `Q e_1 = c`, so that the first right singular vector becomes
/// `V_k c`. Valid when the leading `k` singular values are equal.
pub(crate) fn rotate_leading(f: &SvdFactors, k: usize, c: &[Complex64]) -> SvdFactors {
    let field = f.v.field();
    let q = unitary_with_first_column(&Vector::from_parts(c.to_vec(), field)).expect("unit coefficients");
    let splice = |b: &Matrix| {
        let lead = leading_columns(b, k).matmul(&q);
        let mut out = b.clone();
        for i in 0..b.rows() {
            for j in 0..k {
                out[(i, j)] = lead[(i, j)];
            }
        }
        out
    };
    let mut sigma = f.sigma.clone();
    let s1 = sigma[0];
    sigma.iter_mut().take(k).for_each(|s| *s = s1);
    SvdFactors { u: splice(&f.u), sigma, v: splice(&f.v) }
}
