//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Works for real and complex matrices; for a real matrix every rotation is
//! real, so the factors stay real. Singular values come out sorted in
//! nonincreasing order, which puts the maximal one in the (1,1) slot of Σ.

use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::vector::{Field, Vector};
use crate::Error;

const MAX_SWEEPS: usize = 30;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `A = U Σ V*` with `U` n×n, `V` m×m and `Σ` n×m.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: Matrix,
    /// Diagonal of Σ, length `min(n, m)`, nonincreasing.
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

impl SvdFactors {
    /// Σ as an n×m matrix.
    pub fn sigma_matrix(&self) -> Matrix {
        let (n, m) = (self.u.rows(), self.v.rows());
        let mut s = Matrix::zeros(n, m, Field::Real);
        for (k, &x) in self.sigma.iter().enumerate() {
            s[(k, k)] = Complex64::new(x, 0.0);
        }
        s
    }

    pub fn reconstruct(&self) -> Matrix {
        self.u.matmul(&self.sigma_matrix()).matmul(&self.v.adjoint())
    }

    /// Largest singular value, i.e. `‖A‖_{2,2}`.
    pub fn top(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values within relative `tol` of the top one.
    pub fn top_multiplicity(&self, tol: f64) -> usize {
        let s1 = self.top();
        if s1 == 0.0 {
            return self.v.rows();
        }
        self.sigma.iter().take_while(|&&s| s >= s1 * (1.0 - tol)).count()
    }

    pub fn left_vector(&self, k: usize) -> Vector {
        Vector::from_parts(self.u.column(k), self.u.field())
    }

    pub fn right_vector(&self, k: usize) -> Vector {
        Vector::from_parts(self.v.column(k), self.v.field())
    }

    /// Eigenvalues of `A*A` in the order of the columns of `V`
    /// (squared singular values, padded with zeros when `m > n`).
    pub fn gram_eigenvalues(&self) -> Vec<f64> {
        (0..self.v.rows())
            .map(|k| self.sigma.get(k).map_or(0.0, |s| s * s))
            .collect()
    }

    /// Groups the columns of `V` into eigenspaces of `A*A`: maximal runs of
    /// eigenvalues within `tol·λ_max` of each other, largest first.
    pub fn gram_eigenspaces(&self, tol: f64) -> Vec<(f64, Vec<usize>)> {
        let lam = self.gram_eigenvalues();
        let scale = lam.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
        let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
        for (k, &l) in lam.iter().enumerate() {
            match groups.last_mut() {
                Some((l0, idx)) if (*l0 - l).abs() <= tol * scale => idx.push(k),
                _ => groups.push((l, vec![k])),
            }
        }
        groups
    }
}

/// Computes the SVD of `a`.
///
/// Fails with [`Error::SvdNoConvergence`] if the off-diagonal mass does not
/// vanish within the sweep cap.
pub fn svd(a: &Matrix) -> Result<SvdFactors, Error> {
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        let t = svd_tall(&a.adjoint())?;
        Ok(SvdFactors { u: t.v, sigma: t.sigma, v: t.u })
    }
}

fn svd_tall(a: &Matrix) -> Result<SvdFactors, Error> {
    let (n, m) = (a.rows(), a.cols());
    let field = a.field();
    let mut w: Vec<Vec<Complex64>> = (0..m).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..m)
        .map(|j| {
            let mut e = vec![ZERO; m];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    let frob = a.frobenius();
    let floor = (1e-12 * frob).powi(2);
    let rel = (m as f64).max(4.0) * f64::EPSILON;

    let mut converged = frob == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::SvdNoConvergence { sweeps });
        }
        sweeps += 1;
        converged = true;
        for i in 0..m {
            for j in (i + 1)..m {
                let alpha: f64 = w[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = w[i].iter().zip(&w[j]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                let scale = (alpha * beta).sqrt();
                if scale <= floor || g <= rel * scale {
                    continue;
                }
                converged = false;
                let phase_conj = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, i, j, c, s, phase_conj);
                rotate(&mut v, i, j, c, s, phase_conj);
            }
        }
    }

    let mut sigma: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| sigma[y].partial_cmp(&sigma[x]).expect("finite singular values"));

    let zero_cut = 1e-12 * frob;
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut v_cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut sorted_sigma = Vec::with_capacity(m);
    for &k in &order {
        let s = sigma[k];
        v_cols.push(std::mem::take(&mut v[k]));
        if s > zero_cut {
            u_cols.push(w[k].iter().map(|z| z / s).collect());
            sorted_sigma.push(s);
        } else {
            sorted_sigma.push(0.0);
        }
    }
    complete_orthonormal(&mut u_cols, n);
    sigma = sorted_sigma;

    Ok(SvdFactors {
        u: columns_to_matrix(&u_cols, n, field),
        sigma,
        v: columns_to_matrix(&v_cols, m, field),
    })
}

fn rotate(cols: &mut [Vec<Complex64>], i: usize, j: usize, c: f64, s: f64, phase_conj: Complex64) {
    let (left, right) = cols.split_at_mut(j);
    let (ci, cj) = (&mut left[i], &mut right[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yj = *y * phase_conj;
        let xi = *x;
        *x = xi * c - yj * s;
        *y = xi * s + yj * c;
    }
}

/// Extends orthonormal columns in `C^n` to an orthonormal basis, greedily
/// adding the coordinate vector with the largest residual.
pub(crate) fn complete_orthonormal(cols: &mut Vec<Vec<Complex64>>, n: usize) {
    while cols.len() < n {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for l in 0..n {
            let mut r = vec![ZERO; n];
            r[l] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for q in cols.iter() {
                    let dot: Complex64 = q.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
                    for (rk, qk) in r.iter_mut().zip(q) {
                        *rk -= dot * qk;
                    }
                }
            }
            let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, r));
            }
        }
        let (norm, r) = best.expect("n > 0");
        cols.push(r.into_iter().map(|z| z / norm).collect());
    }
}

pub(crate) fn columns_to_matrix(cols: &[Vec<Complex64>], rows: usize, field: Field) -> Matrix {
    let mut out = Matrix::zeros(rows, cols.len(), field);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[(i, j)] = if field == Field::Real { Complex64::new(z.re, 0.0) } else { z };
        }
    }
    out
}

/// Largest entrywise deviation of `Q*Q` from the identity.
pub fn unitarity_defect(q: &Matrix) -> f64 {
    let g = q.adjoint().matmul(q);
    g.max_abs_diff(&Matrix::identity(g.rows(), Field::Real))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_invariants(a: &Matrix, f: &SvdFactors) {
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        assert!(f.reconstruct().max_abs_diff(a) <= 1e-9 * scale, "reconstruction of {a:?}");
        assert!(unitarity_defect(&f.u) <= 1e-9);
        assert!(unitarity_defect(&f.v) <= 1e-9);
        assert!(f.sigma.iter().all(|&s| s >= 0.0));
        assert!(f.sigma.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(f.sigma.len(), a.rows().min(a.cols()));
    }

    #[test]
    fn diagonal_example() {
        let a = Matrix::from_real_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let f = svd(&a).unwrap();
        assert_eq!(f.sigma, vec![3.0, 1.0]);
        assert!(f.u.max_abs_diff(&Matrix::identity(2, Field::Real)) < 1e-15);
        assert!(f.v.max_abs_diff(&Matrix::identity(2, Field::Real)) < 1e-15);
    }

    #[test]
    fn rotation_example_has_equal_singular_values() {
        let a = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let f = svd(&a).unwrap();
        for s in &f.sigma {
            assert!((s - 2f64.sqrt()).abs() < 1e-14);
        }
        check_invariants(&a, &f);
    }

    #[test]
    fn zero_matrix() {
        let a = Matrix::zeros(2, 2, Field::Real);
        let f = svd(&a).unwrap();
        assert_eq!(f.sigma, vec![0.0, 0.0]);
        check_invariants(&a, &f);
    }

    #[test]
    fn real_input_gives_real_factors() {
        let a = Matrix::from_real_rows(&[vec![1.0, 2.0, 0.5], vec![-0.3, 0.7, 1.1]]).unwrap();
        let f = svd(&a).unwrap();
        assert!(f.u.data().iter().chain(f.v.data()).all(|z| z.im == 0.0));
        check_invariants(&a, &f);
    }

    #[test]
    fn random_rectangular_complex() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(n, m) in &[(1, 1), (1, 4), (4, 1), (3, 5), (5, 3), (8, 8), (20, 13), (64, 64)] {
            let data = (0..n * m)
                .map(|_| c(rng.random_range(-1e6..1e6), rng.random_range(-1e6..1e6)))
                .collect();
            let a = Matrix::new(n, m, data, Field::Complex).unwrap();
            let f = svd(&a).unwrap();
            check_invariants(&a, &f);
        }
    }

    #[test]
    fn rank_deficient() {
        let a = Matrix::from_real_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![1.0, 0.0, 1.0]]).unwrap();
        let f = svd(&a).unwrap();
        assert!(f.sigma[2] < 1e-12);
        check_invariants(&a, &f);
    }

    #[test]
    fn eigenspace_grouping() {
        let a = Matrix::from_real_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0]]).unwrap();
        let f = svd(&a).unwrap();
        let groups = f.gram_eigenspaces(1e-10);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].1.len(), 2);
        assert!((groups[0].0 - 4.0).abs() < 1e-12);
        assert_eq!(groups[1].0, 0.0);
        assert_eq!(f.top_multiplicity(1e-10), 2);
    }
}
