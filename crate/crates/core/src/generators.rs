//! Matrices that attain the norm-ratio bound.
//!
//! * [`gen_theorem2`]: `UΣV*` whose leading singular vectors are chosen from
//!   the K-classes that make the bound tight at a given `(r, s)` against
//!   `(2, 2)`.
//! * [`gen_hadamard`], [`gen_dft`]: constant-modulus scaled unitaries.
//! * [`gen_tensor_product`]: rank one `c·bᵀ`.
//! * [`gen_single_entry`]: one nonzero entry, tight for every exponent pair.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::index::{ExtIndex, Sign};
use crate::matrix::Matrix;
use crate::sampling::{gaussian_vec, rng, unimodular_vec};
use crate::vector::{norm_of, Field, KClass, Vector};
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A unitary matrix whose first column is `c` (`‖c‖₂ = 1` within `1e−12`).
///
/// Householder completion: with `φ = c₁/|c₁|` (or 1) and `w = c + φe₁`, the
/// reflection `P = I − 2ww*/‖w‖²` maps `e₁` to `−φ̄c`, so `P·diag(−φ, 1, …)`
/// has first column `c`. Real input gives a real orthogonal matrix.
pub fn unitary_with_first_column(c: &Vector) -> Result<Matrix, Error> {
    let x = c.entries();
    let n = x.len();
    let norm = norm_of(x, ExtIndex::Two);
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm });
    }
    let phi = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
    let mut w = x.to_vec();
    w[0] += phi;
    let ww: f64 = w.iter().map(|z| z.norm_sqr()).sum();
    let mut u = Matrix::zeros(n, n, c.field());
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { ONE } else { ZERO };
            let p = delta - w[i] * w[j].conj() * (2.0 / ww);
            u[(i, j)] = if j == 0 { -p * phi } else { p };
        }
    }
    if c.field() == Field::Real {
        for z in u.data_mut() {
            z.im = 0.0;
        }
    }
    Ok(u)
}

fn check_sigma(sigma: &[f64], m: usize, n: usize) -> Result<(), Error> {
    if sigma.is_empty() {
        return Err(Error::InvalidSigma("at least one singular value is required".into()));
    }
    if sigma.len() > m.min(n) {
        return Err(Error::InvalidSigma(format!("{} values for a {n}×{m} matrix", sigma.len())));
    }
    if sigma.iter().any(|s| !s.is_finite() || *s < 0.0) {
        return Err(Error::InvalidSigma("values must be finite and nonnegative".into()));
    }
    if sigma.iter().any(|&s| s > sigma[0]) {
        return Err(Error::InvalidSigma("the first value must be maximal".into()));
    }
    Ok(())
}

/// `UΣV*` with `U` completing `u1` (length `n`) and `V` completing `v1`
/// (length `m`); `sigma` is padded with zeros to `min(m, n)`.
pub fn compose_svd(u1: &Vector, v1: &Vector, sigma: &[f64]) -> Result<Matrix, Error> {
    let (n, m) = (u1.len(), v1.len());
    check_sigma(sigma, m, n)?;
    let u = unitary_with_first_column(u1)?;
    let v = unitary_with_first_column(v1)?;
    let field = u1.field().join(v1.field());
    let mut us = Matrix::zeros(n, m, field);
    for (k, &s) in sigma.iter().enumerate() {
        for i in 0..n {
            us[(i, k)] = u[(i, k)] * s;
        }
    }
    us.matmul(&v.adjoint()).with_field(field)
}

/// Unit-ℓ2 representative of a K-class, drawn from `seed`.
pub fn k_class_representative(k: KClass, len: usize, field: Field, seed: u64) -> Vector {
    let mut r = rng(seed);
    let x = match k {
        KClass::ConstantModulus => unimodular_vec(&mut r, len, field),
        KClass::AtMostOneNonzero => {
            let mut e = vec![ZERO; len];
            e[(seed % len as u64) as usize] = ONE;
            e
        }
        KClass::Whole => loop {
            let g = gaussian_vec(&mut r, len, field);
            if norm_of(&g, ExtIndex::Two) > 1e-3 {
                break g;
            }
        },
    };
    let norm = norm_of(&x, ExtIndex::Two);
    Vector::from_parts(x.into_iter().map(|z| z / norm).collect(), field)
}

/// An `n × m` matrix with `‖A‖_{r,s} = m^{[1/2 − 1/r]_+}·n^{[1/s − 1/2]_+}·‖A‖_{2,2}`.
///
/// The leading left singular vector is drawn from `K_{sgn(2−s)}` and the
/// leading right one from `K_{−sgn(2−r)}` (random phases or signs for K₁, a
/// seed-chosen coordinate vector for K₋₁, a random unit vector for K₀).
/// `sigma` must have its maximum first.
pub fn gen_theorem2(
    m: usize,
    n: usize,
    r: ExtIndex,
    s: ExtIndex,
    sigma: &[f64],
    seed: u64,
    field: Field,
) -> Result<Matrix, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    check_sigma(sigma, m, n)?;
    let ku = KClass::from_sign(Sign::of_diff(ExtIndex::Two, s));
    let kv = KClass::from_sign(Sign::of_diff(ExtIndex::Two, r).neg());
    let u1 = k_class_representative(ku, n, field, seed.wrapping_mul(2));
    let v1 = k_class_representative(kv, m, field, seed.wrapping_mul(2).wrapping_add(1));
    compose_svd(&u1, &v1, sigma)
}

/// Sylvester–Hadamard matrix of order `k = 2^t`.
pub fn gen_hadamard(k: usize) -> Result<Matrix, Error> {
    if k == 0 || !k.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(k));
    }
    let mut h = Matrix::identity(1, Field::Real);
    let h2 = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).expect("valid");
    while h.rows() < k {
        h = h2.kron(&h);
    }
    Ok(h)
}

/// `e^{iθ}` with exact values at multiples of a quarter turn.
fn root_of_unity(t: usize, k: usize) -> Complex64 {
    if (4 * t).is_multiple_of(k) {
        match (4 * t / k) % 4 {
            0 => ONE,
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        }
    } else {
        Complex64::from_polar(1.0, -TAU * t as f64 / k as f64)
    }
}

/// Unnormalised DFT matrix `[ω^{jl}]`, `ω = e^{−2πi/k}`.
pub fn gen_dft(k: usize) -> Result<Matrix, Error> {
    if k == 0 {
        return Err(Error::InvalidInput("DFT order must be positive".into()));
    }
    let data = (0..k * k).map(|idx| root_of_unity((idx / k) * (idx % k) % k, k)).collect();
    Matrix::new(k, k, data, Field::Complex)
}

/// Rank-one matrix `A_ij = c_i·b_j` (`c` has length `n`, `b` length `m`).
pub fn gen_tensor_product(c: &Vector, b: &Vector) -> Matrix {
    let (n, m) = (c.len(), b.len());
    let data = (0..n * m).map(|idx| c.entries()[idx / m] * b.entries()[idx % m]).collect();
    Matrix::from_parts(n, m, data, c.field().join(b.field()))
}

/// The `n × m` real matrix with `rho` at row `i`, column `j` (0-based) and
/// zeros elsewhere.
pub fn gen_single_entry(m: usize, n: usize, i: usize, j: usize, rho: f64) -> Result<Matrix, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    if j >= m {
        return Err(Error::IndexOutOfRange { index: j, len: m });
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidInput(format!("entry must be positive, got {rho}")));
    }
    let mut a = Matrix::zeros(n, m, Field::Real);
    a[(i, j)] = Complex64::new(rho, 0.0);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{induced_norm, NormOptions};
    use crate::svd::{svd, unitarity_defect};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn idx(p: f64) -> ExtIndex {
        ExtIndex::new(p).unwrap()
    }

    #[test]
    fn householder_examples() {
        let e1 = Vector::unit(3, 0, Field::Real).unwrap();
        let u = unitary_with_first_column(&e1).unwrap();
        assert!(u.max_abs_diff(&Matrix::identity(3, Field::Real)) < 1e-15);

        let h = 0.5f64.sqrt();
        for x in [Vector::real(&[h, h]).unwrap(), Vector::complex(vec![c(h, 0.0), c(0.0, h)]).unwrap()] {
            let u = unitary_with_first_column(&x).unwrap();
            assert!(unitarity_defect(&u) < 1e-12);
            let col = u.column(0);
            for (a, b) in col.iter().zip(x.entries()) {
                assert!((a - b).norm() < 1e-15);
            }
            assert_eq!(u.field(), x.field());
        }
    }

    #[test]
    fn householder_rejects_bad_input() {
        assert!(matches!(
            unitary_with_first_column(&Vector::real(&[0.0, 0.0]).unwrap()),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            unitary_with_first_column(&Vector::real(&[1.0, 1.0]).unwrap()),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn householder_handles_zero_leading_entry() {
        let x = Vector::complex(vec![ZERO, c(0.6, 0.0), c(0.0, -0.8)]).unwrap();
        let u = unitary_with_first_column(&x).unwrap();
        assert!(unitarity_defect(&u) < 1e-12);
        assert!(u.column(0).iter().zip(x.entries()).all(|(a, b)| (a - b).norm() < 1e-15));
    }

    #[test]
    fn theorem2_explicit_example() {
        let h = 0.5f64.sqrt();
        let u1 = Vector::real(&[h, h]).unwrap();
        let v1 = Vector::unit(2, 0, Field::Real).unwrap();
        let a = compose_svd(&u1, &v1, &[2.0, 1.0]).unwrap();
        // First column is 2·u1 = (√2, √2); the second is ±(1/√2, −1/√2).
        assert_relative_eq!(a[(0, 0)].re, 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(a[(1, 0)].re, 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(a[(0, 1)].norm(), h, max_relative = 1e-14);
        assert_relative_eq!((a[(0, 1)] + a[(1, 1)]).norm(), 0.0, epsilon = 1e-14);
        let n11 = induced_norm(&a, ExtIndex::One, ExtIndex::One, &NormOptions::default()).value;
        assert_relative_eq!(n11, 2.0 * 2f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn theorem2_generator_hits_top_singular_value() {
        for (k, (r, s)) in [(1.0, 1.0), (1.0, f64::INFINITY), (f64::INFINITY, 1.0), (f64::INFINITY, f64::INFINITY), (2.0, 2.0), (3.0, 1.5)]
            .into_iter()
            .enumerate()
        {
            for field in [Field::Real, Field::Complex] {
                let a = gen_theorem2(3, 4, idx(r), idx(s), &[2.5, 1.0, 0.5], k as u64, field).unwrap();
                assert_eq!((a.rows(), a.cols()), (4, 3));
                assert_eq!(a.field(), field);
                assert_relative_eq!(svd(&a).unwrap().top(), 2.5, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn sigma_is_validated() {
        let (one, inf) = (ExtIndex::One, ExtIndex::Inf);
        assert!(matches!(gen_theorem2(2, 2, one, inf, &[1.0, 2.0], 0, Field::Real), Err(Error::InvalidSigma(_))));
        assert!(matches!(gen_theorem2(2, 2, one, inf, &[], 0, Field::Real), Err(Error::InvalidSigma(_))));
        assert!(matches!(gen_theorem2(2, 2, one, inf, &[1.0, 1.0, 1.0], 0, Field::Real), Err(Error::InvalidSigma(_))));
        assert!(matches!(gen_theorem2(2, 2, one, inf, &[1.0, -0.5], 0, Field::Real), Err(Error::InvalidSigma(_))));
        assert!(gen_theorem2(2, 2, one, inf, &[1.0, 1.0], 0, Field::Real).is_ok());
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(gen_hadamard(1).unwrap(), Matrix::identity(1, Field::Real));
        let h2 = gen_hadamard(2).unwrap();
        assert_eq!(h2, Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap());
        let h4 = gen_hadamard(4).unwrap();
        assert_eq!(h4, h2.kron(&h2));
        let gram = h4.adjoint().matmul(&h4);
        assert_eq!(gram, Matrix::identity(4, Field::Real).scaled(c(4.0, 0.0)));
        assert!(matches!(gen_hadamard(6), Err(Error::NotPowerOfTwo(6))));
        assert!(matches!(gen_hadamard(0), Err(Error::NotPowerOfTwo(0))));
    }

    #[test]
    fn dft_examples() {
        assert_eq!(gen_dft(1).unwrap().data(), &[ONE]);
        let f2 = gen_dft(2).unwrap();
        assert_eq!(f2.data(), gen_hadamard(2).unwrap().data());
        for k in [3, 4, 5, 8] {
            let f = gen_dft(k).unwrap();
            let gram = f.adjoint().matmul(&f);
            assert!(gram.max_abs_diff(&Matrix::identity(k, Field::Complex).scaled(c(k as f64, 0.0))) < 1e-12);
            assert!(f.data().iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
        }
        assert!(gen_dft(0).is_err());
    }

    #[test]
    fn tensor_examples() {
        let e1 = Vector::unit(2, 0, Field::Real).unwrap();
        let a = gen_tensor_product(&e1, &e1);
        assert_eq!(a, gen_single_entry(2, 2, 0, 0, 1.0).unwrap());
        let ones = Vector::real(&[1.0, 1.0]).unwrap();
        let a = gen_tensor_product(&ones, &ones);
        let v = induced_norm(&a, ExtIndex::Inf, ExtIndex::One, &NormOptions::default()).value;
        assert_eq!(v, 4.0);
    }

    #[test]
    fn single_entry_examples() {
        let a = gen_single_entry(3, 2, 1, 2, 5.0).unwrap();
        assert_eq!((a.rows(), a.cols()), (2, 3));
        assert_eq!(a[(1, 2)], c(5.0, 0.0));
        assert_eq!(a.max_abs(), 5.0);
        assert!(matches!(gen_single_entry(3, 2, 2, 0, 1.0), Err(Error::IndexOutOfRange { index: 2, len: 2 })));
        assert!(gen_single_entry(3, 2, 0, 0, 0.0).is_err());
    }
}
