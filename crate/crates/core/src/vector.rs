//! Vectors over ℝ or ℂ, their ℓp norms, and the classes of vectors for which
//! the comparison between two ℓp norms is sharp.

use num_complex::Complex64;

use crate::index::{positive_part, ExtIndex, Sign};
use crate::Error;

/// Whether a vector or matrix lives over the real or the complex numbers.
///
/// The tag decides the search domain of every maximisation: a real matrix
/// tagged `Real` has its induced norms taken over real vectors only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

/// A nonempty vector of scalars tagged with its field.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<Complex64>,
    field: Field,
}

impl Vector {
    pub fn new(entries: Vec<Complex64>, field: Field) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if field == Field::Real && entries.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidInput(
                "real vector with a nonzero imaginary part".into(),
            ));
        }
        Ok(Vector { entries, field })
    }

    pub fn real(entries: &[f64]) -> Result<Self, Error> {
        Vector::new(
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Field::Real,
        )
    }

    pub fn complex(entries: Vec<Complex64>) -> Result<Self, Error> {
        Vector::new(entries, Field::Complex)
    }

    /// Coordinate vector `e_k` of length `len`.
    pub fn unit(len: usize, k: usize, field: Field) -> Result<Self, Error> {
        if k >= len {
            return Err(Error::IndexOutOfRange { index: k, len });
        }
        let mut e = vec![Complex64::new(0.0, 0.0); len];
        e[k] = Complex64::new(1.0, 0.0);
        Vector::new(e, field)
    }

    /// Wraps entries without validation; callers keep real vectors real.
    pub(crate) fn from_parts(entries: Vec<Complex64>, field: Field) -> Self {
        debug_assert!(!entries.is_empty());
        Vector { entries, field }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self, p: ExtIndex) -> f64 {
        norm_of(&self.entries, p)
    }

    pub fn scaled(&self, c: f64) -> Vector {
        Vector::from_parts(self.entries.iter().map(|z| z * c).collect(), self.field)
    }

    /// Rescales to unit ℓp norm; the zero vector is returned unchanged.
    pub fn normalized(&self, p: ExtIndex) -> Vector {
        let n = self.norm(p);
        if n > 0.0 {
            self.scaled(1.0 / n)
        } else {
            self.clone()
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `‖x‖_p`, computed with a max-scaling so large exponents do not overflow.
pub fn vector_norm(x: &Vector, p: ExtIndex) -> f64 {
    norm_of(x.entries(), p)
}

pub(crate) fn norm_of(x: &[Complex64], p: ExtIndex) -> f64 {
    match p {
        ExtIndex::One => x.iter().map(|z| z.norm()).sum(),
        ExtIndex::Two => {
            let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                return 0.0;
            }
            scale
                * x.iter()
                    .map(|z| (z.norm() / scale).powi(2))
                    .sum::<f64>()
                    .sqrt()
        }
        ExtIndex::Inf => x.iter().map(|z| z.norm()).fold(0.0, f64::max),
        ExtIndex::Finite(p) => {
            let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                return 0.0;
            }
            scale
                * x.iter()
                    .map(|z| (z.norm() / scale).powf(p))
                    .sum::<f64>()
                    .powf(1.0 / p)
        }
    }
}

/// Hölder conjugate exponent, see [`ExtIndex::conjugate`].
pub fn conjugate(p: ExtIndex) -> ExtIndex {
    p.conjugate()
}

/// The three vector sets on which the ℓr/ℓp comparison is sharp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KClass {
    /// K₁: all entries share one modulus.
    ConstantModulus,
    /// K₋₁: at most one entry is nonzero.
    AtMostOneNonzero,
    /// K₀: no restriction.
    Whole,
}

impl KClass {
    /// `K_sgn`: positive sign gives K₁, negative K₋₁, zero K₀.
    pub fn from_sign(s: Sign) -> Self {
        match s {
            Sign::Positive => KClass::ConstantModulus,
            Sign::Negative => KClass::AtMostOneNonzero,
            Sign::Zero => KClass::Whole,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KClass::ConstantModulus => "K1",
            KClass::AtMostOneNonzero => "K-1",
            KClass::Whole => "K0",
        }
    }
}

/// Membership of `x` in a K-class at relative tolerance `tol`.
///
/// The zero vector belongs to every class.
pub fn k_class_test(x: &Vector, k: KClass, tol: f64) -> bool {
    in_k_class(x.entries(), k, tol)
}

pub(crate) fn in_k_class(x: &[Complex64], k: KClass, tol: f64) -> bool {
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    let max = moduli.iter().copied().fold(0.0, f64::max);
    match k {
        KClass::Whole => true,
        KClass::ConstantModulus => {
            let min = moduli.iter().copied().fold(f64::INFINITY, f64::min);
            max - min <= tol * max
        }
        KClass::AtMostOneNonzero => moduli.iter().filter(|&&a| a > tol * max).count() <= 1,
    }
}

/// True when all entries above `tol·max` share a modulus (zeros allowed).
pub(crate) fn nonzero_entries_equal_modulus(x: &[Complex64], tol: f64) -> bool {
    let max = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    x.iter()
        .map(|z| z.norm())
        .filter(|&a| a > tol * max)
        .all(|a| max - a <= tol * max)
}

/// `m^{[(1/r) − (1/p)]_+}`, the sharp constant in `‖x‖_r ≤ c·‖x‖_p` on an
/// `m`-dimensional space.
pub fn prop1_factor(r: ExtIndex, p: ExtIndex, m: usize) -> f64 {
    (m as f64).powf(positive_part(r.recip() - p.recip()))
}

/// The class `K_{sgn(p−r)}` of vectors for which `‖x‖_r = prop1_factor·‖x‖_p`.
pub fn prop1_equality_class(p: ExtIndex, r: ExtIndex) -> KClass {
    KClass::from_sign(Sign::of_diff(p, r))
}
