//! Induced norms `‖A‖_{p,q} = max ‖Ax‖_q / ‖x‖_p`.
//!
//! Three kinds of evaluation are available, each tagged with a [`Certainty`]:
//! closed forms (`p = 1`, `q = ∞`, `p = q = 2`, rank one), exact enumeration
//! of sign vectors for real matrices at `p = ∞`, and a restarted ascent
//! estimator whose value is always achieved by its witness and is therefore a
//! lower bound on the true norm.

mod enumerate;
mod estimate;
mod oracle;

use num_complex::Complex64;

use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::svd::svd;
use crate::vector::{norm_of, Field, Vector};

pub use enumerate::{norm_inf_enumerate, norm_inf_phase_grid, norm_infty_one_exact, REAL_ENUMERATION_LIMIT, COMPLEX_GRID_LIMIT};
pub use estimate::{maximizer_set_probe, norm_estimate, EstimatorSettings};
pub use oracle::norm_bruteforce;

pub(crate) use estimate::dual_vector;

/// How a norm value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Certainty {
    /// Value of a witness found by search; the true norm is at least this.
    LowerBoundEstimate,
    /// Exhaustive search over a finite set known to contain a maximiser.
    ExactEnumeration,
    ExactClosedForm,
}

impl Certainty {
    pub fn is_exact(self) -> bool {
        !matches!(self, Certainty::LowerBoundEstimate)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::ExactClosedForm => "exact-closed-form",
            Certainty::ExactEnumeration => "exact-enumeration",
            Certainty::LowerBoundEstimate => "lower-bound-estimate",
        }
    }

    /// The weaker of two certainties.
    pub fn weakest(self, other: Certainty) -> Certainty {
        self.min(other)
    }
}

impl std::fmt::Display for Certainty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A norm value together with a vector attaining it.
#[derive(Debug, Clone)]
pub struct NormResult {
    pub value: f64,
    /// Maximiser candidate with `‖witness‖_p = 1`.
    pub witness: Vector,
    pub certainty: Certainty,
}

impl NormResult {
    fn from_witness(a: &Matrix, x: Vec<Complex64>, p: ExtIndex, q: ExtIndex, certainty: Certainty) -> Self {
        let x = normalize_p(x, p);
        let value = ratio_of(a, &x, p, q);
        NormResult { value, witness: Vector::from_parts(x, a.field()), certainty }
    }
}

/// `‖Ax‖_q / ‖x‖_p`, zero for `x = 0`.
pub fn ratio(a: &Matrix, x: &Vector, p: ExtIndex, q: ExtIndex) -> f64 {
    ratio_of(a, x.entries(), p, q)
}

pub(crate) fn ratio_of(a: &Matrix, x: &[Complex64], p: ExtIndex, q: ExtIndex) -> f64 {
    let den = norm_of(x, p);
    if den == 0.0 {
        return 0.0;
    }
    norm_of(&a.apply(x), q) / den
}

pub(crate) fn normalize_p(x: Vec<Complex64>, p: ExtIndex) -> Vec<Complex64> {
    let n = norm_of(&x, p);
    if n > 0.0 {
        x.into_iter().map(|z| z / n).collect()
    } else {
        x
    }
}

pub(crate) fn unit(len: usize, k: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); len];
    e[k] = Complex64::new(1.0, 0.0);
    e
}

/// Closed-form value of `‖A‖_{p,q}` when one is known.
///
/// Covered cases: the zero matrix; `p = 1` (largest column ℓq norm, which
/// gives `ρ` at `q = ∞` and the largest column ℓ1 norm at `q = 1`); `q = ∞`
/// (largest row ℓ_{p*} norm, the largest row ℓ1 norm at `p = ∞`);
/// `p = q = 2` (top singular value); rank-one matrices `c·bᵀ`, whose norm is
/// `‖b‖_{p*}·‖c‖_q`. Ties between columns or rows resolve to the lowest index.
pub fn norm_closed_form(a: &Matrix, p: ExtIndex, q: ExtIndex) -> Option<NormResult> {
    let (n, m) = (a.rows(), a.cols());
    let exact = Certainty::ExactClosedForm;
    if a.is_zero() {
        return Some(NormResult {
            value: 0.0,
            witness: Vector::from_parts(unit(m, 0), a.field()),
            certainty: exact,
        });
    }
    if p.is_one() {
        let j = argmax((0..m).map(|j| a.column_norm(j, q)));
        return Some(NormResult::from_witness(a, unit(m, j), p, q, exact));
    }
    if q.is_inf() {
        let ps = p.conjugate();
        let i = argmax((0..n).map(|i| a.row_norm(i, ps)));
        let row: Vec<Complex64> = a.row(i).iter().map(|z| z.conj()).collect();
        return Some(NormResult::from_witness(a, dual_vector(&row, ps), p, q, exact));
    }
    if p.is_two() && q.is_two() {
        if let Ok(f) = svd(a) {
            let v = f.v.column(0);
            return Some(NormResult {
                value: f.top(),
                witness: Vector::from_parts(v, a.field()),
                certainty: exact,
            });
        }
    }
    if let Some((_, b)) = rank_one_factors(a) {
        let bc: Vec<Complex64> = b.iter().map(|z| z.conj()).collect();
        return Some(NormResult::from_witness(a, dual_vector(&bc, p.conjugate()), p, q, exact));
    }
    None
}

/// Splits `A = c·bᵀ` when `A` is rank one up to `1e-13·ρ` entrywise.
pub(crate) fn rank_one_factors(a: &Matrix) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
    let rho = a.max_abs();
    if rho == 0.0 {
        return None;
    }
    let (n, m) = (a.rows(), a.cols());
    let k = argmax(a.data().iter().map(|z| z.norm()));
    let (i0, j0) = (k / m, k % m);
    let pivot = a[(i0, j0)];
    let c = a.column(j0);
    let b: Vec<Complex64> = a.row(i0).iter().map(|z| z / pivot).collect();
    for i in 0..n {
        for j in 0..m {
            if (a[(i, j)] - c[i] * b[j]).norm() > 1e-13 * rho {
                return None;
            }
        }
    }
    Some((c, b))
}

/// Index of the first maximal element.
pub(crate) fn argmax(it: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (k, x) in it.enumerate() {
        if x > best.1 {
            best = (k, x);
        }
    }
    best.0
}

/// Settings for [`induced_norm`].
#[derive(Debug, Clone, Copy, Default)]
pub struct NormOptions {
    pub estimator: EstimatorSettings,
    /// Sample budget for the brute-force oracle; zero disables it.
    pub oracle_budget: usize,
}

impl NormOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.estimator.seed = seed;
        self
    }

    pub fn with_oracle_budget(mut self, budget: usize) -> Self {
        self.oracle_budget = budget;
        self
    }
}

/// Best available evaluation of `‖A‖_{p,q}`: closed form, then exact sign
/// enumeration (real field, `p = ∞`), then the estimator, optionally
/// improved by the phase grid (complex, `p = ∞`) and the brute-force oracle.
pub fn induced_norm(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &NormOptions) -> NormResult {
    if let Some(r) = norm_closed_form(a, p, q) {
        return r;
    }
    if p.is_inf() && a.field() == Field::Real && a.cols() <= REAL_ENUMERATION_LIMIT {
        return norm_inf_enumerate(a, q).expect("dimension checked");
    }
    let mut best = norm_estimate(a, p, q, &opts.estimator);
    if p.is_inf() && a.field() == Field::Complex && a.cols() <= COMPLEX_GRID_LIMIT {
        let g = norm_inf_phase_grid(a, q, &opts.estimator).expect("dimension checked");
        if g.value > best.value {
            best = g;
        }
    }
    if opts.oracle_budget > 0 {
        let o = norm_bruteforce(a, p, q, opts.oracle_budget, opts.estimator.seed);
        if o.value > best.value {
            best = o;
        }
    }
    best
}
