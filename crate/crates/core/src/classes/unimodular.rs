//! `E_inf1`: equality for `r > p`, `s < q`.
//!
//! `A` is a member exactly when some `v` with unimodular entries is an
//! eigenvector of `A*A`, `Av` has entries of one modulus `τ`, and
//! `‖A‖_{p,q} = n^{1/q}·m^{−1/p}·τ`. Since `‖Av‖_q/‖v‖_p` already equals the
//! right side, the last condition reads `‖A‖_{p,q} ≤ n^{1/q}·m^{−1/p}·τ`, and
//! only the candidate with the largest `τ` (largest eigenvalue,
//! `τ² = λ·m/n`) matters.
//!
//! Real matrices are searched exhaustively over sign vectors. Complex
//! matrices are searched eigenspace by eigenspace: a one-dimensional
//! eigenspace is tested directly, a larger one by alternating projection.

use num_complex::Complex64;

use super::search::{constant_modulus_search, gray_sign_walk, leading_columns, modulus_spread};
use super::{decide_at_most, norm_condition, norm_evidence, phase, subject, trivial_verdict, Certificate, CheckOptions, ClassId, ClassVerdict, Condition, Membership, VerdictCertainty};
use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::norms::{maximizer_set_probe, REAL_ENUMERATION_LIMIT};
use crate::sampling::{rng, unimodular_vec};
use crate::svd::svd;
use crate::vector::{in_k_class, nonzero_entries_equal_modulus, norm_of, Field, KClass, Vector};
use crate::Error;

const SEARCH_ITERATIONS: usize = 2000;
const RANDOM_STARTS: usize = 16;

/// A vector meeting the structural conditions, with its eigenvalue and `τ`.
struct Candidate {
    v: Vec<Complex64>,
    lambda: f64,
    tau: f64,
}

/// Relative eigen-residual `‖A*Av − λv‖/‖A*Av‖` with the Rayleigh quotient `λ`.
fn eigen_residual(a: &Matrix, v: &[Complex64]) -> (f64, f64) {
    let w = a.apply_adjoint(&a.apply(v));
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let lambda = v.iter().zip(&w).map(|(x, y)| x.conj() * y).sum::<Complex64>().re / vv;
    let wn = norm_of(&w, ExtIndex::Two);
    if wn == 0.0 {
        return (0.0, 0.0);
    }
    let r: Vec<Complex64> = w.iter().zip(v).map(|(y, x)| y - x * lambda).collect();
    (norm_of(&r, ExtIndex::Two) / wn, lambda)
}

/// Scales `v` to unit-modulus entries with `v_0 = 1` and tests the three
/// structural conditions.
fn candidate(a: &Matrix, v: &[Complex64], tol: f64) -> Option<Candidate> {
    if modulus_spread(v) > tol || v.iter().any(|z| z.norm() == 0.0) {
        return None;
    }
    let rot = phase(v[0]).conj();
    let v: Vec<Complex64> = v.iter().map(|z| phase(*z) * rot).collect();
    let y = a.apply(&v);
    if modulus_spread(&y) > tol {
        return None;
    }
    let (res, lambda) = eigen_residual(a, &v);
    if res > tol || lambda <= 0.0 {
        return None;
    }
    let tau = y.iter().map(|z| z.norm()).sum::<f64>() / y.len() as f64;
    Some(Candidate { v, lambda, tau })
}

/// Best candidate over all sign vectors of a real matrix.
fn real_search(a: &Matrix, tol: f64) -> Result<Option<Candidate>, Error> {
    let m = a.cols();
    if m > REAL_ENUMERATION_LIMIT {
        return Err(Error::DimensionTooLarge { what: "real sign enumeration", limit: REAL_ENUMERATION_LIMIT, got: m });
    }
    let mut best: Option<Candidate> = None;
    gray_sign_walk(a, |x, y| {
        let max = y.iter().fold(0.0f64, |acc, z| acc.max(z.abs()));
        let min = y.iter().fold(f64::INFINITY, |acc, z| acc.min(z.abs()));
        if max > 0.0 && max - min <= tol * max && best.as_ref().is_none_or(|b| max > b.tau * (1.0 + tol)) {
            let v: Vec<Complex64> = x.iter().map(|&s| Complex64::new(s, 0.0)).collect();
            if let Some(c) = candidate(a, &v, tol) {
                best = Some(c);
            }
        }
        true
    });
    Ok(best)
}

/// Outcome of the complex eigenspace search.
struct ComplexSearch {
    best: Option<Candidate>,
    /// Largest eigenvalue of an eigenspace the search could neither
    /// resolve nor rule out.
    unresolved_above: Option<f64>,
}

fn complex_search(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions, norm_lower: f64) -> Result<ComplexSearch, Error> {
    let (n, m) = (a.rows() as f64, a.cols() as f64);
    let f = svd(a)?;
    let scale = n.powf(q.recip()) * m.powf(-p.recip());
    let mut starts_cache: Option<Vec<Vec<Complex64>>> = None;
    let mut unresolved_above = None;
    for (lambda, cols) in f.gram_eigenspaces(opts.tol) {
        if lambda <= 0.0 {
            break;
        }
        // τ for this eigenspace and the largest norm it could certify.
        let tau = (lambda * m / n).sqrt();
        if scale * tau * (1.0 + opts.tol) < norm_lower {
            break;
        }
        let k = cols.len();
        let first = cols[0];
        if k == 1 {
            if let Some(c) = candidate(a, &f.v.column(first), opts.tol) {
                return Ok(ComplexSearch { best: Some(c), unresolved_above });
            }
            continue;
        }
        let ve = columns_of(&f.v, &cols);
        let ue = columns_of(&f.u, &cols);
        let starts = starts_cache.get_or_insert_with(|| witness_starts(a, p, q, opts));
        let mut coeffs: Vec<Vec<Complex64>> = starts.iter().map(|x| ve.apply_adjoint(x)).collect();
        coeffs.extend((0..k).map(|j| crate::norms::unit(k, j)));
        let found = constant_modulus_search(&[&ve, &ue], &coeffs, SEARCH_ITERATIONS, 0.1 * opts.tol).and_then(|c| candidate(a, &ve.apply(&c), opts.tol));
        match found {
            Some(c) => return Ok(ComplexSearch { best: Some(c), unresolved_above }),
            None => {
                unresolved_above.get_or_insert(lambda);
            }
        }
    }
    Ok(ComplexSearch { best: None, unresolved_above })
}

fn columns_of(b: &Matrix, cols: &[usize]) -> Matrix {
    if cols.iter().enumerate().all(|(i, &c)| i == c) {
        return leading_columns(b, cols.len());
    }
    let mut out = Matrix::zeros(b.rows(), cols.len(), b.field());
    for i in 0..b.rows() {
        for (j, &c) in cols.iter().enumerate() {
            out[(i, j)] = b[(i, c)];
        }
    }
    out
}

/// Maximiser witnesses at `(p, q)` and `(∞, 1)`, then random unimodular vectors.
fn witness_starts(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for (pp, qq) in [(p, q), (ExtIndex::Inf, ExtIndex::One)] {
        out.extend(maximizer_set_probe(a, pp, qq, opts.probe_count, opts.seed).into_iter().map(Vector::into_entries));
    }
    let mut g = rng(opts.seed ^ 0x5eed_e1f1);
    out.extend((0..RANDOM_STARTS).map(|_| unimodular_vec(&mut g, a.cols(), Field::Complex)));
    out
}

pub fn check_einf1(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> Result<ClassVerdict, Error> {
    if let Some(v) = trivial_verdict(a, ClassId::EInf1, p, q) {
        return Ok(v);
    }
    let mut verdict = ClassVerdict::new(subject(ClassId::EInf1, p, q));
    let ev = norm_evidence(a, p, q, opts);
    let (best, unresolved_above, exhaustive) = match a.field() {
        Field::Real => (real_search(a, opts.tol)?, None, true),
        Field::Complex => {
            let s = complex_search(a, p, q, opts, ev.lower.value)?;
            (s.best, s.unresolved_above, false)
        }
    };
    let unresolved = unresolved_above.is_some();

    let Some(c) = best else {
        let search = if exhaustive { "all sign vectors" } else { "eigenspaces of A*A" };
        verdict.push(Condition::new(format!("(i)-(iii) unimodular eigenvector v of A*A with |(Av)_i| constant ({search})"), false));
        let member = if unresolved { Membership::Undetermined } else { Membership::No };
        let certainty = if unresolved { VerdictCertainty::EstimateBacked } else { VerdictCertainty::Exact };
        if let Some(l) = unresolved_above {
            verdict.push(Condition::new("degenerate eigenspace not resolved by the search", false).with("lambda", l));
        }
        return Ok(verdict.decide(member, certainty));
    };

    verdict.push(
        Condition::new("(i)-(iii) unimodular eigenvector v of A*A with |(Av)_i| = tau", true)
            .with("lambda", c.lambda)
            .with("tau", c.tau),
    );
    if let Some(l) = unresolved_above {
        verdict.push(Condition::new("degenerate eigenspace above the candidate not resolved by the search", false).with("lambda", l));
    }
    let (n, m) = (a.rows() as f64, a.cols() as f64);
    let target = n.powf(q.recip()) * m.powf(-p.recip()) * c.tau;
    let (mut member, mut certainty) = decide_at_most(&ev, target, opts, false);
    verdict.push(norm_condition("(iv) ||A||_{p,q} = n^{1/q} m^{-1/p} tau", &ev, target, member));
    if member == Membership::No && unresolved {
        (member, certainty) = (Membership::Undetermined, VerdictCertainty::EstimateBacked);
    }
    if member == Membership::Yes {
        let v = Vector::from_parts(c.v, a.field());
        verdict.certificate = Some(Certificate::Eigenvector { v, lambda: c.lambda, tau: c.tau });
    }
    Ok(verdict.decide(member, certainty))
}

/// Whether `v` is an eigenvector of `A*A` within `tol`, for a claimed
/// maximiser of `‖Ax‖_q/‖x‖_p` whose nonzero entries, and those of `Av`,
/// share a modulus.
///
/// Fails with [`Error::Precondition`] when those hypotheses do not hold: the
/// moduli differ, or `p = 1` with `v` not constant-modulus, or `p = ∞` with
/// more than one nonzero entry.
pub fn lemma31_eigencheck(a: &Matrix, v: &Vector, p: ExtIndex, q: ExtIndex, tol: f64) -> Result<bool, Error> {
    let _ = q;
    if v.len() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), got: v.len() });
    }
    let x = v.entries();
    if x.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::ZeroVector);
    }
    if !nonzero_entries_equal_modulus(x, tol) {
        return Err(Error::Precondition("nonzero entries of v differ in modulus".into()));
    }
    if !nonzero_entries_equal_modulus(&a.apply(x), tol) {
        return Err(Error::Precondition("nonzero entries of Av differ in modulus".into()));
    }
    if p.is_one() && !in_k_class(x, KClass::ConstantModulus, tol) {
        return Err(Error::Precondition("p = 1 requires every entry of v to have the same modulus".into()));
    }
    if p.is_inf() && !in_k_class(x, KClass::AtMostOneNonzero, tol) {
        return Err(Error::Precondition("p = inf requires v to have at most one nonzero entry".into()));
    }
    Ok(eigen_residual(a, x).0 <= tol)
}

/// Diagonal unitaries `D`, `V` with all row sums of `DAV` equal to `τ` and
/// all column sums equal to `nτ/m`.
#[derive(Debug, Clone)]
pub struct DavForm {
    /// `diag(conj(Av)/τ)`, n×n.
    pub d: Matrix,
    /// `diag(v)`, m×m.
    pub v: Matrix,
    pub tau: f64,
    pub row_sums: Vec<Complex64>,
    pub col_sums: Vec<Complex64>,
    /// `DAV` has nonnegative real entries (the doubly-stochastic case).
    pub nonnegative: bool,
}

/// Why no normal form exists for the given `v`, with the sums that failed.
#[derive(Debug, Clone)]
pub struct DavFailure {
    pub reason: String,
    pub row_sums: Vec<Complex64>,
    pub col_sums: Vec<Complex64>,
}

/// Builds `V = diag(v)` and `D = diag(conj(Av)/τ)` and checks the row and
/// column sums of `DAV`. A failure means `v` is not a unimodular eigenvector
/// of `A*A` with `|Av|` constant.
pub fn dav_normal_form(a: &Matrix, v: &Vector, tol: f64) -> Result<DavForm, DavFailure> {
    let fail = |reason: &str, row_sums: Vec<Complex64>, col_sums: Vec<Complex64>| DavFailure { reason: reason.into(), row_sums, col_sums };
    if v.len() != a.cols() {
        return Err(fail("v has the wrong length", Vec::new(), Vec::new()));
    }
    let x = v.entries();
    if x.iter().any(|z| (z.norm() - 1.0).abs() > tol) {
        return Err(fail("entries of v are not unimodular", Vec::new(), Vec::new()));
    }
    let y = a.apply(x);
    let tau = y.iter().map(|z| z.norm()).sum::<f64>() / y.len() as f64;
    if tau == 0.0 {
        return Err(fail("Av = 0", Vec::new(), Vec::new()));
    }
    let field = a.field().join(v.field());
    let d = Matrix::diagonal(&y.iter().map(|z| z.conj() / tau).collect::<Vec<_>>(), field).expect("finite");
    let vm = Matrix::diagonal(x, field).expect("finite");
    let b = d.matmul(a).matmul(&vm);
    let row_sums: Vec<Complex64> = (0..b.rows()).map(|i| b.row(i).iter().sum()).collect();
    let col_sums: Vec<Complex64> = (0..b.cols()).map(|j| b.column(j).iter().sum()).collect();
    if modulus_spread(&y) > tol {
        return Err(fail("entries of Av differ in modulus", row_sums, col_sums));
    }
    let (n, m) = (a.rows() as f64, a.cols() as f64);
    let col_target = n * tau / m;
    if row_sums.iter().any(|s| (s - tau).norm() > tol * tau) {
        return Err(fail("a row sum of DAV differs from tau", row_sums, col_sums));
    }
    if col_sums.iter().any(|s| (s - col_target).norm() > tol * col_target) {
        return Err(fail("a column sum of DAV differs from n tau / m", row_sums, col_sums));
    }
    let small = tol * b.max_abs();
    let nonnegative = b.data().iter().all(|z| z.im.abs() <= small && z.re >= -small);
    Ok(DavForm { d, v: vm, tau, row_sums, col_sums, nonnegative })
}
