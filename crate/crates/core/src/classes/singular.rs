//! Equality against the spectral norm: `‖A‖_{r,s} = m^{[1/2−1/r]_+}·n^{[1/s−1/2]_+}·‖A‖_{2,2}`
//! holds exactly when some SVD `A = UΣV*` has its first left singular vector
//! in `K_{sgn(2−s)}` and its first right singular vector in `K_{−sgn(2−r)}`.
//!
//! With a simple top singular value those vectors are fixed up to phase. With
//! multiplicity `k > 1` any unit `c ∈ C^k` gives a valid pair
//! `(U_k c, V_k c)`, and the search runs over `c`.

use num_complex::Complex64;

use super::search::{complement_projector, constant_modulus_search, gray_sign_walk, leading_columns, rotate_leading};
use super::{Certificate, CheckOptions, ClassVerdict, Condition, Membership, VerdictCertainty};
use crate::index::{ExtIndex, Sign};
use crate::matrix::Matrix;
use crate::norms::REAL_ENUMERATION_LIMIT;
use crate::sampling::{rng, unimodular_vec};
use crate::svd::{svd, SvdFactors};
use crate::vector::{in_k_class, norm_of, Field, KClass};
use crate::Error;

const SEARCH_ITERATIONS: usize = 2000;
const RANDOM_STARTS: usize = 32;

/// Outcome of the search over the top singular subspace.
enum Found {
    Coefficients(Vec<Complex64>),
    Nothing { exhaustive: bool },
}

pub fn check_theorem2(a: &Matrix, r: ExtIndex, s: ExtIndex, opts: &CheckOptions) -> Result<ClassVerdict, Error> {
    let ku = KClass::from_sign(Sign::of_diff(ExtIndex::Two, s));
    let kv = KClass::from_sign(Sign::of_diff(ExtIndex::Two, r).neg());
    let mut verdict = ClassVerdict::new(format!("equality at ({r},{s}) against (2,2)"));
    if a.is_zero() {
        verdict.push(Condition::new("zero matrix", true));
        return Ok(verdict.decide(Membership::Yes, VerdictCertainty::Exact));
    }
    let f = svd(a)?;
    if ku == KClass::Whole && kv == KClass::Whole {
        verdict.push(Condition::new("r = s = 2: no restriction on the singular vectors", true));
        verdict.certificate = Some(Certificate::Svd(f));
        return Ok(verdict.decide(Membership::Yes, VerdictCertainty::Exact));
    }
    let k = f.top_multiplicity(opts.tol);
    let found = if k == 1 { Found::Coefficients(vec![Complex64::new(1.0, 0.0)]) } else { search_subspace(a, &f, k, ku, kv, opts) };

    let label = format!("first column of U in {} and first column of V in {}", ku.label(), kv.label());
    match found {
        Found::Coefficients(c) => {
            let g = if k == 1 { f } else { rotate_leading(&f, k, &c) };
            let (u1, v1) = (g.u.column(0), g.v.column(0));
            let ok = in_k_class(&u1, ku, opts.tol) && in_k_class(&v1, kv, opts.tol);
            verdict.push(Condition::new(label, ok).with("top_multiplicity", k as f64).with("sigma_1", g.top()));
            if ok {
                verdict.certificate = Some(Certificate::Svd(g));
                Ok(verdict.decide(Membership::Yes, VerdictCertainty::Exact))
            } else {
                Ok(verdict.decide(Membership::No, VerdictCertainty::Exact))
            }
        }
        Found::Nothing { exhaustive } => {
            verdict.push(Condition::new(label, false).with("top_multiplicity", k as f64).with("sigma_1", f.top()));
            if exhaustive {
                Ok(verdict.decide(Membership::No, VerdictCertainty::Exact))
            } else {
                Ok(verdict.decide(Membership::Undetermined, VerdictCertainty::EstimateBacked))
            }
        }
    }
}

/// Looks for unit `c` with `U_k c ∈ ku` and `V_k c ∈ kv`.
fn search_subspace(a: &Matrix, f: &SvdFactors, k: usize, ku: KClass, kv: KClass, opts: &CheckOptions) -> Found {
    let tol = opts.tol;
    let sigma = f.top();
    let vk = leading_columns(&f.v, k);
    let uk = leading_columns(&f.u, k);

    // A K₋₁ side is a coordinate vector, so there are finitely many choices.
    if kv == KClass::AtMostOneNonzero {
        return coordinate_search(&vk, |j| a.column(j).iter().map(|z| z / sigma).collect(), ku, tol);
    }
    if ku == KClass::AtMostOneNonzero {
        return coordinate_search(&uk, |i| a.row(i).iter().map(|z| z.conj() / sigma).collect(), kv, tol);
    }

    // Both sides are K₁ or K₀, and at least one is K₁.
    let mut bases: Vec<(&Matrix, KClass)> = Vec::new();
    if kv == KClass::ConstantModulus {
        bases.push((&vk, ku));
    }
    if ku == KClass::ConstantModulus {
        bases.push((&uk, kv));
    }
    bases.sort_by_key(|(b, _)| b.rows());
    let (small, other) = bases[0];
    if a.field() == Field::Real && small.rows() <= REAL_ENUMERATION_LIMIT {
        return sign_search(small, other, &vk, &uk, tol);
    }

    let mut g = rng(opts.seed ^ 0x7e02);
    let mut starts: Vec<Vec<Complex64>> = (0..k).map(|j| crate::norms::unit(k, j)).collect();
    for _ in 0..RANDOM_STARTS {
        starts.push(small.apply_adjoint(&unimodular_vec(&mut g, small.rows(), a.field())));
    }
    let refs: Vec<&Matrix> = bases.iter().map(|(b, _)| *b).collect();
    match constant_modulus_search(&refs, &starts, SEARCH_ITERATIONS, 0.1 * tol) {
        Some(c) => Found::Coefficients(c),
        None => Found::Nothing { exhaustive: false },
    }
}

/// Coordinate vectors `e_j` inside the span of `b`, mapped to the other side
/// by `image(j)` and tested against `other`.
fn coordinate_search(b: &Matrix, image: impl Fn(usize) -> Vec<Complex64>, other: KClass, tol: f64) -> Found {
    for j in 0..b.rows() {
        let c: Vec<Complex64> = b.row(j).iter().map(|z| z.conj()).collect();
        if 1.0 - norm_of(&c, ExtIndex::Two).powi(2) > tol {
            continue;
        }
        if in_k_class(&image(j), other, tol) {
            return Found::Coefficients(normalized(c));
        }
    }
    Found::Nothing { exhaustive: true }
}

/// Sign vectors inside the span of the real basis `b`; the matching vector on
/// the other side must lie in `other`.
fn sign_search(b: &Matrix, other: KClass, vk: &Matrix, uk: &Matrix, tol: f64) -> Found {
    let len = b.rows();
    let proj = complement_projector(b);
    let limit = tol * (len as f64).sqrt();
    let other_basis = if std::ptr::eq(b, vk) { uk } else { vk };
    let mut hit = None;
    gray_sign_walk(&proj, |x, y| {
        if y.iter().map(|t| t * t).sum::<f64>().sqrt() > limit {
            return true;
        }
        let s: Vec<Complex64> = x.iter().map(|&t| Complex64::new(t, 0.0)).collect();
        let c = normalized(b.apply_adjoint(&s));
        if in_k_class(&other_basis.apply(&c), other, tol) {
            hit = Some(c);
            return false;
        }
        true
    });
    match hit {
        Some(c) => Found::Coefficients(c),
        None => Found::Nothing { exhaustive: true },
    }
}

fn normalized(mut c: Vec<Complex64>) -> Vec<Complex64> {
    let n = norm_of(&c, ExtIndex::Two);
    c.iter_mut().for_each(|z| *z /= n);
    c
}
