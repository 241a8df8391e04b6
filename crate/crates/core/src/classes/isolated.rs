//! `E_1inf`: equality for `r < p`, `s > q`, where `‖A‖_{1,∞} = ρ` is the
//! largest entry modulus.
//!
//! Membership (for `p ≤ q`) holds exactly when every entry of modulus `ρ` is
//! alone in its row and column and the remainder `C` has `‖C‖_{p,q} ≤ ρ`;
//! then `‖A‖_{p,q} = max(ρ, ‖C‖_{p,q}) = ρ`. For `p > q` only matrices with
//! at most one nonzero entry qualify.

use num_complex::Complex64;

use super::{decide_at_most, norm_condition, norm_evidence, subject, trivial_verdict, Certificate, CheckOptions, ClassId, ClassVerdict, Condition, Membership, SufficientReport, VerdictCertainty};
use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::norms::norm_closed_form;
use crate::vector::Vector;

/// Positions `(i, j)` with `|a_ij| ≥ (1 − tol)·ρ`.
fn peak_entries(a: &Matrix, tol: f64) -> Vec<(usize, usize)> {
    let rho = a.max_abs();
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].norm() >= (1.0 - tol) * rho {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every peak entry is the only entry above `tol·ρ` in its row and column.
fn peaks_isolated(a: &Matrix, peaks: &[(usize, usize)], tol: f64) -> bool {
    let small = tol * a.max_abs();
    peaks.iter().all(|&(i, j)| {
        let row_ok = (0..a.cols()).all(|l| l == j || a[(i, l)].norm() <= small);
        let col_ok = (0..a.rows()).all(|k| k == i || a[(k, j)].norm() <= small);
        row_ok && col_ok
    })
}

/// `A` with its peak entries replaced by zero.
fn remainder(a: &Matrix, peaks: &[(usize, usize)]) -> Matrix {
    let mut c = a.clone();
    for &(i, j) in peaks {
        c[(i, j)] = Complex64::new(0.0, 0.0);
    }
    c
}

fn nonzero_count(a: &Matrix, tol: f64) -> usize {
    let small = tol * a.max_abs();
    a.data().iter().filter(|z| z.norm() > small).count()
}

pub fn check_e1inf(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> ClassVerdict {
    if let Some(v) = trivial_verdict(a, ClassId::E1Inf, p, q) {
        return v;
    }
    let mut v = ClassVerdict::new(subject(ClassId::E1Inf, p, q));
    let rho = a.max_abs();
    let peaks = peak_entries(a, opts.tol);
    let (_, pj) = peaks[0];
    let witness = Certificate::Maximizer(Vector::unit(a.cols(), pj, a.field()).expect("column in range"));

    if p > q {
        let count = nonzero_count(a, opts.tol);
        v.push(Condition::new("at most one nonzero entry", count <= 1).with("nonzero_entries", count as f64));
        if count <= 1 {
            v.certificate = Some(witness);
            return v.decide(Membership::Yes, VerdictCertainty::Exact);
        }
        return v.decide(Membership::No, VerdictCertainty::Exact);
    }

    let isolated = peaks_isolated(a, &peaks, opts.tol);
    v.push(
        Condition::new("(i) every entry of modulus rho is alone in its row and column", isolated)
            .with("rho", rho)
            .with("peak_entries", peaks.len() as f64),
    );
    if !isolated {
        return v.decide(Membership::No, VerdictCertainty::Exact);
    }

    let c = remainder(a, &peaks);
    let suff = sufficient_3prime(a, p, q, opts.tol);
    if suff.holds {
        v.push(Condition::new("(ii) ||C||_{p,q} <= rho via m^{1-1/p} n^{1/q} ||C||_{1,inf} <= rho", true).with("lhs", suff.lhs).with("rho", rho));
        v.certificate = Some(witness);
        return v.decide(Membership::Yes, VerdictCertainty::Exact);
    }
    let ev = norm_evidence(&c, p, q, opts);
    let (member, certainty) = decide_at_most(&ev, rho, opts, true);
    v.push(norm_condition("(ii) ||C||_{p,q} <= rho", &ev, rho, member));
    if member == Membership::Yes {
        v.certificate = Some(witness);
    }
    v.decide(member, certainty)
}

/// Sufficient test `m^{1−1/p}·n^{1/q}·‖C‖_{1,∞} ≤ ρ` for `p ≤ q`, given that
/// the peak entries are isolated. Implies membership in `E_1inf(p, q)`.
pub fn sufficient_3prime(a: &Matrix, p: ExtIndex, q: ExtIndex, tol: f64) -> SufficientReport {
    if a.is_zero() {
        return SufficientReport::not_applicable("zero matrix");
    }
    if p > q {
        return SufficientReport::not_applicable("requires p <= q");
    }
    let peaks = peak_entries(a, tol);
    if !peaks_isolated(a, &peaks, tol) {
        return SufficientReport::not_applicable("an entry of maximal modulus shares its row or column");
    }
    let c = remainder(a, &peaks);
    let c_norm = norm_closed_form(&c, ExtIndex::One, ExtIndex::Inf).map_or(0.0, |r| r.value);
    let (m, n) = (a.cols() as f64, a.rows() as f64);
    let lhs = m.powf(1.0 - p.recip()) * n.powf(q.recip()) * c_norm;
    let rho = a.max_abs();
    SufficientReport { holds: lhs <= rho, lhs, rhs: rho, printed_lhs: None, note: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Field;

    fn idx(p: f64) -> ExtIndex {
        ExtIndex::new(p).unwrap()
    }

    fn m(rows: &[Vec<f64>]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn e1inf_examples() {
        let opts = CheckOptions::default();
        let two = ExtIndex::Two;
        let v = check_e1inf(&m(&[vec![3.0, 0.0], vec![0.0, 1.0]]), two, two, &opts);
        assert_eq!(v.member, Membership::Yes);
        assert_eq!(v.certainty, VerdictCertainty::Exact);

        let v = check_e1inf(&m(&[vec![3.0, 1.0], vec![0.0, 1.0]]), two, two, &opts);
        assert_eq!(v.member, Membership::No);
        assert!(!v.conditions[0].satisfied);

        let mut single = Matrix::zeros(3, 3, Field::Real);
        single[(1, 1)] = Complex64::new(5.0, 0.0);
        let v = check_e1inf(&single, idx(3.0), idx(2.0), &opts);
        assert_eq!(v.member, Membership::Yes);
    }

    #[test]
    fn p_above_q_needs_a_single_entry() {
        let opts = CheckOptions::default();
        let v = check_e1inf(&m(&[vec![3.0, 0.0], vec![0.0, 1.0]]), idx(3.0), idx(2.0), &opts);
        assert_eq!(v.member, Membership::No);
    }

    #[test]
    fn remainder_norm_decides_when_sufficient_test_fails() {
        let opts = CheckOptions::default();
        let two = ExtIndex::Two;
        // C = diag(0, 2.9): the sufficient test fails but ‖C‖_{2,2} = 2.9 < 3.
        let v = check_e1inf(&m(&[vec![3.0, 0.0], vec![0.0, 2.9]]), two, two, &opts);
        assert_eq!(v.member, Membership::Yes);
        // Here C has a 2×2 block with spectral norm 2.5·√2 > ρ = 3.
        let a = m(&[vec![3.0, 0.0, 0.0], vec![0.0, 2.5, 2.5], vec![0.0, 2.5, -2.5]]);
        let v = check_e1inf(&a, two, two, &opts);
        assert_eq!(v.member, Membership::No);
    }

    #[test]
    fn sufficient_3prime_examples() {
        let a = m(&[vec![3.0, 0.0], vec![0.0, 1.0]]);
        let r = sufficient_3prime(&a, ExtIndex::One, ExtIndex::Inf, 1e-8);
        assert!(r.holds);
        assert_eq!(r.lhs, 1.0);
        let r = sufficient_3prime(&a, ExtIndex::Two, ExtIndex::Two, 1e-8);
        assert!(r.holds);
        assert!((r.lhs - 2.0).abs() < 1e-12);
        let r = sufficient_3prime(&m(&[vec![3.0, 0.0], vec![0.0, 2.9]]), ExtIndex::Two, ExtIndex::Two, 1e-8);
        assert!(!r.holds);
        assert!((r.lhs - 5.8).abs() < 1e-12);
        let r = sufficient_3prime(&m(&[vec![3.0, 1.0], vec![0.0, 1.0]]), ExtIndex::Two, ExtIndex::Two, 1e-8);
        assert!(!r.holds && r.note.is_some());
    }
}
