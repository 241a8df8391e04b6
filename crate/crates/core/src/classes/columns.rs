//! `E_11` (equality for `r < p`, `s < q`) and, through the adjoint,
//! `E_infinf` (`r > p`, `s > q`).
//!
//! With `σ = ‖A‖_{1,1}` the largest column ℓ1 norm, a member of `E_11(p, q)`
//! has every σ-column of constant modulus `σ/n` and orthogonal to all other
//! columns, and satisfies `σ = n^{1−1/q}·‖A‖_{p,q}`; the last condition alone
//! is equivalent to membership. For `p > 2` the only members have a single
//! nonzero column. `A ∈ E_infinf(p, q)` exactly when `A* ∈ E_11(q*, p*)`.

use num_complex::Complex64;

use super::{decide_at_most, norm_condition, norm_evidence, phase, subject, trivial_verdict, Certificate, CheckOptions, ClassId, ClassVerdict, Condition, Membership, SufficientReport, VerdictCertainty};
use crate::index::ExtIndex;
use crate::matrix::Matrix;
use crate::vector::{in_k_class, norm_of, KClass, Vector};

/// The extremal columns of a matrix and how far they are from the required
/// structure.
struct ColumnStructure {
    sigma: f64,
    extremal: Vec<usize>,
    /// Largest relative deviation of an extremal-column entry modulus from `σ/n`.
    modulus_dev: f64,
    /// Largest `|⟨c_j, c_k⟩| / (‖c_j‖‖c_k‖)` over extremal `j` and `k ≠ j`.
    max_cosine: f64,
}

impl ColumnStructure {
    fn of(a: &Matrix, tol: f64) -> Self {
        let (n, m) = (a.rows(), a.cols());
        let l1: Vec<f64> = (0..m).map(|j| a.column_norm(j, ExtIndex::One)).collect();
        let sigma = l1.iter().copied().fold(0.0, f64::max);
        let extremal: Vec<usize> = (0..m).filter(|&j| l1[j] >= sigma * (1.0 - tol)).collect();
        let level = sigma / n as f64;
        let mut modulus_dev: f64 = 0.0;
        let mut max_cosine: f64 = 0.0;
        for &j in &extremal {
            let cj = a.column(j);
            for z in &cj {
                modulus_dev = modulus_dev.max((z.norm() - level).abs() / level);
            }
            let nj = norm_of(&cj, ExtIndex::Two);
            for k in (0..m).filter(|&k| k != j) {
                let ck = a.column(k);
                let nk = norm_of(&ck, ExtIndex::Two);
                if nk == 0.0 {
                    continue;
                }
                let dot: Complex64 = cj.iter().zip(&ck).map(|(x, y)| x.conj() * y).sum();
                max_cosine = max_cosine.max(dot.norm() / (nj * nk));
            }
        }
        ColumnStructure { sigma, extremal, modulus_dev, max_cosine }
    }

    fn constant_modulus(&self, tol: f64) -> bool {
        self.modulus_dev <= tol
    }

    fn orthogonal(&self, tol: f64) -> bool {
        self.max_cosine <= tol
    }

    /// `‖C‖_{1,1}` for `C` = the matrix with the extremal columns removed.
    fn remainder_l1(&self, a: &Matrix) -> f64 {
        (0..a.cols())
            .filter(|j| !self.extremal.contains(j))
            .map(|j| a.column_norm(j, ExtIndex::One))
            .fold(0.0, f64::max)
    }
}

/// Text fragments that differ between the column form and its row dual.
struct Wording {
    line: &'static str,
    big_exponent: &'static str,
    iii: &'static str,
}

const COLUMNS: Wording = Wording { line: "column", big_exponent: "p > 2", iii: "(iii) sigma = n^{1-1/q} ||A||_{p,q}" };
const ROWS: Wording = Wording { line: "row", big_exponent: "q < 2", iii: "(iii) sigma = m^{1/p} ||A||_{p,q}" };

/// Core of both checks, run on `b` (= `A` or `A*`) at exponents `(p, q)` of `b`.
fn column_verdict(b: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions, mut v: ClassVerdict, w: &Wording) -> (ClassVerdict, Option<usize>) {
    let tol = opts.tol;
    let st = ColumnStructure::of(b, tol);
    let line = w.line;

    if p > ExtIndex::Two {
        let small = tol * b.max_abs();
        let nonzero: Vec<usize> = (0..b.cols()).filter(|&j| b.column(j).iter().any(|z| z.norm() > small)).collect();
        let ok = nonzero.len() == 1 && in_k_class(&b.column(nonzero[0]), KClass::ConstantModulus, tol);
        v.push(
            Condition::new(format!("{}: a single nonzero {line}, with entries of equal modulus", w.big_exponent), ok)
                .with(format!("nonzero_{line}s"), nonzero.len() as f64),
        );
        let member = if ok { Membership::Yes } else { Membership::No };
        return (v.decide(member, VerdictCertainty::Exact), ok.then(|| nonzero[0]));
    }

    let cm = st.constant_modulus(tol);
    v.push(
        Condition::new(format!("(i) every {line} of maximal l1 norm sigma has entries of modulus sigma/{}", if line == "column" { "n" } else { "m" }), cm)
            .with("sigma", st.sigma)
            .with("max_relative_deviation", st.modulus_dev),
    );
    let orth = st.orthogonal(tol);
    v.push(Condition::new(format!("(ii) each such {line} is orthogonal to every other {line}"), orth).with("max_cosine", st.max_cosine));
    if !cm || !orth {
        return (v.decide(Membership::No, VerdictCertainty::Exact), None);
    }

    let extremal = Some(st.extremal[0]);
    let suff = sufficient_4prime(b, p, q, tol);
    if suff.holds {
        v.push(Condition::new(format!("{} via the sufficient inequality", w.iii), true).with("lhs", suff.lhs).with("rhs", suff.rhs));
        return (v.decide(Membership::Yes, VerdictCertainty::Exact), extremal);
    }
    let n = b.rows() as f64;
    let target = n.powf(q.recip() - 1.0) * st.sigma;
    let ev = norm_evidence(b, p, q, opts);
    let (member, certainty) = decide_at_most(&ev, target, opts, false);
    v.push(norm_condition(w.iii, &ev, target, member));
    (v.decide(member, certainty), extremal.filter(|_| member == Membership::Yes))
}

pub fn check_e11(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> ClassVerdict {
    if let Some(v) = trivial_verdict(a, ClassId::E11, p, q) {
        return v;
    }
    let v = ClassVerdict::new(subject(ClassId::E11, p, q));
    let (mut v, col) = column_verdict(a, p, q, opts, v, &COLUMNS);
    if let Some(j) = col {
        v.certificate = Some(Certificate::Maximizer(Vector::unit(a.cols(), j, a.field()).expect("column in range")));
    }
    v
}

/// Checked as `E_11` of the adjoint at `(q*, p*)`; the certificate is the
/// phase-aligned vector of an extremal row.
pub fn check_einfinf(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> ClassVerdict {
    if let Some(v) = trivial_verdict(a, ClassId::EInfInf, p, q) {
        return v;
    }
    let v = ClassVerdict::new(subject(ClassId::EInfInf, p, q));
    let (mut v, row) = column_verdict(&a.adjoint(), q.conjugate(), p.conjugate(), opts, v, &ROWS);
    if let Some(i) = row {
        let x: Vec<Complex64> = a.row(i).iter().map(|z| phase(*z).conj()).collect();
        let len = (a.cols() as f64).powf(p.recip());
        v.certificate = Some(Certificate::Maximizer(Vector::new(x.into_iter().map(|z| z / len).collect(), a.field()).expect("finite")));
    }
    v
}

/// `base^{1/(2−p)}` from `ln base`, with the limits 0, 1, ∞ at `p = 2`.
fn power_over_two_minus(log_base: f64, two_minus_p: f64) -> f64 {
    if two_minus_p > 0.0 {
        (log_base / two_minus_p).exp()
    } else if log_base < 0.0 {
        0.0
    } else if log_base == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Corrected left side: `(2mn)^{1−1/p}·c + (2^{1−1/p} − 1)·κ`, `c = ‖C‖_{1,1}/σ`,
/// `κ = [(p/2)·n^{(p²−2p+4)/(2p)}·m^{2(p−1)/p}·c²]^{1/(2−p)}`.
fn lhs_4prime(p: f64, m: f64, n: f64, c: f64) -> f64 {
    let a = 1.0 - 1.0 / p;
    let log_inner = (p / 2.0).ln() + (p * p - 2.0 * p + 4.0) / (2.0 * p) * n.ln() + 2.0 * (p - 1.0) / p * m.ln() + 2.0 * c.ln();
    let kappa = power_over_two_minus(log_inner, 2.0 - p);
    let coeff = 2f64.powf(a) - 1.0;
    (2.0 * m * n).powf(a) * c + if coeff == 0.0 { 0.0 } else { coeff * kappa }
}

/// The same quantity with the exponents as they appear in print:
/// `n^{(−3p²+2p+4)/(2p(2−p))}·m^{−2(p−1)/(2−p)}`.
fn lhs_4prime_printed(p: f64, m: f64, n: f64, c: f64) -> f64 {
    let a = 1.0 - 1.0 / p;
    let log_inner = (p / 2.0).ln() + (-3.0 * p * p + 2.0 * p + 4.0) / (2.0 * p) * n.ln() - 2.0 * (p - 1.0) * m.ln() + 2.0 * c.ln();
    let kappa = power_over_two_minus(log_inner, 2.0 - p);
    let coeff = 2f64.powf(a) - 1.0;
    (2.0 * m * n).powf(a) * c + if coeff == 0.0 { 0.0 } else { coeff * kappa }
}

/// Sufficient test for `A ∈ E_11(p, q)` when `p ≤ 2`, `q ≤ p` and the
/// extremal columns have constant modulus and are orthogonal to the rest.
///
/// The inequality is `(2mn)^{1−1/p}·c + (2^{1−1/p} − 1)·κ ≤ 1` with
/// `c = ‖C‖_{1,1}/σ` for the matrix `C` left after removing the extremal
/// columns, and
/// `κ = (p/2)^{1/(2−p)}·n^{(p²−2p+4)/(2p(2−p))}·m^{2(p−1)/(p(2−p))}·c^{2/(2−p)}`.
/// The report also carries the left side with the exponents of the commonly
/// printed form, which uses `n^{(−3p²+2p+4)/(2p(2−p))}·m^{−2(p−1)/(2−p)}`; that
/// form follows from a sign slip and is not used for the decision.
pub fn sufficient_4prime(a: &Matrix, p: ExtIndex, q: ExtIndex, tol: f64) -> SufficientReport {
    if a.is_zero() {
        return SufficientReport::not_applicable("zero matrix");
    }
    if p > ExtIndex::Two || q > p {
        return SufficientReport::not_applicable("requires q <= p <= 2");
    }
    let st = ColumnStructure::of(a, tol);
    if !st.constant_modulus(tol) || !st.orthogonal(tol) {
        return SufficientReport::not_applicable("extremal columns lack constant modulus or orthogonality");
    }
    let c = st.remainder_l1(a) / st.sigma;
    let (m, n, pv) = (a.cols() as f64, a.rows() as f64, p.value());
    let lhs = lhs_4prime(pv, m, n, c);
    let printed = lhs_4prime_printed(pv, m, n, c);
    SufficientReport { holds: lhs <= 1.0, lhs, rhs: 1.0, printed_lhs: Some(printed), note: None }
}

/// Left side of the row form as printed, with `σ` and `‖C‖` taken as row
/// ℓ1 norms and the `n` exponent `−2(q*−1)/(2q*p)` read literally.
fn lhs_5prime_printed(p: ExtIndex, q: ExtIndex, m: f64, n: f64, c: f64) -> f64 {
    let qs = q.conjugate().value();
    let a = q.recip();
    let log_inner = (qs / 2.0).ln() + (-3.0 * qs * qs + 2.0 * qs + 4.0) / (2.0 * qs) * m.ln() + 2.0 * c.ln();
    let kappa = power_over_two_minus(log_inner, 2.0 - qs) * n.powf(-2.0 * (qs - 1.0) / (2.0 * qs) * p.recip());
    let coeff = 2f64.powf(a) - 1.0;
    (2.0 * m * n).powf(a) * c + if coeff == 0.0 { 0.0 } else { coeff * kappa }
}

/// Sufficient test for `A ∈ E_infinf(p, q)` when `q ≥ 2`, `p ≥ q` and the
/// extremal rows have constant modulus and are orthogonal to the other rows:
/// the column test applied to `A*` at `(q*, p*)`. The printed row form is
/// evaluated alongside; a differing verdict is noted in the report.
pub fn sufficient_5prime(a: &Matrix, p: ExtIndex, q: ExtIndex, tol: f64) -> SufficientReport {
    if a.is_zero() {
        return SufficientReport::not_applicable("zero matrix");
    }
    if q < ExtIndex::Two || p < q {
        return SufficientReport::not_applicable("requires 2 <= q <= p");
    }
    let adj = a.adjoint();
    let mut report = sufficient_4prime(&adj, q.conjugate(), p.conjugate(), tol);
    if report.lhs.is_nan() {
        return report;
    }
    let st = ColumnStructure::of(&adj, tol);
    let c = st.remainder_l1(&adj) / st.sigma;
    let printed = lhs_5prime_printed(p, q, a.cols() as f64, a.rows() as f64, c);
    report.printed_lhs = Some(printed);
    if (printed <= 1.0) != report.holds {
        report.note = Some(format!("printed row form gives {} (left side {printed})", if printed <= 1.0 { "true" } else { "false" }));
    }
    report
}
