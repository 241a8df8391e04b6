//! Membership in the four equality classes.
//!
//! For fixed `(p, q)` the bound `‖A‖_{r,s} ≤ m^{[1/p−1/r]_+}·n^{[1/s−1/q]_+}·‖A‖_{p,q}`
//! depends on `(r, s)` only through the signs of `p − r` and `q − s`, so
//! equality at one pair of a sign quadrant means equality on the whole
//! quadrant. Each quadrant gives a class, named after its extremal pair:
//!
//! | class      | quadrant       | decided by                         |
//! |------------|----------------|------------------------------------|
//! | `E_1inf`   | `r < p, s > q` | isolated maximal entries           |
//! | `E_11`     | `r < p, s < q` | constant-modulus maximal columns   |
//! | `E_infinf` | `r > p, s > q` | the same for rows (via `A*`)       |
//! | `E_inf1`   | `r > p, s < q` | unimodular eigenvectors of `A*A`   |
//!
//! Every check returns a [`ClassVerdict`]: a yes/no/undetermined answer, the
//! conditions that were tested with their measured values, and a certificate
//! where one exists. Verdicts that rest on an estimated norm are marked
//! [`VerdictCertainty::EstimateBacked`].

mod columns;
mod isolated;
mod search;
mod singular;
mod unimodular;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bounds::{bound_factor, norm_upper_bound};
use crate::index::{ExtIndex, Sign};
use crate::matrix::Matrix;
use crate::norms::{induced_norm, Certainty, NormOptions, NormResult};
use crate::svd::SvdFactors;
use crate::vector::{in_k_class, KClass, Vector};
use crate::{Error, DEFAULT_ESTIMATE_TOL, DEFAULT_TOL};

pub use columns::{check_e11, check_einfinf, sufficient_4prime, sufficient_5prime};
pub use isolated::{check_e1inf, sufficient_3prime};
pub use singular::check_theorem2;
pub use unimodular::{check_einf1, dav_normal_form, lemma31_eigencheck, DavFailure, DavForm};

/// The four equality classes, labelled by their extremal `(r, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassId {
    E1Inf,
    E11,
    EInfInf,
    EInf1,
}

impl ClassId {
    pub const ALL: [ClassId; 4] = [ClassId::E1Inf, ClassId::E11, ClassId::EInfInf, ClassId::EInf1];

    pub fn label(self) -> &'static str {
        match self {
            ClassId::E1Inf => "E_1inf",
            ClassId::E11 => "E_11",
            ClassId::EInfInf => "E_infinf",
            ClassId::EInf1 => "E_inf1",
        }
    }

    /// The pair `(r, s)` with entries in `{1, ∞}` that names the class.
    pub fn extremal_pair(self) -> (ExtIndex, ExtIndex) {
        match self {
            ClassId::E1Inf => (ExtIndex::One, ExtIndex::Inf),
            ClassId::E11 => (ExtIndex::One, ExtIndex::One),
            ClassId::EInfInf => (ExtIndex::Inf, ExtIndex::Inf),
            ClassId::EInf1 => (ExtIndex::Inf, ExtIndex::One),
        }
    }

    /// Signs of `(p − r, q − s)` inside the class's quadrant.
    pub fn signs(self) -> (Sign, Sign) {
        match self {
            ClassId::E1Inf => (Sign::Positive, Sign::Negative),
            ClassId::E11 => (Sign::Positive, Sign::Positive),
            ClassId::EInfInf => (Sign::Negative, Sign::Negative),
            ClassId::EInf1 => (Sign::Negative, Sign::Positive),
        }
    }

    /// The class whose quadrant contains `(r, s)`; `None` when `r = p` or
    /// `s = q`.
    pub fn from_quadrant(p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex) -> Option<ClassId> {
        let key = (Sign::of_diff(p, r), Sign::of_diff(q, s));
        ClassId::ALL.into_iter().find(|c| c.signs() == key)
    }

    /// Whether some `(r, s)` lies strictly inside the quadrant. When it does
    /// not, every matrix belongs to the class.
    pub fn quadrant_nonempty(self, p: ExtIndex, q: ExtIndex) -> bool {
        let (sp, sq) = self.signs();
        let r_ok = match sp {
            Sign::Positive => !p.is_one(),
            _ => !p.is_inf(),
        };
        let s_ok = match sq {
            Sign::Positive => !q.is_one(),
            _ => !q.is_inf(),
        };
        r_ok && s_ok
    }

    /// Up to two `(r, s)` points inside the quadrant: the extremal pair and,
    /// when distinct from it, the harmonic midpoint between it and `(p, q)`.
    pub fn representative_points(self, p: ExtIndex, q: ExtIndex) -> Vec<(ExtIndex, ExtIndex)> {
        if !self.quadrant_nonempty(p, q) {
            return Vec::new();
        }
        let (r0, s0) = self.extremal_pair();
        let mid = (ExtIndex::harmonic_mid(p, r0), ExtIndex::harmonic_mid(q, s0));
        let mut out = vec![(r0, s0)];
        if mid != (r0, s0) {
            out.push(mid);
        }
        out
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key: String = s.chars().filter(|c| *c != '_' && *c != ' ').collect::<String>().to_ascii_lowercase();
        match key.as_str() {
            "e1inf" => Ok(ClassId::E1Inf),
            "e11" => Ok(ClassId::E11),
            "einfinf" => Ok(ClassId::EInfInf),
            "einf1" => Ok(ClassId::EInf1),
            _ => Err(Error::InvalidInput(format!("unknown class '{s}' (expected E_1inf, E_11, E_infinf or E_inf1)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Yes,
    No,
    Undetermined,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictCertainty {
    /// Every step is exact arithmetic, exhaustive search or a proven bound.
    Exact,
    /// Some step relies on an estimated norm or a heuristic search.
    EstimateBacked,
}

impl VerdictCertainty {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictCertainty::Exact => "exact",
            VerdictCertainty::EstimateBacked => "estimate-backed",
        }
    }
}

/// One tested condition with the quantities it was decided on.
#[derive(Debug, Clone)]
pub struct Condition {
    pub name: String,
    pub satisfied: bool,
    pub values: Vec<(String, f64)>,
}

impl Condition {
    pub fn new(name: impl Into<String>, satisfied: bool) -> Self {
        Condition { name: name.into(), satisfied, values: Vec::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: f64) -> Self {
        self.values.push((key.into(), value));
        self
    }
}

/// Evidence supporting a verdict.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// A vector attaining the norm at `(p, q)` with the structure the class requires.
    Maximizer(Vector),
    /// An SVD whose leading singular vectors lie in the required K-classes.
    Svd(SvdFactors),
    /// A unimodular eigenvector of `A*A` with `|(Av)_i| = τ`.
    Eigenvector { v: Vector, lambda: f64, tau: f64 },
}

#[derive(Debug, Clone)]
pub struct ClassVerdict {
    /// What was checked, e.g. `E_11(2,2)`.
    pub subject: String,
    pub member: Membership,
    pub conditions: Vec<Condition>,
    pub certificate: Option<Certificate>,
    pub certainty: VerdictCertainty,
}

impl ClassVerdict {
    fn new(subject: String) -> Self {
        ClassVerdict {
            subject,
            member: Membership::Undetermined,
            conditions: Vec::new(),
            certificate: None,
            certainty: VerdictCertainty::Exact,
        }
    }

    fn decide(mut self, member: Membership, certainty: VerdictCertainty) -> Self {
        self.member = member;
        self.certainty = certainty;
        self
    }

    fn push(&mut self, c: Condition) {
        self.conditions.push(c);
    }

    pub fn is_yes(&self) -> bool {
        self.member == Membership::Yes
    }
}

/// Entry and line-sum summaries of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoSigmaTau {
    /// Largest entry modulus, `‖A‖_{1,∞}`.
    pub rho: f64,
    /// Largest column ℓ1 norm, `‖A‖_{1,1}`.
    pub sigma_col: f64,
    /// Largest row ℓ1 norm, `‖A‖_{∞,∞}`.
    pub sigma_row: f64,
    /// Common modulus of the entries of `Av`, when `v` is given and they agree.
    pub tau: Option<f64>,
}

pub fn rho_sigma_tau(a: &Matrix, v: Option<&Vector>) -> RhoSigmaTau {
    let tau = v.and_then(|v| {
        let y = a.apply(v.entries());
        in_k_class(&y, KClass::ConstantModulus, DEFAULT_TOL).then(|| y.iter().map(|z| z.norm()).sum::<f64>() / y.len() as f64)
    });
    RhoSigmaTau { rho: a.max_abs(), sigma_col: a.max_column_l1(), sigma_row: a.max_row_l1(), tau }
}

/// Tolerances and search settings shared by the checks.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Relative tolerance for exact comparisons and structural conditions.
    pub tol: f64,
    /// Relative tolerance when a comparison rests on an estimated norm.
    pub estimate_tol: f64,
    pub seed: u64,
    /// Brute-force samples added to estimated norms; zero disables.
    pub oracle_budget: usize,
    /// Witnesses drawn from the maximiser probe for eigenvector searches.
    pub probe_count: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { tol: DEFAULT_TOL, estimate_tol: DEFAULT_ESTIMATE_TOL, seed: 0, oracle_budget: 0, probe_count: 8 }
    }
}

impl CheckOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn norm_options(&self) -> NormOptions {
        NormOptions::default().with_seed(self.seed).with_oracle_budget(self.oracle_budget)
    }
}

/// Lower bound (with witness) and rigorous upper bound on a norm.
pub(crate) struct NormEvidence {
    pub lower: NormResult,
    pub upper: f64,
}

pub(crate) fn norm_evidence(a: &Matrix, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> NormEvidence {
    let lower = induced_norm(a, p, q, &opts.norm_options());
    let upper = if lower.certainty.is_exact() { lower.value } else { norm_upper_bound(a, p, q).max(lower.value) };
    NormEvidence { lower, upper }
}

/// Decides `‖·‖ ≤ target`.
///
/// Yes (exact) when the upper bound clears `target·(1+tol)`; no (exact) when
/// the norm is known exactly above that, or a witness exceeds
/// `target·(1+estimate_tol)`. In between, a lower-bound estimate within `tol`
/// of the target gives an estimate-backed yes. With `strict`, the estimate
/// must instead sit below `target·(1−estimate_tol)`, and anything closer is
/// undetermined.
pub(crate) fn decide_at_most(ev: &NormEvidence, target: f64, opts: &CheckOptions, strict: bool) -> (Membership, VerdictCertainty) {
    use Membership::*;
    use VerdictCertainty::*;
    let hi = target * (1.0 + opts.tol);
    if ev.upper <= hi {
        return (Yes, Exact);
    }
    if ev.lower.certainty.is_exact() || ev.lower.value > target * (1.0 + opts.estimate_tol) {
        return (No, Exact);
    }
    let v = ev.lower.value;
    if strict {
        if v <= target * (1.0 - opts.estimate_tol) {
            (Yes, EstimateBacked)
        } else {
            (Undetermined, EstimateBacked)
        }
    } else if v <= hi {
        (Yes, EstimateBacked)
    } else {
        (Undetermined, EstimateBacked)
    }
}

fn norm_condition(name: &str, ev: &NormEvidence, target: f64, member: Membership) -> Condition {
    Condition::new(name, member == Membership::Yes)
        .with("norm_lower", ev.lower.value)
        .with("norm_upper", ev.upper)
        .with("target", target)
}

fn subject(class: ClassId, p: ExtIndex, q: ExtIndex) -> String {
    format!("{}({},{})", class.label(), p, q)
}

/// Verdict for matrices decided before any structure is examined: the zero
/// matrix and classes whose quadrant is empty.
fn trivial_verdict(a: &Matrix, class: ClassId, p: ExtIndex, q: ExtIndex) -> Option<ClassVerdict> {
    let mut v = ClassVerdict::new(subject(class, p, q));
    if a.is_zero() {
        v.push(Condition::new("zero matrix", true));
        return Some(v.decide(Membership::Yes, VerdictCertainty::Exact));
    }
    if !class.quadrant_nonempty(p, q) {
        v.push(Condition::new("quadrant contains no (r,s) off (p,q): holds vacuously", true));
        return Some(v.decide(Membership::Yes, VerdictCertainty::Exact));
    }
    None
}

/// Dispatches to the check for `class`.
pub fn check_class(a: &Matrix, class: ClassId, p: ExtIndex, q: ExtIndex, opts: &CheckOptions) -> Result<ClassVerdict, Error> {
    match class {
        ClassId::E1Inf => Ok(check_e1inf(a, p, q, opts)),
        ClassId::E11 => Ok(check_e11(a, p, q, opts)),
        ClassId::EInfInf => Ok(check_einfinf(a, p, q, opts)),
        ClassId::EInf1 => check_einf1(a, p, q, opts),
    }
}

/// Whether the bound is attained at `(r, s)` against `(p, q)`.
///
/// Off both lines `r = p` and `s = q` this is class membership; at
/// `p = q = 2` it is the singular-vector test; otherwise the two norms are
/// compared directly.
pub fn check_pair(a: &Matrix, p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex, opts: &CheckOptions) -> Result<ClassVerdict, Error> {
    if let Some(class) = ClassId::from_quadrant(p, q, r, s) {
        return check_class(a, class, p, q, opts);
    }
    if p.is_two() && q.is_two() {
        return check_theorem2(a, r, s, opts);
    }
    Ok(check_equality_direct(a, p, q, r, s, opts))
}

/// Compares `‖A‖_{r,s}` with `factor·‖A‖_{p,q}` using bounds on both norms.
pub fn check_equality_direct(a: &Matrix, p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex, opts: &CheckOptions) -> ClassVerdict {
    use Membership::*;
    use VerdictCertainty::*;
    let mut v = ClassVerdict::new(format!("equality at ({r},{s}) against ({p},{q})"));
    let f = bound_factor(p, q, r, s, a.cols(), a.rows());
    let lhs = norm_evidence(a, r, s, opts);
    let rhs = norm_evidence(a, p, q, opts);
    let (l_lo, l_hi) = (lhs.lower.value, lhs.upper);
    let (b_lo, b_hi) = (f * rhs.lower.value, f * rhs.upper);
    let exact = lhs.lower.certainty.is_exact() && rhs.lower.certainty.is_exact();
    let (member, certainty) = if exact {
        if (b_lo - l_lo).abs() <= opts.tol * b_lo {
            (Yes, Exact)
        } else {
            (No, Exact)
        }
    } else if l_lo >= b_hi * (1.0 - opts.tol) {
        (Yes, Exact)
    } else if l_hi < b_lo * (1.0 - opts.estimate_tol) {
        (No, Exact)
    } else if (l_lo - b_lo).abs() <= opts.estimate_tol * b_lo {
        (Yes, EstimateBacked)
    } else {
        (Undetermined, EstimateBacked)
    };
    v.push(
        Condition::new("norm_rs = factor * norm_pq", member == Yes)
            .with("norm_rs_lower", l_lo)
            .with("norm_rs_upper", l_hi)
            .with("factor", f)
            .with("norm_pq_lower", rhs.lower.value)
            .with("norm_pq_upper", rhs.upper),
    );
    if member == Yes && lhs.lower.certainty != Certainty::LowerBoundEstimate {
        v.certificate = Some(Certificate::Maximizer(lhs.lower.witness.clone()));
    }
    v.decide(member, certainty)
}

pub(crate) fn phase(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r > 0.0 {
        z / r
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Outcome of a sufficient condition.
#[derive(Debug, Clone)]
pub struct SufficientReport {
    pub holds: bool,
    /// Left side of the inequality as evaluated.
    pub lhs: f64,
    /// Right side it is compared with.
    pub rhs: f64,
    /// Left side of the alternative (as printed in the literature) form, when
    /// it differs from the one used for the decision.
    pub printed_lhs: Option<f64>,
    pub note: Option<String>,
}

impl SufficientReport {
    fn not_applicable(note: impl Into<String>) -> Self {
        SufficientReport { holds: false, lhs: f64::NAN, rhs: f64::NAN, printed_lhs: None, note: Some(note.into()) }
    }

    /// Whether the alternative form reaches the same verdict.
    pub fn printed_agrees(&self) -> Option<bool> {
        self.printed_lhs.map(|l| (l <= self.rhs) == self.holds)
    }
}
