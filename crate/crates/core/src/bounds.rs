//! How far `‖A‖_{r,s}` can exceed `‖A‖_{p,q}`.
//!
//! For an `n × m` matrix,
//! `‖A‖_{r,s} ≤ m^{[1/p − 1/r]_+} · n^{[1/s − 1/q]_+} · ‖A‖_{p,q}`.
//! This module evaluates the factor, checks the inequality (and whether it is
//! tight) on concrete matrices, and provides the companion facts used
//! elsewhere: the adjoint identity `‖A*‖_{q*,p*} = ‖A‖_{p,q}`, monotonicity in
//! each exponent, the sign rule that carries equality from one `(r, s)` to
//! another, and a rigorous upper bound on `‖A‖_{p,q}`.

use crate::index::{positive_part, ExtIndex, Sign};
use crate::matrix::Matrix;
use crate::norms::{induced_norm, norm_closed_form, norm_inf_enumerate, Certainty, NormOptions, REAL_ENUMERATION_LIMIT};
use crate::vector::Field;
use crate::{Error, DEFAULT_ESTIMATE_TOL};

/// `m^{[1/p − 1/r]_+} · n^{[1/s − 1/q]_+}`, with `1/∞ = 0`.
pub fn bound_factor(p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex, m: usize, n: usize) -> f64 {
    let em = positive_part(p.recip() - r.recip());
    let en = positive_part(s.recip() - q.recip());
    (m as f64).powf(em) * (n as f64).powf(en)
}

/// Both sides of the bound for one matrix.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// `‖A‖_{r,s}`.
    pub lhs: f64,
    pub factor: f64,
    /// `‖A‖_{p,q}`.
    pub rhs_norm: f64,
    /// `factor·rhs_norm − lhs`.
    pub slack: f64,
    /// `|slack| ≤ tol·factor·rhs_norm`.
    pub equality: bool,
    /// Tolerance actually applied: the requested one on exact paths, at
    /// least [`DEFAULT_ESTIMATE_TOL`] when either norm is estimated.
    pub tol: f64,
    pub lhs_certainty: Certainty,
    pub rhs_certainty: Certainty,
}

impl BoundReport {
    pub fn bound(&self) -> f64 {
        self.factor * self.rhs_norm
    }

    /// `lhs / bound`, or 1 when both vanish.
    pub fn ratio(&self) -> f64 {
        let b = self.bound();
        if b == 0.0 {
            if self.lhs == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            self.lhs / b
        }
    }

    pub fn certainty(&self) -> Certainty {
        self.lhs_certainty.weakest(self.rhs_certainty)
    }
}

/// Evaluates the bound with default norm settings.
pub fn check_inequality(a: &Matrix, p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex, tol: f64) -> BoundReport {
    check_inequality_with(a, p, q, r, s, tol, &NormOptions::default())
}

pub fn check_inequality_with(
    a: &Matrix,
    p: ExtIndex,
    q: ExtIndex,
    r: ExtIndex,
    s: ExtIndex,
    tol: f64,
    opts: &NormOptions,
) -> BoundReport {
    let lhs = induced_norm(a, r, s, opts);
    let rhs = induced_norm(a, p, q, opts);
    report(a, p, q, r, s, tol, (lhs.value, lhs.certainty), (rhs.value, rhs.certainty))
}

/// Builds a report from norms computed elsewhere.
#[allow(clippy::too_many_arguments)]
pub fn report(
    a: &Matrix,
    p: ExtIndex,
    q: ExtIndex,
    r: ExtIndex,
    s: ExtIndex,
    tol: f64,
    lhs: (f64, Certainty),
    rhs: (f64, Certainty),
) -> BoundReport {
    let factor = bound_factor(p, q, r, s, a.cols(), a.rows());
    let exact = lhs.1.is_exact() && rhs.1.is_exact();
    let tol = if exact { tol } else { tol.max(DEFAULT_ESTIMATE_TOL) };
    let slack = factor * rhs.0 - lhs.0;
    BoundReport {
        lhs: lhs.0,
        factor,
        rhs_norm: rhs.0,
        slack,
        equality: slack.abs() <= tol * factor * rhs.0,
        tol,
        lhs_certainty: lhs.1,
        rhs_certainty: rhs.1,
    }
}

/// Outcome of comparing `‖A‖_{p,q}` with `‖A*‖_{q*,p*}`.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub holds: bool,
    pub primal: f64,
    pub dual: f64,
    pub certainty: Certainty,
}

/// Checks `‖A*‖_{q*,p*} = ‖A‖_{p,q}` within `tol` (relative), widened by the
/// estimate tolerance when either side is estimated.
pub fn duality_check(a: &Matrix, p: ExtIndex, q: ExtIndex, tol: f64) -> DualityReport {
    duality_check_with(a, p, q, tol, &NormOptions::default())
}

pub fn duality_check_with(a: &Matrix, p: ExtIndex, q: ExtIndex, tol: f64, opts: &NormOptions) -> DualityReport {
    let primal = induced_norm(a, p, q, opts);
    let dual = induced_norm(&a.adjoint(), q.conjugate(), p.conjugate(), opts);
    let certainty = primal.certainty.weakest(dual.certainty);
    let tol = if certainty.is_exact() { tol } else { tol.max(DEFAULT_ESTIMATE_TOL) };
    let scale = primal.value.max(dual.value);
    DualityReport {
        holds: (primal.value - dual.value).abs() <= tol * scale,
        primal: primal.value,
        dual: dual.value,
        certainty,
    }
}

fn check_sorted(grid: &[ExtIndex]) -> Result<(), Error> {
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("exponent grid must be sorted ascending".into()));
    }
    Ok(())
}

/// For fixed `s`, checks that `‖A‖_{r,s}` is nondecreasing and
/// `m^{1/r}‖A‖_{r,s}` nonincreasing along the ascending `r_grid`, each up to
/// a relative slack of `tol`.
pub fn monotonicity_check(a: &Matrix, s: ExtIndex, r_grid: &[ExtIndex], tol: f64, opts: &NormOptions) -> Result<bool, Error> {
    check_sorted(r_grid)?;
    let m = a.cols() as f64;
    let vals: Vec<(f64, f64)> = r_grid
        .iter()
        .map(|&r| {
            let v = induced_norm(a, r, s, opts).value;
            (v, m.powf(r.recip()) * v)
        })
        .collect();
    Ok(vals.windows(2).all(|w| {
        let (v0, g0) = w[0];
        let (v1, g1) = w[1];
        v1 >= v0 * (1.0 - tol) && g1 <= g0 * (1.0 + tol)
    }))
}

/// For fixed `r`, checks that `n^{−1/s}‖A‖_{r,s}` is nondecreasing and
/// `‖A‖_{r,s}` nonincreasing along the ascending `s_grid`.
pub fn monotonicity_check_s(a: &Matrix, r: ExtIndex, s_grid: &[ExtIndex], tol: f64, opts: &NormOptions) -> Result<bool, Error> {
    check_sorted(s_grid)?;
    let n = a.rows() as f64;
    let vals: Vec<(f64, f64)> = s_grid
        .iter()
        .map(|&s| {
            let v = induced_norm(a, r, s, opts).value;
            (v, v / n.powf(s.recip()))
        })
        .collect();
    Ok(vals.windows(2).all(|w| {
        let (v0, g0) = w[0];
        let (v1, g1) = w[1];
        v1 <= v0 * (1.0 + tol) && g1 >= g0 * (1.0 - tol)
    }))
}

/// Whether equality at `(r, s)` carries over to `(r2, s2)`: true iff
/// `sgn(p − r2) = sgn(p − r)` and `sgn(q − s2) = sgn(q − s)`.
pub fn prop3_transfer(p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex, r2: ExtIndex, s2: ExtIndex) -> bool {
    Sign::of_diff(p, r) == Sign::of_diff(p, r2) && Sign::of_diff(q, s) == Sign::of_diff(q, s2)
}

/// Exponent with reciprocal `t ∈ [0, 1]`.
fn from_recip(t: f64) -> ExtIndex {
    if t <= 0.0 {
        ExtIndex::Inf
    } else if t >= 1.0 {
        ExtIndex::One
    } else if (t - 0.5).abs() < 1e-15 {
        ExtIndex::Two
    } else {
        ExtIndex::new(1.0 / t).unwrap_or(ExtIndex::One)
    }
}

/// Exact `‖A‖` at `(1/p, 1/q) = (x, y)` on the edges `x = 1` or `y = 0`.
fn edge_norm(a: &Matrix, x: f64, y: f64) -> f64 {
    if x >= 1.0 {
        let q = from_recip(y);
        (0..a.cols()).map(|j| a.column_norm(j, q)).fold(0.0, f64::max)
    } else {
        let ps = from_recip(1.0 - x);
        (0..a.rows()).map(|i| a.row_norm(i, ps)).fold(0.0, f64::max)
    }
}

/// `a^{1−θ}·b^θ` with the conventions `0^0 = 1`.
fn geometric(a: f64, b: f64, theta: f64) -> f64 {
    if theta <= 0.0 {
        a
    } else if theta >= 1.0 {
        b
    } else {
        a.powf(1.0 - theta) * b.powf(theta)
    }
}

/// Rigorous upper bound on `‖A‖_{p,q}` (for either field).
///
/// Exact where a closed form or sign enumeration applies. Otherwise the
/// minimum of (a) the bound above applied from exactly computable exponent
/// pairs `(1, ·)`, `(·, ∞)` and `(2, 2)`, and (b) when `p ≤ q`, log-convex
/// interpolation of the complex norm in `(1/p, 1/q)` between those pairs. The
/// complex norm of a real matrix dominates its real norm and the exactly
/// computable pairs coincide for both fields, so both bounds hold for real
/// matrices too.
pub fn norm_upper_bound(a: &Matrix, p: ExtIndex, q: ExtIndex) -> f64 {
    if let Some(r) = norm_closed_form(a, p, q) {
        return r.value;
    }
    if p.is_inf() && a.field() == Field::Real && a.cols() <= REAL_ENUMERATION_LIMIT {
        if let Ok(r) = norm_inf_enumerate(a, q) {
            return r.value;
        }
    }
    let (m, n) = (a.cols(), a.rows());
    let mut best = f64::INFINITY;
    let mut from_exact = |p2: ExtIndex, q2: ExtIndex| {
        if let Some(r) = norm_closed_form(a, p2, q2) {
            best = best.min(bound_factor(p2, q2, p, q, m, n) * r.value);
        }
    };
    for e in [ExtIndex::One, ExtIndex::Two, ExtIndex::Inf, q] {
        from_exact(ExtIndex::One, e);
    }
    for e in [ExtIndex::One, ExtIndex::Two, ExtIndex::Inf, p] {
        from_exact(e, ExtIndex::Inf);
    }
    from_exact(ExtIndex::Two, ExtIndex::Two);

    let (x, y) = (p.recip(), q.recip());
    if y <= x && x > 0.0 {
        // Segments from (1, y0) on the left edge to (x1, 0) on the bottom edge
        // passing through (x, y); y0 ranges over [y/x, 1].
        let steps = 64;
        for k in 0..=steps {
            let y0 = y / x + (1.0 - y / x) * k as f64 / steps as f64;
            if y0 <= 0.0 {
                continue;
            }
            let theta = 1.0 - y / y0;
            let x1 = if theta > 0.0 { (x - (1.0 - theta)) / theta } else { 0.0 };
            let x1 = x1.clamp(0.0, 1.0);
            let v = geometric(edge_norm(a, 1.0, y0), edge_norm(a, x1, 0.0), theta);
            best = best.min(v);
        }
        // Segment from (1/2, 1/2) through (x, y) to the edge beyond.
        let (dx, dy) = (x - 0.5, y - 0.5);
        if dx.abs() + dy.abs() > 1e-12 {
            let t_right = if dx > 0.0 { 0.5 / dx } else { f64::INFINITY };
            let t_bottom = if dy < 0.0 { 0.5 / -dy } else { f64::INFINITY };
            let t = t_right.min(t_bottom);
            if t.is_finite() && t >= 1.0 {
                let (ex, ey) = ((0.5 + t * dx).clamp(0.0, 1.0), (0.5 + t * dy).clamp(0.0, 1.0));
                let two = norm_closed_form(a, ExtIndex::Two, ExtIndex::Two).map_or(f64::INFINITY, |r| r.value);
                best = best.min(geometric(two, edge_norm(a, ex, ey), 1.0 / t));
            }
        }
    }
    // Guard against rounding in the powers above.
    best * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::norm_bruteforce;
    use crate::DEFAULT_TOL;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn idx(p: f64) -> ExtIndex {
        ExtIndex::new(p).unwrap()
    }

    fn rot(field: Field) -> Matrix {
        Matrix::from_real_rows(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap().with_field(field).unwrap()
    }

    #[test]
    fn factor_examples() {
        let (one, two, inf) = (ExtIndex::One, ExtIndex::Two, ExtIndex::Inf);
        assert_relative_eq!(bound_factor(two, two, inf, one, 2, 2), 2.0, max_relative = 1e-15);
        assert_eq!(bound_factor(two, two, one, inf, 7, 4), 1.0);
        assert_eq!(bound_factor(one, one, inf, inf, 3, 5), 3.0);
    }

    #[test]
    fn inequality_examples() {
        let (one, two, inf) = (ExtIndex::One, ExtIndex::Two, ExtIndex::Inf);
        let rep = check_inequality(&rot(Field::Complex), two, two, inf, one, DEFAULT_TOL);
        assert!(rep.equality);
        assert_relative_eq!(rep.lhs, 2f64.powf(1.5), max_relative = 1e-9);

        let rep = check_inequality(&rot(Field::Real), two, two, inf, one, DEFAULT_TOL);
        assert!(!rep.equality);
        assert_eq!(rep.lhs, 2.0);
        assert_eq!(rep.certainty(), Certainty::ExactEnumeration);

        let id = Matrix::identity(3, Field::Real);
        let rep = check_inequality(&id, idx(1.5), idx(3.0), idx(1.5), idx(3.0), DEFAULT_TOL);
        assert!(rep.equality);
        assert_eq!(rep.factor, 1.0);
    }

    #[test]
    fn duality_examples() {
        let r = duality_check(&rot(Field::Real), ExtIndex::One, ExtIndex::One, DEFAULT_TOL);
        assert!(r.holds);
        assert_eq!((r.primal, r.dual), (2.0, 2.0));
        let d = Matrix::from_real_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let r = duality_check(&d, ExtIndex::Two, ExtIndex::Two, DEFAULT_TOL);
        assert!(r.holds);
        assert_relative_eq!(r.primal, 3.0, max_relative = 1e-12);
        let a = Matrix::from_real_rows(&[vec![0.4, -1.1], vec![2.0, 0.3], vec![-0.7, 0.9]]).unwrap();
        let r = duality_check(&a, ExtIndex::One, ExtIndex::Two, 1e-9);
        assert!(r.holds);
        assert!(r.certainty.is_exact());
    }

    #[test]
    fn monotonicity_examples() {
        let opts = NormOptions::default();
        let grid = [ExtIndex::One, ExtIndex::Two, ExtIndex::Inf];
        let id = Matrix::identity(2, Field::Real);
        assert!(monotonicity_check(&id, ExtIndex::Two, &grid, 1e-9, &opts).unwrap());
        let grid = [ExtIndex::Two, idx(4.0), ExtIndex::Inf];
        assert!(monotonicity_check(&rot(Field::Complex), ExtIndex::One, &grid, 1e-6, &opts).unwrap());
        assert!(monotonicity_check(&id, ExtIndex::Two, &[ExtIndex::Inf, ExtIndex::One], 1e-9, &opts).is_err());
        let grid = [ExtIndex::One, idx(1.5), ExtIndex::Two, idx(3.0), ExtIndex::Inf];
        assert!(monotonicity_check_s(&rot(Field::Real), idx(3.0), &grid, 1e-6, &opts).unwrap());
    }

    #[test]
    fn transfer_examples() {
        let (two, inf) = (ExtIndex::Two, ExtIndex::Inf);
        assert!(prop3_transfer(two, two, ExtIndex::One, idx(3.0), idx(1.5), inf));
        assert!(!prop3_transfer(two, two, ExtIndex::One, idx(3.0), idx(3.0), idx(3.0)));
        assert!(prop3_transfer(two, two, idx(1.7), idx(1.2), idx(1.7), idx(1.2)));
    }

    #[test]
    fn upper_bound_dominates_oracle() {
        let a = Matrix::from_complex_rows(&[
            vec![Complex64::new(0.3, -0.2), Complex64::new(1.0, 0.4), Complex64::new(-0.5, 0.0)],
            vec![Complex64::new(0.0, 0.9), Complex64::new(-0.2, 0.1), Complex64::new(0.6, 0.6)],
        ])
        .unwrap();
        for (p, q) in [(1.5, 3.0), (3.0, 1.5), (4.0, 4.0), (1.2, 1.3), (f64::INFINITY, 1.5)] {
            let (p, q) = (idx(p), idx(q));
            let up = norm_upper_bound(&a, p, q);
            let low = norm_bruteforce(&a, p, q, 20_000, 1).value;
            assert!(up >= low * (1.0 - 1e-12), "({p},{q}): upper {up} < lower {low}");
        }
    }

    #[test]
    fn upper_bound_is_tight_for_isometries() {
        let id = Matrix::identity(3, Field::Real);
        for (p, q) in [(1.5, 3.0), (1.2, 1.7), (2.5, 4.0)] {
            assert_relative_eq!(norm_upper_bound(&id, idx(p), idx(q)), 1.0, max_relative = 1e-9);
        }
    }
}
