mod common;

use common::{c, idx, real, separated, ternary};
use normbound::bounds::bound_factor;
use normbound::classes::{check_class, check_e11, check_e1inf, check_einfinf, check_theorem2, sufficient_3prime, sufficient_4prime, sufficient_5prime, CheckOptions, ClassId, Membership};
use normbound::generators::{gen_hadamard, gen_single_entry};
use normbound::norms::{induced_norm, norm_bruteforce, NormOptions};
use normbound::{ExtIndex, Field, Matrix};

/// The class examples: every matrix with a documented verdict.
fn curated() -> Vec<Matrix> {
    vec![
        gen_hadamard(2).unwrap(),
        real(&[vec![1.0, 1.0], vec![-1.0, 1.0]]),
        real(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).with_field(Field::Complex).unwrap(),
        real(&[vec![1.0, 1.0], vec![1.0, 1.0]]),
        real(&[vec![2.0, 0.0], vec![0.0, 1.0]]),
        real(&[vec![3.0, 0.0], vec![0.0, 1.0]]),
        real(&[vec![3.0, 1.0], vec![0.0, 1.0]]),
        real(&[vec![1.0, 1.0], vec![1.0, -1.0], vec![0.0, 0.0]]),
        real(&[vec![1.0, 0.0], vec![1.0, 0.0], vec![1.0, 0.0]]),
        gen_single_entry(2, 3, 1, 0, 4.0).unwrap(),
        Matrix::identity(2, Field::Real),
    ]
}

/// 2×2 and 3×2 random matrices. Entries are kept away from zero: a tiny
/// entry next to a peak moves the norm by less than the oracle's resolution.
fn random_suite() -> Vec<Matrix> {
    (0..100u64)
        .map(|seed| {
            let (n, m) = if seed % 2 == 0 { (2, 2) } else { (3, 2) };
            match seed % 3 {
                0 => ternary(n, m, seed),
                1 => separated(n, m, Field::Real, seed),
                _ => separated(n, m, Field::Complex, seed),
            }
        })
        .collect()
}

fn suite() -> Vec<Matrix> {
    let mut out = curated();
    out.extend(random_suite());
    out
}

/// Exact norm when available, otherwise the better of the estimator and the
/// brute-force oracle.
fn oracle_norm(a: &Matrix, p: ExtIndex, q: ExtIndex) -> f64 {
    let r = induced_norm(a, p, q, &NormOptions::default());
    if r.certainty.is_exact() {
        return r.value;
    }
    r.value.max(norm_bruteforce(a, p, q, 10_000, 7).value)
}

fn direct_equality(a: &Matrix, p: ExtIndex, q: ExtIndex, r: ExtIndex, s: ExtIndex) -> bool {
    let lhs = oracle_norm(a, r, s);
    let rhs = bound_factor(p, q, r, s, a.cols(), a.rows()) * oracle_norm(a, p, q);
    (lhs - rhs).abs() <= 1e-4 * rhs
}

const PAIRS: [(f64, f64); 4] = [(2.0, 2.0), (1.5, 3.0), (3.0, 1.5), (4.0, 4.0)];

/// Compares every decided verdict with direct equality testing at `points`.
fn compare_with_oracle(mats: &[Matrix], points: impl Fn(ClassId, ExtIndex, ExtIndex) -> Vec<(ExtIndex, ExtIndex)>) -> (usize, usize) {
    let opts = CheckOptions::default();
    let (mut decided, mut yes) = (0, 0);
    for (k, a) in mats.iter().enumerate() {
        for (pv, qv) in PAIRS {
            let (p, q) = (idx(pv), idx(qv));
            for class in ClassId::ALL {
                let v = check_class(a, class, p, q, &opts).unwrap();
                if v.member == Membership::Undetermined {
                    continue;
                }
                for (r, s) in points(class, p, q) {
                    let direct = direct_equality(a, p, q, r, s);
                    assert_eq!(v.is_yes(), direct, "matrix {k} {a:?} {} at ({r},{s}): {:?}", v.subject, v.conditions);
                }
                decided += 1;
                yes += v.is_yes() as usize;
            }
        }
    }
    (decided, yes)
}

#[test]
fn curated_verdicts_match_direct_equality_at_two_points() {
    let (decided, yes) = compare_with_oracle(&curated(), |c, p, q| c.representative_points(p, q));
    assert_eq!(decided, 11 * PAIRS.len() * 4);
    assert!(yes > 40, "only {yes} members");
}

/// Near the exponent pair the gap between a non-member's norm and the bound
/// shrinks, so random matrices are compared at the extremal pair.
#[test]
fn random_verdicts_match_direct_equality_at_extremal_pairs() {
    let (decided, _) = compare_with_oracle(&random_suite(), |c, p, q| c.representative_points(p, q).into_iter().take(1).collect());
    assert!(decided > 1500, "only {decided} verdicts decided");
}

#[test]
fn row_class_is_the_column_class_of_the_adjoint() {
    let opts = CheckOptions::default();
    for a in suite() {
        for (pv, qv) in PAIRS {
            let (p, q) = (idx(pv), idx(qv));
            let lhs = check_einfinf(&a, p, q, &opts).member;
            let rhs = check_e11(&a.adjoint(), q.conjugate(), p.conjugate(), &opts).member;
            assert_eq!(lhs, rhs, "{a:?} ({p},{q})");
        }
    }
}

#[test]
fn spectral_test_agrees_with_class_checks() {
    let opts = CheckOptions::default();
    let two = ExtIndex::Two;
    for a in suite() {
        for class in ClassId::ALL {
            let class_v = check_class(&a, class, two, two, &opts).unwrap();
            for (r, s) in class.representative_points(two, two) {
                let t2 = check_theorem2(&a, r, s, &opts).unwrap();
                if class_v.member == Membership::Undetermined || t2.member == Membership::Undetermined {
                    continue;
                }
                assert_eq!(t2.member, class_v.member, "{a:?} {class} at ({r},{s})");
            }
        }
    }
}

#[test]
fn sufficient_conditions_imply_membership() {
    let opts = CheckOptions::default();
    let mut extra = suite();
    extra.push(real(&[vec![1.0, 1.0, 0.5], vec![1.0, 1.0, -0.5], vec![1.0, -1.0, 0.0], vec![1.0, -1.0, 0.0]]));
    extra.push(real(&[vec![5.0, 0.0, 0.0], vec![0.0, 0.1, 0.2], vec![0.0, 0.3, 0.1]]));
    extra.push(real(&[vec![1.0, 1.0, 1.0, 1.0], vec![1.0, 1.0, -1.0, -1.0], vec![0.25, -0.25, 0.0, 0.0]]));
    let mut fired = [0; 3];
    for a in &extra {
        for pv in [1.0, 1.05, 1.2, 1.5, 2.0, 3.0, 10.0, 100.0, f64::INFINITY] {
            for qv in [1.0, 1.05, 1.2, 1.5, 2.0, 3.0, 10.0, 100.0, f64::INFINITY] {
                let (p, q) = (idx(pv), idx(qv));
                if sufficient_3prime(a, p, q, opts.tol).holds {
                    fired[0] += 1;
                    assert!(check_e1inf(a, p, q, &opts).is_yes(), "{a:?} ({p},{q})");
                }
                if sufficient_4prime(a, p, q, opts.tol).holds {
                    fired[1] += 1;
                    assert!(check_e11(a, p, q, &opts).is_yes(), "{a:?} ({p},{q})");
                }
                if sufficient_5prime(a, p, q, opts.tol).holds {
                    fired[2] += 1;
                    assert!(check_einfinf(a, p, q, &opts).is_yes(), "{a:?} ({p},{q})");
                }
            }
        }
    }
    assert!(fired.iter().all(|&n| n > 10), "{fired:?}");
}

#[test]
fn tensor_product_of_unimodular_vectors_is_in_the_unimodular_class_everywhere() {
    let opts = CheckOptions::default();
    let a = Matrix::from_complex_rows(&[vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![c(0.0, 1.0), c(0.0, -1.0)]]).unwrap();
    for pv in [1.0, 1.5, 2.0, 4.0] {
        for qv in [1.5, 2.0, 4.0, f64::INFINITY] {
            let v = check_class(&a, ClassId::EInf1, idx(pv), idx(qv), &opts).unwrap();
            assert!(v.is_yes(), "({pv},{qv}) {:?}", v.conditions);
        }
    }
}
