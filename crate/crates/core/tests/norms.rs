mod common;

use common::{c, gaussian, grid, idx};
use normbound::bounds::duality_check;
use normbound::norms::{induced_norm, norm_bruteforce, norm_closed_form, norm_estimate, ratio, EstimatorSettings, NormOptions};
use normbound::{Field, Matrix, NormResult};
use proptest::prelude::*;

fn assert_witness(a: &Matrix, r: &NormResult, p: normbound::ExtIndex, q: normbound::ExtIndex) {
    let again = ratio(a, &r.witness, p, q);
    assert!((again - r.value).abs() <= 1e-9 * r.value.max(1e-300), "witness gives {again}, reported {}", r.value);
}

#[test]
fn witnesses_reproduce_reported_values() {
    let settings = EstimatorSettings::default();
    for seed in 0..12 {
        let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
        let a = gaussian(2 + seed as usize % 2, 3 - seed as usize % 2, field, seed);
        for &p in &grid() {
            for &q in &grid() {
                assert_witness(&a, &induced_norm(&a, p, q, &NormOptions::default()), p, q);
                assert_witness(&a, &norm_estimate(&a, p, q, &settings), p, q);
                assert_witness(&a, &norm_bruteforce(&a, p, q, 2000, seed), p, q);
            }
        }
    }
}

#[test]
fn closed_forms_agree_with_brute_force() {
    let mut compared = 0;
    for seed in 0..20u64 {
        let (n, m) = (1 + seed as usize % 3, 1 + (seed as usize / 3) % 3);
        let a = gaussian(n, m, Field::Real, 100 + seed);
        for &p in &grid() {
            for &q in &grid() {
                let Some(exact) = norm_closed_form(&a, p, q) else { continue };
                let oracle = norm_bruteforce(&a, p, q, 10_000, seed);
                assert!((oracle.value - exact.value).abs() <= 1e-3 * exact.value, "seed {seed} ({p},{q}): {} vs {}", oracle.value, exact.value);
                compared += 1;
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn adjoint_norm_matches_on_closed_form_pairs() {
    for seed in 0..10u64 {
        let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
        let a = gaussian(3, 2, field, 200 + seed);
        for &p in &grid() {
            for &q in &grid() {
                let (Some(x), Some(y)) = (norm_closed_form(&a, p, q), norm_closed_form(&a.adjoint(), q.conjugate(), p.conjugate())) else { continue };
                assert!((x.value - y.value).abs() <= 1e-9 * x.value, "({p},{q})");
                assert!(duality_check(&a, p, q, 1e-9).holds);
            }
        }
    }
}

#[test]
fn rotation_example_differs_between_fields() {
    let a = common::real(&[vec![1.0, 1.0], vec![-1.0, 1.0]]);
    let (inf, one) = (normbound::ExtIndex::Inf, normbound::ExtIndex::One);
    let real = induced_norm(&a, inf, one, &NormOptions::default());
    assert_eq!(real.value, 2.0);
    assert!(real.certainty.is_exact());
    let complex = induced_norm(&a.with_field(Field::Complex).unwrap(), inf, one, &NormOptions::default());
    assert!((complex.value - 2.0 * 2f64.sqrt()).abs() < 1e-6, "{}", complex.value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norms_scale_with_the_matrix(seed in 0u64..10_000, scale in 0.01f64..100.0, pi in 0usize..5, qi in 0usize..5, complex in any::<bool>()) {
        let field = if complex { Field::Complex } else { Field::Real };
        let a = gaussian(2, 3, field, seed);
        let k = if complex { c(scale * 0.6, scale * 0.8) } else { c(-scale, 0.0) };
        let b = a.scaled(k);
        let (p, q) = (grid()[pi], grid()[qi]);
        let settings = EstimatorSettings { seed, ..EstimatorSettings::default() };
        for (x, y) in [
            (induced_norm(&a, p, q, &NormOptions::default()).value, induced_norm(&b, p, q, &NormOptions::default()).value),
            (norm_estimate(&a, p, q, &settings).value, norm_estimate(&b, p, q, &settings).value),
            (norm_bruteforce(&a, p, q, 500, seed).value, norm_bruteforce(&b, p, q, 500, seed).value),
        ] {
            prop_assert!((y - scale * x).abs() <= 1e-9 * scale * x, "({}, {}): {} vs {}", p, q, y, scale * x);
        }
    }

    #[test]
    fn estimate_never_exceeds_brute_force_by_much(seed in 0u64..1000, pv in 1.0f64..6.0, qv in 1.0f64..6.0) {
        let a = gaussian(3, 3, Field::Real, seed);
        let (p, q) = (idx(pv), idx(qv));
        let est = induced_norm(&a, p, q, &NormOptions::default()).value;
        let bf = norm_bruteforce(&a, p, q, 4000, seed).value;
        // Both are lower bounds of the same maximum.
        prop_assert!(bf <= est * (1.0 + 1e-3));
    }
}
