mod common;

use common::{gaussian, grid, idx, ternary};
use normbound::bounds::{bound_factor, check_inequality, monotonicity_check, monotonicity_check_s, prop3_transfer, report};
use normbound::norms::{induced_norm, NormOptions};
use normbound::{ExtIndex, Field, Matrix, NormResult, Sign};

/// All 25 grid norms of `a`, indexed by grid position.
fn norm_table(a: &Matrix) -> Vec<Vec<NormResult>> {
    let g = grid();
    g.iter().map(|&p| g.iter().map(|&q| induced_norm(a, p, q, &NormOptions::default())).collect()).collect()
}

fn matrix_for(seed: u64) -> Matrix {
    let (n, m) = (1 + seed as usize % 3, 1 + (seed as usize / 3) % 3);
    match seed % 4 {
        0 => ternary(n, m, seed),
        1 => gaussian(n, m, Field::Complex, seed),
        _ => gaussian(n, m, Field::Real, seed),
    }
}

#[test]
fn bound_is_never_violated() {
    let g = grid();
    for seed in 0..200u64 {
        let a = matrix_for(seed);
        let t = norm_table(&a);
        for (pi, &p) in g.iter().enumerate() {
            for (qi, &q) in g.iter().enumerate() {
                for (ri, &r) in g.iter().enumerate() {
                    for (si, &s) in g.iter().enumerate() {
                        let (lhs, rhs) = (&t[ri][si], &t[pi][qi]);
                        let rep = report(&a, p, q, r, s, 1e-8, (lhs.value, lhs.certainty), (rhs.value, rhs.certainty));
                        assert!(rep.slack >= -1e-6 * rep.factor * rep.rhs_norm, "seed {seed}: ({p},{q}) -> ({r},{s}) slack {}", rep.slack);
                    }
                }
            }
        }
    }
}

#[test]
fn equality_spreads_over_sign_quadrants() {
    let g = grid();
    let mut equalities = 0;
    for seed in 0..200u64 {
        let a = matrix_for(seed);
        let t = norm_table(&a);
        for (pi, &p) in g.iter().enumerate() {
            for (qi, &q) in g.iter().enumerate() {
                let rhs = &t[pi][qi];
                if !rhs.certainty.is_exact() {
                    continue;
                }
                let eq = |ri: usize, si: usize| {
                    let l = &t[ri][si];
                    l.certainty.is_exact().then(|| report(&a, p, q, g[ri], g[si], 1e-6, (l.value, l.certainty), (rhs.value, rhs.certainty)).equality)
                };
                for ri in 0..g.len() {
                    for si in 0..g.len() {
                        if eq(ri, si) != Some(true) {
                            continue;
                        }
                        equalities += 1;
                        for r2 in 0..g.len() {
                            for s2 in 0..g.len() {
                                if !prop3_transfer(p, q, g[ri], g[si], g[r2], g[s2]) {
                                    continue;
                                }
                                if let Some(e) = eq(r2, s2) {
                                    assert!(e, "seed {seed}: equality at ({},{}) but not at ({},{}) for ({p},{q})", g[ri], g[si], g[r2], g[s2]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(equalities > 1000);
}

#[test]
fn transfer_is_transitive_and_depends_only_on_signs() {
    let g: Vec<ExtIndex> = [1.0, 1.25, 1.5, 2.0, 3.0, 6.0, f64::INFINITY].into_iter().map(idx).collect();
    let (p, q) = (idx(2.0), idx(3.0));
    let sig = |r: ExtIndex, s: ExtIndex| (Sign::of_diff(p, r), Sign::of_diff(q, s));
    for &r in &g {
        for &s in &g {
            for &r2 in &g {
                for &s2 in &g {
                    let t = prop3_transfer(p, q, r, s, r2, s2);
                    for &r3 in &g {
                        for &s3 in &g {
                            if t && prop3_transfer(p, q, r2, s2, r3, s3) {
                                assert!(prop3_transfer(p, q, r, s, r3, s3));
                            }
                            if sig(r3, s3) == sig(r, s) {
                                assert_eq!(prop3_transfer(p, q, r3, s3, r2, s2), t);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn weighted_norms_are_monotone() {
    for seed in 0..10u64 {
        let a = gaussian(3, 2, Field::Real, 500 + seed);
        for &s in &grid() {
            assert!(monotonicity_check(&a, s, &grid(), 1e-6, &NormOptions::default()).unwrap());
        }
        for &r in &grid() {
            assert!(monotonicity_check_s(&a, r, &grid(), 1e-6, &NormOptions::default()).unwrap());
        }
    }
}

#[test]
fn hadamard_attains_the_bound_from_the_spectral_norm() {
    let h = normbound::generators::gen_hadamard(4).unwrap();
    let rep = check_inequality(&h, ExtIndex::Two, ExtIndex::Two, ExtIndex::One, ExtIndex::One, 1e-8);
    assert_eq!(rep.factor, bound_factor(ExtIndex::Two, ExtIndex::Two, ExtIndex::One, ExtIndex::One, 4, 4));
    assert!(rep.equality);
    assert_eq!(rep.lhs, 4.0);
}
