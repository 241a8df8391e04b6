mod common;

use common::{c, idx};
use normbound::bounds::bound_factor;
use normbound::classes::{check_class, check_theorem2, CheckOptions, ClassId, Membership};
use normbound::generators::{gen_dft, gen_hadamard, gen_single_entry, gen_tensor_product, gen_theorem2};
use normbound::norms::{induced_norm, NormOptions};
use normbound::svd::svd;
use normbound::{ExtIndex, Field, Vector};

#[test]
fn theorem2_instances_attain_the_bound() {
    let opts = CheckOptions::default();
    let extremal = ClassId::ALL.map(|c| c.extremal_pair());
    for seed in 0..40u64 {
        let (r, s) = extremal[seed as usize % 4];
        let (m, n) = (2 + seed as usize % 3, 2 + (seed as usize / 3) % 3);
        let k = m.min(n);
        let sigma: Vec<f64> = (0..k).map(|i| 3.0 - i as f64 * 0.7).collect();
        let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
        let a = gen_theorem2(m, n, r, s, &sigma, seed, field).unwrap();
        assert!((svd(&a).unwrap().top() - 3.0).abs() < 1e-9);
        let v = check_theorem2(&a, r, s, &opts).unwrap();
        assert_eq!(v.member, Membership::Yes, "seed {seed} ({r},{s})");
        // Exact norms confirm the equality wherever they are available.
        let lhs = induced_norm(&a, r, s, &NormOptions::default());
        if lhs.certainty.is_exact() {
            let spec = induced_norm(&a, ExtIndex::Two, ExtIndex::Two, &NormOptions::default()).value;
            let bound = bound_factor(ExtIndex::Two, ExtIndex::Two, r, s, m, n) * spec;
            assert!((lhs.value - bound).abs() <= 1e-9 * bound, "seed {seed}: {} vs {bound}", lhs.value);
        }
    }
}

#[test]
fn scaled_unitaries_are_in_both_line_classes() {
    let opts = CheckOptions::default();
    let two = ExtIndex::Two;
    for k in [2, 4, 8] {
        for a in [gen_hadamard(k).unwrap(), gen_dft(k).unwrap()] {
            assert!(a.data().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            let spec = induced_norm(&a, two, two, &NormOptions::default()).value;
            assert!((spec - (k as f64).sqrt()).abs() < 1e-9);
            let l1 = induced_norm(&a, ExtIndex::One, ExtIndex::One, &NormOptions::default()).value;
            assert!((l1 - k as f64).abs() < 1e-9);
            for class in [ClassId::E11, ClassId::EInfInf] {
                assert!(check_class(&a, class, two, two, &opts).unwrap().is_yes(), "k={k} {class}");
            }
        }
    }
}

#[test]
fn tensor_norm_factorises() {
    let cv = Vector::complex(vec![c(1.0, 0.0), c(0.0, -2.0), c(0.5, 0.5)]).unwrap();
    let bv = Vector::complex(vec![c(-1.0, 1.0), c(3.0, 0.0)]).unwrap();
    let a = gen_tensor_product(&cv, &bv);
    let g = [ExtIndex::One, ExtIndex::Two, ExtIndex::Inf];
    for &r in &g {
        for &s in &g {
            let got = induced_norm(&a, r, s, &NormOptions::default());
            assert!(got.certainty.is_exact());
            let want = bv.norm(r.conjugate()) * cv.norm(s);
            assert!((got.value - want).abs() <= 1e-12 * want, "({r},{s})");
        }
    }
}

#[test]
fn structured_families_pass_their_classes() {
    let opts = CheckOptions::default();
    let single = gen_single_entry(3, 3, 2, 1, 1.5).unwrap();
    let ones = gen_tensor_product(&Vector::real(&[1.0, -1.0]).unwrap(), &Vector::real(&[1.0, 1.0, -1.0]).unwrap());
    for (pv, qv) in [(2.0, 2.0), (1.5, 3.0), (3.0, 1.5)] {
        let (p, q) = (idx(pv), idx(qv));
        // A single entry has every norm equal to it, so only the quadrant
        // whose factor is 1 is attained.
        for class in ClassId::ALL {
            let v = check_class(&single, class, p, q, &opts).unwrap();
            assert_eq!(v.is_yes(), class == ClassId::E1Inf, "{class} ({p},{q})");
        }
        assert!(check_class(&ones, ClassId::EInf1, p, q, &opts).unwrap().is_yes());
    }
}
