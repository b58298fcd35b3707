mod common;

use common::*;
use gelfand_stockwell::catalog;
use gelfand_stockwell::spherical::{
    certify_gelfand, check_positive_definite, dual_orthogonality_residual, spherical_ft,
    spherical_ift, BiInvariantSignal, SphericalDual,
};
use gelfand_stockwell::Subgroup;
use num_complex::Complex;
use proptest::prelude::*;

fn weighted(w: &[f64], a: &[Cx], b: &[Cx]) -> Cx {
    a.iter()
        .zip(b)
        .zip(w)
        .map(|((x, y), m)| x * y.conj() * *m)
        .sum()
}

#[test]
fn every_catalog_pair_is_certified_with_a_consistent_dual() {
    for name in catalog::list_pairs() {
        let e = entry(name);
        assert!(e.pair.certified(), "{name}");
        let d = dual(name);
        assert_eq!(d.functions().len(), e.pair.class_count(), "{name}");
        assert!(d.inversion_residual() <= 1e-12, "{name}");
        assert!(dual_orthogonality_residual(&e.pair, &d) <= 1e-10, "{name}");
        for phi in d.functions() {
            assert!(phi.functional_equation_residual(&e.pair) <= 1e-10, "{name}");
            let f = phi.to_function(e.pair.cosets());
            assert!(check_positive_definite(e.pair.group(), &f), "{name}");
        }
        assert!(d.positive_mask().iter().all(|p| *p));
    }
}

#[test]
fn trivial_subgroup_of_s3_is_not_gelfand() {
    let s3 = catalog::groups::symmetric(3).group;
    let pair = certify_gelfand(s3.clone(), Subgroup::trivial(&s3));
    assert!(!pair.certified());
    assert!(SphericalDual::<f64>::compute(&pair).is_err());
}

#[test]
fn weights_match_dimension_over_order() {
    // Independent route: μ(φ) = 1 / Σ_x |φ(x)|², which is d_φ / |G|.
    for name in catalog::list_pairs() {
        let e = entry(name);
        let d = dual(name);
        let sizes = e.pair.cosets().class_sizes();
        for (phi, mu) in d.functions().iter().zip(d.weights()) {
            let s: f64 = phi
                .class_values()
                .iter()
                .zip(&sizes)
                .map(|(v, n)| v.norm_sqr() * *n as f64)
                .sum();
            assert!((mu - 1.0 / s).abs() < 1e-12, "{name}");
            let dim = mu * e.pair.order() as f64;
            assert!((dim - dim.round()).abs() < 1e-9, "{name}: {dim}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn plancherel_parseval_and_round_trip(
        name in prop::sample::select(catalog::list_pairs().to_vec()),
        a in values(8),
        b in values(8),
    ) {
        let e = entry(name);
        let d = dual(name);
        let n = e.pair.class_count();
        let cosets = e.pair.cosets();
        let f = BiInvariantSignal::from_class_values(a.into_iter().cycle().take(n).collect());
        let g = BiInvariantSignal::from_class_values(b.into_iter().cycle().take(n).collect());
        let w: Vec<f64> = d.positive_part().iter().map(|(_, m)| *m).collect();
        let fh = spherical_ft(&e.pair, &d, &f).unwrap();
        let gh = spherical_ft(&e.pair, &d, &g).unwrap();
        prop_assert!((weighted(&w, &fh, &fh).re - f.norm_l2(cosets).powi(2)).abs() < 1e-10);
        prop_assert!((weighted(&w, &fh, &gh) - f.inner(&g, cosets)).norm() < 1e-10);
        let back = spherical_ift(&e.pair, &d, &fh).unwrap();
        for (x, y) in back.class_values().iter().zip(f.class_values()) {
            prop_assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn relabeling_the_dual_permutes_the_spectrum(name in small_pair(), a in values(8)) {
        let e = entry(name);
        let d = dual(name);
        let m = d.functions().len();
        let perm: Vec<usize> = (0..m).rev().collect();
        let p = d.permuted(&perm);
        let f = BiInvariantSignal::from_class_values(a.into_iter().cycle().take(e.pair.class_count()).collect());
        let x = spherical_ft(&e.pair, &d, &f).unwrap();
        let y = spherical_ft(&e.pair, &p, &f).unwrap();
        for (i, &j) in perm.iter().enumerate() {
            prop_assert!((y[i] - x[j]).norm() < 1e-14);
        }
    }
}

#[test]
fn single_precision_dual_agrees_with_double() {
    let e = entry("sym-4");
    let d64 = dual("sym-4");
    let d32 = SphericalDual::<f32>::compute(&e.pair).unwrap();
    for (a, b) in d64.weights().iter().zip(d32.weights()) {
        assert!((a - f64::from(*b)).abs() < 1e-5);
    }
    for (p, q) in d64.functions().iter().zip(d32.functions()) {
        for (x, y) in p.class_values().iter().zip(q.class_values()) {
            assert!((x - Complex::new(f64::from(y.re), f64::from(y.im))).norm() < 1e-4);
        }
    }
}
