mod common;

use common::*;
use gelfand_stockwell::catalog;
use gelfand_stockwell::spherical::BiInvariantSignal;
use gelfand_stockwell::stockwell::{
    atom, reproducing_kernel, stockwell_forward, stockwell_forward_function, stockwell_inverse,
    AtomBank, Window,
};
use num_complex::Complex;
use proptest::prelude::*;

fn signal(name: &str, v: &[Cx]) -> BiInvariantSignal<f64> {
    let n = entry(name).pair.class_count();
    BiInvariantSignal::from_class_values(v.iter().copied().cycle().take(n).collect())
}

fn unit_window(name: &str, v: &[Cx]) -> Window<f64> {
    let e = entry(name);
    let s = signal(name, v);
    let s = if s.norm_l2(e.pair.cosets()) < 1e-6 {
        BiInvariantSignal::indicator(e.pair.class_count(), 0)
    } else {
        s
    };
    Window::from_signal(&e.pair, &s).normalized().unwrap()
}

#[test]
fn coefficients_are_inner_products_with_atoms_everywhere() {
    for name in catalog::list_pairs() {
        let e = entry(name);
        let d = dual(name);
        let f: Vec<Cx> = (0..e.pair.order())
            .map(|x| Complex::new((x as f64 * 0.37).sin(), (x as f64 * 0.11).cos()))
            .collect();
        let f = gelfand_stockwell::group::GroupFunction::new(f);
        let w = unit_window(
            name,
            &[
                Complex::new(0.3, 0.1),
                Complex::new(-0.7, 0.2),
                Complex::new(0.5, 0.5),
            ],
        );
        for (_, alpha) in &e.automorphisms {
            let c = stockwell_forward_function(&e.pair, &d, &f, &w, alpha).unwrap();
            for (p, (phi, _)) in d.positive_part().into_iter().enumerate() {
                for t in e.pair.group().elements() {
                    let a = atom(&e.pair, phi, p, &w, alpha, t);
                    assert!(a.rebuild_residual(&e.pair, phi, &w, alpha) <= 1e-12);
                    assert!((c.get(t, p) - f.inner(&a.values)).norm() <= 1e-12, "{name}");
                }
            }
        }
    }
}

#[test]
fn kernel_is_hermitian_on_every_pair() {
    for name in catalog::list_pairs() {
        let e = entry(name);
        let d = dual(name);
        let w = unit_window(name, &[Complex::new(0.9, -0.1), Complex::new(0.2, 0.4)]);
        for (_, alpha) in &e.automorphisms {
            let k = reproducing_kernel(&e.pair, &d, &w, alpha).unwrap();
            assert!(k.hermitian_residual() <= 1e-12, "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn orthogonality_and_inversion_on_abelian_pairs(
        name in prop::sample::select(abelian_names()),
        fv in values(16), gv in values(16), tv in values(16), vv in values(16),
        which in 0usize..8,
    ) {
        let e = entry(name);
        let d = dual(name);
        let cosets = e.pair.cosets();
        let (f, g) = (signal(name, &fv), signal(name, &gv));
        let (theta, vartheta) = (unit_window(name, &tv), unit_window(name, &vv));
        let alpha = &e.automorphisms[which % e.automorphisms.len()].1;
        let sf = stockwell_forward(&e.pair, &d, &f, &theta, alpha).unwrap();
        let sg = stockwell_forward(&e.pair, &d, &g, &vartheta, alpha).unwrap();
        let expected = f.inner(&g, cosets) * vartheta.values().inner(theta.values());
        prop_assert!((sf.inner(&sg) - expected).norm() <= 1e-10);

        let back = stockwell_inverse(&e.pair, &d, &sf, &theta, alpha).unwrap();
        prop_assert!(back.leakage <= 1e-10);
        for (x, y) in back.signal.class_values().iter().zip(f.class_values()) {
            prop_assert!((x - y).norm() <= 1e-10);
        }

        let bank = AtomBank::build(&e.pair, &d, &theta, alpha);
        let k = gelfand_stockwell::stockwell::kernel_from_bank(&bank);
        let again = k.reproduce(&sf);
        for (x, y) in again.matrix().iter().zip(sf.matrix().iter()) {
            prop_assert!((x - y).norm() <= 1e-10);
        }
    }

    #[test]
    fn sup_bound_holds_everywhere(
        name in small_pair(),
        fv in values(16), tv in values(16),
        which in 0usize..8,
    ) {
        let e = entry(name);
        let d = dual(name);
        let f = signal(name, &fv);
        let theta = Window::from_signal(&e.pair, &signal(name, &tv));
        let alpha = &e.automorphisms[which % e.automorphisms.len()].1;
        let c = stockwell_forward(&e.pair, &d, &f, &theta, alpha).unwrap();
        prop_assert!(c.norm_sup() <= f.norm_l2(e.pair.cosets()) * theta.norm_l2() + 1e-10);
    }
}
