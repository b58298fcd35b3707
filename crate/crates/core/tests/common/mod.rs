#![allow(dead_code)]

use gelfand_stockwell::catalog::{self, CatalogEntry};
use gelfand_stockwell::group::GroupFunction;
use gelfand_stockwell::spherical::SphericalDual;
use num_complex::Complex;
use proptest::prelude::*;

pub type Cx = Complex<f64>;

pub fn entry(name: &str) -> &'static CatalogEntry {
    catalog::get_pair(name).unwrap()
}

pub fn dual(name: &str) -> SphericalDual<f64> {
    SphericalDual::compute(&entry(name).pair).unwrap()
}

pub fn abelian_names() -> Vec<&'static str> {
    catalog::list_pairs()
        .iter()
        .copied()
        .filter(|n| entry(n).abelian)
        .collect()
}

/// Catalog pairs small enough for per-case proptest work.
pub const SMALL: [&str; 7] = [
    "cyclic-4",
    "cyclic-8",
    "dihedral-4",
    "dihedral-6",
    "sym-3",
    "hypercube-2",
    "full-sym-3",
];

pub fn complex() -> impl Strategy<Value = Cx> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex::new(a, b))
}

pub fn values(n: usize) -> impl Strategy<Value = Vec<Cx>> {
    prop::collection::vec(complex(), n)
}

pub fn function(n: usize) -> impl Strategy<Value = GroupFunction<f64>> {
    values(n).prop_map(GroupFunction::new)
}

pub fn small_pair() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SMALL.to_vec())
}

/// A small catalog pair together with `k` functions on its group.
pub fn pair_with_functions(
    k: usize,
) -> impl Strategy<Value = (&'static str, Vec<GroupFunction<f64>>)> {
    small_pair().prop_flat_map(move |name| {
        let n = entry(name).pair.order();
        (Just(name), prop::collection::vec(function(n), k))
    })
}
