//! Gelfand pairs and their spherical harmonic analysis: certification of the
//! pair, spherical functions, positive-definiteness, Plancherel weights and
//! the spherical Fourier transform with its inverse.
//!
//! Everything is expressed in the double-coset basis. A bi-invariant function
//! is a vector of class values; spherical functions are likewise stored per
//! class and expanded to the group on demand.

mod diagonalize;
mod hecke;
mod transform;

use thiserror::Error;

use crate::group::{
    bi_invariance_defect, class_means, double_cosets, DoubleCosetPartition, FiniteGroup,
    GroupFunction, Subgroup,
};
use crate::scalar::{abs2, cr, Real, C};

pub use diagonalize::{spherical_functions, DIAGONALIZATION_RETRIES, DIAGONALIZATION_SEED};
pub use hecke::HeckeStructure;
pub use transform::{
    check_positive_definite, dual_orthogonality_residual, gram_min_eigenvalue, plancherel_weights,
    spherical_ft, spherical_ift, SphericalDual,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SphericalError {
    #[error("the bi-invariant algebra is not commutative (classes {0} and {1})")]
    NotGelfand(usize, usize),
    #[error("eigenvalue collision persisted after {attempts} attempts")]
    DegenerateDiagonalization { attempts: usize },
    #[error("eigen-decomposition did not converge")]
    EigenFailure,
    #[error("Plancherel system is singular")]
    SingularSystem,
    #[error("Plancherel weight {index} is not positive ({weight})")]
    NonPositiveWeight { index: usize, weight: f64 },
    #[error("Plancherel residual {0:e} exceeds tolerance")]
    InversionResidual(f64),
    #[error("function is not bi-invariant (class deviation {0:e})")]
    NotBiInvariant(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A group with subgroup `K`, its double cosets and Hecke structure, and the
/// outcome of the commutativity check.
#[derive(Debug, Clone)]
pub struct GelfandPair {
    group: FiniteGroup,
    k: Subgroup,
    cosets: DoubleCosetPartition,
    hecke: HeckeStructure,
    noncommuting: Option<(usize, usize)>,
}

/// Builds the pair and checks whether every pair of Hecke multiplication
/// matrices commutes. A non-Gelfand result is still returned, flagged.
pub fn certify_gelfand(group: FiniteGroup, k: Subgroup) -> GelfandPair {
    let cosets = double_cosets(&group, &k);
    let hecke = HeckeStructure::compute(&group, &cosets);
    let noncommuting = hecke.noncommuting_pair();
    GelfandPair {
        group,
        k,
        cosets,
        hecke,
        noncommuting,
    }
}

pub fn hecke_structure(pair: &GelfandPair) -> &HeckeStructure {
    &pair.hecke
}

impl GelfandPair {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.k
    }

    pub fn cosets(&self) -> &DoubleCosetPartition {
        &self.cosets
    }

    pub fn hecke(&self) -> &HeckeStructure {
        &self.hecke
    }

    pub fn certified(&self) -> bool {
        self.noncommuting.is_none()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn class_count(&self) -> usize {
        self.cosets.len()
    }

    /// Abelian group with trivial `K`: the classical setting where characters
    /// are the spherical functions.
    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    pub(crate) fn require_certified(&self) -> Result<(), SphericalError> {
        match self.noncommuting {
            None => Ok(()),
            Some((a, b)) => Err(SphericalError::NotGelfand(a, b)),
        }
    }
}

/// A spherical function, stored by its value on each double coset.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalFunction<T: Real> {
    class_values: Vec<C<T>>,
}

impl<T: Real> SphericalFunction<T> {
    pub fn from_class_values(class_values: Vec<C<T>>) -> Self {
        Self { class_values }
    }

    pub fn class_values(&self) -> &[C<T>] {
        &self.class_values
    }

    pub fn class_value(&self, c: usize) -> C<T> {
        self.class_values[c]
    }

    pub fn at(&self, cosets: &DoubleCosetPartition, x: usize) -> C<T> {
        self.class_values[cosets.class_of(x)]
    }

    pub fn to_function(&self, cosets: &DoubleCosetPartition) -> GroupFunction<T> {
        GroupFunction::new(
            (0..cosets.group_order())
                .map(|x| self.at(cosets, x))
                .collect(),
        )
    }

    /// Largest violation of `(1/|K|) Σ_k ω(xky) = ω(x)ω(y)` over all `x, y`.
    pub fn functional_equation_residual(&self, pair: &GelfandPair) -> T {
        let g = pair.group();
        let k = pair.subgroup();
        let cosets = pair.cosets();
        let kinv = cr(T::one() / T::count(k.order()));
        let mut worst = T::zero();
        for x in g.elements() {
            for y in g.elements() {
                let mut avg = crate::scalar::cz::<T>();
                for &kk in k.members() {
                    avg += self.at(cosets, g.mul(g.mul(x, kk), y));
                }
                let lhs = avg * kinv;
                let rhs = self.at(cosets, x) * self.at(cosets, y);
                worst = worst.max(crate::scalar::abs(lhs - rhs));
            }
        }
        worst
    }
}

/// A `K`-bi-invariant signal, one value per double coset.
#[derive(Debug, Clone, PartialEq)]
pub struct BiInvariantSignal<T: Real> {
    class_values: Vec<C<T>>,
}

impl<T: Real> BiInvariantSignal<T> {
    pub fn from_class_values(class_values: Vec<C<T>>) -> Self {
        Self { class_values }
    }

    pub fn zeros(classes: usize) -> Self {
        Self {
            class_values: vec![crate::scalar::cz(); classes],
        }
    }

    /// Indicator of double coset `c`.
    pub fn indicator(classes: usize, c: usize) -> Self {
        let mut s = Self::zeros(classes);
        s.class_values[c] = cr(T::one());
        s
    }

    /// Accepts `f` when it is constant on every double coset up to the
    /// construction tolerance.
    pub fn from_function(
        cosets: &DoubleCosetPartition,
        f: &GroupFunction<T>,
    ) -> Result<Self, SphericalError> {
        if f.len() != cosets.group_order() {
            return Err(SphericalError::DimensionMismatch {
                expected: cosets.group_order(),
                got: f.len(),
            });
        }
        let defect = bi_invariance_defect(cosets, f);
        if defect > T::lit(T::CONSTRUCTION_TOL) {
            return Err(SphericalError::NotBiInvariant(defect.as_f64()));
        }
        Ok(Self {
            class_values: class_means(cosets, f),
        })
    }

    pub fn class_values(&self) -> &[C<T>] {
        &self.class_values
    }

    pub fn to_function(&self, cosets: &DoubleCosetPartition) -> GroupFunction<T> {
        GroupFunction::new(
            (0..cosets.group_order())
                .map(|x| self.class_values[cosets.class_of(x)])
                .collect(),
        )
    }

    /// `L²(G)` norm of the expansion.
    pub fn norm_l2(&self, cosets: &DoubleCosetPartition) -> T {
        self.class_values
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (c, z)| {
                acc + T::count(cosets.class_size(c)) * abs2(*z)
            })
            .sqrt()
    }

    /// `L²(G)` inner product of the expansions.
    pub fn inner(&self, other: &Self, cosets: &DoubleCosetPartition) -> C<T> {
        self.class_values
            .iter()
            .zip(&other.class_values)
            .enumerate()
            .fold(crate::scalar::cz(), |acc, (c, (a, b))| {
                acc + *a * b.conj() * cr(T::count(cosets.class_size(c)))
            })
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            class_values: self.class_values.iter().map(|z| *z * s).collect(),
        }
    }
}
