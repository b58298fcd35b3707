//! Scalar abstraction shared by every numeric module.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::ToPrimitive;

/// Real scalar the numeric core is generic over (`f32` or `f64`).
///
/// Besides the field operations this carries the two tolerance tiers used
/// throughout the crate: a tight one for construction residuals (linear
/// solves, normalizations) and a looser one for asserted identities.
pub trait Real: RealField + Copy + Default + ToPrimitive {
    /// Residual allowed when constructing derived objects.
    const CONSTRUCTION_TOL: f64;
    /// Residual allowed when asserting an analytic identity.
    const PROPERTY_TOL: f64;

    /// Converts an `f64` literal into this scalar.
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    fn count(n: usize) -> Self {
        nalgebra::convert(n as f64)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const CONSTRUCTION_TOL: f64 = 1e-12;
    const PROPERTY_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const CONSTRUCTION_TOL: f64 = 1e-4;
    const PROPERTY_TOL: f64 = 1e-3;
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

pub(crate) fn cz<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

pub(crate) fn abs<T: Real>(z: C<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

pub(crate) fn abs2<T: Real>(z: C<T>) -> T {
    z.re * z.re + z.im * z.im
}

/// Largest absolute entrywise difference between two complex slices.
pub fn max_abs_diff<T: Real>(a: &[C<T>], b: &[C<T>]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc.max(abs(*x - *y)))
}

/// `⟨a, b⟩ = Σ a_i conj(b_i)` with unit weights.
pub fn inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter()
        .zip(b)
        .fold(cz(), |acc, (x, y)| acc + *x * y.conj())
}

pub fn norm2<T: Real>(a: &[C<T>]) -> T {
    a.iter().fold(T::zero(), |acc, x| acc + abs2(*x)).sqrt()
}
