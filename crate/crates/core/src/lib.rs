//! Stockwell transforms and localization operators on finite Gelfand pairs.
//!
//! The crate builds, from a Cayley table and a subgroup `K`, the full
//! harmonic analysis of the pair `(G, K)`: double cosets, the Hecke algebra,
//! spherical functions and Plancherel weights. On top of that it provides
//! the Stockwell transform with respect to a bi-invariant window and a
//! `K`-preserving automorphism, its inverse and reproducing kernel, and the
//! localization operators driven by symbols on `G × S⁺`.
//!
//! Numeric code is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the `*64` aliases below fix it to double precision,
//! which is what the tolerances in [`audit`] are calibrated for.

pub mod audit;
pub mod catalog;
pub mod group;
pub mod io;
pub mod localization;
pub mod scalar;
pub mod spherical;
pub mod stockwell;

pub use group::{FiniteGroup, GroupAutomorphism, Subgroup};
pub use scalar::{Real, C};
pub use spherical::GelfandPair;

pub type GroupFunction64 = group::GroupFunction<f64>;
pub type SphericalFunction64 = spherical::SphericalFunction<f64>;
pub type SphericalDual64 = spherical::SphericalDual<f64>;
pub type BiInvariantSignal64 = spherical::BiInvariantSignal<f64>;
pub type Window64 = stockwell::Window<f64>;
pub type TimePhaseCoefficients64 = stockwell::TimePhaseCoefficients<f64>;
pub type ReproducingKernel64 = stockwell::ReproducingKernel<f64>;
pub type SymbolFunction64 = localization::SymbolFunction<f64>;
pub type LocalizationOperator64 = localization::LocalizationOperator<f64>;

pub type GroupFunction32 = group::GroupFunction<f32>;
pub type SphericalDual32 = spherical::SphericalDual<f32>;
pub type Window32 = stockwell::Window<f32>;
pub type TimePhaseCoefficients32 = stockwell::TimePhaseCoefficients<f32>;
pub type LocalizationOperator32 = localization::LocalizationOperator<f32>;
