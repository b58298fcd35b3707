//! Positive-definiteness, Plancherel weights and the spherical Fourier pair.

use nalgebra::{DMatrix, DVector};

use super::{BiInvariantSignal, GelfandPair, SphericalError, SphericalFunction};
use crate::group::{FiniteGroup, GroupFunction};
use crate::scalar::{abs, cr, cz, Real, C};

/// The spherical dual of a Gelfand pair with its Plancherel weights.
///
/// All spherical functions are kept; `positive` marks membership in the
/// positive-definite part, which is the index set every transform sums over.
#[derive(Debug, Clone)]
pub struct SphericalDual<T: Real> {
    functions: Vec<SphericalFunction<T>>,
    weights: Vec<T>,
    positive: Vec<bool>,
    residual: T,
}

impl<T: Real> SphericalDual<T> {
    /// Spherical functions and weights in one step.
    pub fn compute(pair: &GelfandPair) -> Result<Self, SphericalError> {
        let functions = super::spherical_functions(pair)?;
        plancherel_weights(pair, functions)
    }

    pub fn functions(&self) -> &[SphericalFunction<T>] {
        &self.functions
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn positive_mask(&self) -> &[bool] {
        &self.positive
    }

    /// Indices (into `functions`) of the positive-definite spherical functions.
    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.functions.len())
            .filter(|&i| self.positive[i])
            .collect()
    }

    /// Number of positive-definite spherical functions, `|S⁺|`.
    pub fn positive_len(&self) -> usize {
        self.positive.iter().filter(|p| **p).count()
    }

    /// The positive-definite functions with their weights, in index order.
    pub fn positive_part(&self) -> Vec<(&SphericalFunction<T>, T)> {
        self.positive_indices()
            .into_iter()
            .map(|i| (&self.functions[i], self.weights[i]))
            .collect()
    }

    /// Largest violation of the inversion identity on class indicators.
    pub fn inversion_residual(&self) -> T {
        self.residual
    }

    /// The same dual with functions (and weights) reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            functions: perm.iter().map(|&i| self.functions[i].clone()).collect(),
            weights: perm.iter().map(|&i| self.weights[i]).collect(),
            positive: perm.iter().map(|&i| self.positive[i]).collect(),
            residual: self.residual,
        }
    }
}

/// Smallest eigenvalue of the Gram matrix `[φ(x_n⁻¹ x_m)]`, or `None` when
/// that matrix is not Hermitian (then `φ` cannot be positive-definite).
pub fn gram_min_eigenvalue<T: Real>(g: &FiniteGroup, phi: &GroupFunction<T>) -> Option<T> {
    let n = g.order();
    let gram = DMatrix::<C<T>>::from_fn(n, n, |r, c| phi[g.mul(g.inv(r), c)]);
    let tol = T::lit(T::CONSTRUCTION_TOL);
    for r in 0..n {
        for c in 0..=r {
            if abs(gram[(r, c)] - gram[(c, r)].conj()) > tol {
                return None;
            }
        }
    }
    let eig = gram.symmetric_eigenvalues();
    Some(
        eig.iter()
            .fold(T::max_value().unwrap_or_else(T::one), |a, &b| a.min(b)),
    )
}

/// `true` iff the Gram matrix is Hermitian with smallest eigenvalue at least
/// `−PROPERTY_TOL`.
pub fn check_positive_definite<T: Real>(g: &FiniteGroup, phi: &GroupFunction<T>) -> bool {
    if phi.len() != g.order() {
        return false;
    }
    gram_min_eigenvalue(g, phi).is_some_and(|m| m >= -T::lit(T::PROPERTY_TOL))
}

/// Solves for the weights `μ` that make the inversion formula exact.
///
/// The square system is inversion evaluated at the identity for every class
/// indicator: `Σ_φ μ(φ) |C_j| φ(C_j⁻¹) = δ_{j0}`. The full identity on every
/// (indicator, point) combination is then checked as the residual.
pub fn plancherel_weights<T: Real>(
    pair: &GelfandPair,
    functions: Vec<SphericalFunction<T>>,
) -> Result<SphericalDual<T>, SphericalError> {
    pair.require_certified()?;
    let cosets = pair.cosets();
    let n = cosets.len();
    if functions.len() != n {
        return Err(SphericalError::DimensionMismatch {
            expected: n,
            got: functions.len(),
        });
    }
    let size = |c: usize| cr::<T>(T::count(cosets.class_size(c)));
    let system = DMatrix::<C<T>>::from_fn(n, n, |j, p| {
        size(j) * functions[p].class_value(cosets.inverse_class(j))
    });
    let mut rhs = DVector::<C<T>>::from_element(n, cz());
    rhs[0] = cr(T::one());
    let solution = system
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or(SphericalError::SingularSystem)?;
    if solution
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(SphericalError::SingularSystem);
    }

    let mut weights = Vec::with_capacity(n);
    for (index, z) in solution.iter().enumerate() {
        if z.re <= T::zero() {
            return Err(SphericalError::NonPositiveWeight {
                index,
                weight: z.re.as_f64(),
            });
        }
        weights.push(z.re);
    }

    let mut residual = T::zero();
    for j in 0..n {
        for l in 0..n {
            let mut acc = cz::<T>();
            for (p, f) in functions.iter().enumerate() {
                acc += cr(weights[p])
                    * size(j)
                    * f.class_value(cosets.inverse_class(j))
                    * f.class_value(l);
            }
            let target = if j == l { T::one() } else { T::zero() };
            residual = residual.max(abs(acc - cr(target)));
        }
    }
    let tol = T::lit(T::CONSTRUCTION_TOL);
    if residual > tol {
        return Err(SphericalError::InversionResidual(residual.as_f64()));
    }

    let g = pair.group();
    let positive = functions
        .iter()
        .map(|f| check_positive_definite(g, &f.to_function(cosets)))
        .collect();

    Ok(SphericalDual {
        functions,
        weights,
        positive,
        residual,
    })
}

/// `f̂(φ) = Σ_x f(x) φ(x⁻¹)` for each positive-definite `φ`.
pub fn spherical_ft<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    f: &BiInvariantSignal<T>,
) -> Result<Vec<C<T>>, SphericalError> {
    let cosets = pair.cosets();
    if f.class_values().len() != cosets.len() {
        return Err(SphericalError::DimensionMismatch {
            expected: cosets.len(),
            got: f.class_values().len(),
        });
    }
    Ok(dual
        .positive_part()
        .into_iter()
        .map(|(phi, _)| {
            f.class_values()
                .iter()
                .enumerate()
                .fold(cz(), |acc, (c, v)| {
                    acc + *v
                        * cr(T::count(cosets.class_size(c)))
                        * phi.class_value(cosets.inverse_class(c))
                })
        })
        .collect())
}

/// `f(x) = Σ_φ μ(φ) f̂(φ) φ(x)` over the positive-definite part.
pub fn spherical_ift<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    fhat: &[C<T>],
) -> Result<BiInvariantSignal<T>, SphericalError> {
    let part = dual.positive_part();
    if fhat.len() != part.len() {
        return Err(SphericalError::DimensionMismatch {
            expected: part.len(),
            got: fhat.len(),
        });
    }
    let n = pair.class_count();
    let values = (0..n)
        .map(|c| {
            part.iter().zip(fhat).fold(cz(), |acc, ((phi, mu), v)| {
                acc + cr(*mu) * *v * phi.class_value(c)
            })
        })
        .collect();
    Ok(BiInvariantSignal::from_class_values(values))
}

/// Largest deviation of `Σ_φ μ(φ) conj(ω(x)) ω(y)` from `1{x~y} / |class(x)|`.
pub fn dual_orthogonality_residual<T: Real>(pair: &GelfandPair, dual: &SphericalDual<T>) -> T {
    let cosets = pair.cosets();
    let n = cosets.len();
    let part = dual.positive_part();
    let mut worst = T::zero();
    for a in 0..n {
        for b in 0..n {
            let s = part.iter().fold(cz::<T>(), |acc, (phi, mu)| {
                acc + cr(*mu) * phi.class_value(a).conj() * phi.class_value(b)
            });
            let target = if a == b {
                T::one() / T::count(cosets.class_size(a))
            } else {
                T::zero()
            };
            worst = worst.max(abs(s - cr(target)));
        }
    }
    worst
}
