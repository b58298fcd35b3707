//! The Stockwell transform on a Gelfand pair.
//!
//! For a bi-invariant window `θ` and an automorphism `α` the transform of a
//! bi-invariant signal `f` is
//!
//! ```text
//! S f(t, φ) = δ_α^{1/2} Σ_x f(x) conj(φ(x) θ(α(t⁻¹x))) = ⟨f, M_φ T_t D_α θ⟩
//! ```
//!
//! indexed by a group element `t` and a positive-definite spherical function
//! `φ`. Coefficient arrays carry the product of counting measure on `G` and
//! the Plancherel weights on the spherical dual.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::group::{
    bi_invariance_defect, bi_invariant_project, check_automorphism, FiniteGroup, GroupAutomorphism,
    GroupFunction, Subgroup,
};
use crate::scalar::{abs, abs2, cr, cz, max_abs_diff, Real, C};
use crate::spherical::{
    certify_gelfand, BiInvariantSignal, GelfandPair, SphericalDual, SphericalError,
    SphericalFunction,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StockwellError {
    #[error("window is not bi-invariant (class deviation {0:e})")]
    NotBiInvariant(f64),
    #[error("window has zero norm")]
    ZeroWindow,
    #[error("window norm {0} is not 1")]
    WindowNotUnit(f64),
    #[error("{multiplier} is not a unit modulo {modulus}")]
    NotAUnit { multiplier: usize, modulus: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Spherical(#[from] SphericalError),
}

/// A bi-invariant analysis window.
#[derive(Debug, Clone, PartialEq)]
pub struct Window<T: Real> {
    values: GroupFunction<T>,
    l2norm: T,
}

impl<T: Real> Window<T> {
    pub fn new(pair: &GelfandPair, values: GroupFunction<T>) -> Result<Self, StockwellError> {
        if values.len() != pair.order() {
            return Err(StockwellError::DimensionMismatch {
                expected: pair.order(),
                got: values.len(),
            });
        }
        let defect = bi_invariance_defect(pair.cosets(), &values);
        if defect > T::lit(T::CONSTRUCTION_TOL) {
            return Err(StockwellError::NotBiInvariant(defect.as_f64()));
        }
        let l2norm = values.norm_l2();
        Ok(Self { values, l2norm })
    }

    pub fn from_signal(pair: &GelfandPair, signal: &BiInvariantSignal<T>) -> Self {
        let values = signal.to_function(pair.cosets());
        let l2norm = values.norm_l2();
        Self { values, l2norm }
    }

    pub fn values(&self) -> &GroupFunction<T> {
        &self.values
    }

    pub fn norm_l2(&self) -> T {
        self.l2norm
    }

    /// The window rescaled to unit `L²` norm.
    pub fn normalized(&self) -> Result<Self, StockwellError> {
        if self.l2norm == T::zero() {
            return Err(StockwellError::ZeroWindow);
        }
        let s = cr(T::one() / self.l2norm);
        let values = self.values.map(|z| z * s);
        let l2norm = values.norm_l2();
        Ok(Self { values, l2norm })
    }

    pub fn require_unit(&self) -> Result<(), StockwellError> {
        if (self.l2norm - T::one()).abs() > T::lit(T::CONSTRUCTION_TOL) {
            Err(StockwellError::WindowNotUnit(self.l2norm.as_f64()))
        } else {
            Ok(())
        }
    }
}

/// `(M_φ f)(x) = φ(x) f(x)`.
pub fn modulation<T: Real>(phi: &GroupFunction<T>, f: &GroupFunction<T>) -> GroupFunction<T> {
    GroupFunction::new(
        phi.values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| *a * *b)
            .collect(),
    )
}

/// `(T_t f)(x) = f(t⁻¹x)`.
pub fn translation<T: Real>(g: &FiniteGroup, t: usize, f: &GroupFunction<T>) -> GroupFunction<T> {
    let ti = g.inv(t);
    GroupFunction::new(g.elements().map(|x| f[g.mul(ti, x)]).collect())
}

/// `(D_α f)(x) = δ_α^{1/2} f(α(x))`.
pub fn dilation<T: Real>(alpha: &GroupAutomorphism, f: &GroupFunction<T>) -> GroupFunction<T> {
    let s = cr(T::lit(alpha.delta().sqrt()));
    GroupFunction::new((0..f.len()).map(|x| f[alpha.apply(x)] * s).collect())
}

/// The atom `θ_{α,φ,t} = M_φ T_t D_α θ` together with its index.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T: Real> {
    pub values: GroupFunction<T>,
    pub t: usize,
    pub phi: usize,
}

/// Builds the atom for element `t` and the `phi`-th positive-definite
/// spherical function, by composing the three operators.
pub fn atom<T: Real>(
    pair: &GelfandPair,
    phi: &SphericalFunction<T>,
    phi_index: usize,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
    t: usize,
) -> Atom<T> {
    let dilated = dilation(alpha, window.values());
    let translated = translation(pair.group(), t, &dilated);
    let values = modulation(&phi.to_function(pair.cosets()), &translated);
    Atom {
        values,
        t,
        phi: phi_index,
    }
}

impl<T: Real> Atom<T> {
    /// Deviation between the stored values and `δ^{1/2} φ(x) θ(α(t⁻¹x))`.
    pub fn rebuild_residual(
        &self,
        pair: &GelfandPair,
        phi: &SphericalFunction<T>,
        window: &Window<T>,
        alpha: &GroupAutomorphism,
    ) -> T {
        let g = pair.group();
        let s = cr(T::lit(alpha.delta().sqrt()));
        let ti = g.inv(self.t);
        let direct: Vec<C<T>> = g
            .elements()
            .map(|x| s * phi.at(pair.cosets(), x) * window.values()[alpha.apply(g.mul(ti, x))])
            .collect();
        max_abs_diff(self.values.values(), &direct)
    }
}

/// Coefficients over `G × S⁺`: row `t`, column = position in the
/// positive-definite part of the dual.
#[derive(Debug, Clone, PartialEq)]
pub struct TimePhaseCoefficients<T: Real> {
    matrix: DMatrix<C<T>>,
    weights: Vec<T>,
}

impl<T: Real> TimePhaseCoefficients<T> {
    pub fn new(matrix: DMatrix<C<T>>, weights: Vec<T>) -> Result<Self, StockwellError> {
        if matrix.ncols() != weights.len() {
            return Err(StockwellError::DimensionMismatch {
                expected: weights.len(),
                got: matrix.ncols(),
            });
        }
        Ok(Self { matrix, weights })
    }

    pub fn zeros(pair: &GelfandPair, dual: &SphericalDual<T>) -> Self {
        let weights = positive_weights(dual);
        Self {
            matrix: DMatrix::from_element(pair.order(), weights.len(), cz()),
            weights,
        }
    }

    pub fn matrix(&self) -> &DMatrix<C<T>> {
        &self.matrix
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn get(&self, t: usize, phi: usize) -> C<T> {
        self.matrix[(t, phi)]
    }

    pub fn times(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn phases(&self) -> usize {
        self.matrix.ncols()
    }

    /// `Σ_t Σ_φ μ(φ) a(t,φ) conj(b(t,φ))`.
    pub fn inner(&self, other: &Self) -> C<T> {
        let mut acc = cz::<T>();
        for p in 0..self.phases() {
            let mut col = cz::<T>();
            for t in 0..self.times() {
                col += self.matrix[(t, p)] * other.matrix[(t, p)].conj();
            }
            acc += col * cr(self.weights[p]);
        }
        acc
    }

    pub fn norm_l2(&self) -> T {
        self.inner(self).re.max(T::zero()).sqrt()
    }

    pub fn norm_sup(&self) -> T {
        self.matrix
            .iter()
            .fold(T::zero(), |acc, z| acc.max(abs(*z)))
    }

    /// Flattened in `(t, φ)` row-major order, matching atom-bank columns.
    pub fn to_flat(&self) -> Vec<C<T>> {
        let mut out = Vec::with_capacity(self.matrix.len());
        for t in 0..self.times() {
            for p in 0..self.phases() {
                out.push(self.matrix[(t, p)]);
            }
        }
        out
    }

    pub fn from_flat(times: usize, weights: Vec<T>, flat: &[C<T>]) -> Self {
        let m = weights.len();
        Self {
            matrix: DMatrix::from_fn(times, m, |t, p| flat[t * m + p]),
            weights,
        }
    }
}

pub(crate) fn positive_weights<T: Real>(dual: &SphericalDual<T>) -> Vec<T> {
    dual.positive_part().into_iter().map(|(_, w)| w).collect()
}

/// Forward transform of an arbitrary group function, by the defining sum.
pub fn stockwell_forward_function<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    f: &GroupFunction<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<TimePhaseCoefficients<T>, StockwellError> {
    let g = pair.group();
    if f.len() != g.order() {
        return Err(StockwellError::DimensionMismatch {
            expected: g.order(),
            got: f.len(),
        });
    }
    let cosets = pair.cosets();
    let part = dual.positive_part();
    let s = cr(T::lit(alpha.delta().sqrt()));
    let theta = window.values();
    let matrix = DMatrix::from_fn(g.order(), part.len(), |t, p| {
        let phi = part[p].0;
        let ti = g.inv(t);
        let sum = g.elements().fold(cz::<T>(), |acc, x| {
            let a = phi.at(cosets, x) * theta[alpha.apply(g.mul(ti, x))];
            acc + f[x] * a.conj()
        });
        s * sum
    });
    Ok(TimePhaseCoefficients {
        matrix,
        weights: part.iter().map(|(_, w)| *w).collect(),
    })
}

/// Stockwell transform of a bi-invariant signal.
pub fn stockwell_forward<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    f: &BiInvariantSignal<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<TimePhaseCoefficients<T>, StockwellError> {
    if f.class_values().len() != pair.class_count() {
        return Err(StockwellError::DimensionMismatch {
            expected: pair.class_count(),
            got: f.class_values().len(),
        });
    }
    stockwell_forward_function(pair, dual, &f.to_function(pair.cosets()), window, alpha)
}

/// Output of the inverse transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis<T: Real> {
    /// Bi-invariant projection of the synthesized function.
    pub signal: BiInvariantSignal<T>,
    /// The synthesized function before projection.
    pub raw: GroupFunction<T>,
    /// `‖raw − projection(raw)‖₂`.
    pub leakage: T,
}

/// `f(x) = (δ^{1/2}/‖θ‖²) Σ_φ μ(φ) Σ_t c(t,φ) φ(x) θ(α(t⁻¹x))`, followed by
/// projection onto bi-invariant functions.
pub fn stockwell_inverse<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    coeffs: &TimePhaseCoefficients<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<Synthesis<T>, StockwellError> {
    let g = pair.group();
    let cosets = pair.cosets();
    let part = dual.positive_part();
    if coeffs.times() != g.order() || coeffs.phases() != part.len() {
        return Err(StockwellError::DimensionMismatch {
            expected: g.order() * part.len(),
            got: coeffs.times() * coeffs.phases(),
        });
    }
    let norm2 = window.norm_l2() * window.norm_l2();
    if norm2 == T::zero() {
        return Err(StockwellError::ZeroWindow);
    }
    let scale = cr(T::lit(alpha.delta().sqrt()) / norm2);
    let theta = window.values();
    let raw: Vec<C<T>> = g
        .elements()
        .map(|x| {
            let mut acc = cz::<T>();
            for (p, (phi, mu)) in part.iter().enumerate() {
                let px = phi.at(cosets, x);
                let mut inner = cz::<T>();
                for t in g.elements() {
                    inner += coeffs.get(t, p) * theta[alpha.apply(g.mul(g.inv(t), x))];
                }
                acc += inner * px * cr(*mu);
            }
            acc * scale
        })
        .collect();
    let raw = GroupFunction::new(raw);
    let projected = bi_invariant_project(cosets, &raw).expect("lengths agree");
    let leakage = raw
        .values()
        .iter()
        .zip(projected.values())
        .fold(T::zero(), |acc, (a, b)| acc + abs2(*a - *b))
        .sqrt();
    let signal = BiInvariantSignal::from_class_values(crate::group::class_means(cosets, &raw));
    Ok(Synthesis {
        signal,
        raw,
        leakage,
    })
}

/// All atoms as the columns of a `|G| × (|G|·|S⁺|)` matrix, column index
/// `t·|S⁺| + p`.
#[derive(Debug, Clone)]
pub struct AtomBank<T: Real> {
    matrix: DMatrix<C<T>>,
    weights: Vec<T>,
    times: usize,
}

impl<T: Real> AtomBank<T> {
    pub fn build(
        pair: &GelfandPair,
        dual: &SphericalDual<T>,
        window: &Window<T>,
        alpha: &GroupAutomorphism,
    ) -> Self {
        let part = dual.positive_part();
        let m = part.len();
        let n = pair.order();
        let mut matrix = DMatrix::from_element(n, n * m, cz());
        for t in 0..n {
            for (p, (phi, _)) in part.iter().enumerate() {
                let a = atom(pair, phi, p, window, alpha, t);
                for x in 0..n {
                    matrix[(x, t * m + p)] = a.values[x];
                }
            }
        }
        Self {
            matrix,
            weights: part.iter().map(|(_, w)| *w).collect(),
            times: n,
        }
    }

    pub fn matrix(&self) -> &DMatrix<C<T>> {
        &self.matrix
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Weight of flattened column `a`.
    pub fn column_weight(&self, a: usize) -> T {
        self.weights[a % self.weights.len()]
    }

    pub fn atom(&self, t: usize, p: usize) -> Vec<C<T>> {
        self.matrix
            .column(t * self.weights.len() + p)
            .iter()
            .copied()
            .collect()
    }

    /// Coefficients `⟨f, θ_{t,φ}⟩` via the atoms.
    pub fn analyze(&self, f: &GroupFunction<T>) -> TimePhaseCoefficients<T> {
        let v = nalgebra::DVector::from_column_slice(f.values());
        let c = self.matrix.ad_mul(&v);
        TimePhaseCoefficients::from_flat(self.times, self.weights.clone(), c.as_slice())
    }
}

/// `k(t,φ,τ,ψ) = conj(⟨θ_{α,φ,t}, θ_{α,ψ,τ}⟩)` as a square matrix over
/// flattened `(t, φ)` indices.
#[derive(Debug, Clone)]
pub struct ReproducingKernel<T: Real> {
    matrix: DMatrix<C<T>>,
    weights: Vec<T>,
    times: usize,
}

impl<T: Real> ReproducingKernel<T> {
    pub fn matrix(&self) -> &DMatrix<C<T>> {
        &self.matrix
    }

    pub fn get(&self, t: usize, phi: usize, tau: usize, psi: usize) -> C<T> {
        let m = self.weights.len();
        self.matrix[(t * m + phi, tau * m + psi)]
    }

    /// `max |k(a,b) − conj(k(b,a))|`.
    pub fn hermitian_residual(&self) -> T {
        let n = self.matrix.nrows();
        let mut worst = T::zero();
        for a in 0..n {
            for b in 0..=a {
                worst = worst.max(abs(self.matrix[(a, b)] - self.matrix[(b, a)].conj()));
            }
        }
        worst
    }

    /// `(t,φ) ↦ Σ_τ Σ_ψ μ(ψ) k(t,φ,τ,ψ) F(τ,ψ)`.
    pub fn reproduce(&self, f: &TimePhaseCoefficients<T>) -> TimePhaseCoefficients<T> {
        let m = self.weights.len();
        let flat = f.to_flat();
        let weighted: Vec<C<T>> = flat
            .iter()
            .enumerate()
            .map(|(b, z)| *z * cr(self.weights[b % m]))
            .collect();
        let v = nalgebra::DVector::from_vec(weighted);
        let out = &self.matrix * v;
        TimePhaseCoefficients::from_flat(self.times, self.weights.clone(), out.as_slice())
    }
}

pub fn reproducing_kernel<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<ReproducingKernel<T>, StockwellError> {
    window.require_unit()?;
    let bank = AtomBank::build(pair, dual, window, alpha);
    Ok(kernel_from_bank(&bank))
}

/// `K = Bᴴ B`: entry `(a, b)` is `⟨θ_b, θ_a⟩ = conj(⟨θ_a, θ_b⟩)`.
pub fn kernel_from_bank<T: Real>(bank: &AtomBank<T>) -> ReproducingKernel<T> {
    ReproducingKernel {
        matrix: bank.matrix().ad_mul(bank.matrix()),
        weights: bank.weights().to_vec(),
        times: bank.times,
    }
}

/// The cyclic-group S-transform: signal and window on `Z_N`, dilation
/// `x ↦ multiplier·x`. Row `t`, column `k` for the character
/// `x ↦ exp(2πi kx/N)`. Computed directly from the exponentials, not
/// through the Gelfand-pair machinery.
pub fn classic_stransform<T: Real>(
    signal: &[C<T>],
    window: &[C<T>],
    multiplier: usize,
) -> Result<DMatrix<C<T>>, StockwellError> {
    let n = signal.len();
    if window.len() != n || n == 0 {
        return Err(StockwellError::DimensionMismatch {
            expected: n.max(1),
            got: window.len(),
        });
    }
    let m = multiplier % n;
    if gcd(m, n) != 1 {
        return Err(StockwellError::NotAUnit {
            multiplier,
            modulus: n,
        });
    }
    let tau = T::two_pi();
    Ok(DMatrix::from_fn(n, n, |t, k| {
        (0..n).fold(cz::<T>(), |acc, x| {
            let angle = tau * T::count((k * x) % n) / T::count(n);
            let chi = C::new(angle.cos(), angle.sin());
            let w = window[(m * ((x + n - t) % n)) % n];
            acc + signal[x] * (chi * w).conj()
        })
    }))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(Z_N, {0})` with its dual and the automorphism `x ↦ multiplier·x`.
pub fn cyclic_setting<T: Real>(
    n: usize,
    multiplier: usize,
) -> Result<(GelfandPair, SphericalDual<T>, GroupAutomorphism), StockwellError> {
    let g = crate::catalog::groups::cyclic(n);
    let perm: Vec<usize> = (0..n).map(|x| multiplier * x % n).collect();
    let alpha = check_automorphism(&g, &perm).map_err(|_| StockwellError::NotAUnit {
        multiplier,
        modulus: n,
    })?;
    let k = Subgroup::trivial(&g);
    let pair = certify_gelfand(g, k);
    let dual = SphericalDual::compute(&pair)?;
    Ok((pair, dual, alpha))
}
