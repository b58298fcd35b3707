//! Localization operators `L^u f = Σ_φ μ(φ) Σ_t u(t,φ) (S f)(t,φ) θ_{α,φ,t}`
//! driven by a symbol `u` on `G × S⁺`, with operator norms, the boundedness
//! margins against `‖u‖_p`, and the adjoint identity `(L^u)* = L^{conj u}`.
//!
//! Operators act on `L²(G//K)`. They are stored in the orthonormal basis
//! `1_{C_j} / |C_j|^{1/2}` of normalized double-coset indicators, so the
//! matrix spectral norm is the `L²` operator norm and the adjoint is the
//! conjugate transpose. The defining sum can leave the bi-invariant
//! subspace; the stored operator is its orthogonal projection back, and the
//! size of the discarded part is kept as `leakage`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupAutomorphism, GroupFunction};
use crate::scalar::{abs, cr, cz, Real, C};
use crate::spherical::{BiInvariantSignal, GelfandPair, SphericalDual};
use crate::stockwell::{
    positive_weights, stockwell_forward_function, AtomBank, StockwellError, Window,
};

/// Exponents sampled strictly between 1 and ∞ for the interpolated bound.
pub const LP_GRID: [f64; 5] = [1.25, 1.5, 2.5, 4.0, 8.0];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocalizationError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exponent {0} is outside [1, ∞]")]
    BadExponent(f64),
    #[error(transparent)]
    Stockwell(#[from] StockwellError),
}

/// A symbol on `G × S⁺` together with the Plancherel weights of its columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolFunction<T: Real> {
    values: DMatrix<C<T>>,
    weights: Vec<T>,
}

impl<T: Real> SymbolFunction<T> {
    pub fn new(
        pair: &GelfandPair,
        dual: &SphericalDual<T>,
        values: DMatrix<C<T>>,
    ) -> Result<Self, LocalizationError> {
        let weights = positive_weights(dual);
        if values.nrows() != pair.order() || values.ncols() != weights.len() {
            return Err(LocalizationError::DimensionMismatch {
                expected: pair.order() * weights.len(),
                got: values.nrows() * values.ncols(),
            });
        }
        Ok(Self { values, weights })
    }

    pub fn constant(pair: &GelfandPair, dual: &SphericalDual<T>, value: C<T>) -> Self {
        let weights = positive_weights(dual);
        Self {
            values: DMatrix::from_element(pair.order(), weights.len(), value),
            weights,
        }
    }

    /// Indicator of the single point `(t, φ)`.
    pub fn indicator(pair: &GelfandPair, dual: &SphericalDual<T>, t: usize, phi: usize) -> Self {
        let mut u = Self::constant(pair, dual, cz());
        u.values[(t, phi)] = cr(T::one());
        u
    }

    pub fn values(&self) -> &DMatrix<C<T>> {
        &self.values
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn conj(&self) -> Self {
        Self {
            values: self.values.map(|z| z.conj()),
            weights: self.weights.clone(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C<T>, other: &Self, b: C<T>) -> Self {
        Self {
            values: self.values.map(|z| z * a) + other.values.map(|z| z * b),
            weights: self.weights.clone(),
        }
    }

    /// `(Σ_t Σ_φ μ(φ)|u(t,φ)|^p)^{1/p}`, or the maximum for `p = ∞`.
    pub fn norm(&self, p: f64) -> Result<T, LocalizationError> {
        symbol_norm(self, p)
    }
}

pub fn symbol_norm<T: Real>(u: &SymbolFunction<T>, p: f64) -> Result<T, LocalizationError> {
    if p.is_nan() || p < 1.0 {
        return Err(LocalizationError::BadExponent(p));
    }
    if p.is_infinite() {
        return Ok(u.values.iter().fold(T::zero(), |acc, z| acc.max(abs(*z))));
    }
    let pt = T::lit(p);
    let mut sum = T::zero();
    for (col, w) in u.weights.iter().enumerate() {
        let s = u
            .values
            .column(col)
            .iter()
            .fold(T::zero(), |acc, z| acc + abs(*z).powf(pt));
        sum += *w * s;
    }
    Ok(sum.powf(T::one() / pt))
}

/// A localization operator on `L²(G//K)`.
#[derive(Debug, Clone)]
pub struct LocalizationOperator<T: Real> {
    class_matrix: DMatrix<C<T>>,
    full_matrix: Option<DMatrix<C<T>>>,
    leakage: T,
    window_norm: T,
}

impl<T: Real> LocalizationOperator<T> {
    /// Matrix in the orthonormal class-indicator basis.
    pub fn matrix(&self) -> &DMatrix<C<T>> {
        &self.class_matrix
    }

    /// The unprojected operator on all of `L²(G)`, when it was requested.
    pub fn full_matrix(&self) -> Option<&DMatrix<C<T>>> {
        self.full_matrix.as_ref()
    }

    /// Spectral norm of the component of `L^u` that leaves `L²(G//K)`.
    pub fn leakage(&self) -> T {
        self.leakage
    }

    pub fn window_norm(&self) -> T {
        self.window_norm
    }

    /// Applies the (projected) operator to a bi-invariant signal.
    pub fn apply(&self, pair: &GelfandPair, f: &BiInvariantSignal<T>) -> BiInvariantSignal<T> {
        let cosets = pair.cosets();
        let sqrt_size = |c: usize| T::count(cosets.class_size(c)).sqrt();
        let coords = DVector::from_iterator(
            cosets.len(),
            f.class_values()
                .iter()
                .enumerate()
                .map(|(c, z)| *z * cr(sqrt_size(c))),
        );
        let out = &self.class_matrix * coords;
        BiInvariantSignal::from_class_values(
            out.iter()
                .enumerate()
                .map(|(c, z)| *z / cr(sqrt_size(c)))
                .collect(),
        )
    }
}

/// Atoms and the analysis of the normalized class basis, shared by every
/// operator built with one window and automorphism.
#[derive(Debug, Clone)]
pub struct LocalizationContext<T: Real> {
    bank: AtomBank<T>,
    /// `|G| × n`, orthonormal columns `1_{C_j}/|C_j|^{1/2}`.
    basis: DMatrix<C<T>>,
    /// `Bᴴ E`: transform coefficients of every basis vector.
    analysis: DMatrix<C<T>>,
    window_norm: T,
}

impl<T: Real> LocalizationContext<T> {
    pub fn new(
        pair: &GelfandPair,
        dual: &SphericalDual<T>,
        window: &Window<T>,
        alpha: &GroupAutomorphism,
    ) -> Self {
        let bank = AtomBank::build(pair, dual, window, alpha);
        let cosets = pair.cosets();
        let basis = DMatrix::from_fn(pair.order(), cosets.len(), |x, c| {
            if cosets.class_of(x) == c {
                cr(T::one() / T::count(cosets.class_size(c)).sqrt())
            } else {
                cz()
            }
        });
        let analysis = bank.matrix().ad_mul(&basis);
        Self {
            bank,
            basis,
            analysis,
            window_norm: window.norm_l2(),
        }
    }

    pub fn bank(&self) -> &AtomBank<T> {
        &self.bank
    }

    pub fn basis(&self) -> &DMatrix<C<T>> {
        &self.basis
    }

    /// Transform matrix from the orthonormal class basis into `L²(G × S⁺)`
    /// with the weighted norm folded in (rows scaled by `μ^{1/2}`).
    pub fn weighted_analysis(&self) -> DMatrix<C<T>> {
        let mut m = self.analysis.clone();
        for (a, mut row) in m.row_iter_mut().enumerate() {
            let s = cr(self.bank.column_weight(a).sqrt());
            row.iter_mut().for_each(|z| *z *= s);
        }
        m
    }

    fn multiplier(&self, u: &SymbolFunction<T>) -> Vec<C<T>> {
        let m = u.weights.len();
        (0..self.analysis.nrows())
            .map(|a| u.values[(a / m, a % m)] * cr(u.weights[a % m]))
            .collect()
    }

    pub fn operator(
        &self,
        u: &SymbolFunction<T>,
        with_full: bool,
    ) -> Result<LocalizationOperator<T>, LocalizationError> {
        if u.values.len() != self.analysis.nrows() {
            return Err(LocalizationError::DimensionMismatch {
                expected: self.analysis.nrows(),
                got: u.values.len(),
            });
        }
        let mult = self.multiplier(u);
        let mut scaled = self.analysis.clone();
        for (a, mut row) in scaled.row_iter_mut().enumerate() {
            row.iter_mut().for_each(|z| *z *= mult[a]);
        }
        // Columns: raw L^u applied to each normalized basis vector.
        let raw = self.bank.matrix() * scaled;
        let class_matrix = self.basis.ad_mul(&raw);
        let outside = &raw - &self.basis * &class_matrix;
        let leakage = spectral_norm(&outside);
        let full_matrix = with_full.then(|| {
            let mut weighted_adjoint = self.bank.matrix().adjoint();
            for (a, mut row) in weighted_adjoint.row_iter_mut().enumerate() {
                row.iter_mut().for_each(|z| *z *= mult[a]);
            }
            self.bank.matrix() * weighted_adjoint
        });
        Ok(LocalizationOperator {
            class_matrix,
            full_matrix,
            leakage,
            window_norm: self.window_norm,
        })
    }
}

/// Assembles `L^u_{θ,α}` column by column from the class-indicator basis.
pub fn build_localization<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    u: &SymbolFunction<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<LocalizationOperator<T>, LocalizationError> {
    LocalizationContext::new(pair, dual, window, alpha).operator(u, true)
}

/// The defining sum applied to one function, without projection.
pub fn localize_function<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    u: &SymbolFunction<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
    f: &GroupFunction<T>,
) -> Result<GroupFunction<T>, LocalizationError> {
    let coeffs = stockwell_forward_function(pair, dual, f, window, alpha)?;
    let part = dual.positive_part();
    let mut out = vec![cz::<T>(); pair.order()];
    for (p, (phi, mu)) in part.iter().enumerate() {
        for t in pair.group().elements() {
            let w = u.values[(t, p)] * coeffs.get(t, p) * cr(*mu);
            if w == cz() {
                continue;
            }
            let a = crate::stockwell::atom(pair, phi, p, window, alpha, t);
            for (o, v) in out.iter_mut().zip(a.values.values()) {
                *o += w * *v;
            }
        }
    }
    Ok(GroupFunction::new(out))
}

pub fn spectral_norm<T: Real>(m: &DMatrix<C<T>>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(T::zero(), |acc, s| acc.max(*s))
}

/// Largest singular value of the class-basis matrix.
pub fn operator_norm<T: Real>(op: &LocalizationOperator<T>) -> T {
    spectral_norm(&op.class_matrix)
}

/// Norms, bound margins and adjoint residual of one operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub operator_norm: f64,
    pub symbol_norms: BTreeMap<String, f64>,
    /// `‖u‖_p − ‖L^u‖` keyed by bound: `l1`, `l2`, `linf`, `lp-<p>`.
    pub bound_margins: BTreeMap<String, f64>,
    pub adjoint_residual: f64,
    pub bi_invariance_leakage: f64,
}

impl OperatorReport {
    /// Smallest margin among the interpolated exponents.
    pub fn lp_margin(&self) -> f64 {
        self.bound_margins
            .iter()
            .filter(|(k, _)| k.starts_with("lp-"))
            .map(|(_, v)| *v)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn exponent_key(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// Builds `L^u` and `L^{conj u}` and measures every bound.
pub fn bound_suite<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    u: &SymbolFunction<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<OperatorReport, LocalizationError> {
    window.require_unit()?;
    let ctx = LocalizationContext::new(pair, dual, window, alpha);
    bound_suite_with(&ctx, u)
}

pub fn bound_suite_with<T: Real>(
    ctx: &LocalizationContext<T>,
    u: &SymbolFunction<T>,
) -> Result<OperatorReport, LocalizationError> {
    let op = ctx.operator(u, false)?;
    let conj_op = ctx.operator(&u.conj(), false)?;
    let norm = operator_norm(&op).as_f64();

    let mut symbol_norms = BTreeMap::new();
    let mut bound_margins = BTreeMap::new();
    for (label, p) in [("l1", 1.0), ("l2", 2.0), ("linf", f64::INFINITY)] {
        let v = symbol_norm(u, p)?.as_f64();
        symbol_norms.insert(exponent_key(p), v);
        bound_margins.insert(label.to_string(), v - norm);
    }
    for p in LP_GRID {
        let v = symbol_norm(u, p)?.as_f64();
        symbol_norms.insert(exponent_key(p), v);
        bound_margins.insert(format!("lp-{}", exponent_key(p)), v - norm);
    }
    let adjoint_residual =
        spectral_norm(&(op.class_matrix.adjoint() - &conj_op.class_matrix)).as_f64();
    Ok(OperatorReport {
        operator_norm: norm,
        symbol_norms,
        bound_margins,
        adjoint_residual,
        bi_invariance_leakage: op.leakage.as_f64(),
    })
}

/// `‖(L^u)* − L^{conj u}‖`, with the two operators assembled independently.
pub fn adjoint_check<T: Real>(
    pair: &GelfandPair,
    dual: &SphericalDual<T>,
    u: &SymbolFunction<T>,
    window: &Window<T>,
    alpha: &GroupAutomorphism,
) -> Result<T, LocalizationError> {
    let op = build_localization(pair, dual, u, window, alpha)?;
    let conj_op = build_localization(pair, dual, &u.conj(), window, alpha)?;
    Ok(spectral_norm(
        &(op.class_matrix.adjoint() - &conj_op.class_matrix),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::max_abs_diff;
    use crate::stockwell::cyclic_setting;
    use num_complex::Complex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_c(rng: &mut ChaCha8Rng) -> C<f64> {
        Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }

    fn random_symbol(
        pair: &GelfandPair,
        dual: &SphericalDual<f64>,
        rng: &mut ChaCha8Rng,
    ) -> SymbolFunction<f64> {
        let m = dual.positive_len();
        let values = DMatrix::from_fn(pair.order(), m, |_, _| rand_c(rng));
        SymbolFunction::new(pair, dual, values).unwrap()
    }

    fn unit_window(pair: &GelfandPair, rng: &mut ChaCha8Rng) -> Window<f64> {
        let s = BiInvariantSignal::from_class_values(
            (0..pair.class_count()).map(|_| rand_c(rng)).collect(),
        );
        Window::from_signal(pair, &s).normalized().unwrap()
    }

    #[test]
    fn constant_symbol_gives_identity_on_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (pair, dual, alpha) = cyclic_setting::<f64>(8, 3).unwrap();
        let w = unit_window(&pair, &mut rng);
        let u = SymbolFunction::constant(&pair, &dual, cr(1.0));
        let op = build_localization(&pair, &dual, &u, &w, &alpha).unwrap();
        let id = DMatrix::<C<f64>>::identity(8, 8);
        assert!(max_abs_diff(op.matrix().as_slice(), id.as_slice()) < 1e-10);
        assert!((operator_norm(&op) - 1.0).abs() < 1e-10);

        let zero = SymbolFunction::constant(&pair, &dual, cz());
        let op0 = build_localization(&pair, &dual, &zero, &w, &alpha).unwrap();
        assert_eq!(operator_norm(&op0), 0.0);
    }

    #[test]
    fn point_symbol_is_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (pair, dual, alpha) = cyclic_setting::<f64>(8, 5).unwrap();
        let w = unit_window(&pair, &mut rng);
        let (t0, p0) = (3, 2);
        let u = SymbolFunction::indicator(&pair, &dual, t0, p0);
        let op = build_localization(&pair, &dual, &u, &w, &alpha).unwrap();
        let part = dual.positive_part();
        let a = crate::stockwell::atom(&pair, part[p0].0, p0, &w, &alpha, t0);
        let mu = part[p0].1;
        let expected = mu * a.values.norm_l2().powi(2);
        assert!((operator_norm(&op) - expected).abs() < 1e-10);
        let f = GroupFunction::new((0..8).map(|_| rand_c(&mut rng)).collect());
        let out = op.apply(
            &pair,
            &BiInvariantSignal::from_class_values(f.values().to_vec()),
        );
        let c = f.inner(&a.values) * cr(mu);
        let direct: Vec<C<f64>> = a.values.values().iter().map(|v| *v * c).collect();
        assert!(max_abs_diff(out.class_values(), &direct) < 1e-12);
    }

    #[test]
    fn matrix_agrees_with_defining_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for name in ["sym-3", "dihedral-6", "cyclic-8", "hypercube-2"] {
            let e = catalog::get_pair(name).unwrap();
            let dual = SphericalDual::<f64>::compute(&e.pair).unwrap();
            let w = unit_window(&e.pair, &mut rng);
            for (_, alpha) in &e.automorphisms {
                let u = random_symbol(&e.pair, &dual, &mut rng);
                let op = build_localization(&e.pair, &dual, &u, &w, alpha).unwrap();
                let full = op.full_matrix().unwrap();
                let cosets = e.pair.cosets();
                for c in 0..cosets.len() {
                    let basis = BiInvariantSignal::indicator(cosets.len(), c);
                    let f = basis.to_function(cosets);
                    let raw = localize_function(&e.pair, &dual, &u, &w, alpha, &f).unwrap();
                    let via_full = full * DVector::from_column_slice(f.values());
                    assert!(max_abs_diff(raw.values(), via_full.as_slice()) < 1e-12);
                    let projected = crate::group::class_means(cosets, &raw);
                    let via_op = op.apply(&e.pair, &basis);
                    assert!(
                        max_abs_diff(&projected, via_op.class_values()) < 1e-12,
                        "{name}"
                    );
                }
            }
        }
    }

    #[test]
    fn symbol_norm_examples() {
        let (pair, dual, _) = cyclic_setting::<f64>(4, 1).unwrap();
        let one = SymbolFunction::constant(&pair, &dual, cr(1.0));
        assert!((symbol_norm(&one, 1.0).unwrap() - 4.0).abs() < 1e-12);
        assert!((symbol_norm(&one, f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
        let zero = SymbolFunction::constant(&pair, &dual, cz());
        assert_eq!(symbol_norm(&zero, 2.0).unwrap(), 0.0);
        assert_eq!(
            symbol_norm(&one, 0.5),
            Err(LocalizationError::BadExponent(0.5))
        );
        assert!(symbol_norm(&one, f64::NAN).is_err());
    }

    #[test]
    fn bound_suite_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let (pair, dual, alpha) = cyclic_setting::<f64>(8, 3).unwrap();
        let w = unit_window(&pair, &mut rng);
        let one = SymbolFunction::constant(&pair, &dual, cr(1.0));
        let r = bound_suite(&pair, &dual, &one, &w, &alpha).unwrap();
        assert!((r.operator_norm - 1.0).abs() < 1e-10);
        assert!(r.bound_margins["linf"].abs() < 1e-10);

        for _ in 0..10 {
            let u = random_symbol(&pair, &dual, &mut rng);
            let r = bound_suite(&pair, &dual, &u, &w, &alpha).unwrap();
            for (k, m) in &r.bound_margins {
                assert!(*m >= -1e-10, "{k}: {m}");
            }
            assert!(r.adjoint_residual < 1e-10);
        }

        let zero = SymbolFunction::constant(&pair, &dual, cz());
        let r = bound_suite(&pair, &dual, &zero, &w, &alpha).unwrap();
        assert_eq!(r.operator_norm, 0.0);
        assert!(r.bound_margins.values().all(|m| *m == 0.0));

        let not_unit =
            Window::from_signal(&pair, &BiInvariantSignal::indicator(8, 0).scale(cr(2.0)));
        assert!(matches!(
            bound_suite(&pair, &dual, &one, &not_unit, &alpha),
            Err(LocalizationError::Stockwell(StockwellError::WindowNotUnit(
                _
            )))
        ));
    }

    #[test]
    fn adjoint_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let e = catalog::get_pair("sym-3").unwrap();
        let dual = SphericalDual::<f64>::compute(&e.pair).unwrap();
        let w = unit_window(&e.pair, &mut rng);
        for (_, alpha) in &e.automorphisms {
            let u = random_symbol(&e.pair, &dual, &mut rng);
            assert!(adjoint_check(&e.pair, &dual, &u, &w, alpha).unwrap() < 1e-10);

            let real = SymbolFunction::new(&e.pair, &dual, u.values().map(|z| cr(z.re))).unwrap();
            let op = build_localization(&e.pair, &dual, &real, &w, alpha).unwrap();
            let skew = op.matrix().adjoint() - op.matrix();
            assert!(spectral_norm(&skew) < 1e-10);

            let imag =
                SymbolFunction::new(&e.pair, &dual, u.values().map(|z| Complex::new(0.0, z.im)))
                    .unwrap();
            let op = build_localization(&e.pair, &dual, &imag, &w, alpha).unwrap();
            let sum = op.matrix().adjoint() + op.matrix();
            assert!(spectral_norm(&sum) < 1e-10);
        }
    }

    #[test]
    fn symbol_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let e = catalog::get_pair("dihedral-4").unwrap();
        let dual = SphericalDual::<f64>::compute(&e.pair).unwrap();
        let w = unit_window(&e.pair, &mut rng);
        let ctx = LocalizationContext::new(&e.pair, &dual, &w, &e.automorphisms[0].1);
        let u = random_symbol(&e.pair, &dual, &mut rng);
        let v = random_symbol(&e.pair, &dual, &mut rng);
        let (a, b) = (rand_c(&mut rng), rand_c(&mut rng));
        let lhs = ctx.operator(&u.combine(a, &v, b), false).unwrap();
        let rhs = ctx.operator(&u, false).unwrap().matrix().map(|z| z * a)
            + ctx.operator(&v, false).unwrap().matrix().map(|z| z * b);
        assert!(max_abs_diff(lhs.matrix().as_slice(), rhs.as_slice()) < 1e-12);
    }

    #[test]
    fn norm_invariant_under_dual_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let e = catalog::get_pair("hypercube-3").unwrap();
        let dual = SphericalDual::<f64>::compute(&e.pair).unwrap();
        let perm = [2, 0, 3, 1];
        let permuted = dual.permuted(&perm);
        let w = unit_window(&e.pair, &mut rng);
        let alpha = &e.automorphisms[1].1;
        let u = random_symbol(&e.pair, &dual, &mut rng);
        let u_perm = SymbolFunction::new(
            &e.pair,
            &permuted,
            DMatrix::from_fn(e.pair.order(), 4, |t, p| u.values()[(t, perm[p])]),
        )
        .unwrap();
        let a = build_localization(&e.pair, &dual, &u, &w, alpha).unwrap();
        let b = build_localization(&e.pair, &permuted, &u_perm, &w, alpha).unwrap();
        assert!((operator_norm(&a) - operator_norm(&b)).abs() < 1e-12);
    }

    #[test]
    fn single_precision_operator() {
        let (pair, dual, alpha) = cyclic_setting::<f32>(4, 3).unwrap();
        let w = Window::<f32>::from_signal(&pair, &BiInvariantSignal::indicator(4, 0));
        let u = SymbolFunction::constant(&pair, &dual, cr(1.0f32));
        let op = build_localization(&pair, &dual, &u, &w, &alpha).unwrap();
        assert!((operator_norm(&op) - 1.0).abs() < 1e-4);
    }
}
