//! Spherical functions by simultaneous diagonalization of the Hecke algebra.
//!
//! A spherical function `ω` defines the character `1_{C_l} ↦ Σ_{x∈C_l} ω(x)`
//! of the commutative Hecke algebra. Writing `v_l` for that value, the
//! structure constants give `v_i v_j = Σ_l c[i][j][l] v_l`, so `v` is a common
//! eigenvector of the matrices `(M_i)_{jl} = c[i][j][l]` with eigenvalue
//! `v_i`. A random real combination of the `M_i` has simple spectrum with
//! probability one; its eigenvectors, scaled so `v_0 = |K|`, are the
//! characters, and `ω(C_l) = v_l / |C_l|`.

use nalgebra::{DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GelfandPair, SphericalError, SphericalFunction};
use crate::scalar::{abs, cr, Real, C};

/// Seed for the random Hecke combination.
pub const DIAGONALIZATION_SEED: u64 = 0x5348_4552_4943_414c;
/// Resamples allowed after the first attempt when eigenvalues collide.
pub const DIAGONALIZATION_RETRIES: usize = 8;
const COLLISION_THRESHOLD: f64 = 1e-8;

/// One spherical function per double coset, trivial function first, the rest
/// in a canonical order (by argument, then decreasing real part, of their
/// values class by class).
pub fn spherical_functions<T: Real>(
    pair: &GelfandPair,
) -> Result<Vec<SphericalFunction<T>>, SphericalError> {
    pair.require_certified()?;
    let n = pair.class_count();
    let hecke = pair.hecke();
    let mut rng = ChaCha8Rng::seed_from_u64(DIAGONALIZATION_SEED);

    for _attempt in 0..=DIAGONALIZATION_RETRIES {
        let coeffs: Vec<T> = (0..n)
            .map(|_| T::lit(rng.random_range(-1.0..1.0)))
            .collect();
        let a = DMatrix::<C<T>>::from_fn(n, n, |j, l| {
            let s = (0..n).fold(T::zero(), |acc, i| {
                acc + coeffs[i] * T::count(hecke.get(i, j, l) as usize)
            });
            cr(s)
        });

        let eigenvalues = eigenvalues(&a)?;
        if has_collision(&eigenvalues) {
            continue;
        }

        let mut functions = Vec::with_capacity(n);
        for &lambda in &eigenvalues {
            let v = null_vector(&a, lambda)?;
            functions.push(normalize(pair, &v));
        }
        sort_canonical(&mut functions);
        return Ok(functions);
    }
    Err(SphericalError::DegenerateDiagonalization {
        attempts: DIAGONALIZATION_RETRIES + 1,
    })
}

fn eigenvalues<T: Real>(a: &DMatrix<C<T>>) -> Result<Vec<C<T>>, SphericalError> {
    let n = a.nrows();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let eps = T::lit(f64::EPSILON.max(T::default_epsilon().as_f64()));
    let schur = Schur::try_new(a.clone(), eps, 10_000).ok_or(SphericalError::EigenFailure)?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

fn has_collision<T: Real>(values: &[C<T>]) -> bool {
    let scale = values.iter().fold(T::one(), |acc, z| acc.max(abs(*z)));
    let threshold = T::lit(COLLISION_THRESHOLD) * scale;
    values
        .iter()
        .enumerate()
        .any(|(i, a)| values[..i].iter().any(|b| abs(*a - *b) < threshold))
}

/// Unit vector spanning the (one-dimensional) kernel of `A − λI`.
fn null_vector<T: Real>(a: &DMatrix<C<T>>, lambda: C<T>) -> Result<Vec<C<T>>, SphericalError> {
    let n = a.nrows();
    let shifted = a - DMatrix::<C<T>>::identity(n, n) * lambda;
    let svd = shifted
        .try_svd(false, true, T::default_epsilon(), 10_000)
        .ok_or(SphericalError::EigenFailure)?;
    let v_t = svd.v_t.ok_or(SphericalError::EigenFailure)?;
    let (min_idx, _) = svd.singular_values.iter().enumerate().fold(
        (0, T::max_value().unwrap_or_else(T::one)),
        |best, (i, &s)| {
            if s < best.1 {
                (i, s)
            } else {
                best
            }
        },
    );
    // A = U Σ Vᴴ; the kernel vector is the matching column of V.
    Ok((0..n).map(|j| v_t[(min_idx, j)].conj()).collect())
}

fn normalize<T: Real>(pair: &GelfandPair, v: &[C<T>]) -> SphericalFunction<T> {
    let cosets = pair.cosets();
    let k_order = cr(T::count(pair.subgroup().order()));
    let scale = k_order / v[0];
    let mut values: Vec<C<T>> = v
        .iter()
        .enumerate()
        .map(|(l, z)| *z * scale / cr(T::count(cosets.class_size(l))))
        .collect();
    values[0] = cr(T::one());
    SphericalFunction::from_class_values(values)
}

fn sort_canonical<T: Real>(functions: &mut [SphericalFunction<T>]) {
    fn q(x: f64) -> i64 {
        (x * 1e8).round() as i64
    }
    let key = |f: &SphericalFunction<T>| -> Vec<(i64, i64, i64)> {
        let trivial = f
            .class_values()
            .iter()
            .all(|z| abs(*z - cr(T::one())) < T::lit(1e-8));
        let mut k = vec![(i64::from(!trivial), 0, 0)];
        for z in &f.class_values()[1..] {
            let (re, im) = (z.re.as_f64(), z.im.as_f64());
            let mut arg = im.atan2(re);
            if arg < 0.0 {
                arg += std::f64::consts::TAU;
            }
            if arg > std::f64::consts::TAU - 1e-8 || re.hypot(im) < 1e-8 {
                arg = 0.0;
            }
            k.push((q(arg), q(-re), q(-im)));
        }
        k
    };
    functions.sort_by_cached_key(key);
}
