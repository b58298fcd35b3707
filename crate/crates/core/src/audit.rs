//! The verification suite: every analytic identity and bound checked on
//! catalog pairs, one row per (pair, automorphism, theorem).
//!
//! Identities that hold on every finite Gelfand pair are asserted
//! everywhere. Those whose proof relies on the commutative setting are
//! asserted on abelian pairs and only measured on the others (status
//! `reported`). A report with no `asserted-fail` row is a passing audit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogEntry, CatalogError};
use crate::group::GroupAutomorphism;
use crate::localization::{
    bound_suite_with, spectral_norm, LocalizationContext, LocalizationError, SymbolFunction,
};
use crate::scalar::max_abs_diff;
use crate::spherical::{
    spherical_ft, BiInvariantSignal, GelfandPair, SphericalDual, SphericalError,
};
use crate::stockwell::{
    kernel_from_bank, stockwell_forward, stockwell_forward_function, stockwell_inverse,
    StockwellError, Window,
};
use crate::C;

/// Theorem identifiers, in report order.
pub const THEOREM_IDS: [&str; 13] = [
    "adjoint",
    "closed-range-rank",
    "factorization",
    "inversion-roundtrip",
    "l1-bound",
    "l2-bound",
    "linf-bound",
    "lp-bound",
    "orthogonality",
    "parseval",
    "plancherel",
    "reproducing-kernel",
    "sup-bound",
];

/// Random draws per check.
pub const PLANCHEREL_DRAWS: usize = 100;
pub const PARSEVAL_DRAWS: usize = 100;
pub const ORTHOGONALITY_DRAWS: usize = 50;
pub const BOUND_DRAWS: usize = 100;
pub const ADJOINT_DRAWS: usize = 20;
pub const INVERSION_DRAWS: usize = 20;
pub const FACTORIZATION_DRAWS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Asserted identities and bound margins.
    pub property: f64,
    /// Entrywise identities between two exact constructions.
    pub construction: f64,
    /// Singular values at or below this count as zero for rank.
    pub rank_threshold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            property: 1e-10,
            construction: 1e-12,
            rank_threshold: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AssertedPass,
    AssertedFail,
    Reported,
}

impl Status {
    fn asserted(pass: bool) -> Self {
        if pass {
            Self::AssertedPass
        } else {
            Self::AssertedFail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::AssertedPass => "asserted-pass",
            Self::AssertedFail => "asserted-fail",
            Self::Reported => "reported",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub theorem: String,
    pub status: Status,
    /// Largest deviation from the identity over all draws.
    pub residual: f64,
    /// Smallest `allowed − observed` over all draws; negative means violated.
    pub margin: f64,
    pub details: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub pair: String,
    pub automorphism: String,
    pub abelian: bool,
    pub rows: Vec<AuditRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteMetadata {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub version: String,
    pub draws: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub metadata: SuiteMetadata,
    pub cells: Vec<CellReport>,
}

impl AuditReport {
    pub fn rows(&self) -> impl Iterator<Item = (&CellReport, &AuditRow)> {
        self.cells
            .iter()
            .flat_map(|c| c.rows.iter().map(move |r| (c, r)))
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows().filter(|(_, r)| r.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::AssertedFail) == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Fixed-width table, one line per row.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:<10} {:<20} {:<14} {:>12} {:>12}",
            "pair", "alpha", "theorem", "status", "residual", "margin"
        );
        for (c, r) in self.rows() {
            let _ = writeln!(
                out,
                "{:<12} {:<10} {:<20} {:<14} {:>12.3e} {:>12.3e}",
                c.pair,
                c.automorphism,
                r.theorem,
                r.status.label(),
                r.residual,
                r.margin
            );
        }
        let _ = writeln!(
            out,
            "{} asserted-pass, {} asserted-fail, {} reported",
            self.count(Status::AssertedPass),
            self.count(Status::AssertedFail),
            self.count(Status::Reported)
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("empty pair selection")]
    EmptySelection,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    Stockwell(#[from] StockwellError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
}

/// Runs every check on each selected catalog pair and each of its
/// automorphisms. The report is ordered by pair, automorphism and theorem
/// id and depends only on the selection set and the seed.
pub fn run_verify<S: AsRef<str>>(
    selection: &[S],
    seed: u64,
    tol: &Tolerances,
) -> Result<AuditReport, AuditError> {
    if selection.is_empty() {
        return Err(AuditError::EmptySelection);
    }
    let mut names: Vec<&str> = selection.iter().map(AsRef::as_ref).collect();
    names.sort_unstable();
    names.dedup();
    let entries = names
        .iter()
        .map(|n| catalog::get_pair(n))
        .collect::<Result<Vec<_>, _>>()?;
    let duals = entries
        .par_iter()
        .map(|e| SphericalDual::<f64>::compute(&e.pair))
        .collect::<Result<Vec<_>, _>>()?;

    let mut jobs = Vec::new();
    for (e, dual) in entries.iter().zip(&duals) {
        let mut autos: Vec<&(String, GroupAutomorphism)> = e.automorphisms.iter().collect();
        autos.sort_by(|a, b| a.0.cmp(&b.0));
        for (name, alpha) in autos {
            jobs.push((*e, dual, name.as_str(), alpha));
        }
    }
    let cells = jobs
        .par_iter()
        .map(|(e, dual, name, alpha)| audit_cell(e, dual, name, alpha, seed, tol))
        .collect::<Result<Vec<_>, _>>()?;

    let draws = [
        ("adjoint", ADJOINT_DRAWS),
        ("bounds", BOUND_DRAWS),
        ("factorization", FACTORIZATION_DRAWS),
        ("inversion", INVERSION_DRAWS),
        ("orthogonality", ORTHOGONALITY_DRAWS),
        ("parseval", PARSEVAL_DRAWS),
        ("plancherel", PLANCHEREL_DRAWS),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(AuditReport {
        metadata: SuiteMetadata {
            seed,
            tolerances: *tol,
            version: env!("CARGO_PKG_VERSION").to_string(),
            draws,
        },
        cells,
    })
}

/// Stream id for one cell, stable under changes to the selection.
fn cell_stream(pair: &str, automorphism: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in pair.bytes().chain([0u8]).chain(automorphism.bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn cell_rng(seed: u64, pair: &str, automorphism: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(cell_stream(pair, automorphism));
    rng
}

fn random_complex(rng: &mut impl Rng) -> C<f64> {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Bi-invariant signal with uniform class values, normalized to unit norm.
pub fn random_signal(pair: &GelfandPair, rng: &mut impl Rng) -> BiInvariantSignal<f64> {
    let s = BiInvariantSignal::from_class_values(
        (0..pair.class_count())
            .map(|_| random_complex(rng))
            .collect(),
    );
    let n = s.norm_l2(pair.cosets());
    s.scale(Complex::new(1.0 / n, 0.0))
}

pub fn random_window(pair: &GelfandPair, rng: &mut impl Rng) -> Window<f64> {
    Window::from_signal(pair, &random_signal(pair, rng))
}

pub fn random_symbol(
    pair: &GelfandPair,
    dual: &SphericalDual<f64>,
    rng: &mut impl Rng,
) -> SymbolFunction<f64> {
    let values = DMatrix::from_fn(pair.order(), dual.positive_len(), |_, _| {
        random_complex(rng)
    });
    SymbolFunction::new(pair, dual, values).expect("shape matches the dual")
}

struct Cell<'a> {
    pair: &'a GelfandPair,
    dual: &'a SphericalDual<f64>,
    alpha: &'a GroupAutomorphism,
    abelian: bool,
    tol: &'a Tolerances,
    rng: ChaCha8Rng,
}

fn row(theorem: &str, status: Status, residual: f64, margin: f64) -> AuditRow {
    AuditRow {
        theorem: theorem.into(),
        status,
        residual,
        margin,
        details: BTreeMap::new(),
    }
}

impl Cell<'_> {
    /// Identity row: asserted when `assert`, residual against `limit`.
    fn identity(&self, theorem: &str, assert: bool, residual: f64, limit: f64) -> AuditRow {
        let margin = limit - residual;
        let status = if assert {
            Status::asserted(margin >= 0.0)
        } else {
            Status::Reported
        };
        row(theorem, status, residual, margin)
    }

    fn bound(&self, theorem: &str, assert: bool, margin: f64) -> AuditRow {
        let status = if assert {
            Status::asserted(margin >= -self.tol.property)
        } else {
            Status::Reported
        };
        row(theorem, status, (-margin).max(0.0), margin)
    }

    fn plancherel(&mut self) -> Result<Vec<AuditRow>, AuditError> {
        let cosets = self.pair.cosets();
        let weights: Vec<f64> = self.dual.positive_part().iter().map(|(_, w)| *w).collect();
        let weighted = |a: &[C<f64>], b: &[C<f64>]| -> C<f64> {
            a.iter()
                .zip(b)
                .zip(&weights)
                .map(|((x, y), w)| x * y.conj() * *w)
                .sum()
        };
        let mut plancherel = 0.0f64;
        for _ in 0..PLANCHEREL_DRAWS {
            let f = random_signal(self.pair, &mut self.rng);
            let fh = spherical_ft(self.pair, self.dual, &f)?;
            let lhs = weighted(&fh, &fh).re;
            let rhs = f.norm_l2(cosets).powi(2);
            plancherel = plancherel.max((lhs - rhs).abs());
        }
        let mut parseval = 0.0f64;
        for _ in 0..PARSEVAL_DRAWS {
            let f = random_signal(self.pair, &mut self.rng);
            let g = random_signal(self.pair, &mut self.rng);
            let fh = spherical_ft(self.pair, self.dual, &f)?;
            let gh = spherical_ft(self.pair, self.dual, &g)?;
            parseval = parseval.max((weighted(&fh, &gh) - f.inner(&g, cosets)).norm());
        }
        let mut p = self.identity("plancherel", true, plancherel, self.tol.property);
        p.details.insert(
            "weight-system-residual".into(),
            self.dual.inversion_residual(),
        );
        let q = self.identity("parseval", true, parseval, self.tol.property);
        Ok(vec![p, q])
    }

    fn orthogonality(&mut self) -> Result<AuditRow, AuditError> {
        let cosets = self.pair.cosets();
        let mut worst = 0.0f64;
        let mut isometry = 0.0f64;
        for _ in 0..ORTHOGONALITY_DRAWS {
            let f = random_signal(self.pair, &mut self.rng);
            let g = random_signal(self.pair, &mut self.rng);
            let theta = random_window(self.pair, &mut self.rng);
            let vartheta = random_window(self.pair, &mut self.rng);
            let sf = stockwell_forward(self.pair, self.dual, &f, &theta, self.alpha)?;
            let sg = stockwell_forward(self.pair, self.dual, &g, &vartheta, self.alpha)?;
            let expected = f.inner(&g, cosets) * vartheta.values().inner(theta.values());
            worst = worst.max((sf.inner(&sg) - expected).norm());
            isometry = isometry.max((sf.norm_l2().powi(2) - 1.0).abs());
        }
        let mut r = self.identity("orthogonality", self.abelian, worst, self.tol.property);
        r.details.insert("isometry".into(), isometry);
        Ok(r)
    }

    fn closed_range(&self, ctx: &LocalizationContext<f64>) -> AuditRow {
        let sv = ctx.weighted_analysis().singular_values();
        let rank = sv.iter().filter(|s| **s > self.tol.rank_threshold).count();
        let expected = self.pair.class_count();
        let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let spread = sv.iter().fold(0.0f64, |acc, s| acc.max((s - 1.0).abs()));
        let residual = rank.abs_diff(expected) as f64;
        let mut r = row(
            "closed-range-rank",
            if self.abelian {
                Status::asserted(rank == expected)
            } else {
                Status::Reported
            },
            residual,
            smallest - self.tol.rank_threshold,
        );
        r.details.insert("rank".into(), rank as f64);
        r.details.insert("dimension".into(), expected as f64);
        r.details.insert("singular-value-spread".into(), spread);
        r
    }

    fn kernel(&mut self, ctx: &LocalizationContext<f64>) -> AuditRow {
        let kernel = kernel_from_bank(ctx.bank());
        let hermitian = kernel.hermitian_residual();
        let mut reproduction = 0.0f64;
        for _ in 0..INVERSION_DRAWS {
            let f = random_signal(self.pair, &mut self.rng).to_function(self.pair.cosets());
            let coeffs = ctx.bank().analyze(&f);
            let again = kernel.reproduce(&coeffs);
            let d = max_abs_diff(again.matrix().as_slice(), coeffs.matrix().as_slice());
            reproduction = reproduction.max(d);
        }
        let hermitian_ok = hermitian <= self.tol.construction;
        let mut r = if self.abelian {
            let mut r = row(
                "reproducing-kernel",
                Status::asserted(hermitian_ok && reproduction <= self.tol.property),
                reproduction,
                (self.tol.property - reproduction).min(self.tol.construction - hermitian),
            );
            r.details.insert("reproduction".into(), reproduction);
            r
        } else {
            let mut r = row(
                "reproducing-kernel",
                Status::asserted(hermitian_ok),
                hermitian,
                self.tol.construction - hermitian,
            );
            r.details.insert("reproduction".into(), reproduction);
            r
        };
        r.details.insert("hermitian".into(), hermitian);
        r
    }

    fn sup_bound(&mut self) -> Result<AuditRow, AuditError> {
        let mut margin = f64::INFINITY;
        for _ in 0..BOUND_DRAWS {
            let scale = self.rng.random_range(0.5..2.0);
            let f = random_signal(self.pair, &mut self.rng).scale(Complex::new(scale, 0.0));
            let window = Window::from_signal(
                self.pair,
                &random_signal(self.pair, &mut self.rng).scale(Complex::new(1.0 / scale, 0.0)),
            );
            let c = stockwell_forward(self.pair, self.dual, &f, &window, self.alpha)?;
            margin = margin.min(f.norm_l2(self.pair.cosets()) * window.norm_l2() - c.norm_sup());
        }
        Ok(self.bound("sup-bound", true, margin))
    }

    fn localization(
        &mut self,
        ctx: &LocalizationContext<f64>,
    ) -> Result<Vec<AuditRow>, AuditError> {
        let mut margins: BTreeMap<String, f64> = BTreeMap::new();
        let mut leakage = 0.0f64;
        for _ in 0..BOUND_DRAWS {
            let u = random_symbol(self.pair, self.dual, &mut self.rng);
            let rep = bound_suite_with(ctx, &u)?;
            leakage = leakage.max(rep.bi_invariance_leakage);
            let lp = rep.lp_margin();
            for (k, v) in rep
                .bound_margins
                .into_iter()
                .chain([("lp".to_string(), lp)])
            {
                let e = margins.entry(k).or_insert(f64::INFINITY);
                *e = e.min(v);
            }
        }
        let one = SymbolFunction::constant(self.pair, self.dual, Complex::new(1.0, 0.0));
        let id_op = ctx.operator(&one, false)?;
        let n = self.pair.class_count();
        let identity_residual =
            spectral_norm(&(id_op.matrix() - DMatrix::<C<f64>>::identity(n, n)));

        let mut rows = vec![
            self.bound("l1-bound", true, margins["l1"]),
            self.bound("l2-bound", self.abelian, margins["l2"]),
            self.bound("linf-bound", self.abelian, margins["linf"]),
            self.bound("lp-bound", self.abelian, margins["lp"]),
        ];
        for r in &mut rows {
            r.details.insert("leakage".into(), leakage);
        }
        rows[2]
            .details
            .insert("identity-residual".into(), identity_residual);
        for (k, v) in margins.iter().filter(|(k, _)| k.starts_with("lp-")) {
            rows[3].details.insert(k.clone(), *v);
        }

        let mut adjoint = 0.0f64;
        for _ in 0..ADJOINT_DRAWS {
            let u = random_symbol(self.pair, self.dual, &mut self.rng);
            let a = ctx.operator(&u, false)?;
            let b = ctx.operator(&u.conj(), false)?;
            adjoint = adjoint.max(spectral_norm(&(a.matrix().adjoint() - b.matrix())));
        }
        rows.push(self.identity("adjoint", true, adjoint, self.tol.property));
        Ok(rows)
    }

    fn factorization(&mut self) -> Result<AuditRow, AuditError> {
        let mut worst = 0.0f64;
        for _ in 0..FACTORIZATION_DRAWS {
            let f = random_signal(self.pair, &mut self.rng).to_function(self.pair.cosets());
            let window = random_window(self.pair, &mut self.rng);
            let direct = stockwell_forward_function(self.pair, self.dual, &f, &window, self.alpha)?;
            let bank = crate::stockwell::AtomBank::build(self.pair, self.dual, &window, self.alpha);
            let via_atoms = bank.analyze(&f);
            worst = worst.max(max_abs_diff(
                direct.matrix().as_slice(),
                via_atoms.matrix().as_slice(),
            ));
        }
        Ok(self.identity("factorization", true, worst, self.tol.construction))
    }

    fn inversion(&mut self) -> Result<AuditRow, AuditError> {
        let cosets = self.pair.cosets();
        let mut worst = 0.0f64;
        let mut leakage = 0.0f64;
        for _ in 0..INVERSION_DRAWS {
            let f = random_signal(self.pair, &mut self.rng);
            let window = random_window(self.pair, &mut self.rng);
            let c = stockwell_forward(self.pair, self.dual, &f, &window, self.alpha)?;
            let back = stockwell_inverse(self.pair, self.dual, &c, &window, self.alpha)?;
            let diff = BiInvariantSignal::from_class_values(
                f.class_values()
                    .iter()
                    .zip(back.signal.class_values())
                    .map(|(a, b)| a - b)
                    .collect(),
            );
            worst = worst.max(diff.norm_l2(cosets));
            leakage = leakage.max(back.leakage);
        }
        let mut r = self.identity(
            "inversion-roundtrip",
            self.abelian,
            worst,
            self.tol.property,
        );
        r.details.insert("leakage".into(), leakage);
        Ok(r)
    }
}

fn audit_cell(
    entry: &CatalogEntry,
    dual: &SphericalDual<f64>,
    automorphism: &str,
    alpha: &GroupAutomorphism,
    seed: u64,
    tol: &Tolerances,
) -> Result<CellReport, AuditError> {
    let mut cell = Cell {
        pair: &entry.pair,
        dual,
        alpha,
        abelian: entry.abelian,
        tol,
        rng: cell_rng(seed, &entry.name, automorphism),
    };
    let window = random_window(cell.pair, &mut cell.rng);
    let ctx = LocalizationContext::new(cell.pair, dual, &window, alpha);

    let mut rows = cell.plancherel()?;
    rows.push(cell.orthogonality()?);
    rows.push(cell.closed_range(&ctx));
    rows.push(cell.kernel(&ctx));
    rows.push(cell.sup_bound()?);
    rows.extend(cell.localization(&ctx)?);
    rows.push(cell.factorization()?);
    rows.push(cell.inversion()?);
    rows.sort_by(|a, b| a.theorem.cmp(&b.theorem));
    Ok(CellReport {
        pair: entry.name.clone(),
        automorphism: automorphism.into(),
        abelian: entry.abelian,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_eight_has_four_cells_of_thirteen_rows() {
        let r = run_verify(&["cyclic-8"], 42, &Tolerances::default()).unwrap();
        assert_eq!(r.cells.len(), 4);
        for c in &r.cells {
            let ids: Vec<&str> = c.rows.iter().map(|r| r.theorem.as_str()).collect();
            assert_eq!(ids, THEOREM_IDS);
        }
        assert!(r.passed(), "{}", r.table());
        assert_eq!(r.count(Status::Reported), 0);
    }

    #[test]
    fn empty_and_unknown_selection() {
        let empty: [&str; 0] = [];
        assert_eq!(
            run_verify(&empty, 1, &Tolerances::default()),
            Err(AuditError::EmptySelection)
        );
        assert!(matches!(
            run_verify(&["nope"], 1, &Tolerances::default()),
            Err(AuditError::Catalog(CatalogError::UnknownPair(_)))
        ));
    }

    #[test]
    fn nonabelian_rows_split_into_asserted_and_reported() {
        let r = run_verify(&["sym-3"], 7, &Tolerances::default()).unwrap();
        for c in &r.cells {
            for row in &c.rows {
                let universal = matches!(
                    row.theorem.as_str(),
                    "plancherel"
                        | "parseval"
                        | "sup-bound"
                        | "l1-bound"
                        | "adjoint"
                        | "factorization"
                        | "reproducing-kernel"
                );
                assert_eq!(row.status != Status::Reported, universal, "{}", row.theorem);
            }
        }
        assert!(r.passed(), "{}", r.table());
    }

    #[test]
    fn same_seed_same_report() {
        let a = run_verify(&["dihedral-4", "cyclic-4"], 3, &Tolerances::default()).unwrap();
        let b = run_verify(
            &["cyclic-4", "dihedral-4", "cyclic-4"],
            3,
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = run_verify(&["cyclic-4"], 3, &Tolerances::default()).unwrap();
        assert_eq!(a.cells[0], c.cells[0]);
    }
}
