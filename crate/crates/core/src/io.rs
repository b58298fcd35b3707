//! File formats: pairs as JSON, signals and coefficient arrays as CSV.
//!
//! | file | header |
//! |------|--------|
//! | signal / window | `element_index,re,im` |
//! | symbol / coefficients | `t_index,phi_index,re,im` |
//! | spectrum | `phi_index,weight,re,im` |
//!
//! Floats are written in scientific notation with 17 significant digits, so
//! every finite `f64` survives a write/read round trip exactly.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::CatalogEntry;
use crate::group::{
    check_automorphism, check_subgroup, FiniteGroup, GroupAutomorphism, GroupError, GroupFunction,
};
use crate::spherical::{certify_gelfand, GelfandPair};
use crate::C;

pub const SIGNAL_HEADER: [&str; 3] = ["element_index", "re", "im"];
pub const COEFF_HEADER: [&str; 4] = ["t_index", "phi_index", "re", "im"];
pub const SPECTRUM_HEADER: [&str; 4] = ["phi_index", "weight", "re", "im"];

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl IoError {
    fn parse(line: u64, message: impl Into<String>) -> Self {
        Self::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<csv::Error> for IoError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map_or(0, |p| p.line());
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Self::Io(io),
            other => Self::parse(line, format!("{other:?}")),
        }
    }
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// On-disk description of a pair: multiplication table, subgroup members and
/// named automorphisms as permutations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub subgroup: Vec<usize>,
    #[serde(default)]
    pub automorphisms: BTreeMap<String, Vec<usize>>,
}

/// A pair read from disk with its validated automorphisms.
#[derive(Debug, Clone)]
pub struct LoadedPair {
    pub pair: GelfandPair,
    pub automorphisms: Vec<(String, GroupAutomorphism)>,
}

impl LoadedPair {
    pub fn automorphism(&self, name: &str) -> Option<&GroupAutomorphism> {
        self.automorphisms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
    }
}

impl From<&CatalogEntry> for LoadedPair {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            pair: e.pair.clone(),
            automorphisms: e.automorphisms.clone(),
        }
    }
}

impl PairFile {
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        let g = entry.pair.group();
        Self {
            order: g.order(),
            mul: g.table(),
            subgroup: entry.pair.subgroup().members().to_vec(),
            automorphisms: entry
                .automorphisms
                .iter()
                .map(|(n, a)| (n.clone(), a.perm().to_vec()))
                .collect(),
        }
    }

    /// Validates the group, subgroup and every automorphism, then certifies.
    /// Automorphisms that do not preserve `K` are rejected.
    pub fn load(&self) -> Result<LoadedPair, IoError> {
        if self.mul.len() != self.order {
            return Err(IoError::Schema(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.mul.len()
            )));
        }
        let g = FiniteGroup::from_table(&self.mul)?;
        let k = check_subgroup(&g, &self.subgroup)?;
        let mut automorphisms = Vec::with_capacity(self.automorphisms.len());
        for (name, perm) in &self.automorphisms {
            let a = check_automorphism(&g, perm)?;
            if !a.preserves(&k) {
                return Err(IoError::Schema(format!(
                    "automorphism '{name}' does not preserve the subgroup"
                )));
            }
            automorphisms.push((name.clone(), a));
        }
        if automorphisms.is_empty() {
            automorphisms.push(("id".into(), GroupAutomorphism::identity(&g)));
        }
        Ok(LoadedPair {
            pair: certify_gelfand(g, k),
            automorphisms,
        })
    }
}

pub fn read_pair(path: &Path) -> Result<LoadedPair, IoError> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    parse_pair(&text)?.load()
}

pub fn parse_pair(text: &str) -> Result<PairFile, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::parse(e.line() as u64, e.to_string()))
}

pub fn pair_to_json(file: &PairFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_pair(path: &Path, file: &PairFile) -> Result<(), IoError> {
    std::fs::write(path, pair_to_json(file))?;
    Ok(())
}

fn check_header(reader: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<(), IoError> {
    let header = reader.headers()?;
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != expected {
        return Err(IoError::Schema(format!(
            "expected header '{}', found '{}'",
            expected.join(","),
            got.join(",")
        )));
    }
    Ok(())
}

fn field<V: std::str::FromStr>(
    record: &csv::StringRecord,
    i: usize,
    line: u64,
) -> Result<V, IoError> {
    let raw = record
        .get(i)
        .ok_or_else(|| IoError::parse(line, format!("missing column {}", i + 1)))?;
    raw.trim()
        .parse()
        .map_err(|_| IoError::parse(line, format!("cannot parse '{raw}'")))
}

fn finite(x: f64, line: u64) -> Result<f64, IoError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(IoError::parse(line, "non-finite value"))
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input)
}

/// Reads a signal with one row per group element, in any order.
pub fn parse_signal(input: impl Read, order: usize) -> Result<GroupFunction<f64>, IoError> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &SIGNAL_HEADER)?;
    let mut values: Vec<Option<C<f64>>> = vec![None; order];
    let mut rows = 0usize;
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 3 {
            return Err(IoError::parse(
                line,
                format!("expected 3 fields, found {}", rec.len()),
            ));
        }
        let x: usize = field(&rec, 0, line)?;
        let re = finite(field(&rec, 1, line)?, line)?;
        let im = finite(field(&rec, 2, line)?, line)?;
        rows += 1;
        let slot = values.get_mut(x).ok_or_else(|| {
            IoError::Schema(format!(
                "element index {x} outside a group of order {order}"
            ))
        })?;
        if slot.replace(Complex::new(re, im)).is_some() {
            return Err(IoError::Schema(format!("element index {x} appears twice")));
        }
    }
    if rows != order {
        return Err(IoError::Schema(format!(
            "signal has {rows} rows, group order is {order}"
        )));
    }
    Ok(GroupFunction::new(
        values
            .into_iter()
            .map(|v| v.expect("all rows present"))
            .collect(),
    ))
}

pub fn read_signal(path: &Path, order: usize) -> Result<GroupFunction<f64>, IoError> {
    parse_signal(File::open(path)?, order)
}

pub fn signal_to_csv(f: &GroupFunction<f64>) -> String {
    let mut s = SIGNAL_HEADER.join(",");
    s.push('\n');
    for (x, z) in f.values().iter().enumerate() {
        s.push_str(&format!(
            "{x},{},{}\n",
            format_float(z.re),
            format_float(z.im)
        ));
    }
    s
}

pub fn write_signal(path: &Path, f: &GroupFunction<f64>) -> Result<(), IoError> {
    File::create(path)?.write_all(signal_to_csv(f).as_bytes())?;
    Ok(())
}

/// Reads a `times × phases` array (symbol or coefficients); every cell must
/// appear exactly once.
pub fn parse_matrix(
    input: impl Read,
    times: usize,
    phases: usize,
) -> Result<DMatrix<C<f64>>, IoError> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &COEFF_HEADER)?;
    let mut seen = vec![false; times * phases];
    let mut m = DMatrix::from_element(times, phases, Complex::new(0.0, 0.0));
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 4 {
            return Err(IoError::parse(
                line,
                format!("expected 4 fields, found {}", rec.len()),
            ));
        }
        let t: usize = field(&rec, 0, line)?;
        let p: usize = field(&rec, 1, line)?;
        let re = finite(field(&rec, 2, line)?, line)?;
        let im = finite(field(&rec, 3, line)?, line)?;
        if t >= times || p >= phases {
            return Err(IoError::Schema(format!(
                "cell ({t},{p}) outside a {times}×{phases} array"
            )));
        }
        if std::mem::replace(&mut seen[t * phases + p], true) {
            return Err(IoError::Schema(format!("cell ({t},{p}) appears twice")));
        }
        m[(t, p)] = Complex::new(re, im);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(IoError::Schema(format!(
            "cell ({},{}) is missing",
            missing / phases,
            missing % phases
        )));
    }
    Ok(m)
}

pub fn read_symbol(path: &Path, times: usize, phases: usize) -> Result<DMatrix<C<f64>>, IoError> {
    parse_matrix(File::open(path)?, times, phases)
}

pub fn read_coeffs(path: &Path, times: usize, phases: usize) -> Result<DMatrix<C<f64>>, IoError> {
    read_symbol(path, times, phases)
}

pub fn matrix_to_csv(m: &DMatrix<C<f64>>) -> String {
    let mut s = COEFF_HEADER.join(",");
    s.push('\n');
    for t in 0..m.nrows() {
        for p in 0..m.ncols() {
            let z = m[(t, p)];
            s.push_str(&format!(
                "{t},{p},{},{}\n",
                format_float(z.re),
                format_float(z.im)
            ));
        }
    }
    s
}

pub fn write_coeffs(path: &Path, m: &DMatrix<C<f64>>) -> Result<(), IoError> {
    File::create(path)?.write_all(matrix_to_csv(m).as_bytes())?;
    Ok(())
}

pub fn spectrum_to_csv(weights: &[f64], fhat: &[C<f64>]) -> String {
    let mut s = SPECTRUM_HEADER.join(",");
    s.push('\n');
    for (p, (w, z)) in weights.iter().zip(fhat).enumerate() {
        s.push_str(&format!(
            "{p},{},{},{}\n",
            format_float(*w),
            format_float(z.re),
            format_float(z.im)
        ));
    }
    s
}

/// Reads a spectrum; returns `(weights, values)` ordered by `phi_index`.
pub fn parse_spectrum(input: impl Read, phases: usize) -> Result<(Vec<f64>, Vec<C<f64>>), IoError> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &SPECTRUM_HEADER)?;
    let mut rows: Vec<Option<(f64, C<f64>)>> = vec![None; phases];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 4 {
            return Err(IoError::parse(
                line,
                format!("expected 4 fields, found {}", rec.len()),
            ));
        }
        let p: usize = field(&rec, 0, line)?;
        let w = finite(field(&rec, 1, line)?, line)?;
        let re = finite(field(&rec, 2, line)?, line)?;
        let im = finite(field(&rec, 3, line)?, line)?;
        let slot = rows
            .get_mut(p)
            .ok_or_else(|| IoError::Schema(format!("phi index {p} outside {phases} phases")))?;
        if slot.replace((w, Complex::new(re, im))).is_some() {
            return Err(IoError::Schema(format!("phi index {p} appears twice")));
        }
    }
    let mut weights = Vec::with_capacity(phases);
    let mut values = Vec::with_capacity(phases);
    for (p, r) in rows.into_iter().enumerate() {
        let (w, z) = r.ok_or_else(|| IoError::Schema(format!("phi index {p} is missing")))?;
        weights.push(w);
        values.push(z);
    }
    Ok((weights, values))
}
