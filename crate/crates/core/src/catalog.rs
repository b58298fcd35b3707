//! Built-in Gelfand pairs with their `K`-preserving automorphisms.
//!
//! Every group is generated programmatically (modular arithmetic or
//! permutation composition) and goes through [`FiniteGroup::from_table`]
//! validation before use. Entries are built on first access and cached.

use std::sync::OnceLock;

use thiserror::Error;

use crate::group::{check_automorphism, GroupAutomorphism, GroupError};
use crate::spherical::{certify_gelfand, GelfandPair};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown pair '{0}'")]
    UnknownPair(String),
    #[error("catalog entry '{name}' failed validation: {reason}")]
    Invalid { name: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A certified Gelfand pair with named automorphisms, each satisfying
/// `α(K) = K`.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub pair: GelfandPair,
    pub automorphisms: Vec<(String, GroupAutomorphism)>,
    pub abelian: bool,
    pub notes: String,
}

impl CatalogEntry {
    pub fn automorphism(&self, name: &str) -> Option<&GroupAutomorphism> {
        self.automorphisms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
    }

    /// Assembles an entry from parts and checks the catalog invariants.
    pub fn new(
        name: &str,
        pair: GelfandPair,
        automorphisms: Vec<(String, GroupAutomorphism)>,
        notes: &str,
    ) -> Result<Self, CatalogError> {
        if !pair.certified() {
            return Err(CatalogError::Invalid {
                name: name.into(),
                reason: "bi-invariant algebra is not commutative".into(),
            });
        }
        if let Some((a, _)) = automorphisms
            .iter()
            .find(|(_, a)| !a.preserves(pair.subgroup()))
        {
            return Err(CatalogError::Invalid {
                name: name.into(),
                reason: format!("automorphism '{a}' does not preserve K"),
            });
        }
        let abelian = pair.is_abelian();
        Ok(Self {
            name: name.into(),
            pair,
            automorphisms,
            abelian,
            notes: notes.into(),
        })
    }
}

const NAMES: [&str; 12] = [
    "cyclic-4",
    "cyclic-8",
    "cyclic-16",
    "dihedral-4",
    "dihedral-6",
    "dihedral-8",
    "sym-3",
    "sym-4",
    "sym-5",
    "hypercube-2",
    "hypercube-3",
    "full-sym-3",
];

static ENTRIES: [OnceLock<CatalogEntry>; NAMES.len()] = [const { OnceLock::new() }; NAMES.len()];

pub fn list_pairs() -> &'static [&'static str] {
    &NAMES
}

pub fn get_pair(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    let idx = NAMES
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| CatalogError::UnknownPair(name.into()))?;
    if let Some(e) = ENTRIES[idx].get() {
        return Ok(e);
    }
    let built = build(name)?;
    Ok(ENTRIES[idx].get_or_init(|| built))
}

fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (family, n) = name
        .rsplit_once('-')
        .and_then(|(f, n)| n.parse::<usize>().ok().map(|n| (f, n)))
        .ok_or_else(|| CatalogError::UnknownPair(name.into()))?;
    match family {
        "cyclic" => cyclic_entry(name, n),
        "dihedral" => dihedral_entry(name, n),
        "sym" => sym_entry(name, n),
        "hypercube" => hypercube_entry(name, n),
        "full-sym" => full_sym_entry(name, n),
        _ => Err(CatalogError::UnknownPair(name.into())),
    }
}

fn units(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|&k| gcd(k, n) == 1).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cyclic_entry(name: &str, n: usize) -> Result<CatalogEntry, CatalogError> {
    let g = groups::cyclic(n);
    let mut autos = Vec::new();
    for k in units(n) {
        let perm: Vec<usize> = (0..n).map(|x| k * x % n).collect();
        autos.push((format!("mul-{k}"), check_automorphism(&g, &perm)?));
    }
    let k = crate::group::Subgroup::trivial(&g);
    CatalogEntry::new(
        name,
        certify_gelfand(g, k),
        autos,
        "cyclic group with trivial subgroup; automorphisms x -> kx for units k",
    )
}

fn dihedral_entry(name: &str, n: usize) -> Result<CatalogEntry, CatalogError> {
    let d = groups::dihedral(n);
    let mut autos = Vec::new();
    // r^j -> r^{kj}, s r^j -> s r^{kj}; these fix the reflection s.
    for k in units(n) {
        let perm: Vec<usize> = (0..2 * n)
            .map(|x| {
                if x < n {
                    k * x % n
                } else {
                    n + k * (x - n) % n
                }
            })
            .collect();
        autos.push((format!("mul-{k}"), check_automorphism(&d.group, &perm)?));
    }
    let s = d.index_of(&groups::reflection(n));
    let k = crate::group::check_subgroup(&d.group, &[d.group.identity(), s])?;
    CatalogEntry::new(
        name,
        certify_gelfand(d.group, k),
        autos,
        "dihedral group of the regular n-gon with K generated by one reflection",
    )
}

fn sym_entry(name: &str, n: usize) -> Result<CatalogEntry, CatalogError> {
    let s = groups::symmetric(n);
    let k = s.stabilizer(n - 1);
    let autos = s.conjugations_preserving(&k, n)?;
    CatalogEntry::new(
        name,
        certify_gelfand(s.group, k),
        autos,
        "symmetric group with the stabilizer of the last point",
    )
}

fn hypercube_entry(name: &str, n: usize) -> Result<CatalogEntry, CatalogError> {
    let h = groups::hyperoctahedral(n);
    // Permutations of the 2n signed axes that never flip a sign: a copy of S_n.
    let k = h.subgroup_where(|p| p[..n].iter().all(|&y| y < n))?;
    let autos = h.conjugations_preserving(&k, n)?;
    CatalogEntry::new(
        name,
        certify_gelfand(h.group, k),
        autos,
        "wreath product Z_2^n x| S_n acting on the hypercube, with K = S_n",
    )
}

fn full_sym_entry(name: &str, n: usize) -> Result<CatalogEntry, CatalogError> {
    let s = groups::symmetric(n);
    let k = crate::group::Subgroup::whole(&s.group);
    let autos = s.conjugations_preserving(&k, n)?;
    CatalogEntry::new(
        name,
        certify_gelfand(s.group, k),
        autos,
        "degenerate pair with K = G: one double coset",
    )
}

/// Programmatic group constructions.
pub mod groups {
    use std::collections::{BTreeSet, HashMap};

    use crate::group::{
        check_subgroup, conjugation, FiniteGroup, GroupAutomorphism, GroupError, Subgroup,
    };

    /// `Z_n` under addition.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(&table).expect("cyclic table is a group")
    }

    /// A group realized by permutations, with `group` element `i`
    /// corresponding to `perms[i]`. The product is composition:
    /// `(ab)(x) = a(b(x))`.
    #[derive(Debug, Clone)]
    pub struct PermGroup {
        pub group: FiniteGroup,
        pub perms: Vec<Vec<usize>>,
        index: HashMap<Vec<usize>, usize>,
    }

    impl PermGroup {
        /// Builds the Cayley table of a set of permutations closed under
        /// composition. The identity should come first so it gets index 0.
        pub fn from_elements(perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
            let index: HashMap<Vec<usize>, usize> = perms
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect();
            let mut table = Vec::with_capacity(perms.len());
            for a in &perms {
                let mut row = Vec::with_capacity(perms.len());
                for b in &perms {
                    let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                    let idx = *index.get(&ab).ok_or(GroupError::NotClosed(
                        index[a],
                        index[b],
                        usize::MAX,
                    ))?;
                    row.push(idx);
                }
                table.push(row);
            }
            Ok(Self {
                group: FiniteGroup::from_table(&table)?,
                perms,
                index,
            })
        }

        /// Closure of the generators, elements sorted lexicographically.
        pub fn generated_by(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
            let id: Vec<usize> = (0..degree).collect();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            seen.insert(id.clone());
            let mut frontier = vec![id];
            while let Some(p) = frontier.pop() {
                for g in generators {
                    let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
            Self::from_elements(seen.into_iter().collect())
        }

        pub fn index_of(&self, perm: &[usize]) -> usize {
            self.index[perm]
        }

        pub fn subgroup_where(
            &self,
            pred: impl Fn(&[usize]) -> bool,
        ) -> Result<Subgroup, GroupError> {
            let members: Vec<usize> = (0..self.perms.len())
                .filter(|&i| pred(&self.perms[i]))
                .collect();
            check_subgroup(&self.group, &members)
        }

        /// Elements fixing `point`.
        pub fn stabilizer(&self, point: usize) -> Subgroup {
            self.subgroup_where(|p| p[point] == point)
                .expect("point stabilizers are subgroups")
        }

        /// Identity plus conjugation by the transposition (0 1) and the
        /// 3-cycle (0 1 2), keeping those that map `k` onto itself.
        pub fn conjugations_preserving(
            &self,
            k: &Subgroup,
            points: usize,
        ) -> Result<Vec<(String, GroupAutomorphism)>, GroupError> {
            let degree = self.perms[0].len();
            let mut out = vec![("id".to_string(), GroupAutomorphism::identity(&self.group))];
            let mut candidates = Vec::new();
            if points >= 2 {
                candidates.push(("conj-01", cycle_on(degree, points, &[0, 1])));
            }
            if points >= 3 {
                candidates.push(("conj-012", cycle_on(degree, points, &[0, 1, 2])));
            }
            for (name, perm) in candidates {
                let Some(&c) = self.index.get(&perm) else {
                    continue;
                };
                let alpha = conjugation(&self.group, c);
                if alpha.preserves(k) {
                    // Re-validate through the public checker.
                    let alpha = crate::group::check_automorphism(&self.group, alpha.perm())?;
                    out.push((name.to_string(), alpha));
                }
            }
            Ok(out)
        }
    }

    /// Permutation of `degree` points cycling `cycle` among the first
    /// `points` coordinates. For signed-axis actions (`degree = 2 points`)
    /// the same cycle is applied to the negative axes.
    fn cycle_on(degree: usize, points: usize, cycle: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..degree).collect();
        for (i, &c) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            p[c] = next;
            if degree == 2 * points {
                p[c + points] = next + points;
            }
        }
        p
    }

    /// All permutations of `n` points in lexicographic order.
    pub fn symmetric(n: usize) -> PermGroup {
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n)
                .rev()
                .find(|&j| cur[j] > cur[i])
                .expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        PermGroup::from_elements(perms).expect("symmetric group is closed")
    }

    /// Rotation `i ↦ i + 1` of the n-gon.
    pub fn rotation(n: usize) -> Vec<usize> {
        (0..n).map(|i| (i + 1) % n).collect()
    }

    /// Reflection `i ↦ −i` of the n-gon.
    pub fn reflection(n: usize) -> Vec<usize> {
        (0..n).map(|i| (n - i) % n).collect()
    }

    /// Dihedral group of order `2n`: index `j` is `r^j`, index `n + j` is
    /// `s r^j`.
    pub fn dihedral(n: usize) -> PermGroup {
        let s = reflection(n);
        let mut perms = Vec::with_capacity(2 * n);
        for j in 0..n {
            perms.push((0..n).map(|i| (i + j) % n).collect::<Vec<_>>());
        }
        for j in 0..n {
            let rj = &perms[j];
            let srj: Vec<usize> = rj.iter().map(|&x| s[x]).collect();
            perms.push(srj);
        }
        PermGroup::from_elements(perms).expect("dihedral group is closed")
    }

    /// Signed permutations of `n` axes, acting on the `2n` points
    /// `{+e_i} ∪ {−e_i}` (point `i` is `+e_i`, point `n + i` is `−e_i`).
    pub fn hyperoctahedral(n: usize) -> PermGroup {
        let degree = 2 * n;
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            gens.push(cycle_on(degree, n, &[i, i + 1]));
        }
        let mut flip: Vec<usize> = (0..degree).collect();
        flip.swap(0, n);
        gens.push(flip);
        PermGroup::generated_by(degree, &gens).expect("generated set is closed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugation;

    #[test]
    fn cyclic_eight_entry() {
        let e = get_pair("cyclic-8").unwrap();
        assert_eq!(e.pair.order(), 8);
        assert!(e.pair.subgroup().is_trivial());
        let names: Vec<&str> = e.automorphisms.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["mul-1", "mul-3", "mul-5", "mul-7"]);
        assert!(e.abelian);
    }

    #[test]
    fn sym_three_entry() {
        let e = get_pair("sym-3").unwrap();
        assert_eq!(e.pair.class_count(), 2);
        // Brute force: all automorphisms of S_3 are inner; keep those with α(K)=K.
        let g = e.pair.group();
        let preserving: Vec<usize> = g
            .elements()
            .filter(|&c| conjugation(g, c).preserves(e.pair.subgroup()))
            .collect();
        assert_eq!(preserving.len(), 2);
        assert_eq!(e.automorphisms.len(), 2);
        for (_, a) in &e.automorphisms {
            assert!(a.preserves(e.pair.subgroup()));
        }
    }

    #[test]
    fn dihedral_six_entry() {
        let e = get_pair("dihedral-6").unwrap();
        assert_eq!(e.pair.order(), 12);
        assert_eq!(e.pair.subgroup().order(), 2);
        assert!(e.pair.certified());
        assert!(!e.abelian);
        assert_eq!(e.automorphisms.len(), 2);
    }

    #[test]
    fn catalog_contents() {
        let expect = [
            ("cyclic-4", 4, 4),
            ("cyclic-8", 8, 8),
            ("cyclic-16", 16, 16),
            ("dihedral-4", 8, 3),
            ("dihedral-6", 12, 4),
            ("dihedral-8", 16, 5),
            ("sym-3", 6, 2),
            ("sym-4", 24, 2),
            ("sym-5", 120, 2),
            ("hypercube-2", 8, 3),
            ("hypercube-3", 48, 4),
            ("full-sym-3", 6, 1),
        ];
        assert_eq!(list_pairs().len(), expect.len());
        for (name, order, classes) in expect {
            let e = get_pair(name).unwrap();
            assert_eq!(e.pair.order(), order, "{name}");
            assert_eq!(e.pair.class_count(), classes, "{name}");
            assert!(e.pair.certified(), "{name}");
            assert!(!e.automorphisms.is_empty());
        }
    }

    #[test]
    fn unknown_pair() {
        assert_eq!(
            get_pair("cyclic-5").unwrap_err(),
            CatalogError::UnknownPair("cyclic-5".into())
        );
        assert!(get_pair("nonsense").is_err());
    }

    #[test]
    fn sym_five_builds_quickly() {
        let start = std::time::Instant::now();
        let e = build("sym-5").unwrap();
        let dual = crate::spherical::SphericalDual::<f64>::compute(&e.pair).unwrap();
        assert_eq!(dual.functions().len(), e.pair.class_count());
        assert!(start.elapsed().as_secs_f64() < 10.0);
    }
}
