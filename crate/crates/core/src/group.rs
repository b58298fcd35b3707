//! Finite groups given by Cayley tables, with the structure the rest of the
//! crate is built on: subgroups, automorphisms, double cosets, counting-measure
//! convolution and the projection onto bi-invariant functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scalar::{abs, abs2, cr, cz, Real, C};

/// Orders up to this size get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
/// Number of random triples tested above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry ({row}, {col}) = {value} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("subgroup member list is empty")]
    EmptySubgroup,
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup does not contain the identity")]
    MissingIdentity,
    #[error("not closed: {0}*{1} = {2} is not a member")]
    NotClosed(usize, usize, usize),
    #[error("map is not a bijection on the group elements")]
    NotBijection,
    #[error("not a homomorphism: a({0}*{1}) != a({0})*a({1})")]
    NotHomomorphism(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A finite group as a validated Cayley table. Elements are indices
/// `0..order`; Haar measure is counting measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and computes the identity and inverses.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut mul = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                mul.push(value);
            }
        }
        let m = |a: usize, b: usize| mul[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;

        let inv = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| m(x, y) == identity && m(y, x) == identity)
                    .ok_or(GroupError::NoInverse(x))
            })
            .collect::<Result<Vec<_>, _>>()?;

        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = m(a, b);
                    for c in 0..order {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6173_736f_6369_6174);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                );
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }

        Ok(Self {
            order,
            mul,
            identity,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

/// Convenience wrapper matching the table-in, group-out operation.
pub fn build_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_table(table)
}

/// A subgroup, stored as sorted member indices plus a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        check_subgroup(g, &[g.identity()]).expect("identity is a subgroup")
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let all: Vec<usize> = g.elements().collect();
        check_subgroup(g, &all).expect("group is a subgroup of itself")
    }
}

/// Checks that `members` is a subgroup of `g`. Closure under products is
/// enough in a finite group; inverses follow.
pub fn check_subgroup(g: &FiniteGroup, members: &[usize]) -> Result<Subgroup, GroupError> {
    if members.is_empty() {
        return Err(GroupError::EmptySubgroup);
    }
    let mut mask = vec![false; g.order()];
    for &x in members {
        if x >= g.order() {
            return Err(GroupError::IndexOutOfRange {
                index: x,
                order: g.order(),
            });
        }
        mask[x] = true;
    }
    if !mask[g.identity()] {
        return Err(GroupError::MissingIdentity);
    }
    let mut sorted: Vec<usize> = (0..g.order()).filter(|&x| mask[x]).collect();
    sorted.dedup();
    for &a in &sorted {
        for &b in &sorted {
            let ab = g.mul(a, b);
            if !mask[ab] {
                return Err(GroupError::NotClosed(a, b, ab));
            }
        }
    }
    Ok(Subgroup {
        members: sorted,
        mask,
    })
}

/// A group automorphism given as a permutation of element indices.
///
/// `delta` is the modulus of the automorphism with respect to Haar measure.
/// Counting measure is permutation invariant, so it is always 1 here; it is
/// kept so the dilation formulas carry their usual `delta^(1/2)` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAutomorphism {
    perm: Vec<usize>,
    delta: f64,
}

impl GroupAutomorphism {
    pub fn identity(g: &FiniteGroup) -> Self {
        Self {
            perm: g.elements().collect(),
            delta: 1.0,
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Whether `α(K) = K`.
    pub fn preserves(&self, k: &Subgroup) -> bool {
        k.members().iter().all(|&x| k.contains(self.perm[x]))
    }
}

/// Validates that `perm` is a bijective homomorphism of `g`.
pub fn check_automorphism(
    g: &FiniteGroup,
    perm: &[usize],
) -> Result<GroupAutomorphism, GroupError> {
    if perm.len() != g.order() {
        return Err(GroupError::DimensionMismatch {
            expected: g.order(),
            got: perm.len(),
        });
    }
    let mut seen = vec![false; g.order()];
    for &y in perm {
        if y >= g.order() || seen[y] {
            return Err(GroupError::NotBijection);
        }
        seen[y] = true;
    }
    for a in g.elements() {
        for b in g.elements() {
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                return Err(GroupError::NotHomomorphism(a, b));
            }
        }
    }
    Ok(GroupAutomorphism {
        perm: perm.to_vec(),
        delta: 1.0,
    })
}

/// Inner automorphism `x ↦ c x c⁻¹`.
pub fn conjugation(g: &FiniteGroup, c: usize) -> GroupAutomorphism {
    let ci = g.inv(c);
    GroupAutomorphism {
        perm: g.elements().map(|x| g.mul(g.mul(c, x), ci)).collect(),
        delta: 1.0,
    }
}

/// Partition of `G` into double cosets `KxK`.
///
/// Class 0 is always `K` itself (the class of the identity); the remaining
/// classes are ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl DoubleCosetPartition {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class of `x⁻¹` for any `x` in class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }
}

pub fn double_cosets(g: &FiniteGroup, k: &Subgroup) -> DoubleCosetPartition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seeds = vec![g.identity()];
    seeds.extend(g.elements().filter(|&x| x != g.identity()));
    for x in seeds {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for &k1 in k.members() {
            let k1x = g.mul(k1, x);
            for &k2 in k.members() {
                let y = g.mul(k1x, k2);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    DoubleCosetPartition {
        class_of,
        classes,
        inverse_class,
    }
}

/// A complex function on the group, one value per element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction<T: Real> {
    values: Vec<C<T>>,
}

impl<T: Real> GroupFunction<T> {
    pub fn new(values: Vec<C<T>>) -> Self {
        Self { values }
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            values: vec![cz(); order],
        }
    }

    /// Point mass at `a`.
    pub fn delta(order: usize, a: usize) -> Self {
        let mut f = Self::zeros(order);
        f.values[a] = cr(T::one());
        f
    }

    pub fn constant(order: usize, value: C<T>) -> Self {
        Self {
            values: vec![value; order],
        }
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C<T>> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm_l1(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, z| acc + abs(*z))
    }

    pub fn norm_l2(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, z| acc + abs2(*z))
            .sqrt()
    }

    pub fn norm_sup(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, z| acc.max(abs(*z)))
    }

    /// `⟨self, other⟩ = Σ_x self(x) conj(other(x))`.
    pub fn inner(&self, other: &Self) -> C<T> {
        crate::scalar::inner(&self.values, &other.values)
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            values: self.values.iter().map(|z| f(*z)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }
}

impl<T: Real> std::ops::Index<usize> for GroupFunction<T> {
    type Output = C<T>;
    fn index(&self, i: usize) -> &C<T> {
        &self.values[i]
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), GroupError> {
    if expected == got {
        Ok(())
    } else {
        Err(GroupError::DimensionMismatch { expected, got })
    }
}

/// `(f ∗ h)(x) = Σ_y f(y) h(y⁻¹x)` under counting measure.
pub fn convolve<T: Real>(
    g: &FiniteGroup,
    f: &GroupFunction<T>,
    h: &GroupFunction<T>,
) -> Result<GroupFunction<T>, GroupError> {
    check_len(g.order(), f.len())?;
    check_len(g.order(), h.len())?;
    let mut out = vec![cz::<T>(); g.order()];
    for y in g.elements() {
        let fy = f[y];
        if fy == cz() {
            continue;
        }
        // x = y z ranges over G as z does.
        for z in g.elements() {
            out[g.mul(y, z)] += fy * h[z];
        }
    }
    Ok(GroupFunction::new(out))
}

/// Orthogonal projection onto `K`-bi-invariant functions: the average of
/// `f(k x k')` over `K × K`, which equals the mean of `f` over the double
/// coset of `x`.
pub fn bi_invariant_project<T: Real>(
    cosets: &DoubleCosetPartition,
    f: &GroupFunction<T>,
) -> Result<GroupFunction<T>, GroupError> {
    check_len(cosets.group_order(), f.len())?;
    let means = class_means(cosets, f);
    Ok(GroupFunction::new(
        (0..f.len()).map(|x| means[cosets.class_of(x)]).collect(),
    ))
}

/// Mean value of `f` on each double coset.
pub fn class_means<T: Real>(cosets: &DoubleCosetPartition, f: &GroupFunction<T>) -> Vec<C<T>> {
    cosets
        .classes()
        .iter()
        .map(|cls| {
            // Offsetting by the first value keeps constant classes exact.
            let base = f[cls[0]];
            let dev = cls.iter().fold(cz::<T>(), |acc, &x| acc + (f[x] - base));
            base + dev / cr(T::count(cls.len()))
        })
        .collect()
}

/// Largest deviation of `f` from its class mean.
pub fn bi_invariance_defect<T: Real>(cosets: &DoubleCosetPartition, f: &GroupFunction<T>) -> T {
    let means = class_means(cosets, f);
    (0..f.len()).fold(T::zero(), |acc, x| {
        acc.max(abs(f[x] - means[cosets.class_of(x)]))
    })
}
