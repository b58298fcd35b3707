//! Structure constants of the bi-invariant (Hecke) convolution algebra in the
//! basis of double-coset indicators.

use crate::group::{DoubleCosetPartition, FiniteGroup};

/// `1_{C_i} ∗ 1_{C_j} = Σ_l c[i][j][l] 1_{C_l}`, with integer constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeStructure {
    classes: usize,
    constants: Vec<u64>,
}

impl HeckeStructure {
    pub fn compute(g: &FiniteGroup, cosets: &DoubleCosetPartition) -> Self {
        let n = cosets.len();
        let mut constants = vec![0u64; n * n * n];
        // (1_{C_i} ∗ 1_{C_j})(x) = #{ y ∈ C_i : y⁻¹x ∈ C_j }, constant on classes.
        for l in 0..n {
            let x = cosets.representative(l);
            for (i, ci) in cosets.classes().iter().enumerate() {
                for &y in ci {
                    let j = cosets.class_of(g.mul(g.inv(y), x));
                    constants[(i * n + j) * n + l] += 1;
                }
            }
        }
        Self {
            classes: n,
            constants,
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        let n = self.classes;
        self.constants[(i * n + j) * n + l]
    }

    /// Matrix of left multiplication by `1_{C_i}`: column `j` holds the
    /// coordinates of `1_{C_i} ∗ 1_{C_j}`.
    pub fn left_multiplication(&self, i: usize) -> Vec<Vec<u64>> {
        let n = self.classes;
        (0..n)
            .map(|l| (0..n).map(|j| self.get(i, j, l)).collect())
            .collect()
    }

    /// First pair of basis indices whose left-multiplication matrices fail
    /// to commute, or `None` when the algebra is commutative.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.classes;
        let mats: Vec<Vec<Vec<u64>>> = (0..n).map(|i| self.left_multiplication(i)).collect();
        let product = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>, r: usize, c: usize| -> u64 {
            (0..n).map(|m| a[r][m] * b[m][c]).sum()
        };
        for a in 0..n {
            for b in (a + 1)..n {
                for r in 0..n {
                    for c in 0..n {
                        if product(&mats[a], &mats[b], r, c) != product(&mats[b], &mats[a], r, c) {
                            return Some((a, b));
                        }
                    }
                }
            }
        }
        None
    }
}
