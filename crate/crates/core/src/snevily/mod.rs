//! Sums `a_i + b_j` of two k-subsets: distinguished permutations, the
//! determinant polynomial over independent indeterminates, permutations with
//! pairwise distinct sums, and the determinant identities linking them to
//! characters.
//!
//! Every operation here depends on `A` and `B` only through the `k x k`
//! matrix of group indices of `a_i + b_j`, captured by [`SumMatrix`].

mod identities;
mod lemma4;
mod polynomial;
mod search;

#[cfg(test)]
mod tests;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

pub use identities::{
    cauchy_binet_check, cauchy_binet_check_with_budget, char2_identity_check, char2_identity_check_with_budget, lemma4_indicator_phi,
    sum_matrix_values, theorem1_determinants, verify_theorem1_witness,
};
pub use lemma4::{count_attaining, count_attaining_with_bound, lemma4_permutation, DEFAULT_MAX_K};
pub use polynomial::{reduce_mod_char, snevily_polynomial, snevily_polynomial_with_bound, SnevilyPolynomial};
pub use search::find_snevily_permutation;

/// A bijection of `0..k` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("{perm:?}")));
            }
        }
        Ok(Self(perm))
    }

    pub fn identity(k: usize) -> Self {
        Self((0..k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn sign(&self) -> i64 {
        combinatorics::sign(&self.0)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_index_list(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_index_list(s)?)
    }
}

/// Sorted group indices of the sums `a_i + b_{sigma(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultisetSignature(Vec<usize>);

impl MultisetSignature {
    /// Sorts `indices`.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        Self(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultisetSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_index_list(f, &self.0)
    }
}

impl FromStr for MultisetSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::new(parse_index_list(s)?))
    }
}

fn write_index_list(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [i,j,...], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad index {t:?} in {s:?}"))))
        .collect()
}

/// Group indices of `a_i + b_j`, row `i`, column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumMatrix {
    k: usize,
    m: usize,
    sums: Vec<usize>,
}

impl SumMatrix {
    /// Validates that `A` and `B` are duplicate-free sets of equal size.
    pub fn new(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::SizeMismatch(format!("|A| = {}, |B| = {}", a.len(), b.len())));
        }
        let ai = distinct_indices(spec, a)?;
        let bi = distinct_indices(spec, b)?;
        Ok(Self::from_indices(spec, &ai, &bi))
    }

    /// From group indices, assumed distinct within each side and of equal length.
    pub fn from_indices(spec: &GroupSpec, a: &[usize], b: &[usize]) -> Self {
        debug_assert_eq!(a.len(), b.len());
        let sums = a.iter().flat_map(|&x| b.iter().map(move |&y| spec.add_index(x, y))).collect();
        Self { k: a.len(), m: spec.size(), sums }
    }

    /// From a precomputed `m x m` addition table.
    pub fn from_table(table: &[usize], m: usize, a: &[usize], b: &[usize]) -> Self {
        let sums = a.iter().flat_map(|&x| b.iter().map(move |&y| table[x * m + y])).collect();
        Self { k: a.len(), m, sums }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Order of the ambient group.
    pub fn group_order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.sums[i * self.k + j]
    }

    pub fn signature(&self, sigma: &[usize]) -> MultisetSignature {
        MultisetSignature::new((0..self.k).map(|i| self.get(i, sigma[i])).collect())
    }
}

fn distinct_indices(spec: &GroupSpec, set: &[GroupElement]) -> Result<Vec<usize>> {
    let mut seen = HashSet::new();
    set.iter()
        .map(|g| {
            let i = spec.index_of(g)?;
            if !seen.insert(i) {
                return Err(Error::DuplicateElement(g.to_string()));
            }
            Ok(i)
        })
        .collect()
}

/// The `m x m` table of `index(g_i + g_j)`.
pub fn addition_table(spec: &GroupSpec) -> Vec<usize> {
    let m = spec.size();
    (0..m * m).map(|t| spec.add_index(t / m, t % m)).collect()
}

/// Sorted indices of `a_i + b_{sigma(i)}`.
pub fn multiset_signature(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], sigma: &Permutation) -> Result<MultisetSignature> {
    let sums = SumMatrix::new(spec, a, b)?;
    if sigma.len() != sums.k() {
        return Err(Error::SizeMismatch(format!("permutation of {} for sets of size {}", sigma.len(), sums.k())));
    }
    Ok(sums.signature(sigma.as_slice()))
}
