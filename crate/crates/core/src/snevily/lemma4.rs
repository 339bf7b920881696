use super::{MultisetSignature, Permutation, SumMatrix};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Default largest `k` for enumerations over `S_k`.
pub const DEFAULT_MAX_K: usize = 8;

/// A permutation whose multiset of sums no other permutation attains.
///
/// Pivot on `g = a + b` for the first unmatched `a` and `b` in input order,
/// match every unmatched `a_i` whose partner `g - a_i` is an unmatched `b`,
/// and repeat on what is left.
pub fn lemma4_permutation(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<Permutation> {
    let sums = SumMatrix::new(spec, a, b)?;
    if sums.k() == 0 {
        return Err(Error::SizeMismatch("sets must be nonempty".into()));
    }
    Ok(Permutation(sums.lemma4()))
}

impl SumMatrix {
    pub fn lemma4(&self) -> Vec<usize> {
        let k = self.k;
        let mut perm = vec![usize::MAX; k];
        let mut row_free = vec![true; k];
        let mut col_free = vec![true; k];
        let mut left = k;
        while left > 0 {
            let i0 = row_free.iter().position(|&f| f).expect("rows remain");
            let j0 = col_free.iter().position(|&f| f).expect("columns remain");
            let g = self.get(i0, j0);
            for i in 0..k {
                if !row_free[i] {
                    continue;
                }
                // b is a set, so at most one column hits g in each row
                if let Some(j) = (0..k).find(|&j| col_free[j] && self.get(i, j) == g) {
                    perm[i] = j;
                    row_free[i] = false;
                    col_free[j] = false;
                    left -= 1;
                }
            }
        }
        perm
    }

    /// Number of permutations whose multiset of sums equals `target`.
    pub fn count_attaining(&self, target: &[usize]) -> u64 {
        if target.len() != self.k {
            return 0;
        }
        // multiplicities of the target, compressed to the distinct values
        let mut values: Vec<usize> = target.to_vec();
        values.sort_unstable();
        values.dedup();
        let mut need: Vec<u32> = vec![0; values.len()];
        for t in target {
            need[values.binary_search(t).expect("present")] += 1;
        }
        // slot[i][j] = which value a_i + b_j hits, if any
        let slot: Vec<Option<usize>> = self.sums.iter().map(|s| values.binary_search(s).ok()).collect();
        let mut used = vec![false; self.k];
        self.count_rec(0, &slot, &mut need, &mut used)
    }

    fn count_rec(&self, i: usize, slot: &[Option<usize>], need: &mut [u32], used: &mut [bool]) -> u64 {
        if i == self.k {
            return 1;
        }
        let mut total = 0;
        for j in 0..self.k {
            if used[j] {
                continue;
            }
            let Some(v) = slot[i * self.k + j] else { continue };
            if need[v] == 0 {
                continue;
            }
            need[v] -= 1;
            used[j] = true;
            total += self.count_rec(i + 1, slot, need, used);
            used[j] = false;
            need[v] += 1;
        }
        total
    }
}

/// Number of `sigma` in `S_k` with the given multiset of sums, for `k` up to
/// [`DEFAULT_MAX_K`].
pub fn count_attaining(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], target: &MultisetSignature) -> Result<u64> {
    count_attaining_with_bound(spec, a, b, target, DEFAULT_MAX_K)
}

pub fn count_attaining_with_bound(
    spec: &GroupSpec,
    a: &[GroupElement],
    b: &[GroupElement],
    target: &MultisetSignature,
    max_k: usize,
) -> Result<u64> {
    let sums = SumMatrix::new(spec, a, b)?;
    check_k(sums.k(), max_k)?;
    Ok(sums.count_attaining(target.as_slice()))
}

pub(crate) fn check_k(k: usize, max_k: usize) -> Result<()> {
    if k > max_k {
        return Err(Error::BudgetExceeded { what: "k (permutations of k elements)", needed: k as u128, limit: max_k as u128 });
    }
    Ok(())
}
