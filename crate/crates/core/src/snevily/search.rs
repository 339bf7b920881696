use super::{Permutation, SumMatrix};
use crate::error::Result;
use crate::group::{GroupElement, GroupSpec};

/// A permutation with `a_i + b_{pi(i)}` pairwise distinct, or `None` when
/// the exhaustive search finds none.
pub fn find_snevily_permutation(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<Option<Permutation>> {
    let sums = SumMatrix::new(spec, a, b)?;
    Ok(sums.snevily().map(Permutation))
}

impl SumMatrix {
    /// Backtracking; the next row is the one with the fewest usable columns
    /// (lowest index on ties), columns are tried in ascending order.
    pub fn snevily(&self) -> Option<Vec<usize>> {
        let mut state = Search {
            sums: self,
            perm: vec![usize::MAX; self.k],
            col_used: vec![false; self.k],
            sum_used: vec![false; self.m],
        };
        state.descend(self.k).then_some(state.perm)
    }
}

struct Search<'a> {
    sums: &'a SumMatrix,
    perm: Vec<usize>,
    col_used: Vec<bool>,
    sum_used: Vec<bool>,
}

impl Search<'_> {
    fn usable(&self, i: usize, j: usize) -> bool {
        !self.col_used[j] && !self.sum_used[self.sums.get(i, j)]
    }

    fn descend(&mut self, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let k = self.sums.k;
        let mut best: Option<(usize, usize)> = None;
        for i in (0..k).filter(|&i| self.perm[i] == usize::MAX) {
            let options = (0..k).filter(|&j| self.usable(i, j)).count();
            if best.is_none_or(|(_, o)| options < o) {
                best = Some((i, options));
            }
        }
        let (i, options) = best.expect("a row is unassigned");
        if options == 0 {
            return false;
        }
        for j in 0..k {
            if !self.usable(i, j) {
                continue;
            }
            let s = self.sums.get(i, j);
            self.perm[i] = j;
            self.col_used[j] = true;
            self.sum_used[s] = true;
            if self.descend(left - 1) {
                return true;
            }
            self.perm[i] = usize::MAX;
            self.col_used[j] = false;
            self.sum_used[s] = false;
        }
        false
    }
}
