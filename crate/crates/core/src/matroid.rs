//! Linear matroids on the character group and matroid intersection.
//!
//! For an anchor set `A = {a_1, ..., a_k}` the matroid `M_A` has ground set
//! the `m` characters; a set of characters is independent when their value
//! vectors `(chi(a_1), ..., chi(a_k))` are linearly independent. A common
//! basis of `M_A` and `M_B` is a set of `k` characters for which both
//! `(chi_i(a_j))` and `(chi_i(b_j))` are nonsingular.

use std::collections::VecDeque;
use std::fmt;

use crate::characters::{dual_group, pairing_exponent, Character};
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{rank, Matrix};
use crate::numtheory::binomial;

/// Default cap on the number of subsets the brute-force oracle may visit.
pub const DEFAULT_SUBSET_BUDGET: u128 = 1_000_000;

/// Independence structure needed by the intersection solver.
pub trait Matroid {
    fn ground_size(&self) -> usize;

    fn is_independent_indices(&self, set: &[usize]) -> bool;

    /// Exchange data for an independent set `current`, computed by probing
    /// [`Matroid::is_independent_indices`].
    fn exchange(&self, current: &[usize]) -> Exchange {
        let m = self.ground_size();
        let mut free = vec![false; m];
        let mut swap = vec![Vec::new(); m];
        let mut probe: Vec<usize> = current.to_vec();
        for y in 0..m {
            if current.contains(&y) {
                continue;
            }
            probe.push(y);
            free[y] = self.is_independent_indices(&probe);
            probe.pop();
            swap[y] = (0..current.len())
                .map(|t| {
                    let mut s = current.to_vec();
                    s[t] = y;
                    self.is_independent_indices(&s)
                })
                .collect();
        }
        Exchange { free, swap }
    }
}

/// For every ground element `y` outside the current set `I`:
/// `free[y]` iff `I + y` is independent, and `swap[y][t]` iff
/// `I - I[t] + y` is independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub free: Vec<bool>,
    pub swap: Vec<Vec<bool>>,
}

/// Column matroid of a `k x m` matrix over a field, with labelled ground set.
#[derive(Debug, Clone)]
pub struct LinearMatroid<'a, L> {
    ctx: &'a FieldCtx,
    labels: Vec<L>,
    /// `k x m`; column `j` is the vector of ground element `j`.
    vectors: Matrix,
}

impl<'a> LinearMatroid<'a, Character> {
    /// `M_A`: ground set all characters, vector of `chi` is `(chi(a_i))_i`.
    pub fn for_anchor_set(ctx: &'a FieldCtx, spec: &GroupSpec, anchors: &[GroupElement]) -> Result<Self> {
        check_exponent(ctx, spec)?;
        for a in anchors {
            spec.validate(a)?;
        }
        let labels = dual_group(spec);
        let vectors = Matrix::from_fn(anchors.len(), labels.len(), |i, u| {
            ctx.zeta_pow(pairing_exponent(spec, labels[u].coords(), anchors[i].coords())).clone()
        });
        Ok(Self { ctx, labels, vectors })
    }
}

impl<'a> LinearMatroid<'a, GroupElement> {
    /// Dual form: ground set `G`, vector of `g` is `(chi_i(g))_i`.
    pub fn for_character_set(ctx: &'a FieldCtx, spec: &GroupSpec, chars: &[Character]) -> Result<Self> {
        check_exponent(ctx, spec)?;
        for c in chars {
            c.to_element(spec)?;
        }
        let labels = spec.enumerate();
        let vectors = Matrix::from_fn(chars.len(), labels.len(), |i, g| {
            ctx.zeta_pow(pairing_exponent(spec, chars[i].coords(), labels[g].coords())).clone()
        });
        Ok(Self { ctx, labels, vectors })
    }
}

fn check_exponent(ctx: &FieldCtx, spec: &GroupSpec) -> Result<()> {
    if ctx.root_order() != spec.exponent() {
        return Err(Error::ExponentMismatch { field: ctx.root_order(), group: spec.exponent() });
    }
    Ok(())
}

impl<'a, L: Clone + Eq + fmt::Display> LinearMatroid<'a, L> {
    pub fn from_matrix(ctx: &'a FieldCtx, labels: Vec<L>, vectors: Matrix) -> Result<Self> {
        if labels.len() != vectors.cols() {
            return Err(Error::SizeMismatch(format!("{} labels for {} columns", labels.len(), vectors.cols())));
        }
        Ok(Self { ctx, labels, vectors })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    /// Number of anchors, i.e. the length of every vector.
    pub fn dimension(&self) -> usize {
        self.vectors.rows()
    }

    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn index_of(&self, label: &L) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::ForeignElement(label.to_string()))
    }

    pub fn is_independent(&self, set: &[L]) -> Result<bool> {
        let idx = set.iter().map(|l| self.index_of(l)).collect::<Result<Vec<_>>>()?;
        Ok(self.is_independent_indices(&idx))
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        rank(self.ctx, &self.vectors.select_columns(set))
    }

    /// Rank of the whole ground set.
    pub fn matroid_rank(&self) -> usize {
        rank(self.ctx, &self.vectors)
    }

    /// Exchange data via the probing default, for cross-checking.
    pub fn exchange_by_probing(&self, current: &[usize]) -> Exchange {
        struct Probe<'b, 'a, L>(&'b LinearMatroid<'a, L>);
        impl<L: Clone + Eq + fmt::Display> Matroid for Probe<'_, '_, L> {
            fn ground_size(&self) -> usize {
                self.0.labels.len()
            }
            fn is_independent_indices(&self, set: &[usize]) -> bool {
                self.0.is_independent_indices(set)
            }
        }
        Probe(self).exchange(current)
    }
}

impl<L: Clone + Eq + fmt::Display> Matroid for LinearMatroid<'_, L> {
    fn ground_size(&self) -> usize {
        self.labels.len()
    }

    fn is_independent_indices(&self, set: &[usize]) -> bool {
        set.len() <= self.dimension() && self.rank_of(set) == set.len()
    }

    /// One elimination of `[v_I | all vectors]` instead of `O(k m)` rank
    /// probes: `I + y` is independent iff `v_y` leaves the span of `v_I`,
    /// and otherwise `I - x + y` is independent iff `x` has a nonzero
    /// coefficient in the expansion of `v_y`.
    fn exchange(&self, current: &[usize]) -> Exchange {
        let ctx = self.ctx;
        let (k, m, r) = (self.dimension(), self.labels.len(), current.len());
        let mut w: Vec<Vec<_>> = (0..k)
            .map(|i| {
                current
                    .iter()
                    .map(|&c| self.vectors.get(i, c).clone())
                    .chain(self.vectors.row(i).iter().cloned())
                    .collect()
            })
            .collect();
        // reduce the first r columns to the identity on rows 0..r
        for c in 0..r {
            let p = (c..k).find(|&i| !ctx.is_zero(&w[i][c])).expect("current set is independent");
            w.swap(p, c);
            let inv = ctx.inv(&w[c][c]).expect("pivot is nonzero");
            let pivot_row: Vec<_> = w[c].iter().map(|e| ctx.mul(e, &inv)).collect();
            for (i, row) in w.iter_mut().enumerate() {
                if i == c || ctx.is_zero(&row[c]) {
                    continue;
                }
                let f = row[c].clone();
                for (e, pe) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !ctx.is_zero(pe) {
                        *e = ctx.sub(e, &ctx.mul(&f, pe));
                    }
                }
            }
            w[c] = pivot_row;
        }
        let mut free = vec![false; m];
        let mut swap = vec![Vec::new(); m];
        for y in 0..m {
            if current.contains(&y) {
                continue;
            }
            let col = r + y;
            free[y] = (r..k).any(|i| !ctx.is_zero(&w[i][col]));
            swap[y] = if free[y] { vec![true; r] } else { (0..r).map(|t| !ctx.is_zero(&w[t][col])).collect() };
        }
        Exchange { free, swap }
    }
}

/// Result of an intersection search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection<L> {
    /// A common independent set of the requested size, in canonical order.
    Basis(Vec<L>),
    /// The search stalled; carries the largest common independent set found.
    Infeasible { largest: Vec<L> },
}

impl<L> Intersection<L> {
    pub fn basis(&self) -> Option<&[L]> {
        match self {
            Intersection::Basis(b) => Some(b),
            Intersection::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Intersection::Basis(_))
    }
}

/// Grows a common independent set of `m1` and `m2` along shortest
/// augmenting paths until it reaches `target` elements or no path exists.
///
/// Returns the set as sorted ground indices. Sources are visited in
/// ground order and neighbours in ground order, so the output is
/// deterministic.
pub fn max_common_independent<M1: Matroid, M2: Matroid>(m1: &M1, m2: &M2, target: usize) -> Vec<usize> {
    let m = m1.ground_size();
    let mut current: Vec<usize> = Vec::new();
    while current.len() < target {
        let ex1 = m1.exchange(&current);
        let ex2 = m2.exchange(&current);
        let mut in_set = vec![None; m];
        for (t, &x) in current.iter().enumerate() {
            in_set[x] = Some(t);
        }
        let mut parent: Vec<Option<usize>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for y in 0..m {
            if in_set[y].is_none() && ex1.free[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            match in_set[v] {
                None => {
                    if ex2.free[v] {
                        end = Some(v);
                        break;
                    }
                    // y -> x when I - x + y is independent in the second matroid
                    for (t, &x) in current.iter().enumerate() {
                        if !seen[x] && ex2.swap[v][t] {
                            seen[x] = true;
                            parent[x] = Some(v);
                            queue.push_back(x);
                        }
                    }
                }
                Some(t) => {
                    // x -> y when I - x + y is independent in the first matroid
                    for y in 0..m {
                        if !seen[y] && in_set[y].is_none() && ex1.swap[y][t] {
                            seen[y] = true;
                            parent[y] = Some(v);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        let Some(mut v) = end else { break };
        let mut next: Vec<bool> = vec![false; m];
        for &x in &current {
            next[x] = true;
        }
        loop {
            next[v] = !next[v];
            match parent[v] {
                Some(p) => v = p,
                None => break,
            }
        }
        current = (0..m).filter(|&i| next[i]).collect();
    }
    current
}

fn check_compatible<L: Clone + Eq + fmt::Display>(a: &LinearMatroid<'_, L>, b: &LinearMatroid<'_, L>) -> Result<()> {
    if a.labels != b.labels {
        return Err(Error::GroundMismatch);
    }
    if a.dimension() != b.dimension() {
        return Err(Error::SizeMismatch(format!("anchor sets have sizes {} and {}", a.dimension(), b.dimension())));
    }
    Ok(())
}

/// A set of `k` ground elements independent in both matroids, found by
/// matroid intersection.
pub fn common_basis<L: Clone + Eq + fmt::Display>(a: &LinearMatroid<'_, L>, b: &LinearMatroid<'_, L>) -> Result<Intersection<L>> {
    check_compatible(a, b)?;
    let k = a.dimension();
    let found = max_common_independent(a, b, k);
    let labels: Vec<L> = found.iter().map(|&i| a.labels[i].clone()).collect();
    Ok(if found.len() == k { Intersection::Basis(labels) } else { Intersection::Infeasible { largest: labels } })
}

/// First `k`-subset in lexicographic ground order independent in both
/// matroids, by exhaustive search.
pub fn brute_force_common_basis<L: Clone + Eq + fmt::Display>(
    a: &LinearMatroid<'_, L>,
    b: &LinearMatroid<'_, L>,
    budget: u128,
) -> Result<Intersection<L>> {
    check_compatible(a, b)?;
    let (m, k) = (a.labels.len(), a.dimension());
    if k > m {
        return Ok(Intersection::Infeasible { largest: Vec::new() });
    }
    let needed = binomial(m as u64, k as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "k-subsets of the ground set", needed, limit: budget });
    }
    for subset in Combinations::new(m, k) {
        if a.rank_of(&subset) == k && b.rank_of(&subset) == k {
            return Ok(Intersection::Basis(subset.iter().map(|&i| a.labels[i].clone()).collect()));
        }
    }
    Ok(Intersection::Infeasible { largest: Vec::new() })
}

/// Elements `a_1, ..., a_k` with both `(chi_i(a_j))` and `(psi_i(a_j))`
/// nonsingular.
pub fn dual_witness(ctx: &FieldCtx, spec: &GroupSpec, chars_x: &[Character], chars_psi: &[Character]) -> Result<Intersection<GroupElement>> {
    let mx = LinearMatroid::for_character_set(ctx, spec, chars_x)?;
    let mpsi = LinearMatroid::for_character_set(ctx, spec, chars_psi)?;
    common_basis(&mx, &mpsi)
}
