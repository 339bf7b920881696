//! Dense exact linear algebra over a [`FieldCtx`].

use std::fmt::Write as _;

use crate::characters::{evaluate, Character};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::group::{GroupElement, GroupSpec};

/// Row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn try_from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Result<FieldElem>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("rows have different lengths".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ctx.zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(ctx.zero(), |acc, t| ctx.add(&acc, &ctx.mul(self.get(i, t), other.get(t, j))))
        }))
    }

    /// One row per line, entries in field-element syntax.
    pub fn format(&self, ctx: &FieldCtx) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| ctx.format(e)).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[target] -= factor * row[source]` over columns `from..`.
    fn eliminate(&mut self, ctx: &FieldCtx, target: usize, source: usize, factor: &FieldElem, from: usize) {
        for j in from..self.cols {
            let s = &self.data[source * self.cols + j];
            if ctx.is_zero(s) {
                continue;
            }
            let delta = ctx.mul(factor, s);
            let t = &mut self.data[target * self.cols + j];
            *t = ctx.sub(t, &delta);
        }
    }
}

/// Gaussian elimination taking, in each column, the topmost nonzero pivot
/// at or below the diagonal; row swaps flip the sign.
pub fn determinant(ctx: &FieldCtx, a: &Matrix) -> Result<FieldElem> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut det = ctx.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !ctx.is_zero(m.get(r, c))) else {
            return Ok(ctx.zero());
        };
        if p != c {
            m.swap_rows(p, c);
            det = ctx.neg(&det);
        }
        let pivot = m.get(c, c).clone();
        det = ctx.mul(&det, &pivot);
        if c + 1 == n {
            break;
        }
        let pivot_inv = ctx.inv(&pivot)?;
        for r in c + 1..n {
            if ctx.is_zero(m.get(r, c)) {
                continue;
            }
            let factor = ctx.mul(m.get(r, c), &pivot_inv);
            m.eliminate(ctx, r, c, &factor, c + 1);
        }
    }
    Ok(det)
}

/// Number of pivots in a row echelon form.
pub fn rank(ctx: &FieldCtx, a: &Matrix) -> usize {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !ctx.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(p, r);
        let pivot_inv = ctx.inv(m.get(r, c)).expect("pivot is nonzero");
        for i in r + 1..m.rows {
            if ctx.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = ctx.mul(m.get(i, c), &pivot_inv);
            m.eliminate(ctx, i, r, &factor, c + 1);
        }
        r += 1;
    }
    r
}

/// Entry `(i, j)` is `chars[i](elems[j])`.
pub fn char_matrix(ctx: &FieldCtx, spec: &GroupSpec, chars: &[Character], elems: &[GroupElement]) -> Result<Matrix> {
    Matrix::try_from_fn(chars.len(), elems.len(), |i, j| evaluate(ctx, spec, &chars[i], &elems[j]))
}
