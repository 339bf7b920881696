//! The character group of `G` with values in a [`FieldCtx`].
//!
//! The dual group is identified with `G` coordinatewise: the character with
//! dual coordinates `u` sends `g` to `zeta^(sum_i u_i g_i (n / n_i))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::group::{write_tuple, GroupElement, GroupSpec};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    coords: Vec<u64>,
}

impl Character {
    pub fn new(spec: &GroupSpec, coords: Vec<u64>) -> Result<Self> {
        let g = spec.element(coords)?;
        Ok(Self { coords: g.into_coords() })
    }

    pub fn trivial(spec: &GroupSpec) -> Self {
        Self { coords: vec![0; spec.rank()] }
    }

    /// The character whose dual coordinates equal those of `g`.
    pub fn from_element(g: GroupElement) -> Self {
        Self { coords: g.into_coords() }
    }

    pub fn to_element(&self, spec: &GroupSpec) -> Result<GroupElement> {
        spec.element(self.coords.clone())
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

/// All `m` characters, in the enumeration order of `G`.
pub fn dual_group(spec: &GroupSpec) -> Vec<Character> {
    spec.enumerate().into_iter().map(Character::from_element).collect()
}

pub fn parse_character_list(spec: &GroupSpec, s: &str) -> Result<Vec<Character>> {
    Ok(spec.parse_element_list(s)?.into_iter().map(Character::from_element).collect())
}

fn check_ctx(ctx: &FieldCtx, spec: &GroupSpec) -> Result<()> {
    if ctx.root_order() != spec.exponent() {
        return Err(Error::ExponentMismatch { field: ctx.root_order(), group: spec.exponent() });
    }
    Ok(())
}

/// `sum_i u_i g_i (n / n_i) mod n`.
pub fn pairing_exponent(spec: &GroupSpec, u: &[u64], g: &[u64]) -> u64 {
    let n = spec.exponent();
    u.iter()
        .zip(g)
        .zip(spec.moduli())
        .fold(0u64, |acc, ((&a, &b), &ni)| (acc + (a * b % ni) * (n / ni)) % n)
}

pub fn evaluate(ctx: &FieldCtx, spec: &GroupSpec, u: &Character, g: &GroupElement) -> Result<FieldElem> {
    check_ctx(ctx, spec)?;
    spec.validate(g)?;
    let u = u.to_element(spec)?;
    Ok(ctx.zeta_pow(pairing_exponent(spec, u.coords(), g.coords())).clone())
}

/// Values of every character on every element, indexed by canonical
/// positions: `table[u][g]` is the exponent of `zeta`.
#[derive(Debug, Clone)]
pub struct ExponentTable {
    m: usize,
    exps: Vec<u32>,
}

impl ExponentTable {
    pub fn new(spec: &GroupSpec) -> Self {
        let elems = spec.enumerate();
        let m = elems.len();
        let mut exps = Vec::with_capacity(m * m);
        for u in &elems {
            for g in &elems {
                exps.push(pairing_exponent(spec, u.coords(), g.coords()) as u32);
            }
        }
        Self { m, exps }
    }

    pub fn exponent(&self, u: usize, g: usize) -> u64 {
        self.exps[u * self.m + g] as u64
    }

    pub fn value<'a>(&self, ctx: &'a FieldCtx, u: usize, g: usize) -> &'a FieldElem {
        ctx.zeta_pow(self.exponent(u, g))
    }

    /// `chi_u(g)^{-1}`; the inverse of `zeta^e` is `zeta^(n - e)`.
    pub fn inverse_value<'a>(&self, ctx: &'a FieldCtx, u: usize, g: usize) -> &'a FieldElem {
        ctx.zeta_pow(ctx.root_order() - self.exponent(u, g))
    }
}

/// The `m x m` matrix `(chi_u(g))`, rows by character, columns by element.
pub fn character_table(ctx: &FieldCtx, spec: &GroupSpec) -> Result<Matrix> {
    check_ctx(ctx, spec)?;
    let table = ExponentTable::new(spec);
    let m = spec.size();
    Ok(Matrix::from_fn(m, m, |u, g| table.value(ctx, u, g).clone()))
}

/// `sum_g chi_u(g) chi_v(g)^{-1}`.
pub fn orthogonality_sum(ctx: &FieldCtx, spec: &GroupSpec, u: &Character, v: &Character) -> Result<FieldElem> {
    check_ctx(ctx, spec)?;
    let (ue, ve) = (u.to_element(spec)?, v.to_element(spec)?);
    let n = spec.exponent();
    let one = ctx.one();
    Ok(ctx.root_combination(spec.enumerate().iter().map(|g| {
        let e = pairing_exponent(spec, ue.coords(), g.coords()) + n - pairing_exponent(spec, ve.coords(), g.coords());
        (&one, e)
    })))
}

/// Coefficients `lambda_u` of a function `G -> F` in the character basis,
/// indexed like [`dual_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierData {
    coeffs: Vec<FieldElem>,
}

impl FourierData {
    pub fn coefficients(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn get(&self, u: usize) -> &FieldElem {
        &self.coeffs[u]
    }

    /// `sum_u lambda_u chi_u(g)` for every `g`, in canonical order.
    pub fn reconstruct(&self, ctx: &FieldCtx, spec: &GroupSpec) -> Result<Vec<FieldElem>> {
        check_ctx(ctx, spec)?;
        let table = ExponentTable::new(spec);
        let m = spec.size();
        Ok((0..m)
            .map(|g| ctx.root_combination((0..m).filter(|&u| !ctx.is_zero(&self.coeffs[u])).map(|u| (&self.coeffs[u], table.exponent(u, g)))))
            .collect())
    }
}

/// `lambda_u = m^{-1} sum_g phi(g) chi_u(g)^{-1}`, where `phi` lists the
/// values on all of `G` in canonical order.
pub fn fourier_coefficients(ctx: &FieldCtx, spec: &GroupSpec, phi: &[FieldElem]) -> Result<FourierData> {
    check_ctx(ctx, spec)?;
    let m = spec.size();
    if phi.len() != m {
        return Err(Error::FunctionSize { expected: m, found: phi.len() });
    }
    let m_inv = ctx.inv(&ctx.from_int(m as i64))?;
    let table = ExponentTable::new(spec);
    let coeffs = (0..m)
        .map(|u| {
            let n = ctx.root_order();
            let s = ctx.root_combination((0..m).filter(|&g| !ctx.is_zero(&phi[g])).map(|g| (&phi[g], n - table.exponent(u, g))));
            ctx.mul(&m_inv, &s)
        })
        .collect();
    Ok(FourierData { coeffs })
}
