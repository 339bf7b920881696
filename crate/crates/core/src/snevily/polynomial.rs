use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::lemma4::{check_k, DEFAULT_MAX_K};
use super::{MultisetSignature, SumMatrix};
use crate::combinatorics::{sign, Permutations};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::is_prime;

/// `Det(t_{a_i + b_j})` in independent indeterminates `t_g`, one per group
/// element: each signature stands for the monomial `prod t_g`.
///
/// Coefficients are integers; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SnevilyPolynomial {
    terms: BTreeMap<MultisetSignature, i64>,
}

impl SnevilyPolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (MultisetSignature, i64)>) -> Self {
        let mut list: Vec<(MultisetSignature, i64)> = terms.into_iter().collect();
        list.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        let mut merged: Vec<(MultisetSignature, i64)> = Vec::with_capacity(list.len());
        for (s, c) in list {
            match merged.last_mut() {
                Some(last) if last.0 == s => last.1 += c,
                _ => merged.push((s, c)),
            }
        }
        merged.retain(|(_, c)| *c != 0);
        Self { terms: merged.into_iter().collect() }
    }

    pub fn terms(&self) -> &BTreeMap<MultisetSignature, i64> {
        &self.terms
    }

    pub fn coefficient(&self, s: &MultisetSignature) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of absolute coefficients; at most `k!`.
    pub fn weight(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).sum()
    }

    /// Substitutes `t_g = phi[g]`.
    pub fn evaluate(&self, ctx: &FieldCtx, phi: &[FieldElem]) -> Result<FieldElem> {
        let mut acc = ctx.zero();
        for (s, &c) in &self.terms {
            let mut term = ctx.from_int(c);
            for &g in s.as_slice() {
                let v = phi.get(g).ok_or(Error::FunctionSize { expected: g + 1, found: phi.len() })?;
                term = ctx.mul(&term, v);
            }
            acc = ctx.add(&acc, &term);
        }
        Ok(acc)
    }
}

/// Serialized as `{"[0,3]": 1, "[1,2]": -1}`.
impl Serialize for SnevilyPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (s, c) in &self.terms {
            map.serialize_entry(&s.to_string(), c)?;
        }
        map.end()
    }
}

impl SumMatrix {
    /// Signed sum over `S_k`, bucketed by signature.
    pub fn polynomial(&self) -> SnevilyPolynomial {
        SnevilyPolynomial::from_terms(Permutations::new(self.k).map(|p| (self.signature(&p), sign(&p))))
    }

    /// `sum of sgn(sigma)` over the `sigma` attaining `target`.
    pub fn coefficient(&self, target: &[usize]) -> i64 {
        Permutations::new(self.k)
            .filter(|p| self.signature(p).as_slice() == target)
            .map(|p| sign(&p))
            .sum()
    }
}

pub fn snevily_polynomial(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<SnevilyPolynomial> {
    snevily_polynomial_with_bound(spec, a, b, DEFAULT_MAX_K)
}

pub fn snevily_polynomial_with_bound(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], max_k: usize) -> Result<SnevilyPolynomial> {
    let sums = SumMatrix::new(spec, a, b)?;
    check_k(sums.k(), max_k)?;
    Ok(sums.polynomial())
}

/// Coefficients reduced to `[0, c)`; `c = 0` leaves the polynomial unchanged.
pub fn reduce_mod_char(poly: &SnevilyPolynomial, c: u64) -> Result<SnevilyPolynomial> {
    if c == 0 {
        return Ok(poly.clone());
    }
    if !is_prime(c) {
        return Err(Error::InvalidCharacteristic(c));
    }
    let c = c as i64;
    Ok(SnevilyPolynomial::from_terms(poly.terms.iter().map(|(s, &v)| (s.clone(), v.rem_euclid(c)))))
}
