//! Self-contained JSON witnesses and their independent re-verification.
//!
//! Every witness records the group, the field and the input sets alongside
//! the answer, so it can be checked without rerunning the search that
//! produced it.

use serde::{Deserialize, Serialize};

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldSpec};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{char_matrix, determinant};
use crate::matroid::{common_basis, dual_witness, Intersection, LinearMatroid};
use crate::snevily::{count_attaining, lemma4_permutation, multiset_signature, theorem1_determinants, Permutation, SumMatrix};

type Coords = Vec<Vec<u64>>;

/// Characters with `Det(chi_i(a_j))` and `Det(chi_i(b_j))` both nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CommonBasisWitness {
    pub group: String,
    pub field: String,
    pub set_a: Coords,
    pub set_b: Coords,
    pub characters: Coords,
    #[serde(rename = "detA")]
    pub det_a: String,
    #[serde(rename = "detB")]
    pub det_b: String,
}

/// Elements with `Det(chi_i(a_j))` and `Det(psi_i(a_j))` both nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualWitness {
    pub group: String,
    pub field: String,
    pub chars_x: Coords,
    pub chars_psi: Coords,
    pub elements: Coords,
    pub det_x: String,
    pub det_psi: String,
}

/// A permutation whose multiset of sums is attained by it alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Lemma4Witness {
    pub group: String,
    pub set_a: Coords,
    pub set_b: Coords,
    pub permutation: Permutation,
    pub signature: Vec<usize>,
    pub attaining: u64,
}

/// A permutation with pairwise distinct sums, or `null` when none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SnevilyWitness {
    pub group: String,
    pub set_a: Coords,
    pub set_b: Coords,
    pub permutation: Option<Permutation>,
    pub sums: Option<Coords>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Theorem1(CommonBasisWitness),
    Theorem2(DualWitness),
    Lemma4(Lemma4Witness),
    Snevily(SnevilyWitness),
}

/// Outcome of re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub reason: String,
}

impl Verdict {
    fn ok(reason: impl Into<String>) -> Self {
        Self { valid: true, reason: reason.into() }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Self { valid: false, reason: reason.into() }
    }
}

fn coords<T: AsRef<[u64]>>(items: impl IntoIterator<Item = T>) -> Coords {
    items.into_iter().map(|x| x.as_ref().to_vec()).collect()
}

fn elements_of(spec: &GroupSpec, c: &Coords) -> Result<Vec<GroupElement>> {
    c.iter().map(|v| spec.element(v.clone())).collect()
}

fn characters_of(spec: &GroupSpec, c: &Coords) -> Result<Vec<Character>> {
    c.iter().map(|v| Character::new(spec, v.clone())).collect()
}

/// Runs the intersection solver; `None` if it stalls.
pub fn theorem1_certificate(ctx: &FieldCtx, spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<Option<CommonBasisWitness>> {
    let ma = LinearMatroid::for_anchor_set(ctx, spec, a)?;
    let mb = LinearMatroid::for_anchor_set(ctx, spec, b)?;
    let Intersection::Basis(chars) = common_basis(&ma, &mb)? else { return Ok(None) };
    let (da, db) = theorem1_determinants(ctx, spec, a, b, &chars)?;
    Ok(Some(CommonBasisWitness {
        group: spec.to_string(),
        field: ctx.spec().to_string(),
        set_a: coords(a.iter().map(GroupElement::coords)),
        set_b: coords(b.iter().map(GroupElement::coords)),
        characters: coords(chars.iter().map(Character::coords)),
        det_a: ctx.format(&da),
        det_b: ctx.format(&db),
    }))
}

pub fn theorem2_certificate(ctx: &FieldCtx, spec: &GroupSpec, x: &[Character], psi: &[Character]) -> Result<Option<DualWitness>> {
    let Intersection::Basis(elems) = dual_witness(ctx, spec, x, psi)? else { return Ok(None) };
    let dx = determinant(ctx, &char_matrix(ctx, spec, x, &elems)?)?;
    let dpsi = determinant(ctx, &char_matrix(ctx, spec, psi, &elems)?)?;
    Ok(Some(DualWitness {
        group: spec.to_string(),
        field: ctx.spec().to_string(),
        chars_x: coords(x.iter().map(Character::coords)),
        chars_psi: coords(psi.iter().map(Character::coords)),
        elements: coords(elems.iter().map(GroupElement::coords)),
        det_x: ctx.format(&dx),
        det_psi: ctx.format(&dpsi),
    }))
}

pub fn lemma4_certificate(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<Lemma4Witness> {
    let pi = lemma4_permutation(spec, a, b)?;
    let sig = multiset_signature(spec, a, b, &pi)?;
    let attaining = count_attaining(spec, a, b, &sig)?;
    Ok(Lemma4Witness {
        group: spec.to_string(),
        set_a: coords(a.iter().map(GroupElement::coords)),
        set_b: coords(b.iter().map(GroupElement::coords)),
        permutation: pi,
        signature: sig.as_slice().to_vec(),
        attaining,
    })
}

pub fn snevily_certificate(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<SnevilyWitness> {
    let pi = crate::snevily::find_snevily_permutation(spec, a, b)?;
    let sums = match &pi {
        Some(p) => Some(
            (0..a.len())
                .map(|i| spec.add(&a[i], &b[p.apply(i)]).map(GroupElement::into_coords))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(SnevilyWitness {
        group: spec.to_string(),
        set_a: coords(a.iter().map(GroupElement::coords)),
        set_b: coords(b.iter().map(GroupElement::coords)),
        permutation: pi,
        sums,
    })
}

fn context(group: &str, field: &str) -> Result<(GroupSpec, FieldCtx)> {
    let spec: GroupSpec = group.parse()?;
    let field: FieldSpec = field.parse()?;
    let ctx = FieldCtx::for_group(&spec, field)?;
    Ok((spec, ctx))
}

/// Recomputes everything a certificate claims from its own inputs.
///
/// Malformed input (unknown group, out-of-range coordinates) is an error;
/// a well-formed certificate whose claims do not hold gives an invalid
/// [`Verdict`].
pub fn verify_certificate(cert: &Certificate) -> Result<Verdict> {
    match cert {
        Certificate::Theorem1(w) => {
            let (spec, ctx) = context(&w.group, &w.field)?;
            let (a, b) = (elements_of(&spec, &w.set_a)?, elements_of(&spec, &w.set_b)?);
            let chars = characters_of(&spec, &w.characters)?;
            let (da, db) = theorem1_determinants(&ctx, &spec, &a, &b, &chars)?;
            if ctx.is_zero(&da) || ctx.is_zero(&db) {
                return Ok(Verdict::fail("a determinant vanishes"));
            }
            if ctx.parse_elem(&w.det_a)? != da || ctx.parse_elem(&w.det_b)? != db {
                return Ok(Verdict::fail("recorded determinants differ from recomputed ones"));
            }
            Ok(Verdict::ok("both determinants are nonzero"))
        }
        Certificate::Theorem2(w) => {
            let (spec, ctx) = context(&w.group, &w.field)?;
            let (x, psi) = (characters_of(&spec, &w.chars_x)?, characters_of(&spec, &w.chars_psi)?);
            let elems = elements_of(&spec, &w.elements)?;
            if x.len() != elems.len() || psi.len() != elems.len() {
                return Err(Error::SizeMismatch(format!("{} elements for character sets of size {} and {}", elems.len(), x.len(), psi.len())));
            }
            let dx = determinant(&ctx, &char_matrix(&ctx, &spec, &x, &elems)?)?;
            let dpsi = determinant(&ctx, &char_matrix(&ctx, &spec, &psi, &elems)?)?;
            if ctx.is_zero(&dx) || ctx.is_zero(&dpsi) {
                return Ok(Verdict::fail("a determinant vanishes"));
            }
            if ctx.parse_elem(&w.det_x)? != dx || ctx.parse_elem(&w.det_psi)? != dpsi {
                return Ok(Verdict::fail("recorded determinants differ from recomputed ones"));
            }
            Ok(Verdict::ok("both determinants are nonzero"))
        }
        Certificate::Lemma4(w) => {
            let spec: GroupSpec = w.group.parse()?;
            let (a, b) = (elements_of(&spec, &w.set_a)?, elements_of(&spec, &w.set_b)?);
            let sums = SumMatrix::new(&spec, &a, &b)?;
            if w.permutation.len() != sums.k() {
                return Ok(Verdict::fail("permutation has the wrong length"));
            }
            let sig = sums.signature(w.permutation.as_slice());
            if sig.as_slice() != w.signature.as_slice() {
                return Ok(Verdict::fail("recorded signature differs from the sums of the permutation"));
            }
            // independent of the backtracking counter: scan all of S_k
            let others = crate::combinatorics::Permutations::new(sums.k())
                .filter(|p| p.as_slice() != w.permutation.as_slice() && sums.signature(p) == sig)
                .count();
            if others > 0 || w.attaining != 1 {
                return Ok(Verdict::fail(format!("{} other permutations attain the signature", others)));
            }
            Ok(Verdict::ok("no other permutation attains the signature"))
        }
        Certificate::Snevily(w) => {
            let spec: GroupSpec = w.group.parse()?;
            let (a, b) = (elements_of(&spec, &w.set_a)?, elements_of(&spec, &w.set_b)?);
            let sums = SumMatrix::new(&spec, &a, &b)?;
            match &w.permutation {
                Some(p) => {
                    if p.len() != sums.k() {
                        return Ok(Verdict::fail("permutation has the wrong length"));
                    }
                    let sig = sums.signature(p.as_slice());
                    if sig.as_slice().windows(2).any(|x| x[0] == x[1]) {
                        return Ok(Verdict::fail("two sums coincide"));
                    }
                    Ok(Verdict::ok("all sums are pairwise distinct"))
                }
                None => {
                    let k = sums.k();
                    let exists = crate::combinatorics::Permutations::new(k).any(|p| sums.signature(&p).as_slice().windows(2).all(|x| x[0] != x[1]));
                    if exists {
                        Ok(Verdict::fail("a permutation with distinct sums exists"))
                    } else {
                        Ok(Verdict::ok("no permutation has pairwise distinct sums"))
                    }
                }
            }
        }
    }
}
