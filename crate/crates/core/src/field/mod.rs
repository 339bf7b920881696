//! Exact fields carrying a distinguished root of unity `zeta` of order `n`.
//!
//! Two backends: prime-power finite fields `GF(p^d)` and the cyclotomic
//! field `Q(zeta_n)`. Both are deterministic: rebuilding a context yields
//! the same modulus and the same `zeta`.

mod cyclotomic;
mod finite;
mod polymod;
mod rational;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

pub use cyclotomic::{cyclotomic_poly, CyclotomicField};
pub use finite::PrimePowerField;
pub use rational::Rational;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::numtheory::{is_prime, multiplicative_order, prime_divisors};

/// Text form of a field choice: `gf:p` or `cyc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Finite(u64),
    Cyclotomic,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "cyc" {
            return Ok(FieldSpec::Cyclotomic);
        }
        let p = s
            .strip_prefix("gf:")
            .ok_or_else(|| Error::Parse(format!("field spec must be `gf:p` or `cyc`, got `{s}`")))?;
        let p = p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("`{p}` is not an integer")))?;
        Ok(FieldSpec::Finite(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Finite(p) => write!(f, "gf:{p}"),
            FieldSpec::Cyclotomic => f.write_str("cyc"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Backend {
    Finite(PrimePowerField),
    Cyclotomic(CyclotomicField),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(Repr);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Finite(u128),
    Cyclotomic(Vec<Rational>),
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite(i) => write!(f, "#{i}"),
            Repr::Cyclotomic(c) => write!(f, "{c:?}"),
        }
    }
}

/// A field together with its distinguished element `zeta` of exact order `n`.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    backend: Backend,
    n: u64,
    zeta: FieldElem,
    zeta_pows: Vec<FieldElem>,
}

impl FieldCtx {
    /// Smallest `GF(p^d)` containing an element of order `n`, with
    /// `d = ord_n(p)`.
    pub fn finite(p: u64, n: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::SizeMismatch("root order must be at least 1".into()));
        }
        if n.is_multiple_of(p) {
            return Err(Error::NotRepresentable { p, n });
        }
        let d = multiplicative_order(p, n) as usize;
        let field = PrimePowerField::new(p, d)?;
        Self::assemble(Backend::Finite(field), n)
    }

    pub fn cyclotomic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeMismatch("root order must be at least 1".into()));
        }
        Self::assemble(Backend::Cyclotomic(CyclotomicField::new(n)), n)
    }

    pub fn build(spec: FieldSpec, n: u64) -> Result<Self> {
        match spec {
            FieldSpec::Finite(p) => Self::finite(p, n),
            FieldSpec::Cyclotomic => Self::cyclotomic(n),
        }
    }

    /// Field over which `group` is fully representable.
    pub fn for_group(group: &GroupSpec, spec: FieldSpec) -> Result<Self> {
        Self::build(spec, group.exponent())
    }

    fn assemble(backend: Backend, n: u64) -> Result<Self> {
        let mut ctx = Self { backend, n, zeta: FieldElem(Repr::Finite(0)), zeta_pows: Vec::new() };
        let zeta = ctx.find_root_of_unity(n);
        assert!(ctx.has_exact_order(&zeta, n)?, "constructed zeta lacks exact order {n}");
        let mut pows = Vec::with_capacity(n as usize);
        let mut acc = ctx.one();
        for _ in 0..n {
            pows.push(acc.clone());
            acc = ctx.mul(&acc, &zeta);
        }
        ctx.zeta = zeta;
        ctx.zeta_pows = pows;
        Ok(ctx)
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn spec(&self) -> FieldSpec {
        match &self.backend {
            Backend::Finite(f) => FieldSpec::Finite(f.characteristic()),
            Backend::Cyclotomic(_) => FieldSpec::Cyclotomic,
        }
    }

    /// `p` for `GF(p^d)`, 0 for the cyclotomic field.
    pub fn characteristic(&self) -> u64 {
        match &self.backend {
            Backend::Finite(f) => f.characteristic(),
            Backend::Cyclotomic(_) => 0,
        }
    }

    pub fn root_order(&self) -> u64 {
        self.n
    }

    pub fn zeta(&self) -> &FieldElem {
        &self.zeta
    }

    /// `zeta^e`, with `e` taken modulo `n`.
    pub fn zeta_pow(&self, e: u64) -> &FieldElem {
        &self.zeta_pows[(e % self.n) as usize]
    }

    /// Finite backend: scans elements in canonical order and returns the
    /// first `e^((q-1)/n)` of exact order `n`. Cyclotomic: the class of `x`.
    pub fn find_root_of_unity(&self, n: u64) -> FieldElem {
        match &self.backend {
            Backend::Finite(f) => {
                let q = f.order();
                assert!((q - 1) % n as u128 == 0, "n = {n} does not divide q - 1 = {}", q - 1);
                let cofactor = (q - 1) / n as u128;
                for e in 1..q {
                    let cand = FieldElem(Repr::Finite(f.pow(e, cofactor)));
                    if self.has_exact_order(&cand, n).unwrap_or(false) {
                        return cand;
                    }
                }
                unreachable!("the multiplicative group of GF(q) is cyclic")
            }
            Backend::Cyclotomic(c) => {
                assert_eq!(c.n(), n, "cyclotomic field of order {} has no primitive {n}-th root", c.n());
                FieldElem(Repr::Cyclotomic(c.generator()))
            }
        }
    }

    /// True iff `e^n = 1` and `e^(n/r) != 1` for every prime `r | n`.
    pub fn has_exact_order(&self, e: &FieldElem, n: u64) -> Result<bool> {
        if self.is_zero(e) {
            return Err(Error::DivisionByZero);
        }
        if n == 0 {
            return Ok(false);
        }
        if !self.is_one(&self.pow(e, n as u128)) {
            return Ok(false);
        }
        Ok(prime_divisors(n).into_iter().all(|r| !self.is_one(&self.pow(e, (n / r) as u128))))
    }

    pub fn zero(&self) -> FieldElem {
        match &self.backend {
            Backend::Finite(_) => FieldElem(Repr::Finite(0)),
            Backend::Cyclotomic(c) => FieldElem(Repr::Cyclotomic(c.zero())),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Image of an integer under the canonical ring map `Z -> F`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        match &self.backend {
            Backend::Finite(f) => FieldElem(Repr::Finite(f.from_int(n))),
            Backend::Cyclotomic(c) => FieldElem(Repr::Cyclotomic(c.from_rational(Rational::from_int(n)))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match &self.backend {
            Backend::Finite(f) => {
                let r = n % BigInt::from(f.characteristic());
                let r = i64::try_from(r).expect("residue fits");
                FieldElem(Repr::Finite(f.from_int(r)))
            }
            Backend::Cyclotomic(c) => FieldElem(Repr::Cyclotomic(c.from_rational(Rational::from_bigint(n.clone())))),
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match &a.0 {
            Repr::Finite(x) => *x == 0,
            Repr::Cyclotomic(c) => c.iter().all(Rational::is_zero),
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        match &a.0 {
            Repr::Finite(x) => *x == 1,
            Repr::Cyclotomic(c) => c[0].is_one() && c[1..].iter().all(Rational::is_zero),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.backend, &a.0, &b.0) {
            (Backend::Finite(f), Repr::Finite(x), Repr::Finite(y)) => FieldElem(Repr::Finite(f.add(*x, *y))),
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x), Repr::Cyclotomic(y)) => FieldElem(Repr::Cyclotomic(c.add(x, y))),
            _ => foreign(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.backend, &a.0, &b.0) {
            (Backend::Finite(f), Repr::Finite(x), Repr::Finite(y)) => FieldElem(Repr::Finite(f.sub(*x, *y))),
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x), Repr::Cyclotomic(y)) => FieldElem(Repr::Cyclotomic(c.sub(x, y))),
            _ => foreign(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (&self.backend, &a.0) {
            (Backend::Finite(f), Repr::Finite(x)) => FieldElem(Repr::Finite(f.neg(*x))),
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x)) => FieldElem(Repr::Cyclotomic(c.neg(x))),
            _ => foreign(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.backend, &a.0, &b.0) {
            (Backend::Finite(f), Repr::Finite(x), Repr::Finite(y)) => FieldElem(Repr::Finite(f.mul(*x, *y))),
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x), Repr::Cyclotomic(y)) => FieldElem(Repr::Cyclotomic(c.mul(x, y))),
            _ => foreign(),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        match (&self.backend, &a.0) {
            (Backend::Finite(f), Repr::Finite(x)) => Ok(FieldElem(Repr::Finite(f.inv(*x)?))),
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x)) => Ok(FieldElem(Repr::Cyclotomic(c.inv(x)?))),
            _ => foreign(),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Square-and-multiply.
    pub fn pow(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        if let (Backend::Finite(f), Repr::Finite(x)) = (&self.backend, &a.0) {
            return FieldElem(Repr::Finite(f.pow(*x, e)));
        }
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `sum_j a_j zeta^(e_j)`.
    ///
    /// In the cyclotomic backend the sum is accumulated in `Q[x]/(x^n - 1)`,
    /// where multiplying by `zeta^e` is a rotation, and reduced once.
    pub fn root_combination<'a, I: IntoIterator<Item = (&'a FieldElem, u64)>>(&self, terms: I) -> FieldElem {
        match &self.backend {
            Backend::Finite(_) => terms.into_iter().fold(self.zero(), |acc, (a, e)| self.add(&acc, &self.mul(a, self.zeta_pow(e)))),
            Backend::Cyclotomic(c) => {
                let n = self.n as usize;
                let mut acc = vec![Rational::ZERO; n.max(c.degree())];
                for (a, e) in terms {
                    let Repr::Cyclotomic(coeffs) = &a.0 else { foreign() };
                    for (i, x) in coeffs.iter().enumerate() {
                        if !x.is_zero() {
                            let t = (i + e as usize) % n;
                            acc[t] = acc[t].add(x);
                        }
                    }
                }
                FieldElem(Repr::Cyclotomic(c.reduce(acc)))
            }
        }
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a FieldElem>>(&self, items: I) -> FieldElem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Uniform element for finite fields; small integer coefficients in
    /// `[-3, 3]` for the cyclotomic field.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        match &self.backend {
            Backend::Finite(f) => FieldElem(Repr::Finite(rng.random_range(0..f.order()))),
            Backend::Cyclotomic(c) => {
                let coeffs = (0..c.degree()).map(|_| Rational::from_int(rng.random_range(-3..=3))).collect();
                FieldElem(Repr::Cyclotomic(coeffs))
            }
        }
    }

    /// Coefficient list, constant term first, e.g. `[1,1]` for `x + 1`.
    pub fn format(&self, a: &FieldElem) -> String {
        let parts: Vec<String> = match (&self.backend, &a.0) {
            (Backend::Finite(f), Repr::Finite(x)) => f.digits(*x).iter().map(u64::to_string).collect(),
            (Backend::Cyclotomic(_), Repr::Cyclotomic(c)) => c.iter().map(Rational::to_string).collect(),
            _ => foreign(),
        };
        format!("[{}]", parts.join(","))
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[c0,c1,...]`, got `{}`", s.trim())))?;
        let parts: Vec<&str> = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').collect() };
        match &self.backend {
            Backend::Finite(f) => {
                let digits = parts
                    .iter()
                    .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("`{}` is not a residue", t.trim()))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FieldElem(Repr::Finite(f.from_digits(&digits)?)))
            }
            Backend::Cyclotomic(c) => {
                if parts.len() > c.degree() {
                    return Err(Error::Parse(format!("expected at most {} coefficients, got {}", c.degree(), parts.len())));
                }
                let mut coeffs = parts.iter().map(|t| Rational::parse(t)).collect::<Result<Vec<_>>>()?;
                coeffs.resize(c.degree(), Rational::ZERO);
                Ok(FieldElem(Repr::Cyclotomic(coeffs)))
            }
        }
    }

    /// Human-readable summary: backend, modulus, degree, order.
    pub fn describe(&self) -> FieldDescription {
        match &self.backend {
            Backend::Finite(f) => FieldDescription {
                field: self.spec().to_string(),
                characteristic: f.characteristic(),
                degree: f.degree(),
                order: Some(f.order().to_string()),
                modulus: f.modulus().iter().map(|c| c.to_string()).collect(),
                root_order: self.n,
                zeta: self.format(&self.zeta),
            },
            Backend::Cyclotomic(c) => FieldDescription {
                field: self.spec().to_string(),
                characteristic: 0,
                degree: c.degree(),
                order: None,
                modulus: c.modulus().iter().map(|x| x.to_string()).collect(),
                root_order: self.n,
                zeta: self.format(&self.zeta),
            },
        }
    }

    /// Enumerates every element of a finite field in canonical order.
    /// `None` for the cyclotomic backend or fields too large to list.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        match &self.backend {
            Backend::Finite(f) if f.order() <= 1 << 20 => Some((0..f.order()).map(|i| FieldElem(Repr::Finite(i))).collect()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldDescription {
    pub field: String,
    pub characteristic: u64,
    pub degree: usize,
    pub order: Option<String>,
    /// Constant term first.
    pub modulus: Vec<String>,
    pub root_order: u64,
    pub zeta: String,
}

fn foreign() -> ! {
    panic!("field element does not belong to this field")
}
