//! Prime-power fields `GF(p^d)`.
//!
//! An element is packed into a `u128` as the base-`p` integer of its
//! coefficient vector (constant term least significant), which is also its
//! position in the canonical element enumeration. Characteristic 2 uses
//! carry-less bit arithmetic, fields with at most [`TABLE_LIMIT`] elements
//! use precomputed operation tables, and everything else goes through digit
//! vectors.

use super::polymod;
use crate::error::{Error, Result};

const TABLE_LIMIT: u128 = 128;
const MAX_BITS: u32 = 127;

#[derive(Debug, Clone)]
pub struct PrimePowerField {
    p: u64,
    d: usize,
    q: u128,
    /// Monic, degree `d`, constant term first.
    modulus: Vec<u64>,
    /// Characteristic 2 only: modulus as a bit mask including `x^d`.
    mask: u128,
    tables: Option<Tables>,
}

#[derive(Debug, Clone)]
struct Tables {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl PrimePowerField {
    /// `GF(p^d)` with the first monic irreducible modulus in canonical order.
    pub fn new(p: u64, d: usize) -> Result<Self> {
        if !crate::numtheory::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::SizeMismatch("extension degree must be at least 1".into()));
        }
        let q = checked_pow(p, d).ok_or(Error::FieldTooLarge { p, d })?;
        let modulus = first_irreducible(p, d, q);
        Ok(Self::with_modulus(p, d, q, modulus))
    }

    fn with_modulus(p: u64, d: usize, q: u128, modulus: Vec<u64>) -> Self {
        let mask = if p == 2 { modulus.iter().enumerate().fold(0u128, |m, (i, &c)| m | ((c as u128) << i)) } else { 0 };
        let mut field = Self { p, d, q, modulus, mask, tables: None };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        field
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            neg[a] = self.neg_slow(a as u128) as u16;
            for b in 0..q {
                add[a * q + b] = self.add_slow(a as u128, b as u128) as u16;
                let prod = self.mul_slow(a as u128, b as u128);
                mul[a * q + b] = prod as u16;
                if prod == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Tables { q, add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u128 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn digits(&self, e: u128) -> Vec<u64> {
        let mut out = vec![0u64; self.d];
        let mut x = e;
        for slot in out.iter_mut() {
            *slot = (x % self.p as u128) as u64;
            x /= self.p as u128;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<u128> {
        if digits.len() > self.d {
            return Err(Error::Parse(format!("expected at most {} coefficients, got {}", self.d, digits.len())));
        }
        let mut acc: u128 = 0;
        for &c in digits.iter().rev() {
            if c >= self.p {
                return Err(Error::Parse(format!("coefficient {c} is not reduced modulo {}", self.p)));
            }
            acc = acc * self.p as u128 + c as u128;
        }
        Ok(acc)
    }

    fn pack(&self, digits: &[u64]) -> u128 {
        digits.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn from_int(&self, n: i64) -> u128 {
        n.rem_euclid(self.p as i64) as u128
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &self.tables {
            return t.add[a as usize * t.q + b as usize] as u128;
        }
        self.add_slow(a, b)
    }

    pub fn neg(&self, a: u128) -> u128 {
        if self.p == 2 {
            return a;
        }
        if let Some(t) = &self.tables {
            return t.neg[a as usize] as u128;
        }
        self.neg_slow(a)
    }

    pub fn sub(&self, a: u128, b: u128) -> u128 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if let Some(t) = &self.tables {
            return t.mul[a as usize * t.q + b as usize] as u128;
        }
        if self.p == 2 {
            return self.mul_binary(a, b);
        }
        self.mul_slow(a, b)
    }

    /// Inverse by the extended Euclidean algorithm on the modulus.
    pub fn inv(&self, a: u128) -> Result<u128> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            return Ok(t.inv[a as usize] as u128);
        }
        let s = polymod::inverse_mod_poly(&polymod::trim(self.digits(a)), &self.modulus, self.p)
            .expect("modulus is irreducible");
        Ok(self.pack(&s))
    }

    pub fn pow(&self, a: u128, mut e: u128) -> u128 {
        let mut result = 1u128;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn add_slow(&self, a: u128, b: u128) -> u128 {
        let (x, y) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(&u, &v)| (u + v) % self.p).collect();
        self.pack(&sum)
    }

    fn neg_slow(&self, a: u128) -> u128 {
        let x: Vec<u64> = self.digits(a).iter().map(|&u| (self.p - u) % self.p).collect();
        self.pack(&x)
    }

    fn mul_slow(&self, a: u128, b: u128) -> u128 {
        let prod = polymod::mul_mod_poly(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.pack(&prod)
    }

    fn mul_binary(&self, a: u128, b: u128) -> u128 {
        let top = 1u128 << self.d;
        let mut acc = 0u128;
        for i in (0..self.d).rev() {
            acc <<= 1;
            if acc & top != 0 {
                acc ^= self.mask;
            }
            if (b >> i) & 1 == 1 {
                acc ^= a;
            }
        }
        acc
    }
}

fn checked_pow(p: u64, d: usize) -> Option<u128> {
    let mut q: u128 = 1;
    for _ in 0..d {
        q = q.checked_mul(p as u128)?;
    }
    if q >= 1u128 << MAX_BITS {
        return None;
    }
    Some(q)
}

/// First monic irreducible polynomial of degree `d` over `GF(p)`, where the
/// `d` low coefficients are read as a base-`p` integer counting up from 0.
fn first_irreducible(p: u64, d: usize, q: u128) -> Vec<u64> {
    for low in 0..q {
        let mut f = vec![0u64; d + 1];
        let mut x = low;
        for c in f.iter_mut().take(d) {
            *c = (x % p as u128) as u64;
            x /= p as u128;
        }
        f[d] = 1;
        if polymod::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF({p})")
}
