//! The cyclotomic field `Q(zeta_n) = Q[x] / Phi_n(x)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};
use crate::numtheory::divisors;

/// `Phi_n` with exact integer coefficients, constant term first.
///
/// Computed by the recurrence `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let mut memo: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(n) {
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for (_, phi) in memo.iter().filter(|(&e, _)| d % e == 0) {
            num = exact_div_monic(&num, phi);
        }
        memo.insert(d, num);
    }
    memo.remove(&n).expect("n divides itself")
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero), "division is not exact");
    q
}

#[derive(Debug, Clone)]
pub struct CyclotomicField {
    n: u64,
    phi: Vec<BigInt>,
    /// Low coefficients of `Phi_n` as rationals, skipping zeros.
    reducer: Vec<(usize, Rational)>,
    deg: usize,
}

pub type CycElem = Vec<Rational>;

impl CyclotomicField {
    pub fn new(n: u64) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        let reducer = phi[..deg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, Rational::from_bigint(c.clone())))
            .collect();
        Self { n, phi, reducer, deg }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }

    pub fn zero(&self) -> CycElem {
        vec![Rational::ZERO; self.deg]
    }

    pub fn from_rational(&self, r: Rational) -> CycElem {
        let mut out = self.zero();
        out[0] = r;
        out
    }

    /// Class of `x`, the distinguished primitive `n`-th root of unity.
    pub fn generator(&self) -> CycElem {
        self.reduce(vec![Rational::ZERO, Rational::ONE])
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Phi_n`.
    pub fn reduce(&self, mut coeffs: Vec<Rational>) -> CycElem {
        for i in (self.deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            let base = i - self.deg;
            for (j, pj) in &self.reducer {
                coeffs[base + j] = coeffs[base + j].sub(&c.mul(pj));
            }
        }
        coeffs.resize(self.deg, Rational::ZERO);
        coeffs
    }

    pub fn add(&self, a: &[Rational], b: &[Rational]) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    pub fn sub(&self, a: &[Rational], b: &[Rational]) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
    }

    pub fn neg(&self, a: &[Rational]) -> CycElem {
        a.iter().map(Rational::neg).collect()
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> CycElem {
        if self.deg == 1 {
            return vec![a[0].mul(&b[0])];
        }
        let mut out = vec![Rational::ZERO; 2 * self.deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        self.reduce(out)
    }

    /// Inverse by the extended Euclidean algorithm in `Q[x]` against `Phi_n`.
    pub fn inv(&self, a: &[Rational]) -> Result<CycElem> {
        if a.iter().all(Rational::is_zero) {
            return Err(Error::DivisionByZero);
        }
        if self.deg == 1 {
            return Ok(vec![a[0].inv()?]);
        }
        let modulus: Vec<Rational> = self.phi.iter().map(|c| Rational::from_bigint(c.clone())).collect();
        let (mut r0, mut r1) = (modulus, trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::ONE]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1)?;
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Phi_n is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].inv()?;
        let scaled: Vec<Rational> = s0.iter().map(|x| x.mul(&c)).collect();
        Ok(self.reduce(scaled))
    }
}

fn trim(mut a: Vec<Rational>) -> Vec<Rational> {
    while a.last().is_some_and(Rational::is_zero) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::ZERO;
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero).sub(b.get(i).unwrap_or(&zero))).collect())
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

fn divrem(a: &[Rational], b: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let db = b.len() - 1;
    let lead_inv = b[db].inv()?;
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![Rational::ZERO; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].mul(&lead_inv);
        let shift = top - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(bj));
        }
        q[shift] = c;
        r = trim(r);
    }
    Ok((trim(q), r))
}
