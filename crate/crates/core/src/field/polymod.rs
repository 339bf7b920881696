//! Dense polynomials over the prime field `GF(p)`, constant term first.
//! Results are trimmed; the zero polynomial is the empty vector.

pub(crate) type Poly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(c, bj, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a[..=d].iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns `s` with `s * a = 1 (mod m)`, or `None` when `gcd(a, m) != 1`.
pub(crate) fn inverse_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Poly> {
    let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(trim(s0.iter().map(|&x| mulmod(x, c, p)).collect()))
}

pub(crate) fn mul_mod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod_poly(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut result: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod_poly(&result, &b, m, p);
        }
        b = mul_mod_poly(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Rabin's irreducibility test for a monic `f` of degree `d >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x: Poly = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![rem(&x, f, p)];
    for i in 1..=d {
        let next = pow_mod_poly(&frob[i - 1], p as u128, f, p);
        frob.push(next);
    }
    if !sub(&frob[d], &frob[0], p).is_empty() {
        return false;
    }
    for r in crate::numtheory::prime_divisors(d as u64) {
        let h = sub(&frob[d / r as usize], &frob[0], p);
        if degree(&gcd(&h, f, p)) != Some(0) {
            return false;
        }
    }
    true
}
