//! Small integer helpers: primality and factorization by trial division.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

/// Smallest `d >= 1` with `p^d = 1 (mod n)`; requires `gcd(p, n) = 1`.
pub fn multiplicative_order(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let p = p % n;
    let mut x = p;
    let mut d = 1;
    while x != 1 {
        x = ((x as u128 * p as u128) % n as u128) as u64;
        d += 1;
        assert!(d <= n, "{p} is not a unit modulo {n}");
    }
    d
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}
