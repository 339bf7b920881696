//! Exact rationals with an inline `i64` representation and a heap fallback.
//!
//! Invariant: a value is `Small` exactly when its reduced numerator and
//! denominator both fit in `(-i64::MAX ..= i64::MAX)`, so derived equality
//! and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Reduced, denominator positive.
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            Rational::Big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rational::Small(n, 1)
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (fit(n), fit(d)) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64().filter(|&v| v != i64::MIN), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if b == d {
                if let Some(s) = a.checked_add(*c) {
                    return if *b == 1 { Self::small_or_big(s as i128, 1) } else { Self::from_i128(s as i128, *b as i128) };
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(num) = (a * d).checked_add(c * b) {
                return Self::from_i128(num, b * d);
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(r) => Self::from_big(-r),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                return Self::small_or_big(*a as i128 * *c as i128, 1);
            }
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Rational::Small(0, _) => Err(Error::DivisionByZero),
            Rational::Small(n, d) => Ok(if *n < 0 { Rational::Small(-d, -n) } else { Rational::Small(*d, *n) }),
            Rational::Big(r) => Ok(Self::from_big(r.recip())),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn small_or_big(num: i128, den: i128) -> Self {
        match (fit(num), fit(den)) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a rational number"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }
}

fn fit(v: i128) -> Option<i64> {
    if v > i64::MAX as i128 || v < -(i64::MAX as i128) {
        None
    } else {
        Some(v as i64)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(r: &Rational) -> BigRational {
        r.to_big()
    }

    #[test]
    fn basic_arithmetic() {
        let half = Rational::new(1, 2).unwrap();
        let third = Rational::new(-2, -6).unwrap();
        assert_eq!(half.add(&third), Rational::new(5, 6).unwrap());
        assert_eq!(half.mul(&third), Rational::new(1, 6).unwrap());
        assert_eq!(half.sub(&half), Rational::ZERO);
        assert_eq!(third.inv().unwrap(), Rational::from_int(3));
        assert_eq!(Rational::ZERO.inv(), Err(Error::DivisionByZero));
        assert_eq!(Rational::parse("-4/6").unwrap().to_string(), "-2/3");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big_a = Rational::from_int(i64::MAX);
        let sq = big_a.mul(&big_a);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.div(&big_a).unwrap();
        assert_eq!(back, big_a);
        assert!(matches!(back, Rational::Small(..)));
        assert!(matches!(Rational::from_int(i64::MIN), Rational::Big(_)));
        assert_eq!(Rational::from_int(i64::MIN).neg().neg(), Rational::from_int(i64::MIN));
    }

    fn arb() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-50i64..50, 1i64..50).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn matches_bigrational(a in arb(), b in arb()) {
            prop_assert_eq!(big(&a.add(&b)), big(&a) + big(&b));
            prop_assert_eq!(big(&a.sub(&b)), big(&a) - big(&b));
            prop_assert_eq!(big(&a.mul(&b)), big(&a) * big(&b));
            if !b.is_zero() {
                prop_assert_eq!(big(&a.div(&b).unwrap()), big(&a) / big(&b));
            }
            prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
            // canonical form: equal values share one representation
            prop_assert_eq!(Rational::from_big(big(&a)), a);
        }
    }
}
