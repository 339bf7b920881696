//! Finite abelian groups `Z_{n_1} x ... x Z_{n_r}` and their elements.
//!
//! Elements are residue vectors. The canonical enumeration is mixed-radix
//! with the last coordinate varying fastest, so the index of an element is
//! its mixed-radix value and the zero element has index 0.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    order: u64,
    exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("at least one cyclic factor is required".into()));
        }
        if let Some(bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("modulus {bad} is smaller than 2")));
        }
        let mut order: u64 = 1;
        for &n in &moduli {
            order = order
                .checked_mul(n)
                .filter(|&m| m <= u32::MAX as u64)
                .ok_or_else(|| Error::InvalidGroup("group order is too large".into()))?;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        Ok(Self { moduli, order, exponent })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// `m = |G|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `n = lcm(n_1, ..., n_r)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn size(&self) -> usize {
        self.order as usize
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Builds an element, rejecting coordinates outside `[0, n_i)`.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let g = GroupElement { coords };
        self.validate(&g)?;
        Ok(g)
    }

    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: g.coords.len() });
        }
        for (index, (&value, &modulus)) in g.coords.iter().zip(&self.moduli).enumerate() {
            if value >= modulus {
                return Err(Error::CoordinateOutOfRange { index, value, modulus });
            }
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.validate(x)?;
        self.validate(y)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.moduli)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.validate(x)?;
        let coords = x.coords.iter().zip(&self.moduli).map(|(&a, &n)| (n - a) % n).collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.neg(y)?)
    }

    /// All `m` elements in canonical order.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.size()).map(|i| self.element_at(i)).collect()
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.validate(g)?;
        Ok(self.index_unchecked(&g.coords))
    }

    fn index_unchecked(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.moduli).fold(0u64, |acc, (&c, &n)| acc * n + c) as usize
    }

    /// Inverse of [`GroupSpec::index_of`].
    ///
    /// Panics if `index >= m`.
    pub fn element_at(&self, index: usize) -> GroupElement {
        assert!(index < self.size(), "index {index} out of range for group of order {}", self.order);
        let mut rest = index as u64;
        let mut coords = vec![0; self.rank()];
        for (c, &n) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = rest % n;
            rest /= n;
        }
        GroupElement { coords }
    }

    /// Group law on canonical indices.
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        let (mut x, mut y) = (i as u64, j as u64);
        let mut place = 1u64;
        let mut out = 0u64;
        for &n in self.moduli.iter().rev() {
            out += ((x % n + y % n) % n) * place;
            x /= n;
            y /= n;
            place *= n;
        }
        out as usize
    }

    pub fn neg_index(&self, i: usize) -> usize {
        let mut x = i as u64;
        let mut place = 1u64;
        let mut out = 0u64;
        for &n in self.moduli.iter().rev() {
            out += ((n - x % n) % n) * place;
            x /= n;
            place *= n;
        }
        out as usize
    }

    /// Parses an element written as `(c_1,...,c_r)`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `(c1,...,cr)`, got `{}`", s.trim())))?;
        let coords = parse_u64_list(inner)?;
        self.element(coords)
    }

    /// Parses a `;`-separated list of elements, e.g. `(0,1);(1,2)`.
    pub fn parse_element_list(&self, s: &str) -> Result<Vec<GroupElement>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(';').map(|part| self.parse_element(part)).collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_u64_list(s)?)
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

pub(crate) fn write_tuple(f: &mut fmt::Formatter<'_>, coords: &[u64]) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// Formats a list of elements in the `;`-separated text syntax.
pub fn format_element_list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(";")
}

pub(crate) fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>().map_err(|_| Error::Parse(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

/// Every abelian group of order at most `max_order`, one per isomorphism
/// class, in invariant-factor form `n_1 | n_2 | ... | n_r`.
///
/// Sorted by order, then lexicographically by the factor list.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for m in 2..=max_order {
        out.extend(abelian_groups_of_order(m));
    }
    out
}

pub fn abelian_groups_of_order(m: u64) -> Vec<GroupSpec> {
    // chains d_1 | d_2 | ... | d_r with product `remaining`, each a multiple of `last`
    fn rec(remaining: u64, last: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 1 {
            out.push(acc.clone());
            return;
        }
        let mut f = last;
        while f <= remaining {
            if remaining.is_multiple_of(f) && f >= 2 {
                acc.push(f);
                rec(remaining / f, f, acc, out);
                acc.pop();
            }
            f += last;
        }
    }
    let mut lists = Vec::new();
    if m >= 2 {
        rec(m, 1, &mut Vec::new(), &mut lists);
    }
    lists.sort();
    lists.into_iter().map(|l| GroupSpec::new(l).expect("factors are at least 2")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(spec: &GroupSpec, c: &[u64]) -> GroupElement {
        spec.element(c.to_vec()).unwrap()
    }

    #[test]
    fn addition_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert_eq!(z4.add(&el(&z4, &[3]), &el(&z4, &[2])).unwrap(), el(&z4, &[1]));
        let z23: GroupSpec = "2,3".parse().unwrap();
        assert_eq!(z23.add(&el(&z23, &[1, 2]), &el(&z23, &[1, 2])).unwrap(), el(&z23, &[0, 1]));
        let x = el(&z23, &[1, 1]);
        assert_eq!(z23.add(&x, &z23.zero()).unwrap(), x);
    }

    #[test]
    fn negation_examples() {
        let z5 = GroupSpec::cyclic(5).unwrap();
        assert_eq!(z5.neg(&el(&z5, &[2])).unwrap(), el(&z5, &[3]));
        let z23: GroupSpec = "2,3".parse().unwrap();
        assert_eq!(z23.neg(&z23.zero()).unwrap(), z23.zero());
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(z6.neg(&el(&z6, &[1])).unwrap(), el(&z6, &[5]));
    }

    #[test]
    fn enumeration_order() {
        let z23: GroupSpec = "2,3".parse().unwrap();
        let got: Vec<String> = z23.enumerate().iter().map(|g| g.to_string()).collect();
        assert_eq!(got, ["(0,0)", "(0,1)", "(0,2)", "(1,0)", "(1,1)", "(1,2)"]);
        let z3 = GroupSpec::cyclic(3).unwrap();
        assert_eq!(format_element_list(&z3.enumerate()), "(0);(1);(2)");
        let z22: GroupSpec = "2,2".parse().unwrap();
        assert_eq!(format_element_list(&z22.enumerate()), "(0,0);(0,1);(1,0);(1,1)");
    }

    #[test]
    fn index_examples() {
        let z23: GroupSpec = "2,3".parse().unwrap();
        assert_eq!(z23.index_of(&el(&z23, &[1, 0])).unwrap(), 3);
        assert_eq!(z23.index_of(&z23.zero()).unwrap(), 0);
        let z12 = GroupSpec::cyclic(12).unwrap();
        assert_eq!(z12.index_of(&el(&z12, &[7])).unwrap(), 7);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupSpec::new(vec![]).is_err());
        assert!(GroupSpec::new(vec![1, 3]).is_err());
        let z23: GroupSpec = "2,3".parse().unwrap();
        assert!(matches!(z23.element(vec![2, 0]), Err(Error::CoordinateOutOfRange { .. })));
        assert!(matches!(z23.element(vec![1]), Err(Error::RankMismatch { .. })));
        let bad = GroupElement { coords: vec![0] };
        assert!(z23.add(&bad, &z23.zero()).is_err());
        assert!(z23.index_of(&bad).is_err());
        assert!(z23.parse_element("1,0").is_err());
        assert!("2,x".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn parses_lists() {
        let g: GroupSpec = "2,3,9".parse().unwrap();
        let list = g.parse_element_list("(1,0,4); (0,2,8)").unwrap();
        assert_eq!(format_element_list(&list), "(1,0,4);(0,2,8)");
        assert_eq!(g.order(), 54);
        assert_eq!(g.exponent(), 18);
    }

    #[test]
    fn round_trip_and_index_law() {
        for spec in abelian_groups_up_to(256).into_iter().chain(["2,6", "4,6", "3,5,2"].map(|s| s.parse().unwrap())) {
            let elems = spec.enumerate();
            assert_eq!(elems.len() as u64, spec.order());
            assert!(elems[0].is_zero());
            for (i, g) in elems.iter().enumerate() {
                assert_eq!(spec.index_of(g).unwrap(), i);
            }
            if spec.order() <= 64 {
                for (i, x) in elems.iter().enumerate() {
                    assert_eq!(spec.neg_index(i), spec.index_of(&spec.neg(x).unwrap()).unwrap());
                    for (j, y) in elems.iter().enumerate() {
                        let s = spec.add(x, y).unwrap();
                        assert_eq!(spec.add_index(i, j), spec.index_of(&s).unwrap());
                        assert_eq!(s, spec.add(y, x).unwrap());
                        for z in elems.iter().step_by(3) {
                            let l = spec.add(&s, z).unwrap();
                            let r = spec.add(x, &spec.add(y, z).unwrap()).unwrap();
                            assert_eq!(l, r);
                        }
                    }
                    assert!(spec.add(x, &spec.neg(x).unwrap()).unwrap().is_zero());
                }
            }
        }
    }

    fn prime_support(mut x: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= x {
            if x.is_multiple_of(p) {
                out.push(p);
                while x.is_multiple_of(p) {
                    x /= p;
                }
            }
            p += 1;
        }
        if x > 1 {
            out.push(x);
        }
        out
    }

    #[test]
    fn exponent_divides_order_with_same_primes() {
        // every moduli list (not only invariant-factor form) with m <= 100
        fn rec(prefix: &mut Vec<u64>, m: u64, checked: &mut usize) {
            if !prefix.is_empty() {
                let spec = GroupSpec::new(prefix.clone()).unwrap();
                assert_eq!(spec.order() % spec.exponent(), 0);
                assert_eq!(prime_support(spec.order()), prime_support(spec.exponent()));
                *checked += 1;
            }
            for n in 2..=100 / m {
                prefix.push(n);
                rec(prefix, m * n, checked);
                prefix.pop();
            }
        }
        let mut checked = 0;
        rec(&mut Vec::new(), 1, &mut checked);
        assert!(checked > 500, "{checked}");
    }

    #[test]
    fn isomorphism_classes() {
        let counts: Vec<usize> = (2..=16).map(|m| abelian_groups_of_order(m).len()).collect();
        // number of abelian groups of order 2..=16
        assert_eq!(counts, [1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        let names: Vec<String> = abelian_groups_of_order(16).iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["2,2,2,2", "2,2,4", "2,8", "4,4", "16"]);
        assert_eq!(abelian_groups_of_order(36).len(), 4);
    }
}
