//! Invariants through the public API, each checked against a direct oracle.

use proptest::prelude::*;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use snevily::characters::{dual_group, evaluate};
use snevily::field::{FieldCtx, FieldElem, FieldSpec};
use snevily::group::{GroupElement, GroupSpec};
use snevily::linalg::{determinant, Matrix};
use snevily::matroid::{common_basis, LinearMatroid};
use snevily::snevily::{find_snevily_permutation, snevily_polynomial};
use snevily::sweep::coprime_primes;

const GROUPS: &[&[u64]] = &[&[2], &[3], &[4], &[5], &[6], &[7], &[2, 2], &[2, 4], &[3, 3], &[9], &[2, 3], &[3, 5], &[2, 2, 2], &[15]];
const ODD_GROUPS: &[&[u64]] = &[&[3], &[5], &[7], &[9], &[3, 3], &[15], &[3, 5], &[5, 5], &[3, 9]];

fn group(moduli: &[u64]) -> GroupSpec {
    GroupSpec::new(moduli.to_vec()).unwrap()
}

/// `cyc` for `use_cyc`, otherwise the smallest prime coprime to the exponent.
fn context(spec: &GroupSpec, use_cyc: bool) -> FieldCtx {
    let field = if use_cyc { FieldSpec::Cyclotomic } else { FieldSpec::Finite(coprime_primes(spec.exponent(), 1)[0]) };
    FieldCtx::for_group(spec, field).unwrap()
}

fn coord_add(moduli: &[u64], x: &[u64], y: &[u64]) -> Vec<u64> {
    moduli.iter().zip(x.iter().zip(y)).map(|(n, (a, b))| (a + b) % n).collect()
}

fn perms(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn inversion_sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// Leibniz expansion over all of `S_n`.
fn leibniz(ctx: &FieldCtx, a: &[Vec<FieldElem>]) -> FieldElem {
    let mut acc = ctx.zero();
    for p in perms(a.len()) {
        let mut term = ctx.one();
        for (i, &j) in p.iter().enumerate() {
            term = ctx.mul(&term, &a[i][j]);
        }
        acc = if inversion_sign(&p) { ctx.add(&acc, &term) } else { ctx.sub(&acc, &term) };
    }
    acc
}

fn random_set(rng: &mut ChaCha8Rng, spec: &GroupSpec, k: usize) -> Vec<GroupElement> {
    sample(rng, spec.size(), k).into_iter().map(|i| spec.element_at(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_coordinatewise(g in 0..GROUPS.len(), i in 0usize..1000, j in 0usize..1000) {
        let spec = group(GROUPS[g]);
        let (i, j) = (i % spec.size(), j % spec.size());
        let (x, y) = (spec.element_at(i), spec.element_at(j));
        let sum = spec.add(&x, &y).unwrap();
        let expected = coord_add(spec.moduli(), x.coords(), y.coords());
        prop_assert_eq!(sum.coords(), expected.as_slice());
        prop_assert_eq!(spec.add_index(i, j), spec.index_of(&sum).unwrap());
        prop_assert_eq!(spec.index_of(&x).unwrap(), i);
        prop_assert!(spec.add(&x, &spec.neg(&x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn determinant_matches_leibniz(g in 0..GROUPS.len(), use_cyc: bool, n in 1usize..=4, seed: u64) {
        let ctx = context(&group(GROUPS[g]), use_cyc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<FieldElem>> = (0..n).map(|_| (0..n).map(|_| ctx.random(&mut rng)).collect()).collect();
        let m = Matrix::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(determinant(&ctx, &m).unwrap(), leibniz(&ctx, &rows));
    }

    #[test]
    fn characters_are_homomorphisms(g in 0..GROUPS.len(), use_cyc: bool, u in 0usize..1000, i in 0usize..1000, j in 0usize..1000) {
        let spec = group(GROUPS[g]);
        let ctx = context(&spec, use_cyc);
        let chi = &dual_group(&spec)[u % spec.size()];
        let (x, y) = (spec.element_at(i % spec.size()), spec.element_at(j % spec.size()));
        let lhs = evaluate(&ctx, &spec, chi, &spec.add(&x, &y).unwrap()).unwrap();
        let rhs = ctx.mul(&evaluate(&ctx, &spec, chi, &x).unwrap(), &evaluate(&ctx, &spec, chi, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(ctx.is_one(&evaluate(&ctx, &spec, chi, &spec.zero()).unwrap()));
    }

    #[test]
    fn common_basis_minors_are_nonzero(g in 0..GROUPS.len(), use_cyc: bool, k in 1usize..=4, seed: u64) {
        let spec = group(GROUPS[g]);
        let ctx = context(&spec, use_cyc);
        let k = k.min(spec.size());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_set(&mut rng, &spec, k);
        let b = random_set(&mut rng, &spec, k);
        let ma = LinearMatroid::for_anchor_set(&ctx, &spec, &a).unwrap();
        let mb = LinearMatroid::for_anchor_set(&ctx, &spec, &b).unwrap();
        let result = common_basis(&ma, &mb).unwrap();
        let chars = result.basis().expect("a common basis always exists");
        prop_assert_eq!(chars.len(), k);
        for set in [&a, &b] {
            let rows: Vec<Vec<FieldElem>> = chars.iter().map(|c| set.iter().map(|x| evaluate(&ctx, &spec, c, x).unwrap()).collect()).collect();
            prop_assert!(!ctx.is_zero(&leibniz(&ctx, &rows)));
        }
    }

    #[test]
    fn odd_order_sums_can_be_made_distinct(g in 0..ODD_GROUPS.len(), k in 1usize..=5, seed: u64) {
        let spec = group(ODD_GROUPS[g]);
        let k = k.min(spec.size());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_set(&mut rng, &spec, k);
        let b = random_set(&mut rng, &spec, k);
        let pi = find_snevily_permutation(&spec, &a, &b).unwrap().expect("odd order");
        let mut sums: Vec<Vec<u64>> = (0..k).map(|i| coord_add(spec.moduli(), a[i].coords(), b[pi.apply(i)].coords())).collect();
        sums.sort();
        sums.dedup();
        prop_assert_eq!(sums.len(), k);
    }

    #[test]
    fn polynomial_specializes_to_determinant(g in 0..GROUPS.len(), use_cyc: bool, k in 1usize..=3, seed: u64) {
        let spec = group(GROUPS[g]);
        let ctx = context(&spec, use_cyc);
        let k = k.min(spec.size());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_set(&mut rng, &spec, k);
        let b = random_set(&mut rng, &spec, k);
        let phi: Vec<FieldElem> = (0..spec.size()).map(|_| ctx.random(&mut rng)).collect();
        let value = |x: &GroupElement, y: &GroupElement| {
            let s = spec.element(coord_add(spec.moduli(), x.coords(), y.coords())).unwrap();
            phi[spec.index_of(&s).unwrap()].clone()
        };
        let rows: Vec<Vec<FieldElem>> = a.iter().map(|x| b.iter().map(|y| value(x, y)).collect()).collect();
        let poly = snevily_polynomial(&spec, &a, &b).unwrap();
        prop_assert_eq!(poly.evaluate(&ctx, &phi).unwrap(), leibniz(&ctx, &rows));
    }
}
