use super::*;
use crate::characters::{dual_group, parse_character_list};
use crate::combinatorics::{Combinations, Permutations};
use crate::field::{FieldCtx, FieldElem, FieldSpec};
use crate::linalg::determinant;
use crate::matroid::{common_basis, LinearMatroid};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elems(spec: &GroupSpec, s: &str) -> Vec<GroupElement> {
    spec.parse_element_list(s).unwrap()
}

fn z(n: u64) -> GroupSpec {
    GroupSpec::cyclic(n).unwrap()
}

/// Sums computed from coordinates, without index arithmetic.
fn oracle_signature(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], sigma: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..a.len()).map(|i| spec.index_of(&spec.add(&a[i], &b[sigma[i]]).unwrap()).unwrap()).collect();
    v.sort();
    v
}

/// Every permutation with its signature and sign (sign by inversion count).
fn oracle_all(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    Permutations::new(a.len())
        .map(|p| {
            let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sig = oracle_signature(spec, a, b, &p);
            (p, sig, if inversions % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

fn random_subset(rng: &mut ChaCha8Rng, spec: &GroupSpec, k: usize) -> Vec<GroupElement> {
    sample(rng, spec.size(), k).into_iter().map(|i| spec.element_at(i)).collect()
}

#[test]
fn permutation_parsing() {
    let p: Permutation = "[0,2,1]".parse().unwrap();
    assert_eq!(p.as_slice(), &[0, 2, 1]);
    assert_eq!(p.to_string(), "[0,2,1]");
    assert_eq!(p.sign(), -1);
    assert!("[0,0]".parse::<Permutation>().is_err());
    assert!("[1,2]".parse::<Permutation>().is_err());
    assert_eq!(serde_json::to_string(&p).unwrap(), "[0,2,1]");
    assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    assert_eq!("[]".parse::<Permutation>().unwrap(), Permutation::identity(0));
}

#[test]
fn signature_examples() {
    let g = z(5);
    let (a, b) = (elems(&g, "(0);(1)"), elems(&g, "(0);(2)"));
    assert_eq!(multiset_signature(&g, &a, &b, &Permutation::identity(2)).unwrap().as_slice(), &[0, 3]);
    let swap = Permutation::new(vec![1, 0]).unwrap();
    assert_eq!(multiset_signature(&g, &a, &b, &swap).unwrap().as_slice(), &[1, 2]);
    let single = multiset_signature(&g, &elems(&g, "(3)"), &elems(&g, "(4)"), &Permutation::identity(1)).unwrap();
    assert_eq!(single.as_slice(), &[2]);

    assert!(matches!(multiset_signature(&g, &a, &elems(&g, "(0)"), &Permutation::identity(2)), Err(Error::SizeMismatch(_))));
    assert!(matches!(multiset_signature(&g, &elems(&g, "(1);(1)"), &b, &Permutation::identity(2)), Err(Error::DuplicateElement(_))));
}

#[test]
fn lemma4_examples() {
    let g = z(5);
    assert_eq!(lemma4_permutation(&g, &elems(&g, "(3)"), &elems(&g, "(1)")).unwrap(), Permutation::identity(1));
    let (a, b) = (elems(&g, "(0);(1)"), elems(&g, "(0);(2)"));
    let pi = lemma4_permutation(&g, &a, &b).unwrap();
    assert_eq!(pi, Permutation::identity(2));
    let sig = multiset_signature(&g, &a, &b, &pi).unwrap();
    assert_eq!(count_attaining(&g, &a, &b, &sig).unwrap(), 1);

    let g3 = z(3);
    let all = elems(&g3, "(0);(1);(2)");
    let pi = lemma4_permutation(&g3, &all, &all).unwrap();
    let zero_sum: Vec<_> = oracle_all(&g3, &all, &all).into_iter().filter(|(_, s, _)| s == &vec![0, 0, 0]).collect();
    assert_eq!(zero_sum.len(), 1);
    assert_eq!(pi.as_slice(), zero_sum[0].0.as_slice());
    assert_eq!(pi.as_slice(), &[0, 2, 1]);

    assert!(lemma4_permutation(&g, &[], &[]).is_err());
}

#[test]
fn count_attaining_examples() {
    let g2 = z(2);
    let ab = elems(&g2, "(0);(1)");
    let s00 = MultisetSignature::new(vec![0, 0]);
    assert_eq!(count_attaining(&g2, &ab, &ab, &s00).unwrap(), 1);
    assert_eq!(count_attaining(&g2, &ab, &ab, &MultisetSignature::new(vec![0, 1])).unwrap(), 0);
    let g = z(7);
    let one = MultisetSignature::new(vec![5]);
    assert_eq!(count_attaining(&g, &elems(&g, "(2)"), &elems(&g, "(3)"), &one).unwrap(), 1);
    let big = z(16);
    let set: Vec<_> = big.enumerate()[..9].to_vec();
    let sig = MultisetSignature::new(vec![0; 9]);
    assert!(matches!(count_attaining(&big, &set, &set, &sig), Err(Error::BudgetExceeded { .. })));
    assert!(count_attaining_with_bound(&big, &set, &set, &sig, 9).is_ok());
}

#[test]
fn polynomial_examples() {
    let g = z(5);
    let p1 = snevily_polynomial(&g, &elems(&g, "(1)"), &elems(&g, "(1)")).unwrap();
    assert_eq!(p1.terms().len(), 1);
    assert_eq!(p1.coefficient(&MultisetSignature::new(vec![2])), 1);

    let (a, b) = (elems(&g, "(0);(1)"), elems(&g, "(0);(2)"));
    let p = snevily_polynomial(&g, &a, &b).unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"[0,3]":1,"[1,2]":-1}"#);

    let r2 = reduce_mod_char(&p, 2).unwrap();
    assert_eq!(serde_json::to_string(&r2).unwrap(), r#"{"[0,3]":1,"[1,2]":1}"#);
    assert_eq!(reduce_mod_char(&p, 0).unwrap(), p);
    assert_eq!(reduce_mod_char(&p, 4), Err(Error::InvalidCharacteristic(4)));
    assert_eq!(reduce_mod_char(&p, 1), Err(Error::InvalidCharacteristic(1)));

    // Z_3 with all of G on both sides: det of a circulant, one term survives per sum pattern
    let g3 = z(3);
    let all = elems(&g3, "(0);(1);(2)");
    let p3 = snevily_polynomial(&g3, &all, &all).unwrap();
    assert!(p3.weight() <= 6);
}

#[test]
fn snevily_examples() {
    let g2 = z(2);
    let ab = elems(&g2, "(0);(1)");
    assert_eq!(find_snevily_permutation(&g2, &ab, &ab).unwrap(), None);
    let g = z(5);
    let (a, b) = (elems(&g, "(0);(1)"), elems(&g, "(0);(2)"));
    assert_eq!(find_snevily_permutation(&g, &a, &b).unwrap(), Some(Permutation::identity(2)));
    assert_eq!(find_snevily_permutation(&g, &elems(&g, "(4)"), &elems(&g, "(4)")).unwrap(), Some(Permutation::identity(1)));
}

#[test]
fn snevily_search_matches_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for spec in ["4", "2,2", "6", "8", "2,4", "3,3", "9", "12"].map(|s| s.parse::<GroupSpec>().unwrap()) {
        for _ in 0..40 {
            let k = rng.random_range(1..=4.min(spec.size()));
            let (a, b) = (random_subset(&mut rng, &spec, k), random_subset(&mut rng, &spec, k));
            let exists = oracle_all(&spec, &a, &b).iter().any(|(p, _, _)| {
                let mut s: Vec<_> = (0..k).map(|i| spec.add(&a[i], &b[p[i]]).unwrap()).collect();
                s.sort();
                s.dedup();
                s.len() == k
            });
            let got = find_snevily_permutation(&spec, &a, &b).unwrap();
            assert_eq!(got.is_some(), exists, "{spec} {a:?} {b:?}");
            if let Some(p) = got {
                let sig = oracle_signature(&spec, &a, &b, p.as_slice());
                assert!(sig.windows(2).all(|w| w[0] != w[1]));
            }
        }
    }
}

#[test]
fn lemma4_and_polynomial_against_oracle() {
    for spec in crate::group::abelian_groups_up_to(8) {
        let m = spec.size();
        for k in 1..=3.min(m) {
            for ai in Combinations::new(m, k) {
                for bi in Combinations::new(m, k) {
                    let a: Vec<_> = ai.iter().map(|&i| spec.element_at(i)).collect();
                    let b: Vec<_> = bi.iter().map(|&i| spec.element_at(i)).collect();
                    let all = oracle_all(&spec, &a, &b);
                    let pi = lemma4_permutation(&spec, &a, &b).unwrap();
                    let sig = oracle_signature(&spec, &a, &b, pi.as_slice());
                    let attaining: Vec<_> = all.iter().filter(|(_, s, _)| s == &sig).collect();
                    assert_eq!(attaining.len(), 1);
                    assert_eq!(count_attaining(&spec, &a, &b, &MultisetSignature::new(sig.clone())).unwrap(), 1);

                    let poly = snevily_polynomial(&spec, &a, &b).unwrap();
                    let coeff = poly.coefficient(&MultisetSignature::new(sig));
                    assert_eq!(coeff, attaining[0].2);
                    assert_eq!(coeff, pi.sign());
                    for c in [2, 3, 5] {
                        assert!(!reduce_mod_char(&poly, c).unwrap().is_zero());
                    }
                    // coefficient of each signature is the signed count of its permutations
                    for (s, &c) in poly.terms() {
                        let expected: i64 = all.iter().filter(|(_, t, _)| t.as_slice() == s.as_slice()).map(|x| x.2).sum();
                        assert_eq!(c, expected);
                    }
                    assert!(poly.weight() as usize <= all.len());
                }
            }
        }
    }
}

fn random_phi(ctx: &FieldCtx, m: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElem> {
    (0..m).map(|_| ctx.random(rng)).collect()
}

#[test]
fn cauchy_binet_examples() {
    let g3 = z(3);
    let gf4 = FieldCtx::for_group(&g3, FieldSpec::Finite(2)).unwrap();
    let ab = elems(&g3, "(0);(1)");
    assert!(cauchy_binet_check(&gf4, &g3, &ab, &ab, &vec![gf4.zero(); 3]).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let phi = random_phi(&gf4, 3, &mut rng);
        assert!(cauchy_binet_check(&gf4, &g3, &ab, &ab, &phi).unwrap());
        assert!(char2_identity_check(&gf4, &g3, &ab, &ab, &phi).unwrap());
    }

    // a single character: rank one, both sides vanish
    let g5 = z(5);
    let q5 = FieldCtx::for_group(&g5, FieldSpec::Cyclotomic).unwrap();
    let chi = &dual_group(&g5)[2];
    let phi: Vec<_> = g5.enumerate().iter().map(|g| crate::characters::evaluate(&q5, &g5, chi, g).unwrap()).collect();
    let (a, b) = (elems(&g5, "(0);(1)"), elems(&g5, "(0);(2)"));
    let l = sum_matrix_values(&SumMatrix::new(&g5, &a, &b).unwrap(), &phi).unwrap();
    assert!(q5.is_zero(&determinant(&q5, &l).unwrap()));
    assert!(cauchy_binet_check(&q5, &g5, &a, &b, &phi).unwrap());

    assert!(matches!(char2_identity_check(&q5, &g5, &a, &b, &phi), Err(Error::WrongCharacteristic { expected: 2, found: 0 })));
    assert!(matches!(cauchy_binet_check_with_budget(&q5, &g5, &a, &b, &phi, 5), Err(Error::BudgetExceeded { .. })));
    assert!(matches!(cauchy_binet_check(&q5, &g5, &a, &b, &phi[..4]), Err(Error::FunctionSize { .. })));
}

#[test]
fn char2_single_row() {
    let g = z(7);
    let ctx = FieldCtx::for_group(&g, FieldSpec::Finite(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let phi = random_phi(&ctx, 7, &mut rng);
        let (a, b) = (elems(&g, "(3)"), elems(&g, "(6)"));
        assert!(char2_identity_check(&ctx, &g, &a, &b, &phi).unwrap());
        assert!(cauchy_binet_check(&ctx, &g, &a, &b, &phi).unwrap());
    }
}

#[test]
fn identities_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let odd: Vec<GroupSpec> = ["3", "5", "7", "9", "3,3"].map(|s| s.parse().unwrap()).to_vec();
    for _ in 0..30 {
        let spec = &odd[rng.random_range(0..odd.len())];
        let field = [FieldSpec::Finite(2), FieldSpec::Cyclotomic, FieldSpec::Finite(7)][rng.random_range(0..3)];
        let Ok(ctx) = FieldCtx::for_group(spec, field) else { continue };
        let k = rng.random_range(1..=3);
        let (a, b) = (random_subset(&mut rng, spec, k), random_subset(&mut rng, spec, k));
        let phi = random_phi(&ctx, spec.size(), &mut rng);
        assert!(cauchy_binet_check(&ctx, spec, &a, &b, &phi).unwrap());
        if ctx.characteristic() == 2 {
            assert!(char2_identity_check(&ctx, spec, &a, &b, &phi).unwrap());
        }
    }
}

#[test]
fn indicator_phi_examples() {
    let g3 = z(3);
    let gf4 = FieldCtx::for_group(&g3, FieldSpec::Finite(2)).unwrap();
    let phi = lemma4_indicator_phi(&gf4, &g3, &elems(&g3, "(1)"), &elems(&g3, "(1)")).unwrap();
    assert_eq!(phi, vec![gf4.zero(), gf4.zero(), gf4.one()]);

    let all = elems(&g3, "(0);(1);(2)");
    let phi = lemma4_indicator_phi(&gf4, &g3, &all, &all).unwrap();
    assert_eq!(phi, vec![gf4.one(), gf4.zero(), gf4.zero()]);
    let l = sum_matrix_values(&SumMatrix::new(&g3, &all, &all).unwrap(), &phi).unwrap();
    assert!(gf4.is_one(&determinant(&gf4, &l).unwrap()));
    assert!(char2_identity_check(&gf4, &g3, &all, &all, &phi).unwrap());

    let g5 = z(5);
    let gf16 = FieldCtx::for_group(&g5, FieldSpec::Finite(2)).unwrap();
    let (a, b) = (elems(&g5, "(0);(1)"), elems(&g5, "(0);(2)"));
    let phi = lemma4_indicator_phi(&gf16, &g5, &a, &b).unwrap();
    let l = sum_matrix_values(&SumMatrix::new(&g5, &a, &b).unwrap(), &phi).unwrap();
    assert!(!gf16.is_zero(&determinant(&gf16, &l).unwrap()));
}

#[test]
fn indicator_phi_never_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for spec in ["3", "5", "7", "9", "3,3", "15"].map(|s| s.parse::<GroupSpec>().unwrap()) {
        let ctx = FieldCtx::for_group(&spec, FieldSpec::Finite(2)).unwrap();
        for _ in 0..20 {
            let k = rng.random_range(1..=4.min(spec.size()));
            let (a, b) = (random_subset(&mut rng, &spec, k), random_subset(&mut rng, &spec, k));
            let phi = lemma4_indicator_phi(&ctx, &spec, &a, &b).unwrap();
            let l = sum_matrix_values(&SumMatrix::new(&spec, &a, &b).unwrap(), &phi).unwrap();
            assert!(!ctx.is_zero(&determinant(&ctx, &l).unwrap()));
        }
    }
}

#[test]
fn theorem1_witness_examples() {
    let g = z(5);
    let q5 = FieldCtx::for_group(&g, FieldSpec::Cyclotomic).unwrap();
    let (a, b) = (elems(&g, "(2)"), elems(&g, "(4)"));
    assert!(verify_theorem1_witness(&q5, &g, &a, &b, &[crate::characters::Character::trivial(&g)]).unwrap());
    let (a, b) = (elems(&g, "(0);(1)"), elems(&g, "(0);(2)"));
    let repeated = parse_character_list(&g, "(1);(1)").unwrap();
    assert!(!verify_theorem1_witness(&q5, &g, &a, &b, &repeated).unwrap());
    assert!(verify_theorem1_witness(&q5, &g, &a, &b, &repeated[..1]).is_err());
}

#[test]
fn theorem1_witness_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let groups = crate::group::abelian_groups_up_to(20);
    let mut checked = 0;
    while checked < 100 {
        let spec = &groups[rng.random_range(0..groups.len())];
        let field = [FieldSpec::Finite(2), FieldSpec::Finite(3), FieldSpec::Finite(7), FieldSpec::Cyclotomic][rng.random_range(0..4)];
        let Ok(ctx) = FieldCtx::for_group(spec, field) else { continue };
        let k = rng.random_range(1..=4.min(spec.size()));
        let (a, b) = (random_subset(&mut rng, spec, k), random_subset(&mut rng, spec, k));
        let ma = LinearMatroid::for_anchor_set(&ctx, spec, &a).unwrap();
        let mb = LinearMatroid::for_anchor_set(&ctx, spec, &b).unwrap();
        let basis = common_basis(&ma, &mb).unwrap();
        assert!(verify_theorem1_witness(&ctx, spec, &a, &b, basis.basis().unwrap()).unwrap());
        checked += 1;
    }
}

#[test]
fn specialization_coherence() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let cases = [("5", FieldSpec::Cyclotomic), ("3,3", FieldSpec::Finite(2)), ("8", FieldSpec::Finite(3)), ("7", FieldSpec::Finite(2))];
    for (g, field) in cases {
        let spec: GroupSpec = g.parse().unwrap();
        let ctx = FieldCtx::for_group(&spec, field).unwrap();
        for _ in 0..10 {
            let k = rng.random_range(1..=4);
            let (a, b) = (random_subset(&mut rng, &spec, k), random_subset(&mut rng, &spec, k));
            let phi = random_phi(&ctx, spec.size(), &mut rng);
            let poly = snevily_polynomial(&spec, &a, &b).unwrap();
            let l = sum_matrix_values(&SumMatrix::new(&spec, &a, &b).unwrap(), &phi).unwrap();
            assert_eq!(poly.evaluate(&ctx, &phi).unwrap(), determinant(&ctx, &l).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snevily_exists_for_odd_order(n in prop::sample::select(vec![3u64, 5, 7, 9, 11, 15, 21, 25]), seed in any::<u64>()) {
        let spec = z(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.random_range(1..=5.min(spec.size()));
        let (a, b) = (random_subset(&mut rng, &spec, k), random_subset(&mut rng, &spec, k));
        let p = find_snevily_permutation(&spec, &a, &b).unwrap();
        prop_assert!(p.is_some());
        let sig = oracle_signature(&spec, &a, &b, p.unwrap().as_slice());
        prop_assert!(sig.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn lemma4_is_unique(moduli in prop::sample::select(vec!["6", "2,6", "4,4", "10", "2,2,3"]), seed in any::<u64>()) {
        let spec: GroupSpec = moduli.parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.random_range(1..=5);
        let (a, b) = (random_subset(&mut rng, &spec, k), random_subset(&mut rng, &spec, k));
        let pi = lemma4_permutation(&spec, &a, &b).unwrap();
        let sig = multiset_signature(&spec, &a, &b, &pi).unwrap();
        prop_assert_eq!(count_attaining(&spec, &a, &b, &sig).unwrap(), 1);
        let poly = snevily_polynomial(&spec, &a, &b).unwrap();
        prop_assert_eq!(poly.coefficient(&sig), pi.sign());
    }
}
