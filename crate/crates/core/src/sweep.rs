//! Exhaustive and seeded-random property sweeps.
//!
//! A sweep is split into independent work units in a canonical order. Units
//! run sequentially or on the rayon pool; results are merged in unit order,
//! so a report depends only on its [`SweepConfig`].

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{character_table, dual_group, fourier_coefficients, orthogonality_sum};
use crate::combinatorics::{Combinations, Permutations};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, FieldSpec};
use crate::group::{abelian_groups_up_to, GroupElement, GroupSpec};
use crate::linalg::determinant;
use crate::matroid::{brute_force_common_basis, common_basis, Intersection, LinearMatroid, Matroid, DEFAULT_SUBSET_BUDGET};
use crate::numtheory::is_prime;
use crate::snevily::{
    addition_table, cauchy_binet_check, char2_identity_check, lemma4_indicator_phi, reduce_mod_char, sum_matrix_values,
    verify_theorem1_witness, SnevilyPolynomial, SumMatrix,
};

/// Counterexamples kept verbatim in a report; the rest are only counted.
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Characters,
    Theorem1,
    Matroid,
    Lemma4,
    Theorem3,
    Identities,
    Coherence,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Characters,
        Suite::Theorem1,
        Suite::Matroid,
        Suite::Lemma4,
        Suite::Theorem3,
        Suite::Identities,
        Suite::Coherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Characters => "characters",
            Suite::Theorem1 => "theorem1",
            Suite::Matroid => "matroid",
            Suite::Lemma4 => "lemma4",
            Suite::Theorem3 => "theorem3",
            Suite::Identities => "identities",
            Suite::Coherence => "coherence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    pub suite: Suite,
    /// Largest group order in the exhaustive part.
    pub max_m: u64,
    /// Largest set size in the exhaustive part.
    pub max_k: usize,
    /// Number of seeded random instances.
    pub random: usize,
    pub random_max_m: u64,
    pub random_max_k: usize,
    pub seed: u64,
    #[serde(skip)]
    pub execution: Execution,
}

impl SweepConfig {
    /// Acceptance-scale defaults for each suite.
    pub fn new(suite: Suite) -> Self {
        let (max_m, max_k, random, random_max_m, random_max_k) = match suite {
            Suite::Characters => (36, 0, 100, 36, 0),
            Suite::Theorem1 => (9, 3, 500, 36, 5),
            Suite::Matroid => (0, 0, 200, 16, 4),
            Suite::Lemma4 => (15, 4, 0, 0, 0),
            Suite::Theorem3 => (15, 3, 500, 81, 5),
            Suite::Identities => (0, 0, 100, 9, 3),
            Suite::Coherence => (0, 0, 100, 9, 4),
        };
        Self { suite, max_m, max_k, random, random_max_m, random_max_k, seed: 0, execution: Execution::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub instances: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub checks: Vec<CheckSummary>,
    pub instances: u64,
    pub violations: u64,
    /// Hash of every instance's answer, in canonical order.
    pub digest: String,
    pub counterexamples: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Per-unit tallies, merged in unit order.
#[derive(Debug, Default)]
struct Outcome {
    counts: Vec<(u64, u64)>,
    counterexamples: Vec<String>,
    hasher: DefaultHasher,
}

impl Outcome {
    fn new(checks: usize) -> Self {
        Self { counts: vec![(0, 0); checks], ..Default::default() }
    }

    fn record(&mut self, check: usize, ok: bool, instance: impl FnOnce() -> String) {
        self.counts[check].0 += 1;
        if !ok {
            self.counts[check].1 += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(instance());
            }
        }
    }

    fn answer<T: Hash>(&mut self, value: T) {
        value.hash(&mut self.hasher);
    }
}

fn run_units<U: Sync, F>(execution: Execution, units: &[U], f: F) -> Vec<Outcome>
where
    F: Fn(usize, &U) -> Outcome + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => units.par_iter().enumerate().map(|(i, u)| f(i, u)).collect(),
        _ => units.iter().enumerate().map(|(i, u)| f(i, u)).collect(),
    }
}

fn merge(config: &SweepConfig, names: &[&str], outcomes: Vec<Outcome>) -> SweepReport {
    let mut counts = vec![(0u64, 0u64); names.len()];
    let mut counterexamples = Vec::new();
    let mut digest = DefaultHasher::new();
    for o in outcomes {
        for (c, (n, v)) in counts.iter_mut().zip(o.counts) {
            c.0 += n;
            c.1 += v;
        }
        for ce in o.counterexamples {
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(ce);
            }
        }
        o.hasher.finish().hash(&mut digest);
    }
    let checks: Vec<CheckSummary> = names
        .iter()
        .zip(&counts)
        .map(|(name, &(instances, violations))| CheckSummary { name: name.to_string(), instances, violations })
        .collect();
    SweepReport {
        config: config.clone(),
        instances: counts.iter().map(|c| c.0).sum(),
        violations: counts.iter().map(|c| c.1).sum(),
        checks,
        digest: format!("{:016x}", digest.finish()),
        counterexamples,
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    match config.suite {
        Suite::Characters => characters_suite(config),
        Suite::Theorem1 => theorem1_suite(config),
        Suite::Matroid => matroid_suite(config),
        Suite::Lemma4 => lemma4_suite(config),
        Suite::Theorem3 => theorem3_suite(config),
        Suite::Identities => identities_suite(config),
        Suite::Coherence => coherence_suite(config),
    }
}

/// The first `count` primes not dividing `n`.
pub fn coprime_primes(n: u64, count: usize) -> Vec<u64> {
    (2..).filter(|&p| is_prime(p) && !n.is_multiple_of(p)).take(count).collect()
}

fn unit_rng(seed: u64, unit: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(unit as u64);
    rng
}

fn set_text(spec: &GroupSpec, idx: &[usize]) -> String {
    let elems: Vec<GroupElement> = idx.iter().map(|&i| spec.element_at(i)).collect();
    crate::group::format_element_list(&elems)
}

fn random_indices(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Vec<usize> {
    sample(rng, m, k).into_vec()
}

fn characters_suite(config: &SweepConfig) -> Result<SweepReport> {
    let mut units = Vec::new();
    for spec in abelian_groups_up_to(config.max_m) {
        let p = coprime_primes(spec.exponent(), 1)[0];
        units.push((spec.clone(), FieldSpec::Finite(p)));
        units.push((spec, FieldSpec::Cyclotomic));
    }
    let names = ["orthogonality", "table-nonsingular", "fourier-round-trip"];
    let outcomes = run_units(config.execution, &units, |i, (spec, field)| {
        let mut out = Outcome::new(names.len());
        let ctx = FieldCtx::for_group(spec, *field).expect("field chosen coprime to the exponent");
        let chars = dual_group(spec);
        let m_one = ctx.from_int(spec.size() as i64);
        for (a, u) in chars.iter().enumerate() {
            for (b, v) in chars.iter().enumerate() {
                let s = orthogonality_sum(&ctx, spec, u, v).expect("valid characters");
                let expected = if a == b { m_one.clone() } else { ctx.zero() };
                out.record(0, s == expected, || format!("group {spec} field {field}: chars {u} {v}"));
            }
        }
        let det = determinant(&ctx, &character_table(&ctx, spec).expect("valid context")).expect("square");
        out.record(1, !ctx.is_zero(&det), || format!("group {spec} field {field}: singular table"));
        out.answer(ctx.format(&det));
        let mut rng = unit_rng(config.seed, i);
        for _ in 0..config.random {
            let phi: Vec<FieldElem> = (0..spec.size()).map(|_| ctx.random(&mut rng)).collect();
            let back = fourier_coefficients(&ctx, spec, &phi).and_then(|f| f.reconstruct(&ctx, spec)).expect("valid context");
            out.record(2, back == phi, || format!("group {spec} field {field}: round trip of {}", phi.iter().map(|x| ctx.format(x)).collect::<Vec<_>>().join(" ")));
        }
        out
    });
    Ok(merge(config, &names, outcomes))
}

/// One exhaustive unit: a group, a field, a size `k` and the first set.
struct PairUnit {
    spec: GroupSpec,
    field: Option<FieldSpec>,
    a: Vec<usize>,
}

fn pair_units(groups: &[GroupSpec], fields: impl Fn(&GroupSpec) -> Vec<Option<FieldSpec>>, max_k: usize) -> Vec<PairUnit> {
    let mut units = Vec::new();
    for spec in groups {
        for field in fields(spec) {
            for k in 1..=max_k.min(spec.size()) {
                for a in Combinations::new(spec.size(), k) {
                    units.push(PairUnit { spec: spec.clone(), field, a });
                }
            }
        }
    }
    units
}

/// A random instance: group, field, and two sets of equal size.
struct RandomInstance {
    spec: GroupSpec,
    field: Option<FieldSpec>,
    a: Vec<usize>,
    b: Vec<usize>,
}

fn random_instances(
    config: &SweepConfig,
    groups: &[GroupSpec],
    fields: impl Fn(&GroupSpec, &mut ChaCha8Rng) -> Option<FieldSpec>,
    min_k: usize,
) -> Vec<RandomInstance> {
    // a separate stream from the per-unit generators
    let mut rng = unit_rng(config.seed ^ 0x005e_ed0f_5eed, usize::MAX);
    (0..config.random)
        .map(|_| {
            let spec = groups[rng.random_range(0..groups.len())].clone();
            let field = fields(&spec, &mut rng);
            let k = rng.random_range(min_k..=config.random_max_k.min(spec.size()));
            let a = random_indices(&mut rng, spec.size(), k);
            let b = random_indices(&mut rng, spec.size(), k);
            RandomInstance { spec, field, a, b }
        })
        .collect()
}

fn theorem1_fields(spec: &GroupSpec) -> Vec<Option<FieldSpec>> {
    let mut out: Vec<Option<FieldSpec>> = coprime_primes(spec.exponent(), 2).into_iter().map(|p| Some(FieldSpec::Finite(p))).collect();
    out.push(Some(FieldSpec::Cyclotomic));
    out
}

fn random_field(spec: &GroupSpec, rng: &mut ChaCha8Rng) -> Option<FieldSpec> {
    let mut options = theorem1_fields(spec);
    // also a larger characteristic now and then
    options.push(Some(FieldSpec::Finite(coprime_primes(spec.exponent(), 4)[3])));
    options[rng.random_range(0..options.len())]
}

/// `(found, verified, characters)` for one pair.
fn theorem1_instance(ctx: &FieldCtx, spec: &GroupSpec, ma: &LinearMatroid<'_, crate::characters::Character>, a: &[GroupElement], b: &[GroupElement]) -> (bool, bool, Vec<Vec<u64>>) {
    let mb = LinearMatroid::for_anchor_set(ctx, spec, b).expect("valid anchors");
    match common_basis(ma, &mb).expect("same ground set") {
        Intersection::Basis(chars) => {
            let ok = verify_theorem1_witness(ctx, spec, a, b, &chars).expect("sizes agree");
            (true, ok, chars.iter().map(|c| c.coords().to_vec()).collect())
        }
        Intersection::Infeasible { .. } => (false, false, Vec::new()),
    }
}

fn theorem1_suite(config: &SweepConfig) -> Result<SweepReport> {
    let groups = abelian_groups_up_to(config.max_m);
    let units = pair_units(&groups, theorem1_fields, config.max_k);
    let names = ["exhaustive", "random"];
    let mut outcomes = run_units(config.execution, &units, |_, u| {
        let mut out = Outcome::new(names.len());
        let spec = &u.spec;
        let field = u.field.expect("theorem1 units carry a field");
        let ctx = FieldCtx::for_group(spec, field).expect("coprime field");
        let a: Vec<GroupElement> = u.a.iter().map(|&i| spec.element_at(i)).collect();
        let ma = LinearMatroid::for_anchor_set(&ctx, spec, &a).expect("valid anchors");
        for bi in Combinations::new(spec.size(), u.a.len()) {
            let b: Vec<GroupElement> = bi.iter().map(|&i| spec.element_at(i)).collect();
            let (found, ok, chars) = theorem1_instance(&ctx, spec, &ma, &a, &b);
            out.record(0, found && ok, || format!("group {spec} field {field} A={} B={}", set_text(spec, &u.a), set_text(spec, &bi)));
            out.answer(chars);
        }
        out
    });
    let random_groups = abelian_groups_up_to(config.random_max_m);
    let inst = random_instances(config, &random_groups, random_field, 1);
    outcomes.extend(run_units(config.execution, &inst, |_, r| {
        let mut out = Outcome::new(names.len());
        let spec = &r.spec;
        let field = r.field.expect("random theorem1 instances carry a field");
        let ctx = FieldCtx::for_group(spec, field).expect("coprime field");
        let a: Vec<GroupElement> = r.a.iter().map(|&i| spec.element_at(i)).collect();
        let b: Vec<GroupElement> = r.b.iter().map(|&i| spec.element_at(i)).collect();
        let ma = LinearMatroid::for_anchor_set(&ctx, spec, &a).expect("valid anchors");
        let (found, ok, chars) = theorem1_instance(&ctx, spec, &ma, &a, &b);
        out.record(1, found && ok, || format!("group {spec} field {field} A={} B={}", set_text(spec, &r.a), set_text(spec, &r.b)));
        out.answer(chars);
        out
    }));
    Ok(merge(config, &names, outcomes))
}

fn matroid_suite(config: &SweepConfig) -> Result<SweepReport> {
    let groups = abelian_groups_up_to(config.random_max_m);
    let inst = random_instances(config, &groups, random_field, 1);
    let names = ["feasibility-agrees", "basis-independent"];
    let outcomes = run_units(config.execution, &inst, |_, r| {
        let mut out = Outcome::new(names.len());
        let spec = &r.spec;
        let field = r.field.expect("matroid instances carry a field");
        let ctx = FieldCtx::for_group(spec, field).expect("coprime field");
        let a: Vec<GroupElement> = r.a.iter().map(|&i| spec.element_at(i)).collect();
        let b: Vec<GroupElement> = r.b.iter().map(|&i| spec.element_at(i)).collect();
        let ma = LinearMatroid::for_anchor_set(&ctx, spec, &a).expect("valid anchors");
        let mb = LinearMatroid::for_anchor_set(&ctx, spec, &b).expect("valid anchors");
        let fast = common_basis(&ma, &mb).expect("same ground set");
        let slow = brute_force_common_basis(&ma, &mb, DEFAULT_SUBSET_BUDGET).expect("within budget");
        let describe = || format!("group {spec} field {field} A={} B={}", set_text(spec, &r.a), set_text(spec, &r.b));
        out.record(0, fast.is_feasible() == slow.is_feasible(), describe);
        let independent = fast.basis().is_some_and(|s| {
            let idx: Vec<usize> = s.iter().map(|c| ma.index_of(c).expect("ground element")).collect();
            ma.is_independent_indices(&idx) && mb.is_independent_indices(&idx)
        });
        out.record(1, independent, describe);
        out.answer((fast.basis().map(|s| s.len()), slow.basis().map(|s| s.len())));
        out
    });
    Ok(merge(config, &names, outcomes))
}

/// `S_k` with signs, shared across the instances of a sweep.
struct SignedPermutations {
    by_k: Vec<Vec<(Vec<usize>, i64)>>,
}

impl SignedPermutations {
    fn new(max_k: usize) -> Self {
        let by_k = (0..=max_k).map(|k| Permutations::new(k).map(|p| {
            let s = crate::combinatorics::sign(&p);
            (p, s)
        }).collect()).collect();
        Self { by_k }
    }

    fn polynomial(&self, sums: &SumMatrix) -> SnevilyPolynomial {
        SnevilyPolynomial::from_terms(self.by_k[sums.k()].iter().map(|(p, s)| (sums.signature(p), *s)))
    }
}

fn lemma4_suite(config: &SweepConfig) -> Result<SweepReport> {
    let groups = abelian_groups_up_to(config.max_m);
    let tables: Vec<Vec<usize>> = groups.iter().map(addition_table).collect();
    let units = pair_units(&groups, |_| vec![None], config.max_k);
    let group_pos = |spec: &GroupSpec| groups.iter().position(|g| g == spec).expect("listed group");
    let perms = SignedPermutations::new(config.max_k);
    let names = ["unique-signature", "coefficient-is-sign", "survives-mod-2-3-5"];
    let outcomes = run_units(config.execution, &units, |_, u| {
        let mut out = Outcome::new(names.len());
        let spec = &u.spec;
        let (table, m) = (&tables[group_pos(spec)], spec.size());
        for bi in Combinations::new(m, u.a.len()) {
            let sums = SumMatrix::from_table(table, m, &u.a, &bi);
            let pi = sums.lemma4();
            let sig = sums.signature(&pi);
            let describe = || format!("group {spec} A={} B={} pi={pi:?}", set_text(spec, &u.a), set_text(spec, &bi));
            out.record(0, sums.count_attaining(sig.as_slice()) == 1, describe);
            let poly = perms.polynomial(&sums);
            let sign = crate::combinatorics::sign(&pi);
            out.record(1, poly.coefficient(&sig) == sign, describe);
            let survives = [2, 3, 5].iter().all(|&c| reduce_mod_char(&poly, c).expect("prime").coefficient(&sig) != 0);
            out.record(2, survives, describe);
            out.answer(&pi);
        }
        out
    });
    Ok(merge(config, &names, outcomes))
}

/// Odd-order groups in invariant-factor form, plus `Z_3 x Z_5` as written.
fn odd_groups(max_m: u64) -> Vec<GroupSpec> {
    let mut groups: Vec<GroupSpec> = abelian_groups_up_to(max_m).into_iter().filter(|g| g.order() % 2 == 1).collect();
    if max_m >= 15 {
        groups.push(GroupSpec::new(vec![3, 5]).expect("valid moduli"));
    }
    groups
}

fn theorem3_suite(config: &SweepConfig) -> Result<SweepReport> {
    let groups = odd_groups(config.max_m);
    let units = pair_units(&groups, |_| vec![None], config.max_k);
    let names = ["exhaustive", "random", "even-order-negative"];
    let check = |out: &mut Outcome, slot: usize, spec: &GroupSpec, a: &[usize], b: &[usize]| {
        let sums = SumMatrix::from_indices(spec, a, b);
        let found = sums.snevily();
        let ok = found.as_ref().is_some_and(|p| sums.signature(p).as_slice().windows(2).all(|w| w[0] != w[1]));
        out.record(slot, ok, || format!("group {spec} A={} B={}", set_text(spec, a), set_text(spec, b)));
        out.answer(found);
    };
    let mut outcomes = run_units(config.execution, &units, |_, u| {
        let mut out = Outcome::new(names.len());
        for bi in Combinations::new(u.spec.size(), u.a.len()) {
            check(&mut out, 0, &u.spec, &u.a, &bi);
        }
        out
    });
    let random_groups: Vec<GroupSpec> = abelian_groups_up_to(config.random_max_m).into_iter().filter(|g| g.order() % 2 == 1).collect();
    let inst = random_instances(config, &random_groups, |_, _| None, 1);
    outcomes.extend(run_units(config.execution, &inst, |_, r| {
        let mut out = Outcome::new(names.len());
        check(&mut out, 1, &r.spec, &r.a, &r.b);
        out
    }));
    let mut negative = Outcome::new(names.len());
    let z2 = GroupSpec::cyclic(2).expect("valid");
    let none = SumMatrix::from_indices(&z2, &[0, 1], &[0, 1]).snevily().is_none();
    negative.record(2, none, || "group 2 A=(0);(1) B=(0);(1) has a permutation with distinct sums".into());
    outcomes.push(negative);
    Ok(merge(config, &names, outcomes))
}

/// Groups of order at most `max_m` whose exponent is 3 or 5.
fn identity_groups(max_m: u64) -> Vec<GroupSpec> {
    abelian_groups_up_to(max_m).into_iter().filter(|g| matches!(g.exponent(), 3 | 5)).collect()
}

fn identities_suite(config: &SweepConfig) -> Result<SweepReport> {
    let groups = identity_groups(config.random_max_m);
    let mut cfg = config.clone();
    let cb = random_instances(&cfg, &groups, |_, rng| Some(if rng.random_bool(0.5) { FieldSpec::Finite(2) } else { FieldSpec::Cyclotomic }), 1);
    cfg.seed = config.seed.wrapping_add(1);
    let c2 = random_instances(&cfg, &groups, |_, _| Some(FieldSpec::Finite(2)), 1);
    let names = ["cauchy-binet", "char2-identity", "indicator-nonvanishing"];
    let run = |slot: usize, list: &[RandomInstance], salt: u64| {
        run_units(config.execution, list, move |i, r| {
            let mut out = Outcome::new(names.len());
            let spec = &r.spec;
            let field = r.field.expect("identity instances carry a field");
            let ctx = FieldCtx::for_group(spec, field).expect("coprime field");
            let a: Vec<GroupElement> = r.a.iter().map(|&i| spec.element_at(i)).collect();
            let b: Vec<GroupElement> = r.b.iter().map(|&i| spec.element_at(i)).collect();
            let mut rng = unit_rng(config.seed.wrapping_add(salt), i);
            let phi: Vec<FieldElem> = (0..spec.size()).map(|_| ctx.random(&mut rng)).collect();
            let describe = || format!("group {spec} field {field} A={} B={}", set_text(spec, &r.a), set_text(spec, &r.b));
            if slot == 0 {
                out.record(0, cauchy_binet_check(&ctx, spec, &a, &b, &phi).expect("within budget"), describe);
            } else {
                out.record(1, char2_identity_check(&ctx, spec, &a, &b, &phi).expect("characteristic 2"), describe);
                let ok = lemma4_indicator_phi(&ctx, spec, &a, &b).is_ok_and(|ind| {
                    let l = sum_matrix_values(&SumMatrix::new(spec, &a, &b).expect("sets"), &ind).expect("sizes");
                    !ctx.is_zero(&determinant(&ctx, &l).expect("square"))
                        && char2_identity_check(&ctx, spec, &a, &b, &ind).expect("characteristic 2")
                });
                out.record(2, ok, describe);
            }
            out.answer(phi.iter().map(|x| ctx.format(x)).collect::<Vec<_>>());
            out
        })
    };
    let mut outcomes = run(0, &cb, 0x11);
    outcomes.extend(run(1, &c2, 0x22));
    Ok(merge(config, &names, outcomes))
}

fn coherence_suite(config: &SweepConfig) -> Result<SweepReport> {
    let groups = abelian_groups_up_to(config.random_max_m);
    let inst = random_instances(config, &groups, random_field, 1);
    let perms = SignedPermutations::new(config.random_max_k);
    let names = ["polynomial-equals-determinant"];
    let outcomes = run_units(config.execution, &inst, |i, r| {
        let mut out = Outcome::new(names.len());
        let spec = &r.spec;
        let field = r.field.expect("coherence instances carry a field");
        let ctx = FieldCtx::for_group(spec, field).expect("coprime field");
        let mut rng = unit_rng(config.seed, i);
        let phi: Vec<FieldElem> = (0..spec.size()).map(|_| ctx.random(&mut rng)).collect();
        let sums = SumMatrix::from_indices(spec, &r.a, &r.b);
        let poly = perms.polynomial(&sums);
        let lhs = poly.evaluate(&ctx, &phi).expect("phi covers the group");
        let det = determinant(&ctx, &sum_matrix_values(&sums, &phi).expect("sizes")).expect("square");
        out.record(0, lhs == det, || format!("group {spec} field {field} A={} B={}", set_text(spec, &r.a), set_text(spec, &r.b)));
        out.answer(ctx.format(&det));
        out
    });
    Ok(merge(config, &names, outcomes))
}
