use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SumMatrix;
use crate::characters::{fourier_coefficients, Character, ExponentTable};
use crate::combinatorics::{Combinations, Permutations};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{char_matrix, determinant, Matrix};
use crate::matroid::DEFAULT_SUBSET_BUDGET;
use crate::numtheory::{binomial, factorial};

/// Random specializations tried after the deterministic ones vanish.
const RANDOM_SPECIALIZATION_TRIES: usize = 64;

/// `L = (phi(a_i + b_j))`.
pub fn sum_matrix_values(sums: &SumMatrix, phi: &[FieldElem]) -> Result<Matrix> {
    if phi.len() != sums.group_order() {
        return Err(Error::FunctionSize { expected: sums.group_order(), found: phi.len() });
    }
    Ok(Matrix::from_fn(sums.k(), sums.k(), |i, j| phi[sums.get(i, j)].clone()))
}

fn check_subsets(m: usize, k: usize, per_subset: u128, limit: u128, what: &'static str) -> Result<()> {
    let needed = binomial(m as u64, k as u64).saturating_mul(per_subset);
    if needed > limit {
        return Err(Error::BudgetExceeded { what, needed, limit });
    }
    Ok(())
}

/// Checks `Det L = sum over k-subsets U of prod(lambda_u) Det(chi_u(a_j)) Det(chi_u(b_j))`
/// where `lambda` are the Fourier coefficients of `phi`, together with the
/// factorization `L = M N^T`, `M = (lambda_u chi_u(a_i))`, `N = (chi_u(b_i))`.
pub fn cauchy_binet_check(ctx: &FieldCtx, spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], phi: &[FieldElem]) -> Result<bool> {
    cauchy_binet_check_with_budget(ctx, spec, a, b, phi, DEFAULT_SUBSET_BUDGET)
}

pub fn cauchy_binet_check_with_budget(
    ctx: &FieldCtx,
    spec: &GroupSpec,
    a: &[GroupElement],
    b: &[GroupElement],
    phi: &[FieldElem],
    max_subsets: u128,
) -> Result<bool> {
    let sums = SumMatrix::new(spec, a, b)?;
    let (m, k) = (spec.size(), sums.k());
    check_subsets(m, k, 1, max_subsets, "k-subsets of characters")?;
    let lhs_matrix = sum_matrix_values(&sums, phi)?;
    let lhs = determinant(ctx, &lhs_matrix)?;
    let lambda = fourier_coefficients(ctx, spec, phi)?;
    let table = ExponentTable::new(spec);
    let ai: Vec<usize> = a.iter().map(|g| spec.index_of(g)).collect::<Result<_>>()?;
    let bi: Vec<usize> = b.iter().map(|g| spec.index_of(g)).collect::<Result<_>>()?;

    let mm = Matrix::from_fn(k, m, |i, u| ctx.mul(lambda.get(u), table.value(ctx, u, ai[i])));
    let nn = Matrix::from_fn(k, m, |i, u| table.value(ctx, u, bi[i]).clone());
    if mm.mul(ctx, &nn.transpose())? != lhs_matrix {
        return Ok(false);
    }

    let mut rhs = ctx.zero();
    for us in Combinations::new(m, k) {
        let weight = us.iter().fold(ctx.one(), |acc, &u| ctx.mul(&acc, lambda.get(u)));
        if ctx.is_zero(&weight) {
            continue;
        }
        let da = determinant(ctx, &Matrix::from_fn(k, k, |i, j| table.value(ctx, us[i], ai[j]).clone()))?;
        let db = determinant(ctx, &Matrix::from_fn(k, k, |i, j| table.value(ctx, us[i], bi[j]).clone()))?;
        rhs = ctx.add(&rhs, &ctx.mul(&weight, &ctx.mul(&da, &db)));
    }
    Ok(lhs == rhs)
}

/// Checks, in characteristic 2,
/// `Det(phi(a_i + b_j)) = sum over k-subsets U, sum over pi in S_k of
/// Det(lambda_{u_j} chi_{u_j}(a_i + b_{pi(i)}))`.
pub fn char2_identity_check(ctx: &FieldCtx, spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], phi: &[FieldElem]) -> Result<bool> {
    char2_identity_check_with_budget(ctx, spec, a, b, phi, DEFAULT_SUBSET_BUDGET)
}

pub fn char2_identity_check_with_budget(
    ctx: &FieldCtx,
    spec: &GroupSpec,
    a: &[GroupElement],
    b: &[GroupElement],
    phi: &[FieldElem],
    max_terms: u128,
) -> Result<bool> {
    if ctx.characteristic() != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, found: ctx.characteristic() });
    }
    let sums = SumMatrix::new(spec, a, b)?;
    let (m, k) = (spec.size(), sums.k());
    check_subsets(m, k, factorial(k as u64), max_terms, "k-subsets times permutations")?;
    let lhs = determinant(ctx, &sum_matrix_values(&sums, phi)?)?;
    let lambda = fourier_coefficients(ctx, spec, phi)?;
    let table = ExponentTable::new(spec);
    let perms: Vec<Vec<usize>> = Permutations::new(k).collect();
    let mut rhs = ctx.zero();
    for us in Combinations::new(m, k) {
        if us.iter().any(|&u| ctx.is_zero(lambda.get(u))) {
            continue;
        }
        for pi in &perms {
            let inner = Matrix::from_fn(k, k, |i, j| ctx.mul(lambda.get(us[j]), table.value(ctx, us[j], sums.get(i, pi[i]))));
            rhs = ctx.add(&rhs, &determinant(ctx, &inner)?);
        }
    }
    Ok(lhs == rhs)
}

/// A function `phi: G -> F` with `Det(phi(a_i + b_j)) != 0`.
///
/// Tries, in order: the indicator of the sums realized by the distinguished
/// permutation; `g_i -> zeta^i`; seeded random functions.
pub fn lemma4_indicator_phi(ctx: &FieldCtx, spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Result<Vec<FieldElem>> {
    let sums = SumMatrix::new(spec, a, b)?;
    if sums.k() == 0 {
        return Err(Error::SizeMismatch("sets must be nonempty".into()));
    }
    let m = spec.size();
    let perm = sums.lemma4();
    let mut indicator = vec![ctx.zero(); m];
    for (i, &j) in perm.iter().enumerate() {
        indicator[sums.get(i, j)] = ctx.one();
    }
    let nonvanishing = |phi: &[FieldElem]| -> Result<bool> { Ok(!ctx.is_zero(&determinant(ctx, &sum_matrix_values(&sums, phi)?)?)) };
    if nonvanishing(&indicator)? {
        return Ok(indicator);
    }
    let powers: Vec<FieldElem> = (0..m as u64).map(|i| ctx.zeta_pow(i).clone()).collect();
    if nonvanishing(&powers)? {
        return Ok(powers);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..RANDOM_SPECIALIZATION_TRIES {
        let phi: Vec<FieldElem> = (0..m).map(|_| ctx.random(&mut rng)).collect();
        if nonvanishing(&phi)? {
            return Ok(phi);
        }
    }
    Err(Error::NoSpecialization)
}

/// Whether `Det(chi_i(a_j))` and `Det(chi_i(b_j))` are both nonzero.
pub fn verify_theorem1_witness(ctx: &FieldCtx, spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement], chars: &[Character]) -> Result<bool> {
    let (da, db) = theorem1_determinants(ctx, spec, a, b, chars)?;
    Ok(!ctx.is_zero(&da) && !ctx.is_zero(&db))
}

/// `(Det(chi_i(a_j)), Det(chi_i(b_j)))`.
pub fn theorem1_determinants(
    ctx: &FieldCtx,
    spec: &GroupSpec,
    a: &[GroupElement],
    b: &[GroupElement],
    chars: &[Character],
) -> Result<(FieldElem, FieldElem)> {
    if chars.len() != a.len() || chars.len() != b.len() {
        return Err(Error::SizeMismatch(format!("{} characters for sets of size {} and {}", chars.len(), a.len(), b.len())));
    }
    let da = determinant(ctx, &char_matrix(ctx, spec, chars, a)?)?;
    let db = determinant(ctx, &char_matrix(ctx, spec, chars, b)?)?;
    Ok((da, db))
}
