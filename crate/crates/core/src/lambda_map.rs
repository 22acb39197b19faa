//! The dominant-chamber projection and the maps `μ ↦ λ_a(μ)`, `μ ↦ λ_u(μ)`.

use std::ops::Range;

use serde::Serialize;

use crate::error::Result;
use crate::rational::HalfRational;
use crate::weights::{rho, two_rho_k, KTypeWeight, Signature, Vector};

/// Projection of a vector onto the weakly decreasing cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionResult {
    pub value: Vector,
    /// Pooled runs, in order, each sharing one projected value.
    pub level_sets: Vec<Range<usize>>,
}

/// Euclidean projection of `d` onto `{x : x_1 >= x_2 >= ... >= x_n}` by pooling
/// adjacent violators.
pub fn project_dominant(d: &Vector) -> ProjectionResult {
    struct Pool {
        start: usize,
        len: usize,
        sum: HalfRational,
    }
    impl Pool {
        fn mean(&self) -> HalfRational {
            self.sum.div_int(self.len as i64)
        }
    }

    let mut pools: Vec<Pool> = Vec::with_capacity(d.len());
    for (i, &x) in d.iter().enumerate() {
        pools.push(Pool { start: i, len: 1, sum: x });
        while pools.len() >= 2 {
            let top = &pools[pools.len() - 1];
            let below = &pools[pools.len() - 2];
            if below.mean() >= top.mean() {
                break;
            }
            let top = pools.pop().unwrap();
            let below = pools.last_mut().unwrap();
            below.len += top.len;
            below.sum += top.sum;
        }
    }

    let mut value = Vec::with_capacity(d.len());
    let mut level_sets = Vec::with_capacity(pools.len());
    for pool in &pools {
        let m = pool.mean();
        value.extend(std::iter::repeat_n(m, pool.len));
        level_sets.push(pool.start..pool.start + pool.len);
    }
    // Adjacent pools can end with equal means; report maximal constant runs.
    let level_sets = merge_equal_runs(&value, level_sets);
    ProjectionResult { value: Vector(value), level_sets }
}

fn merge_equal_runs(value: &[HalfRational], runs: Vec<Range<usize>>) -> Vec<Range<usize>> {
    let mut merged: Vec<Range<usize>> = Vec::with_capacity(runs.len());
    for run in runs {
        match merged.last_mut() {
            Some(last) if value[last.start] == value[run.start] => last.end = run.end,
            _ => merged.push(run),
        }
    }
    merged
}

/// `λ_a(μ)` with the bookkeeping needed to rebuild the λ_a-datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaAResult {
    /// Aligned `(left | right)`.
    pub lambda_a: Vector,
    /// Weakly decreasing merged form.
    pub merged_sorted: Vector,
    /// Aligned index of the coordinate sitting at each merged position.
    pub merge_order: Vec<usize>,
    /// Maximal constant runs of `merged_sorted`.
    pub level_sets: Vec<Range<usize>>,
    /// `(left index, right index)` pairs with equal `μ + 2ρ(k)` entries.
    pub ties_resolved: Vec<(usize, usize)>,
}

/// Stable descending merge of `μ + 2ρ(k)`; left entries precede equal right entries.
fn merged_order(shifted: &Vector) -> Vec<usize> {
    let mut order: Vec<usize> = (0..shifted.len()).collect();
    order.sort_by(|&a, &b| shifted[b].cmp(&shifted[a]));
    order
}

fn staggered_projection(
    mu: &KTypeWeight,
    sig: Signature,
    scale: i64,
) -> Result<(Vector, Vec<usize>, ProjectionResult)> {
    mu.check_signature(sig)?;
    let shifted = mu.aligned().add(&two_rho_k(sig))?;
    let order = merged_order(&shifted);
    let r = rho(sig.n());
    let d: Vector = order.iter().enumerate().map(|(i, &j)| shifted[j] - r[i].mul_int(scale)).collect();
    let proj = project_dominant(&d);
    Ok((shifted, order, proj))
}

/// `λ_a(μ) = P(μ + 2ρ(k) − ρ(g))`.
pub fn compute_lambda_a(mu: &KTypeWeight, sig: Signature) -> Result<LambdaAResult> {
    let (shifted, order, proj) = staggered_projection(mu, sig, 1)?;

    let mut lambda_a = vec![HalfRational::ZERO; sig.n()];
    for (i, &j) in order.iter().enumerate() {
        lambda_a[j] = proj.value[i];
    }

    let ties_resolved = order
        .windows(2)
        .filter(|w| shifted[w[0]] == shifted[w[1]] && w[0] < sig.p && w[1] >= sig.p)
        .map(|w| (w[0], w[1] - sig.p))
        .collect();

    Ok(LambdaAResult {
        lambda_a: Vector(lambda_a),
        merged_sorted: proj.value,
        merge_order: order,
        level_sets: proj.level_sets,
        ties_resolved,
    })
}

/// `λ_u(μ) = P(μ + 2ρ(k) − 2ρ(g))`, in merged weakly decreasing form.
pub fn compute_lambda_u(mu: &KTypeWeight, sig: Signature) -> Result<Vector> {
    let (_, _, proj) = staggered_projection(mu, sig, 2)?;
    Ok(proj.value)
}

/// True when `λ_u(μ)` is a constant vector.
pub fn is_unitarily_small(mu: &KTypeWeight, sig: Signature) -> Result<bool> {
    Ok(compute_lambda_u(mu, sig)?.is_constant())
}
