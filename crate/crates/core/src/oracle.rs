//! Brute-force reference implementations and seeded generators for tests.
//!
//! Everything here is exponential on purpose and guarded by small size limits.

use std::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::datum::datum_from_mu;
use crate::error::{Error, Result};
use crate::rational::HalfRational;
use crate::screening::segments_of_partition;
use crate::theta::{NuVector, ThetaDatum};
use crate::weights::{rho, KTypeWeight, Signature, Vector};

pub const PROJECT_GUARD: usize = 8;
pub const HULL_GUARD: usize = 5;
pub const PARTITION_GUARD: usize = 6;

/// Size and randomness limits for an oracle run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_samples: usize,
    pub rng_seed: u64,
}

impl OracleBudget {
    pub fn new(max_n: usize, max_samples: usize, rng_seed: u64) -> Self {
        OracleBudget { max_n, max_samples, rng_seed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.rng_seed)
    }
}

fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::Guard { what, value, limit });
    }
    Ok(())
}

/// Every way to cut `0..n` into consecutive nonempty runs.
pub fn compositions(n: usize) -> Vec<Vec<Range<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0u64..1 << (n - 1))
        .map(|mask| {
            let mut runs = Vec::new();
            let mut start = 0;
            for i in 1..n {
                if mask >> (i - 1) & 1 == 1 {
                    runs.push(start..i);
                    start = i;
                }
            }
            runs.push(start..n);
            runs
        })
        .collect()
}

/// Projection onto the weakly decreasing cone by trying every run-mean candidate.
pub fn oracle_project(d: &Vector) -> Result<Vector> {
    guard("length", d.len(), PROJECT_GUARD)?;
    let mut best: Option<(HalfRational, Vector)> = None;
    for runs in compositions(d.len()) {
        let mut cand = Vec::with_capacity(d.len());
        for run in &runs {
            let m = HalfRational::mean(&d.entries()[run.clone()]).expect("nonempty run");
            cand.extend(std::iter::repeat_n(m, run.len()));
        }
        let cand = Vector(cand);
        if !cand.is_weakly_decreasing() {
            continue;
        }
        let dist = cand.sub(d)?.norm_sq();
        if best.as_ref().is_none_or(|(b, _)| dist < *b) {
            best = Some((dist, cand));
        }
    }
    Ok(best.expect("the all-pooled candidate is always feasible").1)
}

/// `x ∈ center + conv(W·ρ)` via all subset-sum inequalities, coordinates taken
/// as given.
pub fn oracle_hull(x: &Vector, center: &Vector) -> Result<bool> {
    guard("length", x.len(), HULL_GUARD)?;
    let d = x.sub(center)?;
    if !d.sum().is_zero() {
        return Ok(false);
    }
    let n = d.len();
    let r = rho(n);
    let top_k: Vec<HalfRational> = (0..=n).map(|k| r.entries()[..k].iter().sum()).collect();
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        let s: HalfRational = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| d[i]).sum();
        if s > top_k[k] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Consecutive block groupings whose segments form a strict chain
/// `e_1 ≥ b_1 > e_2 ≥ b_2 > …`.
pub fn oracle_good_partitions(td: &ThetaDatum) -> Result<Vec<Vec<Range<usize>>>> {
    guard("blocks", td.blocks().len(), PARTITION_GUARD)?;
    Ok(compositions(td.blocks().len())
        .into_iter()
        .filter(|parts| {
            let segs = segments_of_partition(td, parts);
            segs.windows(2).all(|w| w[0].b > w[1].e)
        })
        .collect())
}

pub fn random_signature<R: Rng>(rng: &mut R, max_n: usize) -> Signature {
    let n = rng.gen_range(1..=max_n.max(1));
    let p = rng.gen_range(0..=n);
    Signature::new(p, n - p).expect("n >= 1")
}

/// Dominant weight with entries in `lo..=hi`.
pub fn random_dominant_mu<R: Rng>(rng: &mut R, sig: Signature, lo: i64, hi: i64) -> KTypeWeight {
    let mut side = |m: usize| {
        let mut v: Vec<i64> = (0..m).map(|_| rng.gen_range(lo..=hi)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let left = side(sig.p);
    let right = side(sig.q);
    KTypeWeight::new(left, right).expect("sorted sides")
}

/// Canonical ν of length `k` with entries in `{0, 1/2, …, max_twice/2}`.
pub fn random_nu<R: Rng>(rng: &mut R, k: usize, max_twice: i64) -> NuVector {
    let mut v: Vec<HalfRational> = (0..k).map(|_| HalfRational::half(rng.gen_range(0..=max_twice))).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    NuVector(v)
}

/// A random valid θ-stable datum with `p + q ≤ max_n`.
pub fn random_theta_datum<R: Rng>(rng: &mut R, max_n: usize) -> ThetaDatum {
    let sig = random_signature(rng, max_n);
    let mu = random_dominant_mu(rng, sig, -4, 4);
    let datum = datum_from_mu(&mu, sig).expect("every dominant weight has a datum");
    let nus = datum.blocks.iter().map(|b| random_nu(rng, b.min_rs(), 8)).collect();
    ThetaDatum { datum, nus }
}

/// A random rational vector, entries `a/b` with `|a| ≤ 12`, `1 ≤ b ≤ 6`.
pub fn random_rational_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    (0..n).map(|_| HalfRational::new(rng.gen_range(-12..=12), rng.gen_range(1..=6))).collect()
}

/// A random point of `center + conv(W·ρ)` or a nearby one outside it.
pub fn random_hull_probe<R: Rng>(rng: &mut R, n: usize) -> (Vector, Vector) {
    let center = Vector::constant(HalfRational::new(rng.gen_range(-6..=6), rng.gen_range(1..=4)), n);
    let mut perm: Vec<HalfRational> = rho(n).0;
    perm.shuffle(rng);
    let scale = HalfRational::new(rng.gen_range(0..=5), 4);
    let mut x: Vec<HalfRational> = perm.iter().zip(center.iter()).map(|(r, c)| *c + *r * scale).collect();
    if n >= 2 && rng.gen_bool(0.5) {
        let delta = HalfRational::new(rng.gen_range(-2..=2), 2);
        x[0] += delta;
        x[1] -= delta;
    }
    (Vector(x).sorted_desc(), center)
}
