//! λ_a-blocks and λ_a-data, and the bijection between data and K-types.
//!
//! Shapes, drawn with the `U(p)` row on top:
//!
//! ```text
//!  Rectangle     ParallelogramDown   ParallelogramUp
//!  +-------+      +-------+             +-------+
//!  | γ ... |       \ γ ... \           / γ ... /
//!  +-------+        +-------+         +-------+
//!
//!  TrapezoidWideTop    TrapezoidWideBottom
//!  +---------+            +-----+
//!   \ γ ... /            / γ ... \
//!    +-----+            +---------+
//! ```
//!
//! `ParallelogramDown` has its bottom row shifted right and corresponds to the
//! larger top-row K-type (`μ_+`); `ParallelogramUp` is the mirror (`μ_−`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda_map::{compute_lambda_a, LambdaAResult};
use crate::rational::{floor_twice, HalfRational};
use crate::weights::{KTypeWeight, Signature};

/// Default limit on `p + q` for [`enumerate_data`].
pub const ENUMERATION_GUARD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockShape {
    #[serde(rename = "rect")]
    Rectangle,
    #[serde(rename = "par_down")]
    ParallelogramDown,
    #[serde(rename = "par_up")]
    ParallelogramUp,
    #[serde(rename = "trap_top")]
    TrapezoidWideTop,
    #[serde(rename = "trap_bottom")]
    TrapezoidWideBottom,
}

impl BlockShape {
    pub fn is_parallelogram(self) -> bool {
        matches!(self, BlockShape::ParallelogramDown | BlockShape::ParallelogramUp)
    }

    pub fn is_trapezoid(self) -> bool {
        matches!(self, BlockShape::TrapezoidWideTop | BlockShape::TrapezoidWideBottom)
    }

    /// The other parallelogram; other shapes are returned unchanged.
    pub fn flipped(self) -> BlockShape {
        match self {
            BlockShape::ParallelogramDown => BlockShape::ParallelogramUp,
            BlockShape::ParallelogramUp => BlockShape::ParallelogramDown,
            other => other,
        }
    }

    /// Half-step added to the top and bottom rows when rebuilding μ.
    pub(crate) fn row_adjustment(self) -> (HalfRational, HalfRational) {
        let h = HalfRational::HALF;
        match self {
            BlockShape::ParallelogramDown => (h, -h),
            BlockShape::ParallelogramUp => (-h, h),
            _ => (HalfRational::ZERO, HalfRational::ZERO),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockShape::Rectangle => "rect",
            BlockShape::ParallelogramDown => "par_down",
            BlockShape::ParallelogramUp => "par_up",
            BlockShape::TrapezoidWideTop => "trap_top",
            BlockShape::TrapezoidWideBottom => "trap_bottom",
        }
    }
}

/// One λ_a-block: `r` top cells, `s` bottom cells, content `γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub shape: BlockShape,
    pub r: usize,
    pub s: usize,
    pub gamma: HalfRational,
}

impl Block {
    pub fn new(shape: BlockShape, r: usize, s: usize, gamma: HalfRational) -> Self {
        Block { shape, r, s, gamma }
    }

    pub fn size(&self) -> usize {
        self.r + self.s
    }

    pub fn min_rs(&self) -> usize {
        self.r.min(self.s)
    }

    /// Problems with the block on its own, for a group of parity `epsilon`.
    pub fn violations(&self, epsilon: usize) -> Vec<String> {
        let mut out = Vec::new();
        let ok_size = match self.shape {
            BlockShape::Rectangle | BlockShape::ParallelogramDown | BlockShape::ParallelogramUp => {
                self.r == self.s && self.r >= 1
            }
            BlockShape::TrapezoidWideTop => self.r == self.s + 1,
            BlockShape::TrapezoidWideBottom => self.s == self.r + 1,
        };
        if !ok_size {
            out.push(format!("block {} has invalid size ({},{})", self, self.r, self.s));
        }
        if !self.gamma.is_half_integer_lattice() {
            out.push(format!("block {} content is not in Z/2", self));
        } else if !has_parity(self.shape, self.gamma, epsilon) {
            out.push(format!("block {} violates the content parity rule", self));
        }
        out
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})@{}", self.shape.name(), self.r, self.s, self.gamma)
    }
}

/// Whether `γ` has the parity required for `shape` when `p + q ≡ ε`.
pub fn has_parity(shape: BlockShape, gamma: HalfRational, epsilon: usize) -> bool {
    let twice = gamma.mul_int(2);
    let Some(twice) = twice.to_integer() else {
        return false;
    };
    // Rectangle: 2γ + ε even. Others: 2γ + ε + 1 even.
    let extra = if shape == BlockShape::Rectangle { 0 } else { 1 };
    (twice + epsilon as i64 + extra).rem_euclid(2) == 0
}

/// A λ_a-datum: blocks in strictly decreasing content order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaDatum {
    pub p: usize,
    pub q: usize,
    pub blocks: Vec<Block>,
}

impl LambdaDatum {
    pub fn new(sig: Signature, blocks: Vec<Block>) -> Result<Self> {
        let d = LambdaDatum { p: sig.p, q: sig.q, blocks };
        d.check()?;
        Ok(d)
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::new(self.p, self.q)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Ok(sig) = self.signature() else {
            return vec!["signature needs p + q >= 1".into()];
        };
        if self.blocks.is_empty() {
            out.push("datum has no blocks".into());
        }
        for b in &self.blocks {
            out.extend(b.violations(sig.epsilon()));
        }
        let (sr, ss): (usize, usize) = (self.blocks.iter().map(|b| b.r).sum(), self.blocks.iter().map(|b| b.s).sum());
        if sr != sig.p || ss != sig.q {
            out.push(format!("block sizes sum to ({sr},{ss}), expected ({},{})", sig.p, sig.q));
        }
        let mut contents: Vec<HalfRational> = self.blocks.iter().map(|b| b.gamma).collect();
        if !self.blocks.windows(2).all(|w| w[0].gamma > w[1].gamma) {
            contents.sort();
            contents.dedup();
            if contents.len() < self.blocks.len() {
                out.push("contents not distinct".into());
            } else {
                out.push("contents not strictly decreasing".into());
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v.join("; ")))
        }
    }

    /// Aligned left indices of each block, in order.
    pub fn left_positions(&self) -> Vec<std::ops::Range<usize>> {
        let mut at = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = at..at + b.r;
                at += b.r;
                r
            })
            .collect()
    }

    /// Aligned right indices (offset by `p`) of each block, in order.
    pub fn right_positions(&self) -> Vec<std::ops::Range<usize>> {
        let mut at = self.p;
        self.blocks
            .iter()
            .map(|b| {
                let r = at..at + b.s;
                at += b.s;
                r
            })
            .collect()
    }

    /// Copy with the parallelogram at `index` flipped.
    pub fn with_flipped(&self, index: usize) -> LambdaDatum {
        let mut d = self.clone();
        d.blocks[index].shape = d.blocks[index].shape.flipped();
        d
    }
}

/// Groups λ_a into blocks and reads the parallelogram orientations off `mu`.
pub fn datum_from_lambda_a(res: &LambdaAResult, mu: &KTypeWeight, sig: Signature) -> Result<LambdaDatum> {
    mu.check_signature(sig)?;
    let eps = sig.epsilon();
    let mut blocks = Vec::with_capacity(res.level_sets.len());
    for run in &res.level_sets {
        let gamma = res.merged_sorted[run.start];
        let r = res.merge_order[run.clone()].iter().filter(|&&j| j < sig.p).count();
        let s = run.len() - r;
        let shape = if r == s + 1 {
            BlockShape::TrapezoidWideTop
        } else if s == r + 1 {
            BlockShape::TrapezoidWideBottom
        } else if r == s {
            if has_parity(BlockShape::Rectangle, gamma, eps) {
                BlockShape::Rectangle
            } else {
                BlockShape::ParallelogramDown
            }
        } else {
            return Err(Error::InconsistentMu(format!("level set at {gamma} has size ({r},{s})")));
        };
        blocks.push(Block::new(shape, r, s, gamma));
    }

    let mut datum = LambdaDatum { p: sig.p, q: sig.q, blocks };
    datum.check().map_err(|e| Error::InconsistentMu(e.to_string()))?;

    // Down and Up differ by exactly one on the block's top row.
    let down = mu_from_datum(&datum)?;
    let lefts = datum.left_positions();
    for (i, b) in datum.blocks.iter_mut().enumerate() {
        if b.shape != BlockShape::ParallelogramDown {
            continue;
        }
        let j = lefts[i].start;
        let (have, want) = (mu.left()[j], down.left()[j]);
        if have == want - 1 {
            b.shape = BlockShape::ParallelogramUp;
        } else if have != want {
            return Err(Error::InconsistentMu(format!("{mu} at parallelogram {b}")));
        }
    }
    if mu_from_datum(&datum)? != *mu {
        return Err(Error::InconsistentMu(format!("{mu} does not rebuild from its datum")));
    }
    Ok(datum)
}

/// Convenience: `μ ↦ λ_a(μ) ↦ datum`.
pub fn datum_from_mu(mu: &KTypeWeight, sig: Signature) -> Result<LambdaDatum> {
    let res = compute_lambda_a(mu, sig)?;
    datum_from_lambda_a(&res, mu, sig)
}

/// Rebuilds the K-type attached to a datum.
///
/// Per block, with `L`/`R` the number of coordinates in blocks to the left and
/// right: `λ' = γ − (R − L)/2`, then the shape's half-step on each row, then
/// for top entries `+ (#bottom cells right − #bottom cells left)` and for
/// bottom entries `+ (#top cells right − #top cells left)`.
pub fn mu_from_datum(d: &LambdaDatum) -> Result<KTypeWeight> {
    d.check()?;
    let total_r = d.p as i64;
    let total_s = d.q as i64;
    let total = total_r + total_s;

    let mut left = Vec::with_capacity(d.p);
    let mut right = Vec::with_capacity(d.q);
    let (mut before_r, mut before_s) = (0i64, 0i64);
    for b in &d.blocks {
        let (br, bs) = (b.r as i64, b.s as i64);
        let (after_r, after_s) = (total_r - before_r - br, total_s - before_s - bs);
        let before = before_r + before_s;
        let after = total - before - br - bs;
        let base = b.gamma - HalfRational::half(after - before);
        let (top_adj, bottom_adj) = b.shape.row_adjustment();

        let top = base + top_adj + (after_s - before_s);
        let bottom = base + bottom_adj + (after_r - before_r);
        let as_int = |x: HalfRational| {
            x.to_integer().ok_or_else(|| Error::Validation(format!("block {b} rebuilds to a non-integral weight {x}")))
        };
        if br > 0 {
            left.extend(std::iter::repeat_n(as_int(top)?, b.r));
        }
        if bs > 0 {
            right.extend(std::iter::repeat_n(as_int(bottom)?, b.s));
        }
        before_r += br;
        before_s += bs;
    }
    KTypeWeight::new(left, right)
}

/// All λ_a-data of `sig` with every content in `[-bound, bound]`, in a fixed
/// order: higher first block content first, then shape, then size.
pub fn enumerate_data(sig: Signature, content_bound: HalfRational, force: bool) -> Result<Vec<LambdaDatum>> {
    if !force && sig.n() > ENUMERATION_GUARD {
        return Err(Error::Guard { what: "p+q", value: sig.n(), limit: ENUMERATION_GUARD });
    }
    if content_bound.is_negative() {
        return Ok(Vec::new());
    }
    let top = floor_twice(content_bound);
    let contents: Vec<HalfRational> = (-top..=top).rev().map(HalfRational::half).collect();
    let mut out = Vec::new();
    let mut acc = Vec::new();
    extend_data(sig, &contents, 0, sig.p, sig.q, &mut acc, &mut out);
    Ok(out)
}

fn block_options(eps: usize, gamma: HalfRational, rem_p: usize, rem_q: usize) -> Vec<Block> {
    use BlockShape::*;
    let mut opts = Vec::new();
    for shape in [Rectangle, ParallelogramDown, ParallelogramUp, TrapezoidWideTop, TrapezoidWideBottom] {
        if !has_parity(shape, gamma, eps) {
            continue;
        }
        let sizes: Vec<(usize, usize)> = match shape {
            Rectangle | ParallelogramDown | ParallelogramUp => (1..=rem_p.min(rem_q)).map(|k| (k, k)).collect(),
            TrapezoidWideTop => (0..rem_q + 1).map(|s| (s + 1, s)).filter(|&(r, _)| r <= rem_p).collect(),
            TrapezoidWideBottom => (0..rem_p + 1).map(|r| (r, r + 1)).filter(|&(_, s)| s <= rem_q).collect(),
        };
        opts.extend(sizes.into_iter().map(|(r, s)| Block::new(shape, r, s, gamma)));
    }
    opts
}

fn extend_data(
    sig: Signature,
    contents: &[HalfRational],
    from: usize,
    rem_p: usize,
    rem_q: usize,
    acc: &mut Vec<Block>,
    out: &mut Vec<LambdaDatum>,
) {
    if rem_p == 0 && rem_q == 0 {
        out.push(LambdaDatum { p: sig.p, q: sig.q, blocks: acc.clone() });
        return;
    }
    for (i, &gamma) in contents.iter().enumerate().skip(from) {
        for block in block_options(sig.epsilon(), gamma, rem_p, rem_q) {
            let (r, s) = (block.r, block.s);
            acc.push(block);
            extend_data(sig, contents, i + 1, rem_p - r, rem_q - s, acc, out);
            acc.pop();
        }
    }
}
