use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::datum::{mu_from_datum, Block, BlockShape, LambdaDatum};
use crate::error::Result;
use crate::rational::HalfRational;

/// Which part of `p = p^+ ⊕ p^−` a statement concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    PPlus,
    PMinus,
    PFull,
}

/// Bottom-layer test on a contiguous block range, read off the K-type:
/// `p^+` needs `μ⁺_f > μ⁺_{f+1}` at the range's top-left edge and
/// `μ⁻_{f'+s} > μ⁻_{f'+s+1}` at its bottom-right edge; `p^−` uses the other
/// two edges. Coordinates outside `μ` impose nothing. `PFull` asks for both.
pub fn bottom_layer(d: &LambdaDatum, range: Range<usize>, level: Level) -> Result<bool> {
    let mu = mu_from_datum(d)?;
    let before_r: usize = d.blocks[..range.start].iter().map(|b| b.r).sum();
    let before_s: usize = d.blocks[..range.start].iter().map(|b| b.s).sum();
    let r: usize = d.blocks[range.clone()].iter().map(|b| b.r).sum();
    let s: usize = d.blocks[range.clone()].iter().map(|b| b.s).sum();

    // `drop(v, k)`: v_k > v_{k+1} in 1-based indexing, vacuous at the ends.
    let drop = |v: &[i64], k: usize| k == 0 || k >= v.len() || v[k - 1] > v[k];
    let plus = drop(mu.left(), before_r) && drop(mu.right(), before_s + s);
    let minus = drop(mu.left(), before_r + r) && drop(mu.right(), before_s);
    Ok(match level {
        Level::PPlus => plus,
        Level::PMinus => minus,
        Level::PFull => plus && minus,
    })
}

/// Half-step offsets `(left side, right side)` of a shape's top row at a junction.
fn top_offsets(shape: BlockShape) -> (HalfRational, HalfRational) {
    let h = HalfRational::HALF;
    match shape {
        BlockShape::Rectangle => (HalfRational::ZERO, HalfRational::ZERO),
        BlockShape::TrapezoidWideTop => (-h, -h),
        BlockShape::TrapezoidWideBottom => (h, h),
        BlockShape::ParallelogramDown => (-h, h),
        BlockShape::ParallelogramUp => (h, -h),
    }
}

/// Differences `(top, bottom)` of the μ-rows across the junction of two
/// neighbouring blocks `a` (left) and `b`. Zero means the rows are flush,
/// which is exactly a forbidden corner for the bottom-layer pictures.
pub fn junction(a: &Block, b: &Block) -> (HalfRational, HalfRational) {
    let dg = a.gamma - b.gamma;
    let (_, a_right) = top_offsets(a.shape);
    let (b_left, _) = top_offsets(b.shape);
    (dg + a_right + b_left, dg - a_right - b_left)
}

/// Corner-picture form of [`bottom_layer`] for a range whose outer neighbours
/// share a row with it: the relevant corner must not be flush.
pub fn bottom_layer_by_corners(d: &LambdaDatum, range: Range<usize>, level: Level) -> bool {
    let left = range.start.checked_sub(1).map(|i| junction(&d.blocks[i], &d.blocks[range.start]));
    let right = (range.end < d.blocks.len()).then(|| junction(&d.blocks[range.end - 1], &d.blocks[range.end]));
    let open = |j: Option<(HalfRational, HalfRational)>, top: bool| match j {
        None => true,
        Some((t, b)) => !(if top { t } else { b }).is_zero(),
    };
    let plus = open(left, true) && open(right, false);
    let minus = open(left, false) && open(right, true);
    match level {
        Level::PPlus => plus,
        Level::PMinus => minus,
        Level::PFull => plus && minus,
    }
}
