use std::ops::Range;

use crate::datum::BlockShape;
use crate::error::{Error, Result};
use crate::theta::ThetaDatum;

use super::bottom::{junction, Level};

/// Blocks whose `γ + ν_1` exceeds every other Λ coordinate of the datum and
/// every content.
pub fn lambda_large_blocks(td: &ThetaDatum) -> Vec<usize> {
    let blocks = td.blocks();
    let max_content = blocks.iter().map(|b| b.gamma).max();
    (0..blocks.len())
        .filter(|&i| {
            let Some(&nu1) = td.nus[i].0.first() else {
                return false;
            };
            let top = blocks[i].gamma + nu1;
            let others = (0..blocks.len()).filter(|&j| j != i).flat_map(|j| td.block_contribution(j)).max();
            others.is_none_or(|o| top > o) && max_content.is_none_or(|c| top > c)
        })
        .collect()
}

/// The level a λ-large block of this shape speaks to.
pub fn large_block_level(shape: BlockShape) -> Level {
    match shape {
        BlockShape::TrapezoidWideBottom | BlockShape::ParallelogramUp => Level::PMinus,
        _ => Level::PPlus,
    }
}

/// Longest run of blocks ending at `large_block` whose junctions keep the
/// relevant μ-row flush: the top row for `p^+`, the bottom row for `p^−`.
pub fn semi_spherical_component(td: &ThetaDatum, large_block: usize) -> Result<Range<usize>> {
    if !lambda_large_blocks(td).contains(&large_block) {
        return Err(Error::NotLambdaLarge(large_block));
    }
    let blocks = td.blocks();
    let level = large_block_level(blocks[large_block].shape);
    let mut start = large_block;
    while start > 0 {
        let (top, bottom) = junction(&blocks[start - 1], &blocks[start]);
        let flush = if level == Level::PPlus { top } else { bottom };
        if !flush.is_zero() {
            break;
        }
        start -= 1;
    }
    Ok(start..large_block + 1)
}
