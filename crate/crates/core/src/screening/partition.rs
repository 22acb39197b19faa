use std::ops::Range;

use serde::Serialize;

use crate::datum::LambdaDatum;
use crate::rational::HalfRational;
use crate::theta::ThetaDatum;

/// Extent `[b, e]` of one part's Λ coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub e: HalfRational,
    pub b: HalfRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalPartition {
    pub groups: Vec<Range<usize>>,
}

impl FundamentalPartition {
    pub fn is_fundamental(&self) -> bool {
        self.groups.len() == 1
    }
}

/// Maximal runs of blocks whose neighbouring contents differ by at most 1.
pub fn fundamental_partition(d: &LambdaDatum) -> FundamentalPartition {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..d.blocks.len() {
        if d.blocks[i - 1].gamma - d.blocks[i].gamma > 1 {
            groups.push(start..i);
            start = i;
        }
    }
    if !d.blocks.is_empty() {
        groups.push(start..d.blocks.len());
    }
    FundamentalPartition { groups }
}

pub fn segments_of_partition(td: &ThetaDatum, parts: &[Range<usize>]) -> Vec<Segment> {
    parts
        .iter()
        .map(|r| {
            let v = td.contribution(r.clone());
            Segment { e: v.max().unwrap_or_default(), b: v.min().unwrap_or_default() }
        })
        .collect()
}

/// Cut positions `c` with `min Λ(blocks[..c]) > max Λ(blocks[c..])`.
pub fn good_range_cuts(td: &ThetaDatum) -> Vec<usize> {
    let n = td.blocks().len();
    (1..n)
        .filter(|&c| {
            let above = td.contribution(0..c).min();
            let below = td.contribution(c..n).max();
            matches!((above, below), (Some(a), Some(b)) if a > b)
        })
        .collect()
}

/// Whether the overlap graph of the segments is connected.
pub fn interlaced(segs: &[Segment]) -> bool {
    let mut sorted: Vec<Segment> = segs.to_vec();
    sorted.sort_by_key(|s| std::cmp::Reverse(s.e));
    let Some(first) = sorted.first() else {
        return true;
    };
    let mut reach = first.b;
    for s in &sorted[1..] {
        if s.e < reach {
            return false;
        }
        reach = reach.min(s.b);
    }
    true
}
