//! Combinatorial θ-stable data: blocks with their continuous parameters ν.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize, Serializer};

use crate::datum::{datum_from_mu, mu_from_datum, Block, LambdaDatum};
use crate::error::{Error, Result};
use crate::rational::HalfRational;
use crate::weights::{KTypeWeight, Signature, Vector};

/// The nonnegative half `ν_1 ≥ … ≥ ν_k ≥ 0` of a block's symmetric ν list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NuVector(pub Vec<HalfRational>);

impl NuVector {
    pub fn zeros(k: usize) -> Self {
        NuVector(vec![HalfRational::ZERO; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1]) && self.0.iter().all(|x| !x.is_negative())
    }

    /// `(ν_1, …, ν_k, −ν_k, …, −ν_1)`.
    pub fn symmetric(&self) -> Vec<HalfRational> {
        self.0.iter().copied().chain(self.0.iter().rev().map(|x| -*x)).collect()
    }

    pub fn all_nonzero(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|x| !x.is_zero())
    }

    pub fn min(&self) -> Option<HalfRational> {
        self.0.last().copied()
    }
}

/// A λ_a-datum together with one ν vector per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaDatum {
    #[serde(flatten)]
    pub datum: LambdaDatum,
    #[serde(rename = "nu")]
    pub nus: Vec<NuVector>,
}

impl ThetaDatum {
    pub fn new(datum: LambdaDatum, nus: Vec<NuVector>) -> Result<Self> {
        let td = ThetaDatum { datum, nus };
        td.check()?;
        Ok(td)
    }

    /// All ν zero.
    pub fn tempered(datum: LambdaDatum) -> Self {
        let nus = datum.blocks.iter().map(|b| NuVector::zeros(b.min_rs())).collect();
        ThetaDatum { datum, nus }
    }

    /// Builds the datum of `mu`; `nus` lists ν for the blocks with `min(r,s) ≥ 1`
    /// in content order, or is empty for all zeros.
    pub fn from_mu(mu: &KTypeWeight, sig: Signature, nus: &[NuVector]) -> Result<Self> {
        let datum = datum_from_mu(mu, sig)?;
        let slots: Vec<usize> = datum.blocks.iter().map(Block::min_rs).filter(|&k| k > 0).collect();
        if nus.is_empty() {
            return Ok(ThetaDatum::tempered(datum));
        }
        if nus.len() != slots.len() || nus.iter().zip(&slots).any(|(n, &k)| n.len() != k) {
            let sizes: Vec<String> = datum.blocks.iter().map(|b| format!("({},{})", b.r, b.s)).collect();
            return Err(Error::Validation(format!(
                "nu lengths {:?} do not match derived blocks {} (expected lengths {:?})",
                nus.iter().map(NuVector::len).collect::<Vec<_>>(),
                sizes.join(" "),
                slots
            )));
        }
        let mut given = nus.iter();
        let full = datum
            .blocks
            .iter()
            .map(|b| if b.min_rs() > 0 { given.next().unwrap().clone() } else { NuVector::default() })
            .collect();
        ThetaDatum::new(datum, full)
    }

    pub fn signature(&self) -> Result<Signature> {
        self.datum.signature()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.datum.blocks
    }

    pub fn check(&self) -> Result<()> {
        let v = validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v.join("; ")))
        }
    }

    /// The Λ coordinates contributed by block `i`, unsorted.
    pub fn block_contribution(&self, i: usize) -> Vec<HalfRational> {
        let b = &self.datum.blocks[i];
        let mut out: Vec<HalfRational> = self.nus[i].0.iter().flat_map(|&n| [b.gamma + n, b.gamma - n]).collect();
        out.extend(std::iter::repeat_n(b.gamma, b.r.abs_diff(b.s)));
        out
    }

    /// Sorted Λ of the blocks in `range`.
    pub fn contribution(&self, range: std::ops::Range<usize>) -> Vector {
        let v: Vector = range.flat_map(|i| self.block_contribution(i)).collect();
        v.sorted_desc()
    }

    pub fn with_flipped(&self, index: usize) -> ThetaDatum {
        ThetaDatum { datum: self.datum.with_flipped(index), nus: self.nus.clone() }
    }

    pub fn reference_mu(&self) -> Result<KTypeWeight> {
        mu_from_datum(&self.datum)
    }
}

/// Infinitesimal character, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InfChar(pub Vector);

impl InfChar {
    pub fn new(v: Vector) -> Self {
        InfChar(v.sorted_desc())
    }

    pub fn coords(&self) -> &Vector {
        &self.0
    }

    pub fn norm_sq(&self) -> HalfRational {
        self.0.norm_sq()
    }
}

/// `Λ = ⋃ {γ ± ν_j} ∪ {γ}^{|r−s|}`, sorted.
pub fn assemble_inf_char(td: &ThetaDatum) -> InfChar {
    InfChar(td.contribution(0..td.datum.blocks.len()))
}

/// Every way in which `td` fails to be a well-formed datum; empty when valid.
pub fn validate(td: &ThetaDatum) -> Vec<String> {
    let mut out = td.datum.violations();
    if td.nus.len() != td.datum.blocks.len() {
        out.push(format!("{} nu vectors for {} blocks", td.nus.len(), td.datum.blocks.len()));
        return out;
    }
    for (b, nu) in td.datum.blocks.iter().zip(&td.nus) {
        if nu.len() != b.min_rs() {
            out.push(format!("nu length mismatch at {b}: expected {}, got {}", b.min_rs(), nu.len()));
        } else if !nu.is_canonical() {
            out.push(format!("nu at {b} is not weakly decreasing and nonnegative"));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Unknown,
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
            Sign::Unknown => "unknown",
        })
    }
}

/// One lowest K-type of the family obtained by flipping parallelograms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LKTFamilyEntry {
    pub mu: KTypeWeight,
    pub flip_mask: BTreeSet<usize>,
    /// Sign relative to the unflipped entry.
    pub epsilon_sign: Sign,
}

/// Parallelogram blocks whose ν entries are all nonzero.
pub fn flippable_blocks(td: &ThetaDatum) -> Vec<usize> {
    td.datum
        .blocks
        .iter()
        .zip(&td.nus)
        .enumerate()
        .filter(|(_, (b, nu))| b.shape.is_parallelogram() && nu.all_nonzero())
        .map(|(i, _)| i)
        .collect()
}

pub fn lkt_family(td: &ThetaDatum) -> Result<Vec<LKTFamilyEntry>> {
    td.check()?;
    let flips = flippable_blocks(td);
    if flips.len() >= usize::BITS as usize {
        return Err(Error::Guard { what: "flippable parallelograms", value: flips.len(), limit: 63 });
    }
    let mut out = Vec::with_capacity(1 << flips.len());
    for mask in 0usize..(1 << flips.len()) {
        let chosen: BTreeSet<usize> =
            flips.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
        let mut datum = td.datum.clone();
        let mut sign = Sign::Plus;
        for &i in &chosen {
            datum = datum.with_flipped(i);
            let b = &td.datum.blocks[i];
            let regime = td.nus[i].min().is_some_and(|m| m > HalfRational::HALF);
            sign = match (sign, regime, b.r % 2 == 1) {
                (Sign::Unknown, _, _) | (_, false, _) => Sign::Unknown,
                (s, true, false) => s,
                (Sign::Plus, true, true) => Sign::Minus,
                (Sign::Minus, true, true) => Sign::Plus,
            };
        }
        out.push(LKTFamilyEntry { mu: mu_from_datum(&datum)?, flip_mask: chosen, epsilon_sign: sign });
    }
    Ok(out)
}
