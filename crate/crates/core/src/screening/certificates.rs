use std::collections::BTreeSet;
use std::ops::Range;

use serde::Serialize;

use crate::datum::{mu_from_datum, BlockShape, LambdaDatum};
use crate::error::Result;
use crate::rational::HalfRational;
use crate::theta::{assemble_inf_char, ThetaDatum};
use crate::weights::{lkt_norm, KTypeWeight};

use super::bottom::{bottom_layer, Level};
use super::large::{lambda_large_blocks, large_block_level, semi_spherical_component};

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CertificateKind {
    CaseA_Parallelogram,
    CaseA_Rectangle,
    CaseB_SemiSpherical,
    Dirac,
}

/// K-types at which the Hermitian form is predicted to be indefinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub level: Level,
    /// For case (a): the reference K-type followed by its shifted partner.
    /// For case (b): every dominant shift of the reference K-type.
    pub witness_ktypes: Vec<KTypeWeight>,
    pub blocks: Range<usize>,
    /// Which rule produced the certificate.
    pub branch: String,
}

/// Dominant weights `μ + e_i − e_j`, `i` among `ups`, `j` among `downs`,
/// ordered by `‖· + 2ρ(k)‖²` and then lexicographically.
pub fn shift_candidates(mu: &KTypeWeight, ups: &[usize], downs: &[usize]) -> Vec<KTypeWeight> {
    let set: BTreeSet<KTypeWeight> = ups
        .iter()
        .flat_map(|&i| downs.iter().map(move |&j| mu.shifted(i, j)))
        .filter(KTypeWeight::is_dominant)
        .collect();
    let mut out: Vec<KTypeWeight> = set.into_iter().collect();
    out.sort_by_cached_key(|w| (lkt_norm(w).ok(), w.clone()));
    out
}

/// All dominant constituents `μ + e_i − e_j` of `μ ⊗ p^+` (`i` left, `j` right).
pub fn p_plus_candidates(mu: &KTypeWeight) -> Vec<KTypeWeight> {
    let p = mu.left().len();
    let lefts: Vec<usize> = (0..p).collect();
    let rights: Vec<usize> = (p..p + mu.right().len()).collect();
    shift_candidates(mu, &lefts, &rights)
}

/// All dominant constituents of `μ ⊗ p^−`.
pub fn p_minus_candidates(mu: &KTypeWeight) -> Vec<KTypeWeight> {
    let p = mu.left().len();
    let lefts: Vec<usize> = (0..p).collect();
    let rights: Vec<usize> = (p..p + mu.right().len()).collect();
    shift_candidates(mu, &rights, &lefts)
}

fn block_coords(d: &LambdaDatum, i: usize) -> (Range<usize>, Range<usize>) {
    (d.left_positions()[i].clone(), d.right_positions()[i].clone())
}

/// Whether block `i` can carry a case-(a) certificate for the gap `(lo, hi)`.
fn sits_in_gap(td: &ThetaDatum, i: usize, hi: HalfRational, lo: HalfRational) -> bool {
    let b = &td.blocks()[i];
    let nu = &td.nus[i];
    let fits = b.shape == BlockShape::Rectangle || b.shape.is_parallelogram();
    let need = (hi - b.gamma).max(b.gamma - lo);
    fits && lo < b.gamma && b.gamma < hi && nu.min().is_some_and(|m| m >= need)
}

fn parallelogram_certificate(td: &ThetaDatum, i: usize, branch: &str) -> Result<Option<Certificate>> {
    let own = td.blocks()[i].shape;
    for shape in [own, own.flipped()] {
        let mut d = td.datum.clone();
        d.blocks[i].shape = shape;
        let level = if shape == BlockShape::ParallelogramUp { Level::PPlus } else { Level::PMinus };
        if !bottom_layer(&d, i..i + 1, level)? {
            continue;
        }
        let mu = mu_from_datum(&d)?;
        let (l, r) = block_coords(&d, i);
        let witness = match level {
            Level::PPlus => mu.shifted(l.start, r.end - 1),
            _ => mu.shifted(r.start, l.end - 1),
        };
        if witness.is_dominant() {
            let branch = format!("{branch}{}/{}", shape.name(), level_name(level));
            return Ok(Some(Certificate {
                kind: CertificateKind::CaseA_Parallelogram,
                level,
                witness_ktypes: vec![mu, witness],
                blocks: i..i + 1,
                branch,
            }));
        }
    }
    Ok(None)
}

fn rectangle_certificate(td: &ThetaDatum, i: usize) -> Result<Option<Certificate>> {
    let mu = td.reference_mu()?;
    let (l, r) = block_coords(&td.datum, i);
    for level in [Level::PMinus, Level::PPlus] {
        if !bottom_layer(&td.datum, i..i + 1, level)? {
            continue;
        }
        let witness = match level {
            Level::PMinus => mu.shifted(r.start, l.end - 1),
            _ => mu.shifted(l.start, r.end - 1),
        };
        if witness.is_dominant() {
            return Ok(Some(Certificate {
                kind: CertificateKind::CaseA_Rectangle,
                level,
                witness_ktypes: vec![mu.clone(), witness],
                blocks: i..i + 1,
                branch: format!("rect/{}", level_name(level)),
            }));
        }
    }
    Ok(None)
}

fn level_name(level: Level) -> &'static str {
    match level {
        Level::PPlus => "p_plus",
        Level::PMinus => "p_minus",
        Level::PFull => "p_full",
    }
}

/// Certificates for sorted-Λ gaps larger than 1 that contain the content of a
/// rectangle or parallelogram whose ν reaches across the gap.
pub fn certificate_case_a(td: &ThetaDatum) -> Result<Vec<Certificate>> {
    td.check()?;
    let lam = assemble_inf_char(td);
    let lam = lam.coords().entries();
    let n_blocks = td.blocks().len();
    let mut out: Vec<Certificate> = Vec::new();
    for w in lam.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        if hi - lo <= 1 {
            continue;
        }
        for i in (0..n_blocks).filter(|&i| sits_in_gap(td, i, hi, lo)) {
            let cert = if td.blocks()[i].shape.is_parallelogram() {
                parallelogram_certificate(td, i, "")?
            } else {
                match rectangle_certificate(td, i)? {
                    Some(c) => Some(c),
                    None => half_step(td, i, hi, lo)?,
                }
            };
            if let Some(c) = cert {
                if !out.iter().any(|o| o.blocks == c.blocks && o.witness_ktypes == c.witness_ktypes) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// A rectangle that is bottom layer at neither level hands over to a
/// neighbouring parallelogram half a step away.
fn half_step(td: &ThetaDatum, i: usize, hi: HalfRational, lo: HalfRational) -> Result<Option<Certificate>> {
    let gamma = td.blocks()[i].gamma;
    let near = [i.checked_sub(1), Some(i + 1)];
    for j in near.into_iter().flatten().filter(|&j| j < td.blocks().len()) {
        let b = &td.blocks()[j];
        if b.shape.is_parallelogram() && (b.gamma - gamma).abs() == HalfRational::HALF && sits_in_gap(td, j, hi, lo) {
            if let Some(c) = parallelogram_certificate(td, j, "half-step/")? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Certificates for λ-large blocks whose ν-coordinate clears every content by
/// a gap larger than 1: all dominant level-`p^±` shifts of the K-type inside
/// the semi-spherical component.
pub fn certificate_case_b(td: &ThetaDatum) -> Result<Vec<Certificate>> {
    td.check()?;
    let lam = assemble_inf_char(td);
    let Some(alpha) = td.blocks().iter().map(|b| b.gamma).max() else {
        return Ok(Vec::new());
    };
    let gap_above = lam.coords().entries().windows(2).any(|w| w[0] - w[1] > 1 && w[0] > alpha);
    if !gap_above {
        return Ok(Vec::new());
    }
    let mu = td.reference_mu()?;
    let mut out = Vec::new();
    for large in lambda_large_blocks(td) {
        let comp = semi_spherical_component(td, large)?;
        let level = large_block_level(td.blocks()[large].shape);
        let lefts: Vec<usize> = td.datum.left_positions()[comp.clone()].iter().flat_map(|r| r.clone()).collect();
        let rights: Vec<usize> = td.datum.right_positions()[comp.clone()].iter().flat_map(|r| r.clone()).collect();
        let witness_ktypes = match level {
            Level::PPlus => shift_candidates(&mu, &lefts, &rights),
            _ => shift_candidates(&mu, &rights, &lefts),
        };
        if witness_ktypes.is_empty() {
            continue;
        }
        out.push(Certificate {
            kind: CertificateKind::CaseB_SemiSpherical,
            level,
            witness_ktypes,
            blocks: comp,
            branch: format!("semi-spherical/{}", level_name(level)),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{Block, BlockShape::*};
    use crate::theta::NuVector;
    use crate::weights::Signature;

    fn h(twice: i64) -> HalfRational {
        HalfRational::half(twice)
    }

    fn nu(twice: &[i64]) -> NuVector {
        NuVector(twice.iter().map(|&x| h(x)).collect())
    }

    fn w(s: &str) -> KTypeWeight {
        s.parse().unwrap()
    }

    fn td(p: usize, q: usize, blocks: Vec<Block>, nus: Vec<NuVector>) -> ThetaDatum {
        ThetaDatum::new(LambdaDatum::new(Signature::new(p, q).unwrap(), blocks).unwrap(), nus).unwrap()
    }

    #[test]
    fn u43_rectangle() {
        let t = td(
            4,
            3,
            vec![
                Block::new(TrapezoidWideTop, 2, 1, h(2)),
                Block::new(Rectangle, 1, 1, h(1)),
                Block::new(Rectangle, 1, 1, h(-1)),
            ],
            vec![nu(&[0]), nu(&[2]), nu(&[0])],
        );
        let certs = certificate_case_a(&t).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].kind, CertificateKind::CaseA_Rectangle);
        assert_eq!(certs[0].level, Level::PMinus);
        assert_eq!(certs[0].witness_ktypes, vec![w("1,1,1,0|1,0,-1"), w("1,1,0,0|1,1,-1")]);
    }

    #[test]
    fn u22_parallelogram() {
        let t = td(2, 2, vec![Block::new(ParallelogramDown, 2, 2, h(1))], vec![nu(&[5, 3])]);
        let certs = certificate_case_a(&t).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].witness_ktypes, vec![w("1,1|0,0"), w("1,0|1,0")]);
    }

    #[test]
    fn small_gaps_give_nothing() {
        let t = td(1, 1, vec![Block::new(Rectangle, 1, 1, h(0))], vec![nu(&[1])]);
        assert!(certificate_case_a(&t).unwrap().is_empty());
        assert!(certificate_case_b(&t).unwrap().is_empty());
    }

    #[test]
    fn p_plus_shifts() {
        assert_eq!(p_plus_candidates(&w("3|1")), vec![w("4|0")]);
        let got: BTreeSet<_> = p_plus_candidates(&w("1,0|0")).into_iter().collect();
        assert_eq!(got, [w("2,0|-1"), w("1,1|-1")].into_iter().collect());
    }

    #[test]
    fn large_nu_case_b() {
        let t = td(
            5,
            4,
            vec![
                Block::new(ParallelogramUp, 1, 1, h(2)),
                Block::new(Rectangle, 1, 1, h(1)),
                Block::new(TrapezoidWideTop, 2, 1, h(0)),
                Block::new(Rectangle, 1, 1, h(-1)),
            ],
            vec![nu(&[0]), nu(&[1]), nu(&[0]), nu(&[7])],
        );
        let certs = certificate_case_b(&t).unwrap();
        assert_eq!(certs.len(), 1);
        let got: BTreeSet<_> = certs[0].witness_ktypes.iter().cloned().collect();
        let want: BTreeSet<_> =
            ["1,0,0,0,0|1,1,0,-1", "1,0,0,0,0|2,0,0,-1", "1,0,0,0,0|2,1,-1,-1", "1,0,0,0,0|2,1,0,-2"]
                .map(w)
                .into_iter()
                .collect();
        assert_eq!(got, want);
        assert_eq!(certs[0].level, Level::PPlus);
    }
}
