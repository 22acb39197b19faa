//! Necessary conditions for unitarity and the certificates they produce.
//!
//! [`screen`] combines every test into a [`ScreeningReport`]. A verdict of
//! [`Verdict::NoObstructionFound`] is not a proof of unitarity.

mod bottom;
mod certificates;
mod dirac;
mod gaps;
mod large;
mod partition;

pub use bottom::{bottom_layer, bottom_layer_by_corners, junction, Level};
pub use certificates::{
    certificate_case_a, certificate_case_b, p_minus_candidates, p_plus_candidates, shift_candidates, Certificate,
    CertificateKind,
};
pub use dirac::{dirac_test, DiracViolation, DIRAC_GUARD};
pub use gaps::{fpp_gap_check, hull_check};
pub use large::{lambda_large_blocks, large_block_level, semi_spherical_component};
pub use partition::{
    fundamental_partition, good_range_cuts, interlaced, segments_of_partition, FundamentalPartition, Segment,
};

use std::ops::Range;

use serde::Serialize;

use crate::datum::LambdaDatum;
use crate::error::Result;
use crate::lambda_map::{compute_lambda_u, is_unitarily_small};
use crate::rational::HalfRational;
use crate::theta::{assemble_inf_char, lkt_family, InfChar, LKTFamilyEntry, ThetaDatum};
use crate::weights::{KTypeWeight, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    NoObstructionFound,
    NonUnitaryByFPP,
    NonUnitaryBySRVHull,
    NonUnitaryByFundamentalGap,
    InducedInGoodRange,
}

/// Everything [`screen`] found. Field order is the JSON order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreeningReport {
    pub inf_char: InfChar,
    pub hermitian_ok: bool,
    pub unitarily_small: bool,
    pub fpp_applicable: bool,
    pub fpp_pass: bool,
    pub max_gap: HalfRational,
    pub hull_pass: bool,
    pub lambda_u_center: Vector,
    pub good_cuts: Vec<usize>,
    pub fundamental: FundamentalPartition,
    pub interlaced: bool,
    pub dirac_violations: Vec<DiracViolation>,
    pub certificates: Vec<Certificate>,
    pub verdict: Verdict,
    pub lowest_k_type: KTypeWeight,
    pub lkt_family: Vec<LKTFamilyEntry>,
    pub segments: Vec<Segment>,
    pub lambda_large: Vec<usize>,
    pub semi_spherical: Vec<Range<usize>>,
    /// For [`Verdict::InducedInGoodRange`]: the datum cut at every good cut.
    pub inner_data: Vec<ThetaDatum>,
    pub notes: Vec<String>,
}

/// Splits `td` at the given cuts, keeping contents as they are.
pub fn split_at_cuts(td: &ThetaDatum, cuts: &[usize]) -> Vec<ThetaDatum> {
    let mut bounds = vec![0];
    bounds.extend_from_slice(cuts);
    bounds.push(td.blocks().len());
    bounds
        .windows(2)
        .map(|w| {
            let blocks = td.blocks()[w[0]..w[1]].to_vec();
            let p = blocks.iter().map(|b| b.r).sum();
            let q = blocks.iter().map(|b| b.s).sum();
            ThetaDatum { datum: LambdaDatum { p, q, blocks }, nus: td.nus[w[0]..w[1]].to_vec() }
        })
        .collect()
}

pub fn screen(td: &ThetaDatum) -> Result<ScreeningReport> {
    td.check()?;
    let sig = td.signature()?;
    let mut notes =
        vec!["nu is stored as its nonnegative half; the Hermitian condition holds by construction".to_string()];

    let inf_char = assemble_inf_char(td);
    let mu = td.reference_mu()?;
    let good_cuts = good_range_cuts(td);
    let fundamental = fundamental_partition(&td.datum);
    let segments = segments_of_partition(td, &fundamental.groups);
    let interlaced = interlaced(&segments);
    let unitarily_small = is_unitarily_small(&mu, sig)?;

    let lambda_u_center = if fundamental.is_fundamental() {
        let m = inf_char.coords().mean().unwrap_or_default();
        Vector::constant(m, sig.n())
    } else {
        compute_lambda_u(&mu, sig)?
    };
    let hull_pass = hull_check(&inf_char, &lambda_u_center)?;
    let (fpp_pass, max_gap) = fpp_gap_check(&inf_char);
    let fpp_applicable = good_cuts.is_empty();

    let lambda_large = lambda_large_blocks(td);
    let semi_spherical = lambda_large.iter().map(|&i| semi_spherical_component(td, i)).collect::<Result<Vec<_>>>()?;
    let family = lkt_family(td)?;

    let mut dirac_violations = Vec::new();
    if sig.n() <= DIRAC_GUARD {
        for entry in &family {
            let (violated, best) = dirac_test(&entry.mu, &inf_char, sig, Level::PFull)?;
            if violated {
                dirac_violations.push(DiracViolation {
                    mu: entry.mu.clone(),
                    level: Level::PFull,
                    best_norm_sq: best,
                    inf_char_norm_sq: inf_char.norm_sq(),
                });
            }
        }
    } else {
        notes.push(format!("Dirac inequality skipped: p+q = {} exceeds {DIRAC_GUARD}", sig.n()));
    }

    let mut certificates = certificate_case_a(td)?;
    certificates.extend(certificate_case_b(td)?);
    certificates.extend(dirac_violations.iter().map(|v| Certificate {
        kind: CertificateKind::Dirac,
        level: v.level,
        witness_ktypes: vec![v.mu.clone()],
        blocks: 0..td.blocks().len(),
        branch: "dirac/p_full".into(),
    }));

    let verdict = if !good_cuts.is_empty() {
        notes.push("induced in good range; screen the inner data instead".into());
        Verdict::InducedInGoodRange
    } else if !fpp_pass {
        Verdict::NonUnitaryByFPP
    } else if unitarily_small && !hull_pass {
        Verdict::NonUnitaryBySRVHull
    } else if fundamental.is_fundamental() && max_gap > 1 {
        Verdict::NonUnitaryByFundamentalGap
    } else {
        Verdict::NoObstructionFound
    };
    let inner_data = if verdict == Verdict::InducedInGoodRange { split_at_cuts(td, &good_cuts) } else { Vec::new() };

    Ok(ScreeningReport {
        inf_char,
        hermitian_ok: true,
        unitarily_small,
        fpp_applicable,
        fpp_pass,
        max_gap,
        hull_pass,
        lambda_u_center,
        good_cuts,
        fundamental,
        interlaced,
        dirac_violations,
        certificates,
        verdict,
        lowest_k_type: mu,
        lkt_family: family,
        segments,
        lambda_large,
        semi_spherical,
        inner_data,
        notes,
    })
}
