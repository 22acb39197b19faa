use crate::error::Result;
use crate::rational::HalfRational;
use crate::theta::InfChar;
use crate::weights::{majorizes, rho, Vector};

/// Passes when every consecutive difference of Λ is at most 1; also returns
/// the largest difference.
pub fn fpp_gap_check(lam: &InfChar) -> (bool, HalfRational) {
    let max_gap = sorted_gaps(lam.coords()).into_iter().max().unwrap_or(HalfRational::ZERO);
    (max_gap <= 1, max_gap)
}

pub(crate) fn sorted_gaps(v: &Vector) -> Vec<HalfRational> {
    let v = v.sorted_desc();
    v.entries().windows(2).map(|w| w[0] - w[1]).collect()
}

/// `Λ ∈ λ_u + conv(W·ρ)`, with both vectors taken in decreasing order.
pub fn hull_check(lam: &InfChar, lambda_u: &Vector) -> Result<bool> {
    let diff = lam.coords().sorted_desc().sub(&lambda_u.sorted_desc())?;
    if !diff.sum().is_zero() {
        return Ok(false);
    }
    majorizes(&rho(diff.len()), &diff)
}
