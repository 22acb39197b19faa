use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::HalfRational;
use crate::theta::InfChar;
use crate::weights::{rho, two_rho_k, KTypeWeight, Signature, Vector};

use super::bottom::Level;

/// Largest `p + q` for the exhaustive positive-system search.
pub const DIRAC_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiracViolation {
    pub mu: KTypeWeight,
    pub level: Level,
    pub best_norm_sq: HalfRational,
    pub inf_char_norm_sq: HalfRational,
}

/// Parthasarathy's inequality `‖{μ − ρ_n} + ρ_c‖² ≥ ‖Λ‖²`, checked over every
/// positive system containing the compact one (`PFull`) or for the fixed
/// `ρ(p^±)`. Returns whether some choice violates it, and the smallest
/// left-hand side seen.
pub fn dirac_test(mu: &KTypeWeight, lam: &InfChar, sig: Signature, level: Level) -> Result<(bool, HalfRational)> {
    mu.check_signature(sig)?;
    let n = sig.n();
    if lam.coords().len() != n {
        return Err(Error::LengthMismatch { expected: n, got: lam.coords().len() });
    }
    if n > DIRAC_GUARD {
        return Err(Error::Guard { what: "p+q", value: n, limit: DIRAC_GUARD });
    }
    let rho_c: Vector = two_rho_k(sig).iter().map(|x| x.div_int(2)).collect();
    let mu_v = mu.aligned();
    let target = lam.norm_sq();

    let value = |rho_n: &Vector| -> HalfRational {
        let shifted = mu_v.sub(rho_n).expect("aligned lengths");
        let (l, r) = shifted.entries().split_at(sig.p);
        let l = Vector(l.to_vec()).sorted_desc();
        let r = Vector(r.to_vec()).sorted_desc();
        let v: Vector = l.iter().chain(r.iter()).copied().collect();
        v.add(&rho_c).expect("aligned lengths").norm_sq()
    };

    let best = match level {
        Level::PPlus | Level::PMinus => {
            let sign = if level == Level::PPlus { 1 } else { -1 };
            let half_q = HalfRational::half(sig.q as i64 * sign);
            let half_p = HalfRational::half(-(sig.p as i64) * sign);
            let rho_n: Vector = std::iter::repeat_n(half_q, sig.p).chain(std::iter::repeat_n(half_p, sig.q)).collect();
            value(&rho_n)
        }
        Level::PFull => {
            let rho_g = rho(n);
            let mut best: Option<HalfRational> = None;
            for slots in Combinations::new(n, sig.p) {
                let mut aligned = Vec::with_capacity(n);
                aligned.extend(slots.iter().map(|&k| rho_g[k]));
                aligned.extend((0..n).filter(|k| !slots.contains(k)).map(|k| rho_g[k]));
                let rho_n = Vector(aligned).sub(&rho_c)?;
                let v = value(&rho_n);
                best = Some(best.map_or(v, |b| b.min(v)));
            }
            best.expect("at least one interleaving")
        }
    };
    Ok((best < target, best))
}

/// `k`-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
