//! Weights, signatures and the staggered ρ vectors of `u(p,q)`.
//!
//! Coordinates are always kept in aligned `(left | right)` order, the first
//! `p` entries belonging to `U(p)` and the last `q` to `U(q)`. Merged or sorted
//! orders are derived on demand.

use std::fmt;
use std::ops::{Index, Range};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::HalfRational;

/// The group `U(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    /// `p = 0` or `q = 0` is accepted (compact `U(n)`), `p + q = 0` is not.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::Validation("signature needs p + q >= 1".into()));
        }
        Ok(Signature { p, q })
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// `(p + q) mod 2`.
    pub fn epsilon(&self) -> usize {
        self.n() % 2
    }

    pub fn left_range(&self) -> Range<usize> {
        0..self.p
    }

    pub fn right_range(&self) -> Range<usize> {
        self.p..self.n()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({},{})", self.p, self.q)
    }
}

/// A coordinate vector over [`HalfRational`].
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<HalfRational>);

impl Vector {
    pub fn new(entries: Vec<HalfRational>) -> Self {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&x| HalfRational::from_int(x)).collect())
    }

    /// Builds a vector from twice its entries: `from_halves(&[3, -1])` is `(3/2, -1/2)`.
    pub fn from_halves(twice: &[i64]) -> Self {
        Vector(twice.iter().map(|&x| HalfRational::half(x)).collect())
    }

    pub fn constant(value: HalfRational, n: usize) -> Self {
        Vector(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[HalfRational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HalfRational> {
        self.0.iter()
    }

    pub fn sum(&self) -> HalfRational {
        self.0.iter().sum()
    }

    pub fn mean(&self) -> Option<HalfRational> {
        HalfRational::mean(&self.0)
    }

    pub fn norm_sq(&self) -> HalfRational {
        self.0.iter().map(|x| x.square()).sum()
    }

    pub fn sorted_desc(&self) -> Vector {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Vector(v)
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn max(&self) -> Option<HalfRational> {
        self.0.iter().copied().max()
    }

    pub fn min(&self) -> Option<HalfRational> {
        self.0.iter().copied().min()
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        check_len(self.len(), other.len())?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect()))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        check_len(self.len(), other.len())?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| *a - *b).collect()))
    }

    pub fn reversed_negated(&self) -> Vector {
        Vector(self.0.iter().rev().map(|x| -*x).collect())
    }
}

impl Index<usize> for Vector {
    type Output = HalfRational;
    fn index(&self, i: usize) -> &HalfRational {
        &self.0[i]
    }
}

impl FromIterator<HalfRational> for Vector {
    fn from_iter<I: IntoIterator<Item = HalfRational>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Highest weight of a `K = U(p) x U(q)` type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawKType")]
pub struct KTypeWeight {
    left: Vec<i64>,
    right: Vec<i64>,
}

#[derive(Deserialize)]
struct RawKType {
    left: Vec<i64>,
    right: Vec<i64>,
}

impl TryFrom<RawKType> for KTypeWeight {
    type Error = Error;
    fn try_from(raw: RawKType) -> Result<Self> {
        KTypeWeight::new(raw.left, raw.right)
    }
}

impl KTypeWeight {
    /// Fails unless both sides are weakly decreasing.
    pub fn new(left: Vec<i64>, right: Vec<i64>) -> Result<Self> {
        let w = KTypeWeight { left, right };
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(w)
    }

    /// Builds a weight without the dominance check; used for candidate shifts
    /// that are filtered afterwards.
    pub(crate) fn raw(left: Vec<i64>, right: Vec<i64>) -> Self {
        KTypeWeight { left, right }
    }

    pub fn zero(sig: Signature) -> Self {
        KTypeWeight { left: vec![0; sig.p], right: vec![0; sig.q] }
    }

    pub fn left(&self) -> &[i64] {
        &self.left
    }

    pub fn right(&self) -> &[i64] {
        &self.right
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::new(self.left.len(), self.right.len())
    }

    pub fn is_dominant(&self) -> bool {
        self.left.windows(2).all(|w| w[0] >= w[1]) && self.right.windows(2).all(|w| w[0] >= w[1])
    }

    /// Fails if the side lengths do not match `sig`.
    pub fn check_signature(&self, sig: Signature) -> Result<()> {
        if self.left.len() != sig.p || self.right.len() != sig.q {
            return Err(Error::Validation(format!(
                "weight {self} does not have shape ({}|{}) for {sig}",
                sig.p, sig.q
            )));
        }
        Ok(())
    }

    /// All coordinates in `(left | right)` order.
    pub fn aligned(&self) -> Vector {
        Vector::from_ints(&self.aligned_ints())
    }

    pub fn aligned_ints(&self) -> Vec<i64> {
        self.left.iter().chain(&self.right).copied().collect()
    }

    /// `mu + e_i - e_j` on aligned indices, not checked for dominance.
    pub(crate) fn shifted(&self, up: usize, down: usize) -> KTypeWeight {
        let mut coords = self.aligned_ints();
        coords[up] += 1;
        coords[down] -= 1;
        let right = coords.split_off(self.left.len());
        KTypeWeight::raw(coords, right)
    }
}

impl fmt::Display for KTypeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.left), join(&self.right))
    }
}

impl fmt::Debug for KTypeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for KTypeWeight {
    type Err = Error;

    /// Parses `"a,b,c|d,e"`; parentheses and spaces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        let (l, r) =
            cleaned.split_once('|').ok_or_else(|| Error::Parse(format!("expected 'left|right' weight, got {s:?}")))?;
        let side = |part: &str| -> Result<Vec<i64>> {
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry {x:?}"))))
                .collect()
        };
        KTypeWeight::new(side(l)?, side(r)?)
    }
}

/// `((n-1)/2, (n-3)/2, ..., -(n-1)/2)`.
pub fn rho(n: usize) -> Vector {
    let top = n as i64 - 1;
    (0..n as i64).map(|i| HalfRational::half(top - 2 * i)).collect()
}

/// `2ρ(k)` for `K = U(p) x U(q)`, aligned `(p-1, p-3, ..., 1-p | q-1, ..., 1-q)`.
pub fn two_rho_k(sig: Signature) -> Vector {
    let side = |m: usize| (0..m as i64).map(move |i| HalfRational::from_int(m as i64 - 1 - 2 * i));
    side(sig.p).chain(side(sig.q)).collect()
}

/// `‖μ + 2ρ(k)‖²`, the lowest-K-type ordering key.
pub fn lkt_norm(mu: &KTypeWeight) -> Result<HalfRational> {
    let sig = mu.signature()?;
    Ok(mu.aligned().add(&two_rho_k(sig))?.norm_sq())
}

/// Whether `a` majorizes `b`: equal sums, and every prefix sum of `b` sorted
/// descending is at most the matching prefix sum of `a` sorted descending.
pub fn majorizes(a: &Vector, b: &Vector) -> Result<bool> {
    check_len(a.len(), b.len())?;
    if a.sum() != b.sum() {
        return Ok(false);
    }
    let (a, b) = (a.sorted_desc(), b.sorted_desc());
    let mut pa = HalfRational::ZERO;
    let mut pb = HalfRational::ZERO;
    for (x, y) in a.iter().zip(b.iter()) {
        pa += *x;
        pb += *y;
        if pb > pa {
            return Ok(false);
        }
    }
    Ok(true)
}
