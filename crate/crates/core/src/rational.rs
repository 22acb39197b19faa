//! Exact rational scalars.
//!
//! Every weight, content and ν entry in this crate is a [`HalfRational`]. The
//! name reflects where the values live in practice (½ℤ for contents and ρ),
//! but the type is a full rational so that means of pooled runs and rational
//! ν parameters stay exact.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfRational(Ratio<i64>);

impl HalfRational {
    pub const ZERO: HalfRational = HalfRational(Ratio::new_raw(0, 1));
    pub const ONE: HalfRational = HalfRational(Ratio::new_raw(1, 1));
    pub const HALF: HalfRational = HalfRational(Ratio::new_raw(1, 2));

    /// Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        HalfRational(Ratio::new(numer, denom))
    }

    pub fn try_new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse(format!("zero denominator in {numer}/{denom}")));
        }
        Ok(Self::new(numer, denom))
    }

    pub const fn from_int(n: i64) -> Self {
        HalfRational(Ratio::new_raw(n, 1))
    }

    /// `n / 2`.
    pub fn half(n: i64) -> Self {
        Self::new(n, 2)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True when `2x` is an integer.
    pub fn is_half_integer_lattice(&self) -> bool {
        self.denom() == 1 || self.denom() == 2
    }

    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        HalfRational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn mul_int(&self, k: i64) -> Self {
        HalfRational(self.0 * k)
    }

    pub fn div_int(&self, k: i64) -> Self {
        HalfRational(self.0 / k)
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Mean of a nonempty slice.
    pub fn mean(values: &[HalfRational]) -> Option<HalfRational> {
        if values.is_empty() {
            return None;
        }
        let total: HalfRational = values.iter().copied().sum();
        Some(total.div_int(values.len() as i64))
    }
}

impl From<i64> for HalfRational {
    fn from(n: i64) -> Self {
        HalfRational::from_int(n)
    }
}

impl From<i32> for HalfRational {
    fn from(n: i32) -> Self {
        HalfRational::from_int(n as i64)
    }
}

impl fmt::Display for HalfRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for HalfRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                HalfRational::try_new(n, d)
            }
            None => s.parse::<i64>().map(HalfRational::from_int).map_err(|_| bad()),
        }
    }
}

impl Serialize for HalfRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // Accept "a/b" strings and bare JSON integers.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(HalfRational::from_int(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for HalfRational {
            type Output = HalfRational;
            fn $method(self, rhs: HalfRational) -> HalfRational {
                HalfRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<i64> for HalfRational {
            type Output = HalfRational;
            fn $method(self, rhs: i64) -> HalfRational {
                HalfRational(self.0.$method(Ratio::from_integer(rhs)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for HalfRational {
    type Output = HalfRational;
    fn neg(self) -> HalfRational {
        HalfRational(-self.0)
    }
}

impl AddAssign for HalfRational {
    fn add_assign(&mut self, rhs: HalfRational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for HalfRational {
    fn sub_assign(&mut self, rhs: HalfRational) {
        self.0 -= rhs.0;
    }
}

impl Sum for HalfRational {
    fn sum<I: Iterator<Item = HalfRational>>(iter: I) -> Self {
        iter.fold(HalfRational::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a HalfRational> for HalfRational {
    fn sum<I: Iterator<Item = &'a HalfRational>>(iter: I) -> Self {
        iter.fold(HalfRational::ZERO, |a, b| a + *b)
    }
}

impl PartialEq<i64> for HalfRational {
    fn eq(&self, other: &i64) -> bool {
        self.denom() == 1 && self.numer() == *other
    }
}

impl PartialOrd<i64> for HalfRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&Ratio::from_integer(*other)))
    }
}

/// Floor division helper used by the enumerators.
pub(crate) fn floor_twice(x: HalfRational) -> i64 {
    let twice = x.mul_int(2);
    Integer::div_floor(&twice.numer(), &twice.denom())
}
