//! Aggregation algebra shared by every structure in the crate.
//!
//! Weights are exact 64-bit integers. All arithmetic is checked: an overflow
//! surfaces as [`Error::Overflow`] rather than wrapping. `MIN` and `MAX` use the
//! extreme representable integers as their neutral elements, which also serve
//! as the "logically deleted" weight.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Point and cell weights.
pub type Weight = i64;

/// An associative aggregate with a neutral element and, for some ops, an inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggOp {
    Sum,
    Product,
    Xor,
    Min,
    Max,
}

impl AggOp {
    pub const ALL: [AggOp; 5] = [AggOp::Sum, AggOp::Product, AggOp::Xor, AggOp::Min, AggOp::Max];

    pub fn name(self) -> &'static str {
        match self {
            AggOp::Sum => "SUM",
            AggOp::Product => "PRODUCT",
            AggOp::Xor => "XOR",
            AggOp::Min => "MIN",
            AggOp::Max => "MAX",
        }
    }

    pub fn neutral(self) -> Weight {
        match self {
            AggOp::Sum | AggOp::Xor => 0,
            AggOp::Product => 1,
            AggOp::Min => Weight::MAX,
            AggOp::Max => Weight::MIN,
        }
    }

    pub fn is_invertible(self) -> bool {
        matches!(self, AggOp::Sum | AggOp::Product | AggOp::Xor)
    }

    pub fn combine(self, a: Weight, b: Weight) -> Result<Weight> {
        match self {
            AggOp::Sum => a.checked_add(b).ok_or(Error::Overflow("SUM")),
            AggOp::Product => a.checked_mul(b).ok_or(Error::Overflow("PRODUCT")),
            AggOp::Xor => Ok(a ^ b),
            AggOp::Min => Ok(a.min(b)),
            AggOp::Max => Ok(a.max(b)),
        }
    }

    /// Returns `a` such that `combine(a, b) == c`.
    pub fn invert(self, c: Weight, b: Weight) -> Result<Weight> {
        match self {
            AggOp::Sum => c.checked_sub(b).ok_or(Error::Overflow("SUM inverse")),
            AggOp::Xor => Ok(c ^ b),
            AggOp::Product => {
                if b == 0 {
                    return Err(Error::DivisionByZero);
                }
                if c % b != 0 {
                    return Err(Error::InexactInverse(c, b));
                }
                c.checked_div(b).ok_or(Error::Overflow("PRODUCT inverse"))
            }
            AggOp::Min | AggOp::Max => Err(Error::NotInvertible(self.name())),
        }
    }

    /// The group inverse of `b`, when it is itself an integer.
    ///
    /// PRODUCT has no integer inverses except for ±1, so callers that need
    /// `b^{-1}` for products should go through [`AggOp::invert`] instead.
    pub fn inverse(self, b: Weight) -> Result<Weight> {
        match self {
            AggOp::Sum => b.checked_neg().ok_or(Error::Overflow("SUM inverse")),
            AggOp::Xor => Ok(b),
            AggOp::Product => match b {
                1 | -1 => Ok(b),
                0 => Err(Error::DivisionByZero),
                _ => Err(Error::InexactInverse(1, b)),
            },
            AggOp::Min | AggOp::Max => Err(Error::NotInvertible(self.name())),
        }
    }

    pub fn fold<I: IntoIterator<Item = Weight>>(self, ws: I) -> Result<Weight> {
        ws.into_iter().try_fold(self.neutral(), |acc, w| self.combine(acc, w))
    }

    /// Adds `u` to an aggregated MIN/MAX value; the neutral sentinel is absorbing,
    /// so a logically deleted point stays deleted under additive range updates.
    pub(crate) fn shift_extreme(self, value: Weight, u: Weight) -> Result<Weight> {
        debug_assert!(matches!(self, AggOp::Min | AggOp::Max));
        if value == self.neutral() {
            return Ok(value);
        }
        value.checked_add(u).ok_or(Error::Overflow("additive update"))
    }
}

impl fmt::Display for AggOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AggOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SUM" => Ok(AggOp::Sum),
            "PRODUCT" => Ok(AggOp::Product),
            "XOR" => Ok(AggOp::Xor),
            "MIN" => Ok(AggOp::Min),
            "MAX" => Ok(AggOp::Max),
            _ => Err(Error::UnknownAggregate(s.to_string())),
        }
    }
}
