//! Scalars of the max-plus algebra extended with `+inf`.
//!
//! The carrier is `R ∪ {-inf, +inf}` ordered as `-inf < r < +inf`.
//! `-inf` is the semiring zero (written `eps`) and `Finite(0.0)` is the
//! semiring identity (written `e`). Operations that mix infinities follow a
//! fixed convention table:
//!
//! | expression              | value  |
//! |-------------------------|--------|
//! | `max{r, -inf}`          | `r`    |
//! | `max{r, +inf}`          | `+inf` |
//! | `r + (-inf)`            | `-inf` |
//! | `r + (+inf)`            | `+inf` |
//! | `r - (-inf)`            | `+inf` |
//! | `r - (+inf)`            | `-inf` |
//! | `(-inf) - r`            | `-inf` |
//! | `(+inf) - r`            | `+inf` |
//! | `p * (-inf)`, `p > 0`   | `-inf` |
//! | `p * (+inf)`, `p > 0`   | `+inf` |
//! | `0 * (-inf)`            | `0`    |
//! | `0 * (+inf)`            | `0`    |
//! | `(+inf) + (-inf)`       | `-inf` |
//! | `(-inf) - (-inf)`       | `+inf` |
//!
//! The remaining infinite differences (`(+inf) - (+inf)`, `(-inf) - (+inf)`,
//! `(+inf) - (-inf)`) are rejected with [`Error::UndefinedExtOp`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of `R ∪ {-inf, +inf}`.
///
/// A `Finite` payload is always a finite, non-NaN `f64`. Use [`ExtScalar::new`]
/// to build one from an arbitrary float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtScalar {
    NegInf,
    Finite(f64),
    PosInf,
}

pub use ExtScalar::{Finite, NegInf, PosInf};

impl ExtScalar {
    /// The semiring zero `eps`.
    pub const EPS: ExtScalar = NegInf;
    /// The semiring identity `e`.
    pub const E: ExtScalar = Finite(0.0);

    /// Classifies a float: infinities map to the matching variant, NaN is rejected.
    pub fn new(v: f64) -> Result<Self> {
        if v.is_nan() {
            Err(Error::NotANumber)
        } else if v == f64::NEG_INFINITY {
            Ok(NegInf)
        } else if v == f64::INFINITY {
            Ok(PosInf)
        } else {
            Ok(Finite(v))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_eps(self) -> bool {
        matches!(self, NegInf)
    }

    /// The finite payload, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lossy conversion to `f64` with the infinities mapped to IEEE infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(v) => v,
            PosInf => f64::INFINITY,
        }
    }

    /// `a ⊕ b = max{a, b}`.
    pub fn oplus(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `a ⊗ b = a + b`, with `-inf` absorbing (including against `+inf`).
    pub fn otimes(self, other: Self) -> Self {
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Conventional subtraction `self - other` over the extended reals.
    pub fn ext_sub(self, other: Self) -> Result<Self> {
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a - b)),
            (Finite(_), NegInf) => Ok(PosInf),
            (Finite(_), PosInf) => Ok(NegInf),
            (NegInf, Finite(_)) => Ok(NegInf),
            (PosInf, Finite(_)) => Ok(PosInf),
            (NegInf, NegInf) => Ok(PosInf),
            (lhs, rhs) => Err(Error::UndefinedExtOp { lhs, rhs }),
        }
    }

    /// Scaling by a nonnegative real `p`. `0 * a` is `0` for every `a`.
    pub fn ext_scale(p: f64, a: Self) -> Result<Self> {
        if p.is_nan() || p < 0.0 || p.is_infinite() {
            return Err(Error::Domain(format!(
                "scale factor must be a finite nonnegative real, got {p}"
            )));
        }
        if p == 0.0 {
            return Ok(Finite(0.0));
        }
        Ok(match a {
            Finite(v) => Finite(p * v),
            inf => inf,
        })
    }

    fn rank(self) -> u8 {
        match self {
            NegInf => 0,
            Finite(_) => 1,
            PosInf => 2,
        }
    }
}

impl Eq for ExtScalar {}

impl PartialOrd for ExtScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("finite payloads are never NaN"),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<i32> for ExtScalar {
    fn from(v: i32) -> Self {
        Finite(f64::from(v))
    }
}

impl TryFrom<f64> for ExtScalar {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        ExtScalar::new(v)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("+inf"),
            // normalise -0 so that reports are stable
            Finite(v) if *v == 0.0 => f.write_str("0"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar token `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for ExtScalar {
    type Err = ParseScalarError;

    /// Accepts `eps`, `-inf`, `+inf` and decimal reals. Spellings that `f64`
    /// would otherwise accept (`inf`, `nan`, `infinity`) are rejected.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "eps" | "-inf" => return Ok(NegInf),
            "+inf" => return Ok(PosInf),
            _ => {}
        }
        let is_decimal = s
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
            && s.chars().any(|c| c.is_ascii_digit());
        match s.parse::<f64>() {
            Ok(v) if is_decimal && v.is_finite() => Ok(Finite(v)),
            _ => Err(ParseScalarError(s.to_owned())),
        }
    }
}
