//! Min-plus and max-plus scalars.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Which tropical semiring a value or matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemiringKind {
    /// `⊕ = min`, `⊗ = +`, zero `+∞`, one `0`.
    MinPlus,
    /// `⊕ = max`, `⊗ = +`, zero `−∞`, one `0`.
    MaxPlus,
}

/// An extended rational: a finite exact value or one of the two infinities.
///
/// Only the infinity matching a semiring's additive neutral may appear in
/// that semiring; matrices reject the other one at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Finite(Rational::from_int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Finite(Rational::new(num, den))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Scalar::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Scalar::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.finite().and_then(Rational::to_i64)
    }

    /// Additive inverse in the extended reals (`−(+∞) = −∞`).
    pub fn negate(&self) -> Scalar {
        match self {
            Scalar::NegInf => Scalar::PosInf,
            Scalar::PosInf => Scalar::NegInf,
            Scalar::Finite(r) => Scalar::Finite(-r),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Finite(r)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        use Scalar::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::NegInf => f.write_str("-inf"),
            Scalar::PosInf => f.write_str("inf"),
            Scalar::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = crate::rational::ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" => Ok(Scalar::PosInf),
            "-inf" => Ok(Scalar::NegInf),
            _ => s.parse().map(Scalar::Finite),
        }
    }
}

impl SemiringKind {
    /// Additive neutral (`+∞` for min-plus, `−∞` for max-plus).
    pub fn zero(self) -> Scalar {
        match self {
            SemiringKind::MinPlus => Scalar::PosInf,
            SemiringKind::MaxPlus => Scalar::NegInf,
        }
    }

    /// Multiplicative neutral.
    pub fn one(self) -> Scalar {
        Scalar::int(0)
    }

    pub fn dual(self) -> SemiringKind {
        match self {
            SemiringKind::MinPlus => SemiringKind::MaxPlus,
            SemiringKind::MaxPlus => SemiringKind::MinPlus,
        }
    }

    /// Whether `s` is a legal element of this semiring.
    pub fn admits(self, s: &Scalar) -> bool {
        match s {
            Scalar::Finite(_) => true,
            inf => *inf == self.zero(),
        }
    }

    pub fn is_zero(self, s: &Scalar) -> bool {
        *s == self.zero()
    }

    pub fn plus(self, a: &Scalar, b: &Scalar) -> Scalar {
        let pick_a = match self {
            SemiringKind::MinPlus => a <= b,
            SemiringKind::MaxPlus => a >= b,
        };
        if pick_a {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// `a ⊗ b = a + b`, with this semiring's zero absorbing.
    pub fn times(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(x + y),
            _ => self.zero(),
        }
    }

    /// `a ≼ b` in the semiring's natural order, i.e. `a ⊕ b = b`.
    pub fn absorbs(self, a: &Scalar, b: &Scalar) -> bool {
        match self {
            SemiringKind::MinPlus => b <= a,
            SemiringKind::MaxPlus => b >= a,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::MinPlus => "min-plus",
            SemiringKind::MaxPlus => "max-plus",
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-plus" => Ok(SemiringKind::MinPlus),
            "max-plus" => Ok(SemiringKind::MaxPlus),
            other => Err(format!("unknown semiring {other:?}")),
        }
    }
}
