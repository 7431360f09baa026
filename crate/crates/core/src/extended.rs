use std::cmp::Ordering;
use std::fmt;

/// A risk value in ℝ ∪ {+∞}.
///
/// Minus infinity is deliberately not representable; an operation that would
/// produce it reports an error instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PlusInfinity,
}

impl ExtendedReal {
    /// Maps `+inf` to `PlusInfinity`; `None` for `-inf` and NaN.
    pub fn from_f64(v: f64) -> Option<Self> {
        if v.is_nan() || v == f64::NEG_INFINITY {
            None
        } else if v == f64::INFINITY {
            Some(ExtendedReal::PlusInfinity)
        } else {
            Some(ExtendedReal::Finite(v))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PlusInfinity => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::PlusInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Subtracts a finite amount; `+∞` stays `+∞`.
    pub fn minus(self, a: f64) -> Self {
        match self {
            ExtendedReal::Finite(v) => ExtendedReal::Finite(v - a),
            ExtendedReal::PlusInfinity => ExtendedReal::PlusInfinity,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtendedReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (Finite(_), PlusInfinity) => Some(Ordering::Less),
            (PlusInfinity, Finite(_)) => Some(Ordering::Greater),
            (PlusInfinity, PlusInfinity) => Some(Ordering::Equal),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        ExtendedReal::Finite(v)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PlusInfinity => f.write_str("+inf"),
        }
    }
}
