//! Hölder exponents on the extended half-line `[1, ∞]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A norm exponent `p ∈ [1, ∞]`.
///
/// The three distinguished exponents 1, 2 and ∞ are stored as exact tags so
/// that sign comparisons such as `sgn(p − r)` never suffer from rounding at
/// those points. Any other value is a finite float strictly greater than 1.
#[derive(Debug, Clone, Copy)]
pub enum ExtIndex {
    One,
    Two,
    Inf,
    Finite(f64),
}

impl ExtIndex {
    /// Builds an exponent from a float, normalising 1, 2 and `+∞` to their tags.
    pub fn new(p: f64) -> Result<Self, Error> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidIndex(p));
        }
        Ok(if p == 1.0 {
            ExtIndex::One
        } else if p == 2.0 {
            ExtIndex::Two
        } else if p.is_infinite() {
            ExtIndex::Inf
        } else {
            ExtIndex::Finite(p)
        })
    }

    /// The exponent as a float, `f64::INFINITY` for ∞.
    pub fn value(self) -> f64 {
        match self {
            ExtIndex::One => 1.0,
            ExtIndex::Two => 2.0,
            ExtIndex::Inf => f64::INFINITY,
            ExtIndex::Finite(p) => p,
        }
    }

    /// `1/p` with the convention `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            ExtIndex::One => 1.0,
            ExtIndex::Two => 0.5,
            ExtIndex::Inf => 0.0,
            ExtIndex::Finite(p) => 1.0 / p,
        }
    }

    /// Hölder conjugate `p* = p/(p−1)`; swaps 1 and ∞ and fixes 2.
    pub fn conjugate(self) -> Self {
        match self {
            ExtIndex::One => ExtIndex::Inf,
            ExtIndex::Two => ExtIndex::Two,
            ExtIndex::Inf => ExtIndex::One,
            ExtIndex::Finite(p) => {
                ExtIndex::new(1.0 + 1.0 / (p - 1.0)).expect("conjugate of p > 1 is > 1")
            }
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, ExtIndex::One)
    }

    pub fn is_two(self) -> bool {
        matches!(self, ExtIndex::Two)
    }

    pub fn is_inf(self) -> bool {
        matches!(self, ExtIndex::Inf)
    }

    /// Midpoint of two exponents measured in `1/p`, used to pick interior
    /// representatives of an index interval.
    pub fn harmonic_mid(self, other: Self) -> Self {
        let r = 0.5 * (self.recip() + other.recip());
        if r == 0.0 {
            ExtIndex::Inf
        } else {
            ExtIndex::new(1.0 / r).expect("mean of reciprocals lies in (0, 1]")
        }
    }
}

impl PartialEq for ExtIndex {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtIndex {}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value()
            .partial_cmp(&other.value())
            .expect("exponents are never NaN")
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtIndex::Inf => write!(f, "inf"),
            other => write!(f, "{}", other.value()),
        }
    }
}

impl FromStr for ExtIndex {
    type Err = Error;

    /// Accepts decimal numbers and the token `inf` in any letter case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(ExtIndex::Inf);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::InvalidInput(format!("not a norm exponent: {s:?}")))?;
        if v.is_infinite() {
            return Err(Error::InvalidInput(format!(
                "use the token \"inf\" for the infinite exponent, got {s:?}"
            )));
        }
        ExtIndex::new(v)
    }
}

/// The value of `sgn(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// `sgn(a − b)`, exact on the extended half-line.
    pub fn of_diff(a: ExtIndex, b: ExtIndex) -> Self {
        match a.cmp(&b) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn of(z: f64) -> Self {
        if z > 0.0 {
            Sign::Positive
        } else if z < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// `[z]_+`.
pub(crate) fn positive_part(z: f64) -> f64 {
    z.max(0.0)
}
