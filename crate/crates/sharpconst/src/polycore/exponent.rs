//! Lebesgue exponents in [1; ∞] and their conjugates.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// An exponent `p ∈ [1; ∞]`, kept as an exact token so that `p = 1` and
/// `p = ∞` never round-trip through floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    One,
    /// Strictly between 1 and ∞.
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::OutOfDomain {
                name: "p",
                value: p,
                domain: "[1; inf]",
            });
        }
        Ok(if p == 1.0 {
            Exponent::One
        } else if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        })
    }

    pub fn value(&self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Finite(p) => *p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Hölder conjugate: `1/p + 1/p' = 1`.
    pub fn conjugate(&self) -> Exponent {
        match self {
            Exponent::One => Exponent::Infinity,
            Exponent::Infinity => Exponent::One,
            Exponent::Finite(p) => {
                let q = p / (p - 1.0);
                if q == 1.0 {
                    Exponent::One
                } else {
                    Exponent::Finite(q)
                }
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Exponent::Infinity)
    }

    /// The exponent as a small integer when it is one.
    pub fn as_integer(&self) -> Option<u32> {
        match self {
            Exponent::One => Some(1),
            Exponent::Finite(p) if p.fract() == 0.0 && *p <= u32::MAX as f64 => Some(*p as u32),
            _ => None,
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other.parse().map_err(|_| {
                    Error::InvalidProblem(format!("cannot parse exponent token {other:?}"))
                })?;
                Exponent::new(p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::One => write!(f, "1"),
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_conjugates() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("1".parse::<Exponent>().unwrap(), Exponent::One);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("bogus".parse::<Exponent>().is_err());

        assert_eq!(Exponent::One.conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::One);
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        let q = Exponent::Finite(1.5).conjugate();
        assert!((q.value() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Exponent::Finite(4.0).as_integer(), Some(4));
        assert_eq!(Exponent::Finite(2.5).as_integer(), None);
        assert_eq!(Exponent::One.as_integer(), Some(1));
        assert_eq!(Exponent::Infinity.as_integer(), None);
    }
}
