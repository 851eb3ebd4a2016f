//! Exact rational scalars and coordinate vectors.
//!
//! All scalar quantities in the library are arbitrary-precision rationals;
//! nothing in this crate ever rounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("invalid integer `{t}`"),
        })
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// A fixed-dimension rational coordinate vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Point::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn dot(&self, other: &Point) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scaled(&self, lambda: &Rational) -> Point {
        Point::new(self.coords.iter().map(|c| c * lambda).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Point) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a >= b)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-7", "10/9", "-3/2", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("2/-4").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn point_ops() {
        let p = Point::from_integers(&[2, 0]);
        let q = Point::from_integers(&[0, 3]);
        assert_eq!(p.dot(&q), rat(0));
        assert_eq!(p.add(&q), Point::from_integers(&[2, 3]));
        assert_eq!(p.scaled(&ratio(1, 2)), Point::new(vec![rat(1), rat(0)]));
        assert!(Point::from_integers(&[2, 3]).dominates(&p));
        assert!(!p.dominates(&q));
    }
}
