use std::fmt;
use std::str::FromStr;

use num_rational::Ratio as NumRatio;

use crate::{Error, Result};

/// Signed exact rational, used for eigenvector entries.
pub type Rational = num_rational::Rational64;

/// Nonnegative exact fraction `num/den`, always stored reduced.
///
/// Cheeger values and 1-Laplacian eigenvalues are ratios of small integers,
/// so every comparison between them is done exactly.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(NumRatio<u64>);

impl Ratio {
    pub const ZERO: Ratio = Ratio(NumRatio::new_raw(0, 1));
    pub const ONE: Ratio = Ratio(NumRatio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio(NumRatio::new(num, den))
    }

    pub fn num(&self) -> u64 {
        *self.0.numer()
    }

    pub fn den(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num() as i64, self.den() as i64)
    }

    /// Absolute difference, exact.
    pub fn abs_diff(self, other: Ratio) -> Ratio {
        if self >= other {
            Ratio(self.0 - other.0)
        } else {
            Ratio(other.0 - self.0)
        }
    }

    pub fn checked_sub(self, other: Ratio) -> Option<Ratio> {
        (self >= other).then(|| Ratio(self.0 - other.0))
    }
}

impl std::ops::Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        Ratio(self.0 + rhs.0)
    }
}

impl std::ops::Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        Ratio(self.0 * rhs.0)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a finite decimal such as `0.125`.
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        if r < Rational::from_integer(0) {
            return Err(Error::InvalidParameter(format!("negative ratio {s:?}")));
        }
        Ok(Ratio::new(*r.numer() as u64, *r.denom() as u64))
    }
}

/// Parses `p/q`, an integer, or a plain decimal literal into an exact rational.
pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 17 {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_ordered() {
        let a = Ratio::new(2, 6);
        assert_eq!((a.num(), a.den()), (1, 3));
        assert!(Ratio::new(1, 9) < Ratio::new(1, 8));
        assert_eq!(a.to_string(), "1/3");
        assert_eq!(Ratio::ZERO.to_string(), "0/1");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("5/9".parse::<Ratio>().unwrap(), Ratio::new(5, 9));
        assert_eq!("0.125".parse::<Ratio>().unwrap(), Ratio::new(1, 8));
        assert_eq!("0".parse::<Ratio>().unwrap(), Ratio::ZERO);
        assert!("1e-3".parse::<Ratio>().is_err());
        assert!("-1/2".parse::<Ratio>().is_err());
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::new(-1, 2));
    }

    #[test]
    fn abs_diff_is_symmetric() {
        let a = Ratio::new(1, 9);
        let b = Ratio::new(1, 8);
        assert_eq!(a.abs_diff(b), Ratio::new(1, 72));
        assert_eq!(b.abs_diff(a), Ratio::new(1, 72));
    }
}
