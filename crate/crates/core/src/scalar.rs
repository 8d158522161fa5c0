//! Exact coefficient fields.
//!
//! Every series, map and matrix in this crate is generic over a [`Scalar`]:
//! an exact ordered field. The blanket implementation covers
//! `Ratio<BigInt>` (the default used throughout, see [`crate::Rational`])
//! as well as the fixed-width `Ratio<i64>` / `Ratio<i128>`, which are faster
//! but panic on overflow.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::ToBigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssignRef, NumRef, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Ord + Signed + NumRef + NumAssignRef + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn is_integer(&self) -> bool;

    /// Largest integer not exceeding `self`.
    fn floor(&self) -> Self;

    /// Representative of `self` modulo 1, in `[0, 1)`.
    fn frac(&self) -> Self {
        self.clone() - self.floor()
    }

    /// `Some` only when `self` is an integer that fits in an `i64`.
    fn to_i64_exact(&self) -> Option<i64>;

    fn to_f64_lossy(&self) -> f64;

    /// Always `"num/den"`, denominator positive.
    fn to_fraction_string(&self) -> String;

    /// Accepts `"num/den"` or a bare integer.
    fn parse_fraction(s: &str) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + ToBigInt + Display + FromStr,
    T: Debug + Send + Sync + 'static,
    Ratio<T>: NumAssignRef,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("i64 fits the integer type"))
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if Ratio::is_integer(self) {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_fraction(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = T::from_str(n.trim()).ok()?;
                let d = T::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Ratio::new(n, d))
            }
            None => T::from_str(s).ok().map(Ratio::from_integer),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Ratio<BigInt>;

    #[test]
    fn lowest_terms_and_sign() {
        let q = Q::parse_fraction("6/-4").unwrap();
        assert_eq!(q.to_fraction_string(), "-3/2");
        assert_eq!(Q::from_int(0).to_fraction_string(), "0/1");
        assert_eq!(Q::parse_fraction("7").unwrap(), Q::from_int(7));
        assert!(Q::parse_fraction("1/0").is_none());
        assert!(Q::parse_fraction("x").is_none());
    }

    #[test]
    fn floor_and_frac() {
        let q = Q::from_fraction(-1, 3);
        assert_eq!(q.floor(), Q::from_int(-1));
        assert_eq!(q.frac(), Q::from_fraction(2, 3));
        assert_eq!(Q::from_fraction(4, 3).frac(), Q::from_fraction(1, 3));
        assert_eq!(Q::from_int(5).to_i64_exact(), Some(5));
        assert_eq!(Q::from_fraction(5, 2).to_i64_exact(), None);
    }

    #[test]
    fn fixed_width_ratio_is_a_scalar() {
        let q = Ratio::<i128>::from_fraction(3, 9);
        assert_eq!(q.to_fraction_string(), "1/3");
        assert!((Ratio::<i64>::from_fraction(1, 4).to_f64_lossy() - 0.25).abs() < 1e-15);
    }
}
