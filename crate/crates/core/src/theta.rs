//! Theta functions with characteristics, `theta[a,0](N tau, 0)`, as series in `y`.
//!
//! Summand `n` contributes `y^(72 N (n + a)^2)`. The four families used by the
//! products are
//!
//! | family | characteristic | scale | exponent of summand |
//! |--------|----------------|-------|---------------------|
//! | `A_k`  | `k/6`          | 6     | `12 (6n + k)^2`     |
//! | `B_k`  | `k/18`         | 18    | `4 (18n + k)^2`     |
//! | `C_c`  | `c/24`         | 24    | `3 (24n + c)^2`     |
//! | `D_d`  | `d/72`         | 72    | `(72n + d)^2`       |

use std::fmt;

use num_integer::{Integer, Roots};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

/// `y`-units per unit of `tau` in the exponent `i*pi*tau*e`.
const Y_PER_PI_TAU: i64 = 72;

/// The characteristic `a = num/den` at modular scale `N`, naming `theta[a,0](N tau, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    num: i64,
    den: i64,
    scale: i64,
}

impl ThetaChar {
    /// Normalizes `num` into `[0, den/2]` using `a -> a + 1` and `a -> -a`,
    /// neither of which changes the series, and checks that every summand
    /// has an integer `y`-exponent.
    pub fn new(num: i64, den: i64, scale: i64) -> Result<Self> {
        if den <= 0 || scale <= 0 {
            return Err(Error::InvalidArgument(format!(
                "characteristic denominator and scale must be positive, got {den} and {scale}"
            )));
        }
        let g = num.gcd(&den);
        let (num, den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        let r = num.rem_euclid(den);
        let num = r.min(den - r);
        let ch = Self { num, den, scale };
        // (n*den + num)^2 mod den^2 has period den in n.
        let d2 = (den as i128) * (den as i128);
        let weight = (Y_PER_PI_TAU * scale) as i128;
        for n in 0..den as i128 {
            let m = n * den as i128 + num as i128;
            if (weight * m * m) % d2 != 0 {
                return Err(Error::UnsupportedCharacteristic { num, den, scale });
            }
        }
        Ok(ch)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// `y`-exponent of the summand with shifted index `m = n*den + num`.
    fn exponent_of_shifted(&self, m: i64) -> i64 {
        let m = m as i128;
        let d2 = (self.den as i128) * (self.den as i128);
        ((Y_PER_PI_TAU * self.scale) as i128 * m * m / d2) as i64
    }

    /// `y`-exponent of summand `n`.
    pub fn exponent(&self, n: i64) -> i64 {
        self.exponent_of_shifted(n * self.den + self.num)
    }
}

impl fmt::Display for ThetaChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta[{}/{},0]({}tau,0)", self.num, self.den, self.scale)
    }
}

/// `theta[a,0](N tau, 0)` known below `y^truncation`.
pub fn theta_series<S: Scalar>(ch: &ThetaChar, truncation: i64) -> LaurentSeries<S> {
    if truncation <= 0 {
        return LaurentSeries::zero(truncation.max(0));
    }
    // Summand with shifted index m has exponent 72 N m^2 / den^2 < T,
    // i.e. |m| <= bound where 72 N bound^2 < T den^2.
    let weight = (Y_PER_PI_TAU * ch.scale) as i128;
    let limit = truncation as i128 * (ch.den as i128) * (ch.den as i128);
    let mut bound = (limit / weight).sqrt();
    while weight * bound * bound >= limit && bound > 0 {
        bound -= 1;
    }
    if weight * bound * bound >= limit {
        // Only happens when even m = 0 is excluded, impossible for T > 0.
        return LaurentSeries::zero(truncation);
    }
    let bound = bound as i64;
    let den = ch.den;
    // first m >= -bound with m = num (mod den)
    let first = -bound + (ch.num - (-bound)).rem_euclid(den);
    let terms = (first..=bound)
        .step_by(den as usize)
        .map(|m| (ch.exponent_of_shifted(m), S::one()));
    LaurentSeries::from_terms(terms, truncation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Index period, which is also the modular scale and the characteristic denominator.
    pub fn period(self) -> i64 {
        match self {
            Family::A => 6,
            Family::B => 18,
            Family::C => 24,
            Family::D => 72,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidArgument(format!("unknown theta family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A member of one of the four families, index reduced mod the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyIndex {
    family: Family,
    index: i64,
}

impl FamilyIndex {
    pub fn new(family: Family, index: i64) -> Self {
        Self {
            family,
            index: index.rem_euclid(family.period()),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn characteristic(&self) -> ThetaChar {
        let p = self.family.period();
        ThetaChar::new(self.index, p, p).expect("all four families have integer y-exponents")
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.index)
    }
}

pub fn family<S: Scalar>(f: FamilyIndex, truncation: i64) -> LaurentSeries<S> {
    theta_series(&f.characteristic(), truncation)
}

pub fn a_series<S: Scalar>(k: i64, truncation: i64) -> LaurentSeries<S> {
    family(FamilyIndex::new(Family::A, k), truncation)
}

pub fn b_series<S: Scalar>(k: i64, truncation: i64) -> LaurentSeries<S> {
    family(FamilyIndex::new(Family::B, k), truncation)
}

pub fn c_series<S: Scalar>(k: i64, truncation: i64) -> LaurentSeries<S> {
    family(FamilyIndex::new(Family::C, k), truncation)
}

pub fn d_series<S: Scalar>(k: i64, truncation: i64) -> LaurentSeries<S> {
    family(FamilyIndex::new(Family::D, k), truncation)
}

/// Both sides of the addition formula
///
/// `theta[a/n](n tau) theta[b/(nk)](nk tau)
///    = sum_{e=0..k} theta[(b - ka + kne)/(k(k+1)n)](k(k+1)n tau) theta[(a + b + kne)/((k+1)n)]((k+1)n tau)`,
///
/// the right side kept as its `k + 1` separate products.
#[derive(Clone, Debug)]
pub struct MumfordSides<S> {
    pub lhs: LaurentSeries<S>,
    pub rhs_terms: Vec<LaurentSeries<S>>,
}

impl<S: Scalar> MumfordSides<S> {
    pub fn rhs(&self) -> LaurentSeries<S> {
        let t = self.lhs.truncation();
        self.rhs_terms
            .iter()
            .fold(LaurentSeries::zero(t), |acc, term| &acc + term)
    }

    /// Compares the two sides below the joint truncation.
    pub fn holds(&self) -> bool {
        self.lhs.eq_joint(&self.rhs())
    }
}

pub fn mumford_sides<S: Scalar>(
    a: i64,
    b: i64,
    n: i64,
    k: i64,
    truncation: i64,
) -> Result<MumfordSides<S>> {
    if n <= 0 || k <= 0 {
        return Err(Error::InvalidArgument(format!(
            "addition formula needs positive n and k, got n={n}, k={k}"
        )));
    }
    let lhs_a = ThetaChar::new(a, n, n)?;
    let lhs_b = ThetaChar::new(b, n * k, n * k)?;
    let lhs = theta_series::<S>(&lhs_a, truncation) * theta_series::<S>(&lhs_b, truncation);
    let big = k * (k + 1) * n;
    let mid = (k + 1) * n;
    let rhs_terms = (0..=k)
        .map(|eps| {
            let first = ThetaChar::new(b - k * a + k * n * eps, big, big)?;
            let second = ThetaChar::new(a + b + k * n * eps, mid, mid)?;
            Ok(theta_series::<S>(&first, truncation) * theta_series::<S>(&second, truncation))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MumfordSides { lhs, rhs_terms })
}

pub fn mumford_identity_check<S: Scalar>(
    a: i64,
    b: i64,
    n: i64,
    k: i64,
    truncation: i64,
) -> Result<bool> {
    Ok(mumford_sides::<S>(a, b, n, k, truncation)?.holds())
}

/// `A_a B_b` against `sum_{e=0..3} C_{a+b+18e} D_{b-3a+18e}`.
#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    pub lhs: LaurentSeries<S>,
    pub rhs: LaurentSeries<S>,
    pub equal: bool,
}

pub fn ab_decomposition<S: Scalar>(a: i64, b: i64, truncation: i64) -> Decomposition<S> {
    let lhs = a_series::<S>(a, truncation) * b_series::<S>(b, truncation);
    let rhs = (0..4).fold(LaurentSeries::zero(truncation), |acc, eps| {
        &acc + &(c_series::<S>(a + b + 18 * eps, truncation)
            * d_series::<S>(b - 3 * a + 18 * eps, truncation))
    });
    let equal = lhs
        .eq_to_order(&rhs, truncation)
        .expect("both sides are known below the requested truncation");
    Decomposition { lhs, rhs, equal }
}
