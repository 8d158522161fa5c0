//! Truncated Laurent series with exact coefficients.
//!
//! A [`LaurentSeries`] stores the coefficients of `y^e` for every exponent
//! `valuation <= e < truncation`; everything at or beyond `truncation` is
//! unknown. The exponent unit is `y = exp(i*pi*tau/72)`, fine enough that all
//! four theta families have integer exponents. The coarser display variable
//! `x = exp(i*pi*tau/18) = y^4` is reached through [`LaurentSeries::rebase_to_x`].
//!
//! Precision rules (all operations keep the canonical form):
//!
//! * `a + b` is known below `min(ta, tb)`;
//! * `a * b` is known below `min(ta + vb, tb + va)`;
//! * `1 / a` is known below `ta - 2 va`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of `y`-exponent units in one `x`-exponent unit.
pub const Y_PER_X: i64 = 4;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries<S> {
    valuation: i64,
    coeffs: Vec<S>,
    truncation: i64,
}

impl<S: Scalar> LaurentSeries<S> {
    /// The series known to vanish below `truncation`.
    pub fn zero(truncation: i64) -> Self {
        Self {
            valuation: truncation,
            coeffs: Vec::new(),
            truncation,
        }
    }

    pub fn constant(c: S, truncation: i64) -> Self {
        Self::monomial(c, 0, truncation)
    }

    pub fn one(truncation: i64) -> Self {
        Self::constant(S::one(), truncation)
    }

    /// `c * y^exponent`, known below `truncation`.
    pub fn monomial(c: S, exponent: i64, truncation: i64) -> Self {
        Self::from_terms([(exponent, c)], truncation)
    }

    /// Sums the given terms; terms at or beyond `truncation` are dropped.
    pub fn from_terms<I>(terms: I, truncation: i64) -> Self
    where
        I: IntoIterator<Item = (i64, S)>,
    {
        let terms: Vec<(i64, S)> = terms
            .into_iter()
            .filter(|(e, c)| *e < truncation && !c.is_zero())
            .collect();
        let Some(valuation) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(truncation);
        };
        let mut coeffs = vec![S::zero(); (truncation - valuation) as usize];
        for (e, c) in terms {
            coeffs[(e - valuation) as usize] += c;
        }
        Self::normalized(valuation, coeffs, truncation)
    }

    /// Builds a series from a dense window; fails unless
    /// `coeffs.len() == truncation - valuation`.
    pub fn new(valuation: i64, coeffs: Vec<S>, truncation: i64) -> Result<Self> {
        if truncation < valuation || (truncation - valuation) as usize != coeffs.len() {
            return Err(Error::MalformedSeries(format!(
                "{} coefficients do not fill the window [{valuation}, {truncation})",
                coeffs.len()
            )));
        }
        Ok(Self::normalized(valuation, coeffs, truncation))
    }

    fn normalized(mut valuation: i64, mut coeffs: Vec<S>, truncation: i64) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => return Self::zero(truncation),
            Some(0) => {}
            Some(k) => {
                coeffs.drain(..k);
                valuation += k as i64;
            }
        }
        Self {
            valuation,
            coeffs,
            truncation,
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// Number of exponents whose coefficient is known relative to the valuation.
    pub fn relative_precision(&self) -> i64 {
        self.truncation - self.valuation
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&S> {
        self.coeffs.first()
    }

    /// Dense coefficient window starting at the valuation.
    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Coefficient of `y^exponent`; exponents below the valuation are zero,
    /// exponents at or beyond the truncation are unknown.
    pub fn coeff(&self, exponent: i64) -> Result<S> {
        if exponent >= self.truncation {
            return Err(Error::ExponentOutsidePrecision {
                exponent,
                valuation: self.valuation,
                truncation: self.truncation,
            });
        }
        if exponent < self.valuation {
            return Ok(S::zero());
        }
        Ok(self.coeffs[(exponent - self.valuation) as usize].clone())
    }

    /// Forget everything at or beyond `truncation` (no-op if already coarser).
    pub fn truncated(&self, truncation: i64) -> Self {
        if truncation >= self.truncation {
            return self.clone();
        }
        if truncation <= self.valuation {
            return Self::zero(truncation);
        }
        let keep = (truncation - self.valuation) as usize;
        Self::normalized(self.valuation, self.coeffs[..keep].to_vec(), truncation)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
            truncation: self.truncation,
        }
    }

    /// Adds an exactly known constant.
    pub fn add_scalar(&self, c: &S) -> Self {
        self + &Self::constant(c.clone(), self.truncation)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let valuation = self.valuation.min(other.valuation).min(truncation);
        let mut coeffs = vec![S::zero(); (truncation - valuation) as usize];
        for (e, c) in self.terms().take_while(|(e, _)| *e < truncation) {
            coeffs[(e - valuation) as usize] += c;
        }
        for (e, c) in other.terms().take_while(|(e, _)| *e < truncation) {
            if negate_other {
                coeffs[(e - valuation) as usize] -= c;
            } else {
                coeffs[(e - valuation) as usize] += c;
            }
        }
        Self::normalized(valuation, coeffs, truncation)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let truncation =
            (self.truncation + other.valuation).min(other.truncation + self.valuation);
        let valuation = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() {
            return Self::zero(truncation);
        }
        let len = (truncation - valuation) as usize;
        let lhs: Vec<(usize, &S)> = nonzero(&self.coeffs, len);
        let rhs: Vec<(usize, &S)> = nonzero(&other.coeffs, len);
        let mut coeffs = vec![S::zero(); len];
        for &(i, a) in &lhs {
            for &(j, b) in &rhs {
                let k = i + j;
                if k >= len {
                    break;
                }
                let mut t = a.clone();
                t *= b;
                coeffs[k] += t;
            }
        }
        Self::normalized(valuation, coeffs, truncation)
    }

    /// Multiplicative inverse; the leading coefficient must be known nonzero.
    pub fn inv(&self) -> Result<Self> {
        let lead = self
            .leading_coefficient()
            .ok_or(Error::ZeroLeadingCoefficient)?;
        let len = self.coeffs.len();
        let lead_inv = S::one() / lead.clone();
        let tail: Vec<(usize, &S)> = nonzero(&self.coeffs, len).into_iter().skip(1).collect();
        let mut out: Vec<S> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = S::zero();
            for &(i, c) in &tail {
                if i > n {
                    break;
                }
                let mut t = c.clone();
                t *= &out[n - i];
                acc += t;
            }
            if acc.is_zero() {
                out.push(S::zero());
            } else {
                let mut t = -acc;
                t *= &lead_inv;
                out.push(t);
            }
        }
        Ok(Self::normalized(
            -self.valuation,
            out,
            self.truncation - 2 * self.valuation,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.relative_precision().max(0));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => Self::mul(&r, &base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = Self::mul(&base, &base);
        }
        result.expect("n > 0")
    }

    /// Exact comparison of every exponent below `order`.
    pub fn eq_to_order(&self, other: &Self, order: i64) -> Result<bool> {
        let available = self.truncation.min(other.truncation);
        if available < order {
            return Err(Error::InsufficientPrecision {
                required: order,
                available,
            });
        }
        let start = self.valuation.min(other.valuation);
        for e in start..order {
            if self.coeff(e)? != other.coeff(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Comparison on the joint known window.
    pub fn eq_joint(&self, other: &Self) -> bool {
        let order = self.truncation.min(other.truncation);
        self.eq_to_order(other, order)
            .expect("joint window is known on both sides")
    }

    /// Substitutes `y -> y^factor`.
    pub fn stretch(&self, factor: i64) -> Self {
        assert!(factor > 0, "stretch factor must be positive");
        let terms = self.terms().map(|(e, c)| (e * factor, c.clone()));
        Self::from_terms(terms, self.truncation * factor)
    }

    /// Re-expresses the series in `x = y^4`.
    pub fn rebase_to_x(&self) -> Result<XSeries<S>> {
        if let Some((e, _)) = self.terms().find(|(e, _)| e.rem_euclid(Y_PER_X) != 0) {
            return Err(Error::NotExpressibleInX { exponent: e });
        }
        let terms = self.terms().map(|(e, c)| (e / Y_PER_X, c.clone()));
        Ok(XSeries(Self::from_terms(
            terms,
            self.truncation.div_euclid(Y_PER_X),
        )))
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord::from_series(ExponentBase::Y, self)
    }
}

fn nonzero<S: Scalar>(coeffs: &[S], limit: usize) -> Vec<(usize, &S)> {
    coeffs
        .iter()
        .take(limit)
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// A series whose exponents count powers of `x = y^4`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSeries<S>(pub LaurentSeries<S>);

impl<S: Scalar> XSeries<S> {
    pub fn series(&self) -> &LaurentSeries<S> {
        &self.0
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord::from_series(ExponentBase::X, &self.0)
    }
}

impl<S: Scalar> fmt::Display for XSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, &self.0, "x")
    }
}

impl<S: Scalar> fmt::Display for LaurentSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, self, "y")
    }
}

impl<S: fmt::Debug> fmt::Debug for LaurentSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaurentSeries")
            .field("valuation", &self.valuation)
            .field("coeffs", &self.coeffs)
            .field("truncation", &self.truncation)
            .finish()
    }
}

fn write_series<S: Scalar>(f: &mut fmt::Formatter<'_>, s: &LaurentSeries<S>, var: &str) -> fmt::Result {
    let mut first = true;
    for (e, c) in s.terms() {
        let negative = c.is_negative();
        let mag = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let mag_str = if mag.is_integer() {
            mag.to_fraction_string()
                .split('/')
                .next()
                .unwrap_or_default()
                .to_string()
        } else {
            format!("({})", mag.to_fraction_string())
        };
        match (e, mag.is_one()) {
            (0, _) => f.write_str(&mag_str)?,
            (1, true) => f.write_str(var)?,
            (1, false) => write!(f, "{mag_str}*{var}")?,
            (_, true) => write!(f, "{var}^{e}")?,
            (_, false) => write!(f, "{mag_str}*{var}^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    write!(f, " + O({var}^{})", s.truncation)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<S: Scalar> $tr<&LaurentSeries<S>> for &LaurentSeries<S> {
            type Output = LaurentSeries<S>;
            fn $method(self, rhs: &LaurentSeries<S>) -> LaurentSeries<S> {
                LaurentSeries::$inner(self, rhs)
            }
        }
        impl<S: Scalar> $tr for LaurentSeries<S> {
            type Output = LaurentSeries<S>;
            fn $method(self, rhs: LaurentSeries<S>) -> LaurentSeries<S> {
                LaurentSeries::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl<S: Scalar> Neg for &LaurentSeries<S> {
    type Output = LaurentSeries<S>;
    fn neg(self) -> LaurentSeries<S> {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            truncation: self.truncation,
        }
    }
}

impl<S: Scalar> Neg for LaurentSeries<S> {
    type Output = LaurentSeries<S>;
    fn neg(self) -> LaurentSeries<S> {
        -&self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentBase {
    Y,
    X,
}

/// Wire form of a series: exponents in the named base, coefficients as
/// `"num/den"` strings covering the whole window `[valuation, truncation)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub base: ExponentBase,
    pub valuation: i64,
    pub truncation: i64,
    pub coefficients: Vec<String>,
}

impl SeriesRecord {
    pub fn from_series<S: Scalar>(base: ExponentBase, s: &LaurentSeries<S>) -> Self {
        Self {
            base,
            valuation: s.valuation,
            truncation: s.truncation,
            coefficients: s.coeffs.iter().map(Scalar::to_fraction_string).collect(),
        }
    }

    /// Parses the record back into a series, converting `x`-records to `y` units.
    pub fn to_series<S: Scalar>(&self) -> Result<LaurentSeries<S>> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| {
                S::parse_fraction(c)
                    .ok_or_else(|| Error::MalformedSeries(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<S>>>()?;
        let s = LaurentSeries::new(self.valuation, coeffs, self.truncation)?;
        Ok(match self.base {
            ExponentBase::Y => s,
            ExponentBase::X => s.stretch(Y_PER_X),
        })
    }
}
