//! The Hesse parameter `z`, the j-invariant it determines, and an
//! independent j built from Eisenstein series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::{kernel_report, structure_matrix, HesseRelation};
use crate::scalar::Scalar;
use crate::series::{LaurentSeries, Y_PER_X};

/// `q = exp(2 pi i tau) = y^144`.
pub const Y_PER_Q: i64 = 144;

/// `j_from_z` is known to `y^(T - J_PRECISION_LOSS)` when the structure
/// constants are known to `y^T`: the division by `u` (valuation 48) costs 96,
/// and the leading `y^-48` of `z` costs another 96 once `j` is rescaled from
/// its relative precision to valuation `-144`.
pub const J_PRECISION_LOSS: i64 = 192;

/// Smallest structure-constant truncation certifying `n_terms` coefficients
/// of `j`, starting from `q^-1`.
pub fn required_truncation(n_terms: usize) -> i64 {
    let deepest = -Y_PER_Q + Y_PER_Q * (n_terms.max(1) as i64 - 1);
    deepest + 1 + J_PRECISION_LOSS
}

#[derive(Clone, Debug)]
pub struct HesseParameter<S> {
    pub z: LaurentSeries<S>,
}

#[derive(Clone, Debug)]
pub struct JExpansion<S> {
    pub j: LaurentSeries<S>,
}

/// `z = (2q + p) / (3u)` after the kernel extraction has been certified at `truncation`.
pub fn hesse_z<S: Scalar>(truncation: i64) -> Result<HesseParameter<S>> {
    let sm = structure_matrix::<S>(truncation)?;
    let report = kernel_report(&sm.matrix, &sm.forms)?;
    let from_relation = hesse_z_from_relation(&report.relation)?;
    let direct = hesse_z_from_entries(&sm.forms.p, &sm.forms.q, &sm.forms.u)?;
    if !from_relation.z.eq_joint(&direct.z) {
        return Err(Error::KernelExtractionFailed(
            "the two expressions for z disagree".into(),
        ));
    }
    Ok(direct)
}

pub fn hesse_z_from_entries<S: Scalar>(
    p: &LaurentSeries<S>,
    q: &LaurentSeries<S>,
    u: &LaurentSeries<S>,
) -> Result<HesseParameter<S>> {
    let numerator = p + &q.scale(&S::from_int(2));
    let denominator = u.scale(&S::from_int(3));
    Ok(HesseParameter {
        z: numerator.div(&denominator)?,
    })
}

/// `z = -(1/3) a_9 (a_0 a_1 a_2)^(-1/3)`, using `a_0 = a_1 = a_2`.
pub fn hesse_z_from_relation<S: Scalar>(rel: &HesseRelation<S>) -> Result<HesseParameter<S>> {
    if !rel.has_hesse_form() {
        return Err(Error::InvalidArgument(
            "relation is not of the form a (X_0^3 + X_1^3 + X_2^3) + a_9 X_0 X_1 X_2".into(),
        ));
    }
    let scaled = rel.mixed_coefficient().scale(&S::from_fraction(-1, 3));
    Ok(HesseParameter {
        z: scaled.div(rel.cube_coefficient())?,
    })
}

/// Exponents in `j = -27 z^3 (z^3 + 8)^m (1 - z^3)^(-d)`; the Hesse pencil has `m = d = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HesseJFormula {
    pub numerator_power: u32,
    pub denominator_power: u32,
}

impl Default for HesseJFormula {
    fn default() -> Self {
        Self {
            numerator_power: 3,
            denominator_power: 3,
        }
    }
}

pub fn j_from_z<S: Scalar>(z: &HesseParameter<S>) -> Result<JExpansion<S>> {
    j_from_z_with(z, HesseJFormula::default())
}

pub fn j_from_z_with<S: Scalar>(z: &HesseParameter<S>, formula: HesseJFormula) -> Result<JExpansion<S>> {
    let w = z.z.pow(3);
    let numerator = w.scale(&S::from_int(-27)) * w.add_scalar(&S::from_int(8)).pow(formula.numerator_power);
    let denominator = (-&w).add_scalar(&S::one()).pow(formula.denominator_power);
    Ok(JExpansion {
        j: numerator.div(&denominator)?,
    })
}

/// Sum of `d^k` over the positive divisors of `n`, by trial division.
pub fn divisor_sum<S: Scalar>(n: i64, k: u32) -> S {
    (1..=n)
        .filter(|d| n % d == 0)
        .fold(S::zero(), |acc, d| acc + num_traits::pow(S::from_int(d), k as usize))
}

/// `1 + factor * sum_{n>=1} sigma_k(n) q^n`, in `q` units.
fn eisenstein<S: Scalar>(factor: i64, k: u32, q_order: i64) -> LaurentSeries<S> {
    let f = S::from_int(factor);
    let terms = std::iter::once((0, S::one()))
        .chain((1..q_order).map(|n| (n, f.clone() * divisor_sum::<S>(n, k))));
    LaurentSeries::from_terms(terms, q_order)
}

pub fn e4<S: Scalar>(q_order: i64) -> LaurentSeries<S> {
    eisenstein(240, 3, q_order)
}

pub fn e6<S: Scalar>(q_order: i64) -> LaurentSeries<S> {
    eisenstein(-504, 5, q_order)
}

/// `Delta = (E4^3 - E6^2) / 1728`, in `q` units.
pub fn discriminant<S: Scalar>(q_order: i64) -> LaurentSeries<S> {
    let e4c = e4::<S>(q_order).pow(3);
    let e6s = e6::<S>(q_order).pow(2);
    (&e4c - &e6s).scale(&S::from_fraction(1, 1728))
}

/// `j = E4^3 / Delta`, returned in `y` units and known below `y^truncation`.
pub fn j_reference<S: Scalar>(truncation: i64) -> Result<JExpansion<S>> {
    let q_order = truncation.max(0).div_euclid(Y_PER_Q) + 3;
    let e4c = e4::<S>(q_order).pow(3);
    let j_q = e4c.div(&discriminant::<S>(q_order))?;
    Ok(JExpansion {
        j: j_q.stretch(Y_PER_Q).truncated(truncation),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub exponent_x: i64,
    pub from_relation: String,
    pub reference: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MirrorReport {
    pub coefficients: Vec<CoefficientRow>,
    /// `j` from the relation vanishes off exponents divisible by 144 (y-units).
    pub support_ok: bool,
    /// All compared coefficients are integers.
    pub integral: bool,
    pub verdict: bool,
}

impl MirrorReport {
    /// Rows that disagree, by x-exponent.
    pub fn mismatches(&self) -> Vec<i64> {
        self.coefficients
            .iter()
            .filter(|r| !r.matches)
            .map(|r| r.exponent_x)
            .collect()
    }
}

/// Compares the first `n_terms` coefficients of `j` (from `q^-1` on) with the reference.
pub fn compare_expansions<S: Scalar>(
    from_relation: &JExpansion<S>,
    reference: &JExpansion<S>,
    n_terms: usize,
) -> Result<MirrorReport> {
    let known = from_relation.j.truncation().min(reference.j.truncation());
    let mut rows = Vec::with_capacity(n_terms);
    let mut integral = true;
    for i in 0..n_terms as i64 {
        let e = -Y_PER_Q + Y_PER_Q * i;
        if e >= known {
            let deepest = if i == 0 {
                "none".to_string()
            } else {
                format!("x^{}", (e - Y_PER_Q) / Y_PER_X)
            };
            return Err(Error::PrecisionExhausted(format!(
                "{i} of {n_terms} coefficients certified (deepest certified term {deepest}); \
                 need structure constants to y^{}",
                required_truncation(n_terms)
            )));
        }
        let a = from_relation.j.coeff(e)?;
        let b = reference.j.coeff(e)?;
        integral &= a.is_integer() && b.is_integer();
        rows.push(CoefficientRow {
            exponent_x: e / Y_PER_X,
            from_relation: a.to_fraction_string(),
            reference: b.to_fraction_string(),
            matches: a == b,
        });
    }
    let support_ok = from_relation
        .j
        .terms()
        .all(|(e, _)| e.rem_euclid(Y_PER_Q) == 0);
    let verdict = support_ok && integral && rows.iter().all(|r| r.matches);
    Ok(MirrorReport {
        coefficients: rows,
        support_ok,
        integral,
        verdict,
    })
}

/// j from the Hesse relation at `truncation`, checked against the Eisenstein j.
pub fn mirror_map_check<S: Scalar>(truncation: i64, n_terms: usize) -> Result<MirrorReport> {
    if truncation < required_truncation(n_terms) {
        return Err(Error::InsufficientPrecision {
            required: required_truncation(n_terms),
            available: truncation,
        });
    }
    let z = hesse_z::<S>(truncation)?;
    let j = j_from_z(&z)?;
    let reference = j_reference::<S>(j.j.truncation())?;
    compare_expansions(&j, &reference, n_terms)
}
