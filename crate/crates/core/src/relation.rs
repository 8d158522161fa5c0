//! The 9x10 cubic structure matrix and its one-dimensional kernel.
//!
//! Column `I` of `M` holds the Z-coefficients of `CUBIC_BASIS[I]`; rows are
//! `Z_0..Z_8`. The kernel is spanned by the signed maximal minors
//! `a_I = (-1)^I det(M without column I)`, which after dividing out common
//! factors is the Hesse relation `u (X_0^3 + X_1^3 + X_2^3) - (p + 2q) X_0 X_1 X_2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fukaya::{StructureConstants, CUBIC_BASIS};
use crate::linalg::SeriesMatrix;
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

/// Symbolic entries of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    P,
    Q,
    R,
    S,
    T,
    U,
    V,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entry::Zero => "0",
            Entry::P => "p",
            Entry::Q => "q",
            Entry::R => "r",
            Entry::S => "s",
            Entry::T => "t",
            Entry::U => "u",
            Entry::V => "v",
        })
    }
}

use Entry::{Zero as O, P, Q, R, S as Es, T as Et, U, V};

/// The closed-form layout of `M`, rows `Z_0..Z_8`.
pub const STRUCTURE_TABLE: [[Entry; 10]; 9] = [
    [P, Q, Q, O, O, O, O, O, O, U],
    [O, O, O, R, Et, Es, O, O, O, O],
    [O, O, O, O, O, O, Et, R, Es, O],
    [Q, P, Q, O, O, O, O, O, O, V],
    [O, O, O, Es, R, Et, O, O, O, O],
    [O, O, O, O, O, O, Es, Et, R, O],
    [Q, Q, P, O, O, O, O, O, O, V],
    [O, O, O, Et, Es, R, O, O, O, O],
    [O, O, O, O, O, O, R, Es, Et, O],
];

/// Closed forms of the nonzero entries of `M`, each `A_a B_b + A_c B_d`.
#[derive(Clone, Debug)]
pub struct ClosedForms<S> {
    pub p: LaurentSeries<S>,
    pub q: LaurentSeries<S>,
    pub r: LaurentSeries<S>,
    pub s: LaurentSeries<S>,
    pub t: LaurentSeries<S>,
    pub u: LaurentSeries<S>,
    pub v: LaurentSeries<S>,
}

impl<S: Scalar> ClosedForms<S> {
    pub fn from_constants(c: &StructureConstants<S>) -> Self {
        let ab = |a: i64, b: i64, a2: i64, b2: i64| c.a(a) * c.b(b) + c.a(a2) * c.b(b2);
        Self {
            p: ab(0, 0, 3, 9),
            q: ab(0, 6, 3, 3),
            r: ab(0, 2, 3, 7),
            s: ab(0, 8, 3, 1),
            t: ab(0, 4, 3, 5),
            u: ab(2, 0, 1, 9),
            v: ab(2, 6, 1, 3),
        }
    }

    pub fn get(&self, e: Entry) -> Option<&LaurentSeries<S>> {
        match e {
            Entry::Zero => None,
            Entry::P => Some(&self.p),
            Entry::Q => Some(&self.q),
            Entry::R => Some(&self.r),
            Entry::S => Some(&self.s),
            Entry::T => Some(&self.t),
            Entry::U => Some(&self.u),
            Entry::V => Some(&self.v),
        }
    }

    /// `M` assembled directly from the table.
    pub fn matrix(&self, truncation: i64) -> SeriesMatrix<S> {
        SeriesMatrix::from_fn(9, 10, |r, c| {
            self.get(STRUCTURE_TABLE[r][c])
                .cloned()
                .unwrap_or_else(|| LaurentSeries::zero(truncation))
        })
    }
}

/// `M` from the products, together with the closed forms it was checked against.
#[derive(Clone, Debug)]
pub struct StructureMatrix<S> {
    pub matrix: SeriesMatrix<S>,
    pub forms: ClosedForms<S>,
    pub truncation: i64,
}

pub fn structure_matrix<S: Scalar>(truncation: i64) -> Result<StructureMatrix<S>> {
    structure_matrix_from(&StructureConstants::new(truncation))
}

/// Agreement of one entry of the expanded matrix with [`STRUCTURE_TABLE`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub row: usize,
    pub col: usize,
    pub consistent: bool,
}

/// `M` from left-associated cubic expansions, without any checks.
pub fn expanded_matrix<S: Scalar>(consts: &StructureConstants<S>) -> SeriesMatrix<S> {
    let mut matrix = SeriesMatrix::zeros(9, 10, consts.truncation());
    for (col, monomial) in CUBIC_BASIS.iter().enumerate() {
        for (row, entry) in consts.cubic_expand(*monomial).into_iter().enumerate() {
            matrix.set(row, col, entry);
        }
    }
    matrix
}

fn check_entries<S: Scalar>(matrix: &SeriesMatrix<S>, forms: &ClosedForms<S>) -> Vec<EntryCheck> {
    (0..9)
        .flat_map(|row| (0..10).map(move |col| (row, col)))
        .map(|(row, col)| {
            let entry = matrix.get(row, col);
            let consistent = match forms.get(STRUCTURE_TABLE[row][col]) {
                Some(expected) => entry.eq_joint(expected),
                None => entry.is_zero(),
            };
            EntryCheck { row, col, consistent }
        })
        .collect()
}

/// Every entry of the expanded matrix against the closed-form table; zero
/// entries must vanish to known precision.
pub fn structure_table_checks<S: Scalar>(consts: &StructureConstants<S>) -> Vec<EntryCheck> {
    check_entries(&expanded_matrix(consts), &ClosedForms::from_constants(consts))
}

pub fn structure_matrix_from<S: Scalar>(consts: &StructureConstants<S>) -> Result<StructureMatrix<S>> {
    let forms = ClosedForms::from_constants(consts);
    let matrix = expanded_matrix(consts);
    if let Some(bad) = check_entries(&matrix, &forms).into_iter().find(|e| !e.consistent) {
        return Err(Error::StructureMatrixInconsistent {
            row: bad.row,
            col: bad.col,
        });
    }
    Ok(StructureMatrix {
        matrix,
        forms,
        truncation: consts.truncation(),
    })
}

/// `(-1)^I det(M without column I)`.
pub fn signed_minor<S: Scalar>(m: &SeriesMatrix<S>, column: usize) -> Result<LaurentSeries<S>> {
    let det = m.without_column(column).determinant()?;
    Ok(if column % 2 == 1 { -det } else { det })
}

pub fn signed_minors<S: Scalar>(m: &SeriesMatrix<S>) -> Result<Vec<LaurentSeries<S>>> {
    (0..m.cols()).map(|i| signed_minor(m, i)).collect()
}

/// `a_0 (X_0^3) + ... + a_9 (X_0 X_1 X_2) = 0`, coefficients in basis order.
#[derive(Clone, Debug)]
pub struct HesseRelation<S> {
    pub coefficients: Vec<LaurentSeries<S>>,
}

impl<S: Scalar> HesseRelation<S> {
    pub fn cube_coefficient(&self) -> &LaurentSeries<S> {
        &self.coefficients[0]
    }

    pub fn mixed_coefficient(&self) -> &LaurentSeries<S> {
        &self.coefficients[9]
    }

    /// Entries 3..8 vanish and `a_0 = a_1 = a_2`.
    pub fn has_hesse_form(&self) -> bool {
        self.coefficients.len() == 10
            && self.coefficients[3..9].iter().all(LaurentSeries::is_zero)
            && self.coefficients[0].eq_joint(&self.coefficients[1])
            && self.coefficients[0].eq_joint(&self.coefficients[2])
    }
}

/// Intermediate results of the kernel extraction, each certified on its
/// joint known window.
#[derive(Clone, Debug)]
pub struct KernelReport<S> {
    pub minors: Vec<LaurentSeries<S>>,
    /// `((p+q)u - 2qv, pv - qu, pv - qu, 0, ..., 0, 2q^2 - pq - p^2)`
    pub unnormalized: Vec<LaurentSeries<S>>,
    pub relation: HesseRelation<S>,
    pub u_equals_v: bool,
    pub minors_vanish_off_support: bool,
    pub minors_proportional: bool,
    pub factorization_holds: bool,
    pub residual_vanishes: bool,
}

impl<S: Scalar> KernelReport<S> {
    pub fn all_pass(&self) -> bool {
        self.u_equals_v
            && self.minors_vanish_off_support
            && self.minors_proportional
            && self.factorization_holds
            && self.residual_vanishes
    }
}

pub fn kernel_relation<S: Scalar>(truncation: i64) -> Result<HesseRelation<S>> {
    let sm = structure_matrix::<S>(truncation)?;
    Ok(kernel_report(&sm.matrix, &sm.forms)?.relation)
}

/// Runs every kernel check; errors unless all of them pass.
pub fn kernel_report<S: Scalar>(m: &SeriesMatrix<S>, forms: &ClosedForms<S>) -> Result<KernelReport<S>> {
    let report = kernel_report_unchecked(m, forms)?;
    let failures: Vec<&str> = [
        (report.u_equals_v, "u != v"),
        (report.minors_vanish_off_support, "minors 3..8 do not vanish"),
        (report.minors_proportional, "minors not proportional to the closed form"),
        (report.factorization_holds, "closed form is not (p - q) times the relation"),
        (report.residual_vanishes, "M a != 0"),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, why)| why)
    .collect();
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Error::KernelExtractionFailed(failures.join("; ")))
    }
}

/// As [`kernel_report`] but returns failed checks as `false` flags.
pub fn kernel_report_unchecked<S: Scalar>(
    m: &SeriesMatrix<S>,
    forms: &ClosedForms<S>,
) -> Result<KernelReport<S>> {
    let ClosedForms { p, q, u, v, .. } = forms;
    if u.is_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "u is zero below y^{}",
            u.truncation()
        )));
    }
    let p_minus_q = p - q;
    if p_minus_q.is_zero() {
        return Err(Error::PrecisionExhausted("p - q is zero to known precision".into()));
    }
    let zero = |t: i64| LaurentSeries::<S>::zero(t);
    let t = p.truncation();

    let u_equals_v = u.eq_joint(v);

    let minors = signed_minors(m)?;
    let minors_vanish_off_support = minors[3..9].iter().all(LaurentSeries::is_zero);

    let two = S::from_int(2);
    let first = &(&(p + q) * u) - &(q * v).scale(&two);
    let middle = &(p * v) - &(q * u);
    let last = &(&(q * q).scale(&two) - &(p * q)) - &(p * p);
    let mut unnormalized = vec![first, middle.clone(), middle];
    unnormalized.extend((3..9).map(|_| zero(t)));
    unnormalized.push(last);

    let mixed = -(&(p + &q.scale(&two)));
    let mut coefficients = vec![u.clone(), u.clone(), u.clone()];
    coefficients.extend((3..9).map(|_| zero(t)));
    coefficients.push(mixed.clone());
    let relation = HesseRelation { coefficients };

    // 2q^2 - pq - p^2 = -(p - q)(p + 2q), and the whole closed form is (p - q) a.
    let factorization_holds = unnormalized
        .iter()
        .zip(&relation.coefficients)
        .all(|(raw, a)| raw.eq_joint(&(&p_minus_q * a)))
        && unnormalized[9].eq_joint(&-(&p_minus_q * &(p + &q.scale(&two))));

    // The minors share a further common factor with the closed form; divide it out
    // through the first component and compare the rest.
    let minors_proportional = match minors[0].div(&unnormalized[0]) {
        Ok(ratio) => minors
            .iter()
            .zip(&unnormalized)
            .all(|(minor, raw)| minor.eq_joint(&(&ratio * raw))),
        Err(_) => {
            return Err(Error::PrecisionExhausted(
                "first kernel component is zero to known precision".into(),
            ))
        }
    };

    let residual = m.mul_vector(&relation.coefficients)?;
    let residual_vanishes = residual.iter().all(LaurentSeries::is_zero);

    Ok(KernelReport {
        minors,
        unnormalized,
        relation,
        u_equals_v,
        minors_vanish_off_support,
        minors_proportional,
        factorization_holds,
        residual_vanishes,
    })
}

/// Rank 9 (so nullity exactly 1): some maximal minor has a certified nonzero
/// leading coefficient.
pub fn kernel_dimension_certificate<S: Scalar>(m: &SeriesMatrix<S>) -> Result<bool> {
    let minors = signed_minors(m)?;
    if minors.iter().any(|d| !d.is_zero()) {
        return Ok(true);
    }
    let deepest = minors.iter().map(LaurentSeries::truncation).max().unwrap_or(0);
    Err(Error::PrecisionExhausted(format!(
        "all maximal minors vanish below y^{deepest}"
    )))
}
