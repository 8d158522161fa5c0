//! Structure constants of the ring `R = ⊕ Hom(S, L_k)` up to degree three.
//!
//! Generators: `X_i ∈ Hom(S, L_1)` (i mod 3), `Y_i ∈ Hom(S, L_2)` (i mod 6),
//! `Z_i ∈ Hom(S, L_3)` (i mod 9). Products:
//!
//! ```text
//! X_i X_j = sum_{k=0..1} A_{i-j+3k} Y_{i+j+3k}
//! Y_i X_j = sum_{k=0..2} B_{2j-i+6k} Z_{i+j+3k}
//! ```
//!
//! The second factor of a product is carried to `Hom(L_k, L_{k+l})` by
//! `rho^k`; that identification is pure index bookkeeping here.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::SeriesMatrix;
use crate::scalar::Scalar;
use crate::series::LaurentSeries;
use crate::theta::{a_series, b_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    X,
    Y,
    Z,
}

impl Level {
    pub fn period(self) -> i64 {
        match self {
            Level::X => 3,
            Level::Y => 6,
            Level::Z => 9,
        }
    }

    /// `k` in `Hom(S, L_k)`.
    pub fn degree(self) -> i64 {
        match self {
            Level::X => 1,
            Level::Y => 2,
            Level::Z => 3,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::X => "X",
            Level::Y => "Y",
            Level::Z => "Z",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismIndex {
    level: Level,
    index: i64,
}

impl MorphismIndex {
    pub fn new(level: Level, index: i64) -> Self {
        Self {
            level,
            index: index.rem_euclid(level.period()),
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn index(&self) -> i64 {
        self.index
    }
}

impl fmt::Display for MorphismIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.level, self.index)
    }
}

/// Coefficients of a product in the basis of `target_level`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductExpansion<S> {
    pub target_level: Level,
    pub coefficients: BTreeMap<i64, LaurentSeries<S>>,
}

impl<S: Scalar> ProductExpansion<S> {
    pub fn coefficient(&self, index: i64) -> Option<&LaurentSeries<S>> {
        self.coefficients
            .get(&index.rem_euclid(self.target_level.period()))
    }

    /// Equality of every target coefficient on the joint window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.target_level == other.target_level
            && self.coefficients.len() == other.coefficients.len()
            && self.coefficients.iter().all(|(k, v)| {
                other
                    .coefficients
                    .get(k)
                    .is_some_and(|w| v.eq_joint(w))
            })
    }
}

/// Index rules for the two product formulas. `(i, j, k)` is the pair of
/// factor indices and the summation index.
#[derive(Clone, Copy, Debug)]
pub struct ProductRule {
    pub xx_theta: fn(i64, i64, i64) -> i64,
    pub xx_target: fn(i64, i64, i64) -> i64,
    pub yx_theta: fn(i64, i64, i64) -> i64,
    pub yx_target: fn(i64, i64, i64) -> i64,
}

impl ProductRule {
    pub const STANDARD: ProductRule = ProductRule {
        xx_theta: |i, j, k| i - j + 3 * k,
        xx_target: |i, j, k| i + j + 3 * k,
        yx_theta: |i, j, k| 2 * j - i + 6 * k,
        yx_target: |i, j, k| i + j + 3 * k,
    };
}

impl Default for ProductRule {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// The ten cubic monomials in their fixed order; entries are X-indices.
pub const CUBIC_BASIS: [[i64; 3]; 10] = [
    [0, 0, 0],
    [1, 1, 1],
    [2, 2, 2],
    [0, 0, 1],
    [1, 1, 2],
    [2, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [2, 2, 1],
    [0, 1, 2],
];

/// The six quadratic monomials, ordered `X_0², X_1², X_2², X_0X_1, X_1X_2, X_2X_0`.
pub const QUADRATIC_BASIS: [[i64; 2]; 6] = [[0, 0], [1, 1], [2, 2], [0, 1], [1, 2], [2, 0]];

pub fn monomial_name(indices: &[i64]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < indices.len() {
        let mut run = 1;
        while i + run < indices.len() && indices[i + run] == indices[i] {
            run += 1;
        }
        out.push_str(&format!("X_{}", indices[i]));
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        i += run;
    }
    out
}

/// The theta series `A_0..A_5`, `B_0..B_17` at a common truncation, plus the
/// index rules that assemble them into products.
#[derive(Clone, Debug)]
pub struct StructureConstants<S> {
    a: Vec<LaurentSeries<S>>,
    b: Vec<LaurentSeries<S>>,
    rule: ProductRule,
    truncation: i64,
}

impl<S: Scalar> StructureConstants<S> {
    pub fn new(truncation: i64) -> Self {
        Self::with_rule(truncation, ProductRule::STANDARD)
    }

    pub fn with_rule(truncation: i64, rule: ProductRule) -> Self {
        Self {
            a: (0..6).map(|k| a_series(k, truncation)).collect(),
            b: (0..18).map(|k| b_series(k, truncation)).collect(),
            rule,
            truncation,
        }
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn a(&self, k: i64) -> &LaurentSeries<S> {
        &self.a[k.rem_euclid(6) as usize]
    }

    pub fn b(&self, k: i64) -> &LaurentSeries<S> {
        &self.b[k.rem_euclid(18) as usize]
    }

    /// Overrides the series used for `B_k` (mutation testing).
    pub fn set_b(&mut self, k: i64, series: LaurentSeries<S>) {
        self.b[k.rem_euclid(18) as usize] = series;
    }

    /// Overrides the series used for `A_k` (mutation testing).
    pub fn set_a(&mut self, k: i64, series: LaurentSeries<S>) {
        self.a[k.rem_euclid(6) as usize] = series;
    }

    pub fn product_xx(&self, i: i64, j: i64) -> ProductExpansion<S> {
        let coefficients = (0..2)
            .map(|k| {
                let target = (self.rule.xx_target)(i, j, k).rem_euclid(6);
                (target, self.a((self.rule.xx_theta)(i, j, k)).clone())
            })
            .collect();
        ProductExpansion {
            target_level: Level::Y,
            coefficients,
        }
    }

    pub fn product_yx(&self, i: i64, j: i64) -> ProductExpansion<S> {
        let coefficients = (0..3)
            .map(|k| {
                let target = (self.rule.yx_target)(i, j, k).rem_euclid(9);
                (target, self.b((self.rule.yx_theta)(i, j, k)).clone())
            })
            .collect();
        ProductExpansion {
            target_level: Level::Z,
            coefficients,
        }
    }

    /// `(X_a X_b) X_c` in the Z basis, all nine entries present.
    pub fn triple_product(&self, a: i64, b: i64, c: i64) -> Vec<LaurentSeries<S>> {
        let mut z = vec![LaurentSeries::zero(self.truncation); 9];
        for (y, coeff_y) in &self.product_xx(a, b).coefficients {
            for (m, coeff_z) in &self.product_yx(*y, c).coefficients {
                let slot = &mut z[*m as usize];
                *slot = &*slot + &(coeff_y * coeff_z);
            }
        }
        z
    }

    /// Z-coefficients of a cubic monomial, associated from the left.
    pub fn cubic_expand(&self, monomial: [i64; 3]) -> Vec<LaurentSeries<S>> {
        self.triple_product(monomial[0], monomial[1], monomial[2])
    }

    /// The 6x6 matrix whose column `c` holds the Y-coefficients of
    /// `QUADRATIC_BASIS[c]`.
    pub fn quadratic_matrix(&self) -> SeriesMatrix<S> {
        let mut m = SeriesMatrix::zeros(6, 6, self.truncation);
        for (col, [i, j]) in QUADRATIC_BASIS.iter().enumerate() {
            for (row, coeff) in &self.product_xx(*i, *j).coefficients {
                m.set(*row as usize, col, coeff.clone());
            }
        }
        m
    }
}

/// Convenience wrappers computing fresh structure constants at `truncation`.
pub fn product_xx<S: Scalar>(i: i64, j: i64, truncation: i64) -> ProductExpansion<S> {
    StructureConstants::new(truncation).product_xx(i, j)
}

pub fn product_yx<S: Scalar>(i: i64, j: i64, truncation: i64) -> ProductExpansion<S> {
    StructureConstants::new(truncation).product_yx(i, j)
}

pub fn cubic_expand<S: Scalar>(monomial: [i64; 3], truncation: i64) -> Vec<LaurentSeries<S>> {
    StructureConstants::new(truncation).cubic_expand(monomial)
}

/// `X_i X_j = X_j X_i` for every pair, per target index.
pub fn commutativity_check_xx<S: Scalar>(truncation: i64) -> bool {
    commutativity_holds(&StructureConstants::<S>::new(truncation))
}

pub fn commutativity_holds<S: Scalar>(consts: &StructureConstants<S>) -> bool {
    (0..3).all(|i| (0..3).all(|j| consts.product_xx(i, j).agrees_with(&consts.product_xx(j, i))))
}

/// `(X_i X_j) X_k = X_i (X_j X_k)`, the right side evaluated as
/// `(X_j X_k) X_i` using commutativity.
pub fn associativity_check<S: Scalar>(i: i64, j: i64, k: i64, truncation: i64) -> bool {
    let consts = StructureConstants::<S>::new(truncation);
    associativity_between(&consts, &consts, i, j, k)
}

/// Associativity with the two bracketings evaluated on separate tables.
pub fn associativity_between<S: Scalar>(
    left: &StructureConstants<S>,
    right: &StructureConstants<S>,
    i: i64,
    j: i64,
    k: i64,
) -> bool {
    let lhs = left.triple_product(i, j, k);
    let rhs = right.triple_product(j, k, i);
    lhs.iter().zip(&rhs).all(|(a, b)| a.eq_joint(b))
}

/// The degree-two map from quadratic monomials to the Y basis is invertible.
///
/// Checks the determinant of [`StructureConstants::quadratic_matrix`] and
/// `A_0 A_1 - A_2 A_3` both have certified nonzero leading coefficients.
pub fn degree2_invertibility<S: Scalar>(truncation: i64) -> Result<bool> {
    let consts = StructureConstants::<S>::new(truncation);
    let det = consts.quadratic_matrix().determinant()?;
    let minor = consts.a(0) * consts.a(1) - consts.a(2) * consts.a(3);
    if det.is_zero() || minor.is_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "degree-two determinant vanishes below y^{}",
            det.truncation().min(minor.truncation())
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Q = Rational;

    fn expansion(consts: &StructureConstants<Q>, pairs: &[(i64, i64)], level: Level) -> ProductExpansion<Q> {
        let coefficients = pairs
            .iter()
            .map(|&(target, theta)| {
                let s = match level {
                    Level::Y => consts.a(theta).clone(),
                    _ => consts.b(theta).clone(),
                };
                (target, s)
            })
            .collect();
        ProductExpansion {
            target_level: level,
            coefficients,
        }
    }

    #[test]
    fn xx_examples() {
        let c = StructureConstants::<Q>::new(600);
        assert_eq!(c.product_xx(0, 1), expansion(&c, &[(1, 1), (4, 2)], Level::Y));
        assert_eq!(c.product_xx(0, 0), expansion(&c, &[(0, 0), (3, 3)], Level::Y));
        assert_eq!(c.product_xx(1, 1), expansion(&c, &[(2, 0), (5, 3)], Level::Y));
    }

    #[test]
    fn yx_examples() {
        let c = StructureConstants::<Q>::new(600);
        assert_eq!(
            c.product_yx(1, 1),
            expansion(&c, &[(2, 1), (5, 7), (8, 13)], Level::Z)
        );
        assert_eq!(
            c.product_yx(1, 2),
            expansion(&c, &[(3, 3), (6, 9), (0, 15)], Level::Z)
        );
        assert_eq!(
            c.product_yx(0, 0),
            expansion(&c, &[(0, 0), (3, 6), (6, 12)], Level::Z)
        );
    }

    #[test]
    fn product_targets_never_collide() {
        let c = StructureConstants::<Q>::new(10);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.product_xx(i, j).coefficients.len(), 2);
            }
        }
        for i in 0..6 {
            for j in 0..3 {
                assert_eq!(c.product_yx(i, j).coefficients.len(), 3);
            }
        }
    }

    #[test]
    fn commutativity() {
        assert!(commutativity_check_xx::<Q>(600));
        let mutated = ProductRule {
            xx_theta: |i, j, k| i - j + 1 + 3 * k,
            ..ProductRule::STANDARD
        };
        assert!(!commutativity_holds(&StructureConstants::<Q>::with_rule(600, mutated)));
    }

    #[test]
    fn associativity_with_mutation() {
        assert!(associativity_check::<Q>(0, 0, 1, 800));
        let good = StructureConstants::<Q>::new(800);
        let mut bad = good.clone();
        bad.set_b(8, good.b(7).clone());
        assert!(!associativity_between(&bad, &good, 0, 0, 1));
    }

    #[test]
    fn cubic_columns_match_closed_forms() {
        let c = StructureConstants::<Q>::new(800);
        let ab = |a: i64, b: i64, a2: i64, b2: i64| c.a(a) * c.b(b) + c.a(a2) * c.b(b2);
        let p = ab(0, 0, 3, 9);
        let q = ab(0, 6, 3, 3);
        let u = ab(2, 0, 1, 9);
        let v = ab(2, 6, 1, 3);
        let (r, s, t) = (ab(0, 2, 3, 7), ab(0, 8, 3, 1), ab(0, 4, 3, 5));

        let col = c.cubic_expand([0, 0, 0]);
        assert!(col[0].eq_joint(&p) && col[3].eq_joint(&q) && col[6].eq_joint(&q));
        let col = c.cubic_expand([0, 1, 2]);
        assert!(col[0].eq_joint(&u) && col[3].eq_joint(&v) && col[6].eq_joint(&v));
        let col = c.cubic_expand([0, 0, 1]);
        assert!(col[1].eq_joint(&r) && col[4].eq_joint(&s) && col[7].eq_joint(&t));
    }

    #[test]
    fn degree_two() {
        assert!(degree2_invertibility::<Q>(600).unwrap());
        let c = StructureConstants::<Q>::new(600);
        let minor = c.a(0) * c.a(1) - c.a(2) * c.a(3);
        assert_eq!(minor.valuation(), 12);
        assert_eq!(minor.leading_coefficient(), Some(&Q::from_int(1)));
        assert!(matches!(
            degree2_invertibility::<Q>(4),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn degree_two_with_only_a0() {
        let mut c = StructureConstants::<Q>::new(100);
        c.set_a(0, LaurentSeries::one(100));
        for k in 1..6 {
            c.set_a(k, LaurentSeries::zero(100));
        }
        let m = c.quadratic_matrix();
        // squares land on Y_0, Y_2, Y_4 with coefficient 1
        let squares = SeriesMatrix::from_fn(3, 3, |r, col| m.get(2 * r, col).clone());
        assert!(squares.determinant().unwrap().eq_joint(&LaurentSeries::one(100)));
        // mixed monomials need A_1 .. A_5, so the full map degenerates
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn names() {
        assert_eq!(monomial_name(&[0, 0, 1]), "X_0^2X_1");
        assert_eq!(monomial_name(&[0, 1, 2]), "X_0X_1X_2");
        assert_eq!(MorphismIndex::new(Level::Z, -1).to_string(), "Z_8");
    }
}
