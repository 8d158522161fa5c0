//! The symplectic torus `R^2/Z^2` with `omega = tau dx ^ dy`.
//!
//! Holds the affine maps `rho`, `gamma` and `phi`, the Lagrangian lines
//! `L_k = rho^k S`, and a triangle counter that recovers every structure
//! constant from flat triangle areas without touching theta functions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fukaya::{Level, StructureConstants};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

/// `y`-exponent per unit of area: `exp(2 pi i tau area) = y^(144 area)`.
pub const Y_PER_AREA: i64 = 144;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint<S> {
    x: S,
    y: S,
}

impl<S: Scalar> TorusPoint<S> {
    /// Reduces both coordinates into `[0, 1)`.
    pub fn new(x: S, y: S) -> Self {
        Self {
            x: x.frac(),
            y: y.frac(),
        }
    }

    pub fn origin() -> Self {
        Self::new(S::zero(), S::zero())
    }

    /// `(i/period, 0)`: the generator of `Hom(S, L_level)` with index `i`.
    pub fn morphism(level: Level, index: i64) -> Self {
        Self::new(S::from_fraction(index, level.period()), S::zero())
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    pub fn y(&self) -> &S {
        &self.y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymplecticCharacter {
    /// `f^* omega = omega`
    Symplectic,
    /// `f^* omega = -omega`
    AntiSymplectic,
}

impl SymplecticCharacter {
    pub fn sign(self) -> i64 {
        match self {
            SymplecticCharacter::Symplectic => 1,
            SymplecticCharacter::AntiSymplectic => -1,
        }
    }
}

/// `v -> linear * v + translation`, acting on representatives in `R^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap<S> {
    pub linear: [[S; 2]; 2],
    pub translation: [S; 2],
}

impl<S: Scalar> AffineMap<S> {
    pub fn linear(linear: [[S; 2]; 2]) -> Self {
        Self {
            linear,
            translation: [S::zero(), S::zero()],
        }
    }

    pub fn identity() -> Self {
        Self::linear([[S::one(), S::zero()], [S::zero(), S::one()]])
    }

    /// The minimal Dehn twist `(x, y) -> (x, y + x)`.
    pub fn gamma() -> Self {
        Self::linear([[S::one(), S::zero()], [S::one(), S::one()]])
    }

    /// Monodromy around large complex structure, `(x, y) -> (x, y + 3x)`.
    pub fn rho() -> Self {
        Self::linear([[S::one(), S::zero()], [S::from_int(3), S::one()]])
    }

    /// `rho^k` for any integer `k`.
    pub fn rho_power(k: i64) -> Self {
        Self::linear([[S::one(), S::zero()], [S::from_int(3 * k), S::one()]])
    }

    /// `(x, y) -> (x/2 - 7y/18 + k/9, -2y)`, exchanging the vertices
    /// `(X_0, rho(Y_k), Z_k)` with `(Z_k, X_0, Y_k)`.
    pub fn phi(k: i64) -> Self {
        Self {
            linear: [
                [S::from_fraction(1, 2), S::from_fraction(-7, 18)],
                [S::zero(), S::from_int(-2)],
            ],
            translation: [S::from_fraction(k, 9), S::zero()],
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let m = &self.linear;
        let n = &inner.linear;
        let entry = |i: usize, j: usize| m[i][0].clone() * &n[0][j] + m[i][1].clone() * &n[1][j];
        let linear = [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]];
        let [tx, ty] = self.apply_plane(&inner.translation[0], &inner.translation[1]);
        Self {
            linear,
            translation: [tx, ty],
        }
    }

    pub fn apply_plane(&self, x: &S, y: &S) -> [S; 2] {
        let m = &self.linear;
        [
            m[0][0].clone() * x + m[0][1].clone() * y + &self.translation[0],
            m[1][0].clone() * x + m[1][1].clone() * y + &self.translation[1],
        ]
    }

    /// Image of `p` (through its representative in `[0,1)^2`), reduced mod `Z^2`.
    pub fn apply(&self, p: &TorusPoint<S>) -> TorusPoint<S> {
        let [x, y] = self.apply_plane(p.x(), p.y());
        TorusPoint::new(x, y)
    }

    pub fn determinant(&self) -> S {
        let m = &self.linear;
        m[0][0].clone() * &m[1][1] - m[0][1].clone() * &m[1][0]
    }

    pub fn symplectic_character(&self) -> Result<SymplecticCharacter> {
        let det = self.determinant();
        if det.is_one() {
            Ok(SymplecticCharacter::Symplectic)
        } else if (-det.clone()).is_one() {
            Ok(SymplecticCharacter::AntiSymplectic)
        } else {
            Err(Error::NotAreaPreserving(det.to_fraction_string()))
        }
    }
}

/// Checks `phi(X_0) = Z_k`, `phi(rho(Y_k)) = X_0` and `phi(Z_k) = Y_k` mod `Z^2`.
///
/// `rho(Y_k)` is evaluated on the lift `(k/6, 0)`, not on its reduction.
pub fn phi_vertex_check<S: Scalar>(k: i64) -> bool {
    let phi = AffineMap::<S>::phi(k);
    let rho = AffineMap::<S>::rho();
    let x0 = TorusPoint::<S>::morphism(Level::X, 0);
    let y_k = [S::from_fraction(k, 6), S::zero()];
    let z_k = [S::from_fraction(k, 9), S::zero()];

    let rho_y = rho.apply_plane(&y_k[0], &y_k[1]);
    let [a, b] = phi.apply_plane(&rho_y[0], &rho_y[1]);
    let [c, d] = phi.apply_plane(&z_k[0], &z_k[1]);

    phi.apply(&x0) == TorusPoint::new(z_k[0].clone(), z_k[1].clone())
        && TorusPoint::new(a, b) == x0
        && TorusPoint::new(c, d) == TorusPoint::new(y_k[0].clone(), y_k[1].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalSystem {
    Trivial,
}

/// An affine Lagrangian line of rational slope through lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianLine<S> {
    pub slope: S,
    /// x-intercept class mod 1.
    pub offset_class: S,
    pub local_system: LocalSystem,
}

impl<S: Scalar> LagrangianLine<S> {
    /// The base section `S = L_0`, the x-axis.
    pub fn base_section() -> Self {
        Self::level(0)
    }

    /// `L_k = rho^k S = {(t, 3kt)}`.
    pub fn level(k: i64) -> Self {
        Self {
            slope: S::from_int(3 * k),
            offset_class: S::zero(),
            local_system: LocalSystem::Trivial,
        }
    }

    /// The line's angle `atan(slope)`.
    pub fn grading(&self) -> f64 {
        self.slope.to_f64_lossy().atan()
    }

    /// Intersection points with `other` on the torus, ordered by x.
    ///
    /// Both lines must have integer slopes; `y = s x + m` meets `y = s' x + m'`
    /// at `x = (m' - m)/(s - s')`, giving `|s - s'|` classes in the x-direction.
    pub fn intersections(&self, other: &Self) -> Result<Vec<TorusPoint<S>>> {
        let (Some(s1), Some(s2)) = (self.slope.to_i64_exact(), other.slope.to_i64_exact()) else {
            return Err(Error::InvalidArgument("intersections need integer slopes".into()));
        };
        if s1 == s2 {
            return Err(Error::InvalidArgument("parallel lines are not transverse".into()));
        }
        // s1 (x - o1) - s2 (x - o2) = n for integer n
        let shift = S::from_int(s1) * &self.offset_class - S::from_int(s2) * &other.offset_class;
        let mut pts: Vec<TorusPoint<S>> = (0..(s1 - s2).abs())
            .map(|n| {
                let x = (S::from_int(n) + &shift) / S::from_int(s1 - s2);
                let y = S::from_int(s1) * (x.clone() - &self.offset_class);
                TorusPoint::new(x, y)
            })
            .collect();
        pts.sort();
        Ok(pts)
    }

    /// Whether `p` lies on the line mod `Z^2` (integer slopes only).
    pub fn contains(&self, p: &TorusPoint<S>) -> bool {
        let v = p.y().clone() - self.slope.clone() * (p.x().clone() - &self.offset_class);
        v.is_integer()
    }
}

/// Key of a triangle-count bin: x-classes of the middle and end vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleBin<S> {
    pub mid_class: S,
    pub end_class: S,
}

impl<S: Scalar> TriangleBin<S> {
    pub fn new(mid_class: S, end_class: S) -> Self {
        Self {
            mid_class: mid_class.frac(),
            end_class: end_class.frac(),
        }
    }
}

pub type OracleBins<S> = BTreeMap<TriangleBin<S>, LaurentSeries<S>>;

/// Counts flat triangles with vertices
/// `V1 = (base_x, 0)`, `V2` on `{y = s1 (x - base_x)} ∩ {y = s2 x + m}` and
/// `V3` on `{y = s2 x + m} ∩ {y = 0}`, over all integers `m`.
///
/// Each triangle contributes `y^(144 area)`, binned by the x-classes of
/// `V2` and `V3`. The degenerate triangle (all three vertices equal) has area
/// zero and contributes `1` to its bin.
pub fn triangle_oracle<S: Scalar>(
    base_x: &S,
    s1: &S,
    s2: &S,
    truncation: i64,
) -> Result<OracleBins<S>> {
    triangle_oracle_with_form(base_x, s1, s2, &S::one(), truncation)
}

/// As [`triangle_oracle`], with the symplectic form scaled by `form_scale`.
pub fn triangle_oracle_with_form<S: Scalar>(
    base_x: &S,
    s1: &S,
    s2: &S,
    form_scale: &S,
    truncation: i64,
) -> Result<OracleBins<S>> {
    if !s1.is_positive() || s2 <= s1 {
        return Err(Error::InvalidArgument(format!(
            "oracle slopes must satisfy 0 < s1 < s2, got {} and {}",
            s1.to_fraction_string(),
            s2.to_fraction_string()
        )));
    }
    if form_scale.is_zero() {
        return Err(Error::InvalidArgument("degenerate symplectic form".into()));
    }
    let weight = S::from_int(Y_PER_AREA) * form_scale;
    let triangle = |m: i64| -> Result<(TriangleBin<S>, i64, i64)> {
        let m = S::from_int(m);
        let x2 = (m.clone() + s1.clone() * base_x) / (s1.clone() - s2);
        let y2 = s1.clone() * (x2.clone() - base_x);
        let x3 = -m / s2;
        // V1 and V3 lie on y = 0, so twice the area is |(x3 - x1) * y2|.
        let area = ((x3.clone() - base_x) * &y2).abs() / S::from_int(2);
        let exponent = weight.clone() * &area;
        let e = exponent
            .to_i64_exact()
            .ok_or_else(|| Error::AreaNotCommensurate(exponent.to_fraction_string()))?;
        let magnitude = (S::from_int(Y_PER_AREA) * &area.abs())
            .to_i64_exact()
            .ok_or_else(|| Error::AreaNotCommensurate(exponent.to_fraction_string()))?;
        Ok((TriangleBin::new(x2, x3), e, magnitude))
    };

    // Area is a convex quadratic in m minimized at m = -s2 * base_x,
    // so walk outward from the minimum in both directions.
    let center = (-(s2.clone() * base_x)).floor();
    let center = center
        .to_i64_exact()
        .ok_or_else(|| Error::InvalidArgument("base point out of range".into()))?;
    let mut raw: BTreeMap<TriangleBin<S>, Vec<(i64, S)>> = BTreeMap::new();
    for direction in [-1i64, 1] {
        let mut m = if direction < 0 { center } else { center + 1 };
        loop {
            let (bin, e, magnitude) = triangle(m)?;
            if magnitude >= truncation {
                break;
            }
            raw.entry(bin).or_default().push((e, S::one()));
            m += direction;
        }
    }
    Ok(raw
        .into_iter()
        .map(|(bin, terms)| (bin, LaurentSeries::from_terms(terms, truncation)))
        .collect())
}

/// One comparison between a triangle-count bin and a product coefficient.
#[derive(Clone, Debug)]
pub struct OracleComparison {
    /// Slopes of the three lines, e.g. `"(0,3,6)"`.
    pub configuration: &'static str,
    /// The morphism at the base vertex, e.g. `"X_0"`.
    pub base: String,
    /// e.g. `"X_0 X_1 -> Y_1"`
    pub label: String,
    pub matches: bool,
}

/// The three triangle configurations and what they are compared with:
/// slopes `(0, 3, 6)` against `X_i X_j`, `(0, 6, 9)` against `Y_i X_j`, and
/// `(0, 3, 9)` against `Y_k X_i` read as `X_i Y_k`.
pub fn oracle_comparisons<S: Scalar>(
    form_scale: &S,
    truncation: i64,
) -> Result<Vec<OracleComparison>> {
    let consts = StructureConstants::<S>::new(truncation);
    let zero = LaurentSeries::<S>::zero(truncation);
    let mut out = Vec::new();
    let frac = |i: i64, level: Level| S::from_fraction(i, level.period());

    let mut compare = |configuration: &'static str,
                       base: String,
                       bins: &OracleBins<S>,
                       bin: TriangleBin<S>,
                       expected: &LaurentSeries<S>,
                       label: String| {
        let got = bins.get(&bin).unwrap_or(&zero);
        out.push(OracleComparison {
            configuration,
            base,
            label,
            matches: got.eq_joint(expected),
        });
    };

    let three = S::from_int(3);
    let six = S::from_int(6);
    let nine = S::from_int(9);

    for i in 0..3 {
        let bins = triangle_oracle_with_form(&frac(i, Level::X), &three, &six, form_scale, truncation)?;
        check_bins_on_grid(&bins, Level::X, Level::Y)?;
        for j in 0..3 {
            let product = consts.product_xx(i, j);
            for m in 0..6 {
                let bin = TriangleBin::new(frac(j, Level::X), frac(m, Level::Y));
                let expected = product.coefficient(m).unwrap_or(&zero);
                compare("(0,3,6)", format!("X_{i}"), &bins, bin, expected, format!("X_{i} X_{j} -> Y_{m}"));
            }
        }
    }
    for i in 0..6 {
        let bins = triangle_oracle_with_form(&frac(i, Level::Y), &six, &nine, form_scale, truncation)?;
        check_bins_on_grid(&bins, Level::X, Level::Z)?;
        for j in 0..3 {
            let product = consts.product_yx(i, j);
            for m in 0..9 {
                let bin = TriangleBin::new(frac(j, Level::X), frac(m, Level::Z));
                let expected = product.coefficient(m).unwrap_or(&zero);
                compare("(0,6,9)", format!("Y_{i}"), &bins, bin, expected, format!("Y_{i} X_{j} -> Z_{m}"));
            }
        }
    }
    for i in 0..3 {
        let bins = triangle_oracle_with_form(&frac(i, Level::X), &three, &nine, form_scale, truncation)?;
        check_bins_on_grid(&bins, Level::Y, Level::Z)?;
        for k in 0..6 {
            let product = consts.product_yx(k, i);
            for m in 0..9 {
                let bin = TriangleBin::new(frac(k, Level::Y), frac(m, Level::Z));
                let expected = product.coefficient(m).unwrap_or(&zero);
                compare("(0,3,9)", format!("X_{i}"), &bins, bin, expected, format!("X_{i} Y_{k} -> Z_{m}"));
            }
        }
    }
    Ok(out)
}

/// Every populated bin must be a pair of morphism classes.
fn check_bins_on_grid<S: Scalar>(bins: &OracleBins<S>, mid: Level, end: Level) -> Result<()> {
    let on_grid = |c: &S, level: Level| (c.clone() * S::from_int(level.period())).is_integer();
    match bins
        .keys()
        .find(|b| !on_grid(&b.mid_class, mid) || !on_grid(&b.end_class, end))
    {
        Some(b) => Err(Error::InvalidArgument(format!(
            "triangle vertex off the morphism grid: ({}, {})",
            b.mid_class.to_fraction_string(),
            b.end_class.to_fraction_string()
        ))),
        None => Ok(()),
    }
}

/// True iff every triangle-count bin equals the corresponding product coefficient.
pub fn oracle_vs_theta<S: Scalar>(truncation: i64) -> Result<bool> {
    oracle_vs_theta_with_form::<S>(&S::one(), truncation)
}

pub fn oracle_vs_theta_with_form<S: Scalar>(form_scale: &S, truncation: i64) -> Result<bool> {
    Ok(oracle_comparisons(form_scale, truncation)?
        .iter()
        .all(|c| c.matches))
}
