//! Exact reconstruction of the mirror map of the symplectic two-torus.
//!
//! Starting from Fukaya products of intersection points on `R^2/Z^2`, the
//! crate builds the theta-function structure constants, checks the product
//! identities they satisfy, extracts the Hesse cubic relation from the kernel
//! of the 9x10 cubic structure matrix and expands the resulting j-invariant,
//! comparing it against an Eisenstein-series construction.
//!
//! All arithmetic is exact and generic over the coefficient field
//! ([`Scalar`]); the aliases below fix it to arbitrary-precision rationals.

pub mod cli;
pub mod error;
pub mod fukaya;
pub mod linalg;
pub mod mirror;
pub mod relation;
pub mod scalar;
pub mod series;
pub mod theta;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::{ExponentBase, LaurentSeries, SeriesRecord, XSeries};

/// Arbitrary-precision rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;

/// Fixed-width rationals; faster, but arithmetic overflow panics.
pub type SmallRational = num_rational::Ratio<i128>;

pub type Series = LaurentSeries<Rational>;
pub type SeriesMatrix = linalg::SeriesMatrix<Rational>;
pub type StructureConstants = fukaya::StructureConstants<Rational>;
pub type HesseRelation = relation::HesseRelation<Rational>;
pub type HesseParameter = mirror::HesseParameter<Rational>;
pub type JExpansion = mirror::JExpansion<Rational>;
pub type TorusPoint = torus::TorusPoint<Rational>;
pub type AffineMap = torus::AffineMap<Rational>;
pub type LagrangianLine = torus::LagrangianLine<Rational>;
