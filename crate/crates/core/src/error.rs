use thiserror::Error;

/// Errors raised by series arithmetic and the verifications built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("exponent outside precision: {exponent} not in [{valuation}, {truncation})")]
    ExponentOutsidePrecision {
        exponent: i64,
        valuation: i64,
        truncation: i64,
    },

    #[error("insufficient precision: need exponents below {required}, known only below {available}")]
    InsufficientPrecision { required: i64, available: i64 },

    #[error("series not expressible in x: nonzero coefficient at y^{exponent}")]
    NotExpressibleInX { exponent: i64 },

    #[error("malformed series: {0}")]
    MalformedSeries(String),

    #[error("unsupported characteristic {num}/{den} at scale {scale}")]
    UnsupportedCharacteristic { num: i64, den: i64, scale: i64 },

    #[error("not area-preserving: linear determinant is {0}")]
    NotAreaPreserving(String),

    #[error("area not commensurate with base: exponent {0}")]
    AreaNotCommensurate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("structure matrix inconsistent at row Z_{row}, column {col}")]
    StructureMatrixInconsistent { row: usize, col: usize },

    #[error("kernel extraction failed: {0}")]
    KernelExtractionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
