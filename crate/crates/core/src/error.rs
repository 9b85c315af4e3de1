use alloc::string::String;
use core::fmt;

use crate::linalg::LinalgError;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    Linalg(LinalgError),
    /// Row `row` has `len` entries where `expected` were required.
    NotSquare { row: usize, len: usize, expected: usize },
    /// The dimension parameter must be at least 1.
    InvalidDimension(u32),
    /// The Seifert matrix is singular.
    Singular,
    /// The monodromy has `count` eigenvalues off the unit circle, `example` among them.
    OffCircle { count: usize, example: Option<(f64, f64)> },
    /// Angles must lie strictly between 0 and 1.
    AngleOutOfRange(String),
    /// A spectral multiplicity came out negative or fractional.
    Calibration(String),
    NotSemisimple,
    /// The monodromy has eigenvalues that are not roots of unity.
    NotRootOfUnity,
    /// Conjugate eigenvalues carry different Jordan types.
    NonUniformJordan,
    DimensionMismatch { expected: u32, found: u32 },
    InvalidExponent(i64),
    MalformedBlocks(String),
    /// A spectral value outside the range allowed for the operation.
    OutOfRange(String),
    UnknownCatalogName(String),
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Self::Linalg(e)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linalg(e) => e.fmt(f),
            Self::NotSquare { row, len, expected } => {
                write!(f, "matrix is not square: row {row} has {len} entries, expected {expected}")
            }
            Self::InvalidDimension(n) => write!(f, "dimension parameter n must be >= 1, got {n}"),
            Self::Singular => write!(f, "monodromy undefined; reduce first (Seifert matrix is singular)"),
            Self::OffCircle { count, example } => {
                write!(f, "{count} monodromy eigenvalue(s) off the unit circle")?;
                if let Some((re, im)) = example {
                    write!(f, ", e.g. {re:.6}{im:+.6}i")?;
                }
                Ok(())
            }
            Self::AngleOutOfRange(a) => write!(f, "angle {a} outside the open interval (0, 1)"),
            Self::Calibration(msg) => {
                write!(f, "convention calibration violated or input non-geometric: {msg}")
            }
            Self::NotSemisimple => write!(f, "sign classification beyond k=1 unsupported"),
            Self::NotRootOfUnity => write!(f, "monodromy eigenvalues are not all roots of unity"),
            Self::NonUniformJordan => {
                write!(f, "conjugate eigenvalues have different Jordan types; raise precision")
            }
            Self::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected n = {expected}, found n = {found}")
            }
            Self::InvalidExponent(a) => write!(f, "Brieskorn exponents must be >= 2, got {a}"),
            Self::MalformedBlocks(msg) => write!(f, "malformed block data: {msg}"),
            Self::OutOfRange(msg) => write!(f, "value out of range: {msg}"),
            Self::UnknownCatalogName(name) => write!(f, "unknown catalog entry {name:?}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
