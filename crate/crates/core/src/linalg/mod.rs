//! Exact rational linear algebra, polynomial invariant factors, unit-circle
//! root location and hermitian inertia.
//!
//! Everything structural (ranks, kernels, polynomials) is exact. Floating
//! point appears only in [`inertia`], where it decides eigenvalue signs.

use core::fmt;

use num_rational::BigRational;

pub mod cycfield;
pub mod cyclotomic;
pub mod inertia;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod polymatrix;
pub mod realroot;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, unit_circle_roots, unit_circle_roots_with_precision};
pub use inertia::{hermitian_inertia, ComplexMatrix, Inertia};
pub use matrix::{common_kernel, rank_rational, RatMatrix};
pub use poly::RatPoly;
pub use polymatrix::{invariant_factors, PolyMatrix};

/// Exact rational scalar.
pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum LinalgError {
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    NotHermitian { deviation: f64 },
    /// Eigenvalue signs could not be separated from zero at the working precision.
    AmbiguousSign,
    NotSquare { rows: usize, cols: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            Self::NotHermitian { deviation } => {
                write!(f, "matrix is not hermitian (deviation {deviation:e})")
            }
            Self::AmbiguousSign => write!(f, "eigenvalue sign ambiguous at working precision; raise precision"),
            Self::NotSquare { rows, cols } => write!(f, "expected a square matrix, got {rows}x{cols}"),
        }
    }
}

impl core::error::Error for LinalgError {}
