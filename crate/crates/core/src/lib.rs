#![no_std]

extern crate alloc;

pub mod angle;
pub mod catalog;
pub mod error;
pub mod hvs;
pub mod linalg;
pub mod seifert;
pub mod semicontinuity;
pub mod signatures;
pub mod spectrum;

pub use error::{Error, Result};
pub use seifert::{alexander, intersection_form, keef_reduce, monodromy, n0, AlexanderPolynomial, KeefDecomposition, SeifertMatrix};
