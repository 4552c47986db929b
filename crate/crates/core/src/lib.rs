//! Numerics for a family of harmonic-number series: exact and floating
//! harmonic machinery, closed-form evaluation over a small atom algebra,
//! direct and accelerated summation, tanh-sinh quadrature cross-checks, and
//! base-16 digit extraction for π².

pub mod bbp;
pub mod closed_form;
pub mod elementary;
pub mod error;
pub mod harmonic;
pub mod poly;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// The working floating-point type: IEEE-754 binary64 throughout.
pub type Real = f64;

/// Complex double, used on the slit plane by the functional-equation checks.
pub use num::complex::Complex64 as Complex;
