//! Exact multivariate polynomials and rational functions over the integers,
//! Laurent normal forms, weight grading, and dual numbers (`eps^2 = 0`).
//!
//! Rendering is fixed for golden tests: terms by ascending total degree,
//! `x1` before `x2` within a degree, written like `3*x1^2*x2^-1`.

mod dual;
mod laurent;
mod poly;
mod rational;

use thiserror::Error;

pub use dual::{DualRational, RenderedDual};
pub use laurent::{LaurentMonomial, LaurentPoly};
pub use poly::{gcd, Monomial, MultiPoly};
pub use rational::MultiRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SymError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dual number with zero even part is not invertible")]
    NonInvertibleEvenPart,
}

/// The Laurent normal form of `f`, if its denominator is a unit monomial.
pub fn is_laurent(f: &MultiRational) -> Option<LaurentPoly> {
    f.to_laurent()
}
