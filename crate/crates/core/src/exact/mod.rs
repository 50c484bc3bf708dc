//! Exact arithmetic over Q: sparse multivariate polynomials, their gcd, and
//! reduced rational functions.

pub mod gcd;
pub mod poly;
pub mod ratfun;

pub use gcd::gcd;
pub use poly::{int, rat, Exponent, MultiPoly, Rational};
pub use ratfun::{AffineMap, RatFun};
