//! Exact computation of Shapovalov elements for the classical simple Lie
//! algebras (types A, B, C, D and G2), together with independent oracles
//! that verify them.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod oracle;
pub mod rootsys;
pub mod shapelem;
pub mod verma;

pub use error::{Error, Result};
