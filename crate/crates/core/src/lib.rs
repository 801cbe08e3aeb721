//! Finite groupoid cardinality, groupoid-valued species with their
//! exponential generating functions, and groupoids whose cardinalities are the
//! coefficients of hypergeometric series with positive rational parameters.

pub mod arith;
pub mod cli;
pub mod error;
pub mod groupoid;
pub mod hyper;
pub mod parse;
pub mod series;
pub mod species;

pub use arith::Rational;
pub use error::{Error, Result};
