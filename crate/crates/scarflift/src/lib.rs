//! Exact-arithmetic engine for free resolutions of ideals generated by
//! lattice binomials and monomials in small dimensions: Scarf complexes of
//! lattice-periodic point sets, Markov bases, quotient regrading, and
//! horseshoe lifting with explicit correction terms.

pub mod demo;
pub mod error;
pub mod chain;
pub mod hull;
pub mod lambda_set;
pub mod lattice;
pub mod lift3;
pub mod linalg;
pub mod matcher;
pub mod poly;
pub mod problem;
pub mod serialize;
pub mod scarf;
pub mod zn;

pub use error::{Error, Result};
