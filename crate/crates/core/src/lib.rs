//! Optical orthogonal codes of weight 3 on `I_n × Z_m`.
//!
//! * [`code`]: cells, codewords, codes and the difference calculus.
//! * [`verify`]: correlation checks, census reports, structural predicates.
//! * [`bounds`]: closed-form sizes, upper bounds and admissibility tests.
//! * [`construct`]: constructions of optimal codes, each verified on return.
//! * [`search`]: exhaustive and randomized oracles.
//! * [`document`]: the JSON interchange format.
//! * [`cli`]: the `ooc` command line.

// Residue conditions are written as `x % k == 0` to match the formulas.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod bounds;
pub mod cli;
pub mod code;
pub mod construct;
pub mod document;
pub mod error;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
