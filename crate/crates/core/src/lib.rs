//! Exact symbolic computation in the group generated by `a(t) = t + 1` and
//! two piecewise projective maps `b`, `c` of the real projective line.

pub mod action;
pub mod bcalc;
pub mod cli;
pub mod decide;
pub mod diagrams;
pub mod error;
pub mod projective;
pub mod rewrite;
pub mod sequences;

pub use error::{Error, ParseError, Result};
