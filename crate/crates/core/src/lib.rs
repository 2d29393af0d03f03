//! Exact-arithmetic kernel for rank-2 valuations and the Parshin symbol on
//! two-dimensional local fields `k'((t))((u))`, with the dimension-theory
//! central extension giving an independent route to the symbol, Newton-Puiseux
//! branch decomposition of plane-curve germs, and verification of the two
//! reciprocity laws (around a point; along a projective curve).

pub mod central;
pub mod coeff;
pub mod dimtheory;
pub mod error;
pub mod factor;
pub mod geometry;
pub mod parse;
pub mod poly;
pub mod puiseux;
pub mod reciprocity;
pub mod report;
pub mod series;

pub use coeff::{make_prime_field, rationals, CoeffElem, CoeffField, FieldOp, Scalar};
pub use error::{Error, Result};
