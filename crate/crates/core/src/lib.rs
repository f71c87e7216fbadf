//! Exact enumeration of even-valent maps on orientable surfaces.
//!
//! The crate counts labeled 2ν-valent maps with `j` vertices embedded in a
//! genus-`g` surface, either *regular* (every vertex has degree 2ν) or
//! *two-legged* (two extra 1-valent vertices). Counts are produced by several
//! independent routes that are expected to agree exactly:
//!
//! * [`recurrence`]: evolution of partial-fraction coefficient vectors under
//!   the sub-diagonal step matrices, read off by summation at `z0 = 1`;
//! * [`four_valent`]: the ν = 2 fast path, contracting a genus-independent row
//!   vector with the initial coefficients, plus symbolic closed forms;
//! * [`hypergeometric`]: finite sums of terminating hypergeometric functions;
//! * [`series`]: formal power series in η built from the string equation;
//! * [`matching`]: brute-force enumeration of dart matchings.
//!
//! [`asymptotics`] compares exact counts with their leading large-`j` term.
//!
//! Everything is exact rational arithmetic; only the final asymptotic ratios
//! are rounded. The crate is `no_std` and needs only `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod coefficients;
mod error;
pub mod exact;
pub mod four_valent;
pub mod hypergeometric;
pub mod matching;
pub mod poly;
pub mod real;
pub mod recurrence;
pub mod series;

pub use coefficients::{load_builtin, Family, LaurentVector, ModelSpec};
pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
