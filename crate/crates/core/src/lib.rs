//! Exact verification of constant-term identities for Laurent products
//! parameterized by nonnegative integer matrices (Dyson, Morris, Aomoto,
//! Forrester, Kadell and their q-analogues).
//!
//! Every identity can be evaluated along independent routes: full expansion
//! of the Laurent product, coefficient extraction by Lagrange or Hermite
//! interpolation over well-chosen node (multi)sets, and the closed-form
//! product formula. All arithmetic is exact.

pub mod budget;
pub mod error;
pub mod exactnum;
pub mod identities;
pub mod interpolation;
pub mod laurent;
pub mod sumsets;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exactnum::{BigRat, Field, QFrac, QPoly, Ring};
