//! Exact-arithmetic classification of symplectic hypergeometric monodromy
//! groups.
//!
//! Given a pair of monic integer polynomials (f, g) of even degree n with
//! f(0) = g(0) = 1, both self-reciprocal, coprime, and forming a primitive
//! pair, the companion matrices A, B of f, g generate a subgroup of the
//! integral symplectic group of an invariant form Omega. This crate decides
//! arithmeticity of that subgroup where possible and produces
//! machine-recheckable certificates:
//!
//! * the leading-coefficient fast path — |c| <= 2 for the leading
//!   coefficient c of f - g implies arithmeticity;
//! * a constructive certificate built from a triple of transvections, their
//!   SL2 Levi quotient, and an explicit unipotent-radical element;
//! * bounded word searches for unipotent witnesses when the constructive
//!   route does not apply;
//! * a full catalog of the admissible degree-4 cyclotomic-product pairs with
//!   a curated overlay of literature results.
//!
//! All linear algebra is exact over arbitrary-precision rationals; no
//! floating point is used anywhere.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod linalg;
pub mod monodromy;
pub mod poly;
pub mod witness;

pub use error::{Error, Result};
