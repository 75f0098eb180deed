pub mod admissible;
pub mod cellular;
pub mod combinat;
pub mod connector;
pub mod error;
pub mod monoid;
pub mod normalform;
pub mod presentation;
pub mod ring;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};

/// Laurent polynomials with arbitrary-precision integer coefficients.
pub type Laurent = ring::LaurentPoly<num_bigint::BigInt>;
