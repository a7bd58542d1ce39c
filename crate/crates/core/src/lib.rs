//! Exact computational algebra around the multivariate Vandermonde
//! determinant: rings, exact matrices, Veronese and minor constructions,
//! identity verifiers and a general-position tester for projective point
//! configurations.

pub mod acceptance;
pub mod error;
pub mod format;
pub mod genpos;
pub mod linalg;
pub mod random;
pub mod ring;
pub mod subsets;
pub mod vandermonde;

pub use error::{Error, Result};
pub use linalg::{DetAlgorithm, ExactMatrix};
pub use ring::{MultiPoly, PrimeField, Ring, RingValue, Variables};
pub use subsets::{binomial, SubsetIndex, SubsetOrder};
pub use vandermonde::{Identity, MonomialBasis, Sign, Verdict, VerificationReport};
