//! Exact computer algebra for the N=2, N=3, small N=4 and big N=4
//! superconformal algebras: realizations, brackets, finite Verma-type
//! modules, singular vectors, and the classification of irreducible
//! quotients by their rank over C[d].

pub mod error;
pub mod exactfield;
pub mod grassmann;
pub mod linalg;
pub mod algebra;
pub mod verma;
pub mod singular;
pub mod classify;
pub mod lambda_calc;
pub mod regression;
pub mod suite;

pub use error::{Result, ScfError};
pub use exactfield::{Param, Scalar};
