//! Exact computation in Clifford–Weyl algebras C(n,2k): the mixed star
//! product, concrete representations, periodicity isomorphisms, the
//! osp(n+1,2k) embedding, the polynomial deformations A_Λ(n) and Hochschild
//! coboundary checks.
//!
//! All arithmetic is over Gaussian rationals extended by polynomials in the
//! central parameter Λ, so every identity is checked as an exact equality.

pub mod algebra;
pub mod checks;
pub mod clifford;
pub mod cw;
pub mod deform;
pub mod error;
pub mod scalar;
pub mod hochschild;
pub mod linalg;
pub mod osp;
pub mod periodicity;
pub mod random;
pub mod report;
pub mod reps;
pub mod star;
pub mod words;

pub use cw::{BiDegree, CwElement, CwMonomial, Signature};
pub use error::{Error, Result};
pub use scalar::{GaussRat, Scalar};
