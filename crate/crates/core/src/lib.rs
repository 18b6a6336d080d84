//! Exact computation and verification of multivariate Rogers-Szegő
//! polynomials, q-multinomial coefficients and generalized Galois numbers,
//! with brute-force flag enumeration over finite fields as an oracle.

pub mod bigpoly;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod ffspace;
pub mod qkernel;
pub mod rogers_szego;

pub use error::{Error, Result};

// The guide under book/ doubles as a test suite: each chapter is attached to
// an empty module so that `cargo test --doc` runs its code blocks.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/q-analogs.md")]
    mod q_analogs {}
    #[doc = include_str!("../../../book/src/rogers-szego.md")]
    mod rogers_szego {}
    #[doc = include_str!("../../../book/src/roots-of-unity.md")]
    mod roots_of_unity {}
    #[doc = include_str!("../../../book/src/finite-fields.md")]
    mod finite_fields {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
