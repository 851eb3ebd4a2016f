//! Exact computation of resurgence numbers, Newton-Okounkov bodies, polar
//! bodies, Waldschmidt constants and Rees-package convex bodies for graded
//! families of monomial ideals. All arithmetic is over arbitrary-precision
//! rationals; no operation ever rounds.

pub mod cli;
pub mod error;
pub mod monomials;
pub mod exactgeom;
pub mod families;
pub mod rational;
pub mod reespkg;
pub mod resurgence;

pub use error::{Error, Result};
