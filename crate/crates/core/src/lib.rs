//! Exact and p-adic arithmetic for abelian L-functions of ρ = ψ ⊗ χ on open
//! subsets of P^1 over a finite field, where ψ is an Artin–Schreier–Witt
//! character and χ a tame character.
//!
//! The crate is `no_std` with `alloc`. The `std` feature only affects error
//! trait impls; `parallel` enables rayon for point enumeration.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod character;
pub mod cyclotomic;
pub mod dwork;
mod error;
pub mod lfunction;
pub mod polygon;

pub use error::{Error, Result};

/// Exact rational number used for slopes and polygon coordinates.
pub type Rational = num_rational::Ratio<i64>;
