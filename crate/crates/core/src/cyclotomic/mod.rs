//! Cyclotomic integers: exact elements of Z[ζ_{p^n}, ζ_{q-1}] and their
//! images in the p-adic completion, where valuations are read off.

pub mod artin_hasse;
pub mod cycloint;
pub mod padic;

pub use artin_hasse::{artin_hasse_coefficients, artin_hasse_rational, solve_gamma, solve_gammas};
pub use cycloint::{CycloInt, CycloRing};
pub use padic::{max_digits, CycloPadic, PadicRing, PadicValuation};

/// Valuation v_p of an exact element, computed modulo p^digits.
pub fn padic_valuation(
    padic: &PadicRing,
    exact: &CycloRing,
    z: &CycloInt,
) -> crate::Result<PadicValuation> {
    Ok(padic.valuation(&padic.from_exact(exact, z)?))
}
