//! A p-adic cross-check of L(ρ, V, s) through the Dwork–Monsky trace
//! formula, for q = p and V = G_m with ρ wildly ramified at no more than one
//! of 0, ∞.
//!
//! In the coordinate z that puts the wild point at z = 0, the Frobenius
//! structure is α = [c_f]^{−Γ} z^{−ε} Π E([c] γ_{n−i} z^{−j}) over the terms
//! V^i[c z^{−j}] of the reduced Witt vector, and U = U_p ∘ α acts on
//! span{z^{−j} : j ≥ 0}. The positive powers of z form a quotient on which U
//! is nilpotent when 0 ≤ ε < p − 1, so det(1 − sU) is computed on the
//! nonpositive powers alone.

mod operator;
mod splitting;
mod trace;

pub use operator::{fredholm_series, series_mul, twisted_multiplier, up_matrix, FredholmSeries, UpMatrix};
pub use splitting::{splitting_series, terms_swan, SplittingSeries};
pub use trace::{
    dwork_setup, frobenius_multiplier, growth_scan, l_on_torus, trace_formula_check, DworkOptions,
    DworkSetup, GrowthScan, GrowthViolation, TraceFormulaReport,
};
