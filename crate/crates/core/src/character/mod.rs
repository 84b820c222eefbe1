//! Characters ρ = ψ_r ⊗ χ on open subsets of P^1, their ramification data
//! and the Hodge polygon.

mod hodge;
mod local;
mod spec;

pub use hodge::{
    analyze_points, digit_sum, euler_poincare_degree, hodge_polygon, hodge_slopes, local_slopes,
    hodge_segments, omega_exact, omega_rho, ramification_data, remark_endpoint, tame_invariants, FrobeniusValue, PointAnalysis,
    RamificationDatum,
};
pub use local::{
    decompose_global, local_expand, reduce_at, reduce_witt, swan_conductor, LocalWittData,
    ReducedWittData, WittTerm,
};
pub use spec::{CharacterSpec, Point, RationalFunction, TameSpec, SIGN};
