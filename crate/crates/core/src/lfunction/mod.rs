//! L-functions of characters on open subsets of P^1: exact character sums,
//! assembly of L(ρ, s), Newton polygons and the Newton-over-Hodge check.

pub mod cover;
mod lpoly;
mod sums;
mod verify;

pub use crate::character::euler_poincare_degree;
pub use lpoly::{
    coefficient_valuations, divide_euler_factor, exp_of_sums, l_polynomial, l_polynomial_from_sums,
    newton_polygon_of_l, LPolynomial, GUARD,
};
pub use sums::{
    character_sum, character_sums, degree_histogram, degree_histograms, sum_from_histograms,
    frobenius_value_at, sum_ring, unramified_removed_points, ValueHistogram, DEFAULT_BUDGET,
};
pub use verify::{
    are_dual, are_dual_polygons, dual_slopes, newton_and_hodge, verify_newton_over_hodge, verify_newton_over_hodge_with, DualityReport,
    VerificationReport, VerifyOptions,
};
