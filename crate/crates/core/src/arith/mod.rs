//! Finite fields, Galois rings as truncated Witt vectors, and Witt vectors
//! over Laurent series.

pub mod extension;
pub mod field;
mod fp_poly;
pub mod galois;
pub mod laurent;
pub mod witt;

pub use extension::{make_extension, make_extension_seeded, Embedding};
pub use field::{FieldDesc, FieldElement, LinearMap};
pub use galois::{GaloisRing, GaloisRingElement};
pub use laurent::{CoeffRing, Laurent};
pub use witt::{Series, WittSeries, WittSeriesRing};

/// The Teichmüller representative [c] in W_n(F_q) ≅ GR(p^n, m).
pub fn teichmuller_lift(ring: &GaloisRing, c: &FieldElement) -> GaloisRingElement {
    ring.teichmuller_lift(c)
}

/// Witt vector Frobenius on W_n(F_q).
pub fn frobenius(ring: &GaloisRing, z: &GaloisRingElement) -> GaloisRingElement {
    ring.frobenius(z)
}

/// Packs Witt coordinates (a_0, …, a_{n-1}) into GR(p^n, m).
pub fn witt_pack(ring: &GaloisRing, coords: &[FieldElement]) -> GaloisRingElement {
    ring.witt_pack(coords)
}

/// Trace W_n(F_q) → Z/p^n.
pub fn witt_trace(ring: &GaloisRing, z: &GaloisRingElement) -> u64 {
    ring.witt_trace(z)
}
