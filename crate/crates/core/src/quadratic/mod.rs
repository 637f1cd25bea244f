//! Quadratic presentations, duality, Hilbert prefixes and regular sequences.

mod deformation;
mod dual;
mod hilbert;
mod presentation;
mod regular;

pub use deformation::{clifford_deformation, CliffordDeformation};
pub use dual::{dual_of_quotient, dual_of_quotient_with, iterate_dual_of_quotient, ComplementOrder, DualOfQuotient};
pub use hilbert::{hilbert_truncated, HilbertEngine, HilbertPrefix, WORD_BUDGET};
pub use presentation::{
    anticommutator, build_bf, build_sf, commutator, pairing, quadratic_dual, QuadraticPresentation,
};
pub use regular::{degree_floor, is_regular_sequence, regular_against, CentralQuadric, RegularityVerdict};
