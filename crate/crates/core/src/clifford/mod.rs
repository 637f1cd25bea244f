//! Graded Clifford algebras over a polynomial base ring.

mod algebra;
mod seq;
mod superpotential;

pub use algebra::{
    permutations, square_coefficients, square_in_basis, CenterElement, CliffordAlgebra, CliffordElement, MAX_GENERATORS,
};
pub use seq::{normalize_seq, quadratic_form, EquivalenceWitness, SymMatrixSeq};
pub use superpotential::{superpotential, superpotential_of, Superpotential, SUPERPOTENTIAL_MAX_N};
