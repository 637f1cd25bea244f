//! Point varieties, the Hadamard double cover and characteristic varieties.

mod charvar;
mod linear;
mod pair;
mod point;
mod quotient;
mod sample;
mod zerodim;

pub use charvar::{char_variety, VarietyIdeal};
pub use linear::LinearLocus;
pub use pair::{multilinearize, phi_map, PointVariety};
pub use point::{dedup_points, same_points, ProjPoint};
pub use quotient::{fiber_check, quotient_geometry, FiberReport, QuotientGeometry};
pub use sample::sample_curve_points;
pub use zerodim::{projective_degree, projective_zeros, quadric_matrix, Count, PointSet, STABLE_SEARCH_DEGREE};
