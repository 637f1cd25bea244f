//! Classification of quadric quotients of the three-generator ambient algebras.

mod ambient;
mod kf;
mod records;
mod segre;

pub use ambient::Ambient;
pub use kf::{base_locus_conics, kf_points, solve_kf, DualLocus, KfSolution};
pub use records::{
    census, classify_all, classify_row, diff_against_golden, golden_table, smoothness_check, square_sum, table3_rows, Census,
    ClassificationRecord, SmoothnessEvidence, TableRow,
};
pub use segre::{segre_symbol, SegreSymbol};
