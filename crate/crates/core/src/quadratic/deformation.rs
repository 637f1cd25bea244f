use num_traits::Zero;

use super::presentation::{build_bf, QuadraticPresentation};
use crate::clifford::{quadratic_form, SymMatrixSeq};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{int, Scalar};

/// The affine quadric system whose zeros are the linear square roots of `Σ aₘ xₘ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordDeformation {
    /// `Σᵢⱼ (Fₘ)ᵢⱼ uᵢuⱼ − 2aₘ` for each `m`.
    pub system: Vec<MultiPoly>,
    /// Homogeneous part of the deformed dual algebra.
    pub homogeneous: QuadraticPresentation,
    /// `a = 0`: only the origin solves the system.
    pub degenerate: bool,
}

pub fn clifford_deformation(f: &SymMatrixSeq, a: &[Scalar]) -> Result<CliffordDeformation> {
    f.require_normalized()?;
    let n = f.n();
    if a.len() != n {
        return Err(Error::DimensionMismatch("coefficient vector length".into()));
    }
    let system = f
        .mats()
        .iter()
        .zip(a)
        .map(|(m, am)| &quadratic_form(m) - &MultiPoly::constant(n, int(2) * am))
        .collect();
    Ok(CliffordDeformation { system, homogeneous: build_bf(f), degenerate: a.iter().all(Zero::is_zero) })
}
