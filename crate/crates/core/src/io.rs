//! JSON wire formats. Rationals travel as strings `"p/q"`; nothing is floating point.

use serde::{Deserialize, Serialize};

use crate::clifford::SymMatrixSeq;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quadratic::QuadraticPresentation;
use crate::scalar::{Rat, Scalar};

/// `#[serde(with = "matrix_wire")]` for `Matrix<Scalar>` as nested string arrays.
pub mod matrix_wire {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn to_wire(m: &Matrix<Scalar>) -> Vec<Vec<Rat>> {
        m.to_rows().into_iter().map(|r| r.into_iter().map(Rat).collect()).collect()
    }

    pub fn from_wire(rows: Vec<Vec<Rat>>) -> Result<Matrix<Scalar>> {
        if rows.is_empty() {
            return Err(Error::Invalid("empty matrix".into()));
        }
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
    }

    pub fn serialize<S: Serializer>(m: &Matrix<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_wire(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix<Scalar>, D::Error> {
        from_wire(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationWire {
    pub n: usize,
    pub commutative: bool,
    pub relations: Vec<Vec<Vec<Rat>>>,
}

impl From<&QuadraticPresentation> for PresentationWire {
    fn from(p: &QuadraticPresentation) -> Self {
        Self {
            n: p.n(),
            commutative: p.is_commutative(),
            relations: p.relations().iter().map(matrix_wire::to_wire).collect(),
        }
    }
}

impl PresentationWire {
    pub fn into_presentation(self) -> Result<QuadraticPresentation> {
        let rels = self.relations.into_iter().map(matrix_wire::from_wire).collect::<Result<Vec<_>>>()?;
        let p = QuadraticPresentation::new(self.n, rels)?;
        if self.commutative && !p.is_commutative() {
            return Err(Error::Invalid("flagged commutative but commutators are missing".into()));
        }
        Ok(p)
    }
}

/// A sequence of symmetric matrices as a JSON array of matrices.
pub fn seq_to_wire(f: &SymMatrixSeq) -> Vec<Vec<Vec<Rat>>> {
    f.mats().iter().map(matrix_wire::to_wire).collect()
}

pub fn seq_from_wire(w: Vec<Vec<Vec<Rat>>>) -> Result<SymMatrixSeq> {
    SymMatrixSeq::new(w.into_iter().map(matrix_wire::from_wire).collect::<Result<Vec<_>>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::build_sf;
    use crate::scalar::{frac, int};

    #[test]
    fn presentation_round_trip() {
        let p = build_sf(&SymMatrixSeq::family(&int(1), &frac(1, 2), &int(0))).unwrap();
        let w = PresentationWire::from(&p);
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.contains("\"1/2\"") || s.contains("\"-1/2\""));
        let back: PresentationWire = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_presentation().unwrap(), p);
    }

    #[test]
    fn seq_round_trip_and_validation() {
        let f = SymMatrixSeq::family(&int(2), &int(-1), &int(3));
        let s = serde_json::to_string(&seq_to_wire(&f)).unwrap();
        assert_eq!(seq_from_wire(serde_json::from_str(&s).unwrap()).unwrap(), f);
        let bad = r#"[[["0","1"],["2","0"]]]"#;
        assert!(matches!(seq_from_wire(serde_json::from_str(bad).unwrap()), Err(Error::NotSymmetric { index: 0 })));
    }
}
