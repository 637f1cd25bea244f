use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{QuadExt, Scalar};

/// A point of projective space with its first nonzero coordinate scaled to 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<QuadExt>", into = "Vec<QuadExt>")]
pub struct ProjPoint {
    coords: Vec<QuadExt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<QuadExt>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Invalid("all homogeneous coordinates are zero".into()));
        };
        let inv = QuadExt::one() / lead;
        Ok(Self { coords: coords.into_iter().map(|c| c * inv.clone()).collect() })
    }

    pub fn rational(coords: &[Scalar]) -> Result<Self> {
        Self::new(coords.iter().map(|c| QuadExt::rational(c.clone())).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::rational(&coords.iter().map(|&c| crate::scalar::int(c)).collect::<Vec<_>>())
    }

    pub fn coords(&self) -> &[QuadExt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(QuadExt::is_rational)
    }

    pub fn to_rational(&self) -> Option<Vec<Scalar>> {
        self.coords.iter().map(QuadExt::to_rational).collect()
    }

    /// Radicand of the extension the coordinates live in; 1 for rational points.
    pub fn radicand(&self) -> num_bigint::BigInt {
        self.coords.iter().find(|c| !c.is_rational()).map_or_else(num_bigint::BigInt::one, |c| c.radicand().clone())
    }

    /// Coordinatewise product `p ∗ q`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("points in different projective spaces".into()));
        }
        let prod: Vec<QuadExt> = self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() * b.clone()).collect();
        Self::new(prod).map_err(|_| Error::IndeterminateImage(format!("{self} * {other}")))
    }

    /// Galois conjugate: `√d ↦ −√d` in every coordinate.
    pub fn conj(&self) -> Self {
        Self { coords: self.coords.iter().map(QuadExt::conj).collect() }
    }
}

impl TryFrom<Vec<QuadExt>> for ProjPoint {
    type Error = Error;

    fn try_from(v: Vec<QuadExt>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProjPoint> for Vec<QuadExt> {
    fn from(p: ProjPoint) -> Self {
        p.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Removes repeated points, keeping first occurrences.
pub fn dedup_points(points: Vec<ProjPoint>) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::with_capacity(points.len());
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Equality of finite point sets.
pub fn same_points(a: &[ProjPoint], b: &[ProjPoint]) -> bool {
    a.iter().all(|p| b.contains(p)) && b.iter().all(|p| a.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn canonical_representative() {
        let p = ProjPoint::from_ints(&[0, -2, 4]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&[0, 1, -2]).unwrap());
        assert_eq!(p.to_string(), "(0, 1, -2)");
        assert!(ProjPoint::from_ints(&[0, 0, 0]).is_err());
    }

    #[test]
    fn hadamard_product() {
        let p = ProjPoint::from_ints(&[0, 1, 1]).unwrap();
        let q = ProjPoint::from_ints(&[0, 1, -1]).unwrap();
        assert_eq!(p.hadamard(&q).unwrap(), ProjPoint::from_ints(&[0, 1, -1]).unwrap());
        let r = ProjPoint::from_ints(&[1, 0, 0]).unwrap();
        assert!(matches!(p.hadamard(&r), Err(Error::IndeterminateImage(_))));
    }

    #[test]
    fn extension_points_round_trip() {
        let s2 = QuadExt::sqrt_of(&int(2));
        let p = ProjPoint::new(vec![s2.clone(), QuadExt::one(), QuadExt::zero()]).unwrap();
        assert_eq!(p.coords()[0], QuadExt::one());
        assert_eq!(p.radicand(), 2.into());
        assert_eq!(p.conj().conj(), p);
        let json = serde_json::to_string(&p).unwrap();
        let back: ProjPoint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
