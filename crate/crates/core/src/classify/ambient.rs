use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::clifford::SymMatrixSeq;
use crate::error::{Error, Result};
use crate::geometry::ProjPoint;
use crate::poly::MultiPoly;
use crate::scalar::{int, Rat, Scalar};

/// The three-generator normalized ambient algebras, up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "lambda")]
pub enum Ambient {
    /// Skew polynomial ring, `(a, b, c) = (0, 0, 0)`.
    S,
    /// `(1, 0, 0)`.
    SPrime,
    /// `(1, 1, 0)`.
    NC,
    /// `(λ, λ, λ)` with `λ³ ∉ {0, 1, −8}`.
    EC(Rat),
}

impl Ambient {
    pub fn elliptic(lambda: Scalar) -> Result<Self> {
        let cube = &lambda * &lambda * &lambda;
        if cube.is_zero() || cube.is_one() || cube == int(-8) {
            return Err(Error::Invalid(format!("λ = {lambda} gives a degenerate elliptic ambient")));
        }
        Ok(Ambient::EC(Rat(lambda)))
    }

    /// The four ambient types, with `λ` for the elliptic one.
    pub fn all(lambda: Scalar) -> Result<Vec<Self>> {
        Ok(vec![Ambient::S, Ambient::SPrime, Ambient::NC, Ambient::elliptic(lambda)?])
    }

    pub fn from_params(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Self> {
        let z = Scalar::zero();
        let o = Scalar::one();
        match (a, b, c) {
            _ if (a, b, c) == (&z, &z, &z) => Ok(Ambient::S),
            _ if (a, b, c) == (&o, &z, &z) => Ok(Ambient::SPrime),
            _ if (a, b, c) == (&o, &o, &z) => Ok(Ambient::NC),
            _ if a == b && b == c => Ambient::elliptic(a.clone()),
            _ => Err(Error::Invalid(format!("({a}, {b}, {c}) is not a listed family parameter"))),
        }
    }

    pub fn params(&self) -> [Scalar; 3] {
        let (z, o) = (Scalar::zero(), Scalar::one());
        match self {
            Ambient::S => [z.clone(), z.clone(), z],
            Ambient::SPrime => [o, z.clone(), z],
            Ambient::NC => [o.clone(), o, z],
            Ambient::EC(l) => [l.0.clone(), l.0.clone(), l.0.clone()],
        }
    }

    pub fn seq(&self) -> SymMatrixSeq {
        let [a, b, c] = self.params();
        SymMatrixSeq::family(&a, &b, &c)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Ambient::S => "S",
            Ambient::SPrime => "S'",
            Ambient::NC => "NC",
            Ambient::EC(_) => "EC",
        }
    }

    /// A rational point on the point variety.
    pub fn base_point(&self) -> ProjPoint {
        let c: [i64; 3] = match self {
            Ambient::S => [1, 0, 0],
            Ambient::SPrime => [0, 1, 0],
            Ambient::NC => [0, 0, 1],
            Ambient::EC(_) => [1, -1, 0],
        };
        ProjPoint::from_ints(&c).expect("nonzero")
    }

    /// The expected point-variety cubic in `x, y, z`.
    pub fn reference_curve(&self) -> MultiPoly {
        let x = |i| MultiPoly::var(3, i);
        let xyz = &(&x(0) * &x(1)) * &x(2);
        let cubes = |k: usize| (0..k).fold(MultiPoly::zero(3), |acc, i| &acc + &x(i).pow(3));
        match self {
            Ambient::S => xyz,
            Ambient::SPrime => &cubes(1) - &xyz.scale(&int(2)),
            Ambient::NC => &cubes(2) - &xyz.scale(&int(2)),
            Ambient::EC(l) => {
                let l = &l.0;
                &cubes(3).scale(l) - &xyz.scale(&(l * l * l + int(2)))
            }
        }
    }

    /// The expected generator of the rank-at-most-two locus in `y₁, y₂, y₃`.
    pub fn reference_discriminant(&self) -> MultiPoly {
        let y = |i| MultiPoly::var(3, i);
        let yyy = &(&y(0) * &y(1)) * &y(2);
        let cubes = |k: usize| (0..k).fold(MultiPoly::zero(3), |acc, i| &acc + &y(i).pow(3));
        match self {
            Ambient::S => yyy,
            Ambient::SPrime => &cubes(1) - &yyy.scale(&int(4)),
            Ambient::NC => &cubes(2) - &yyy.scale(&int(4)),
            Ambient::EC(l) => {
                let l = &l.0;
                &cubes(3).scale(&(l * l)) - &yyy.scale(&(int(4) - l * l * l))
            }
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::EC(l) => write!(f, "EC({})", l.0),
            other => write!(f, "{}", other.label()),
        }
    }
}
