use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::charvar::{char_variety, VarietyIdeal};
use super::linear::LinearLocus;
use super::pair::{multilinearize, PointVariety};
use super::point::{dedup_points, same_points, ProjPoint};
use super::zerodim::{Count, PointSet};
use crate::clifford::{square_coefficients, SymMatrixSeq};
use crate::error::{Error, Result};
use crate::quadratic::build_sf;
use crate::scalar::{Rat, Scalar};

/// Geometry of `A = S^F/(g₁², …, g_r²)` for linear `gᵢ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientGeometry {
    /// Coefficients of each `gᵢ`.
    pub linear_forms: Vec<Vec<Rat>>,
    /// `gᵢ² = Σₘ aᵢₘ xₘ²`.
    pub squares: Vec<Vec<Rat>>,
    /// `E_A`; infinite when the curve contains the linear locus.
    pub e: PointSet,
    /// Number of lines making up `E_A` when it is not finite.
    pub lines: usize,
    /// `σ_A`-orbits of a finite `E_A`, each of size one or two.
    pub orbits: Option<Vec<Vec<ProjPoint>>>,
    /// Points of `E_A` fixed by `σ_A`.
    pub fixed: PointSet,
    pub x3: PointSet,
    pub x2: PointSet,
}

impl QuotientGeometry {
    pub fn swaps(&self) -> Option<usize> {
        self.orbits.as_ref().map(|o| o.iter().filter(|x| x.len() == 2).count())
    }

    pub fn counts(&self) -> (Count, Count) {
        (self.x3.count, self.x2.count)
    }
}

fn to_rat(v: &[Scalar]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

/// `E_A`, `σ_A` and the characteristic varieties cut by `g̃ᵢ = Σₘ aᵢₘ yₘ`.
pub fn quotient_geometry(f: &SymMatrixSeq, gs: &[Vec<Scalar>]) -> Result<QuotientGeometry> {
    f.require_square()?;
    let n = f.n();
    if n != 3 {
        return Err(Error::Invalid("quotient geometry is implemented for three generators".into()));
    }
    if gs.is_empty() || gs.len() > 3 {
        return Err(Error::Invalid("between one and three linear forms are required".into()));
    }
    f.require_normalized()?;
    let pv = multilinearize(&build_sf(f)?)?;
    let locus = LinearLocus::cut_out(n, gs)?;
    let base = locus.common_zeros(&[pv.curve().clone()])?;
    let squares: Vec<Vec<Scalar>> = gs.iter().map(|g| square_coefficients(f, g)).collect();

    let (e, lines, orbits, fixed) = if base.count == Count::Infinite {
        let mut eqs = vec![pv.curve().clone()];
        eqs.extend(pv.fixed_locus()?);
        let fixed = locus.common_zeros(&eqs)?;
        let stable = (0..3).try_fold(true, |ok, k| -> Result<bool> {
            let p = locus.sample(k + 2)?;
            let q = pv.sigma(&p)?;
            Ok(ok && gs.iter().all(|g| eval_linear(g, &q).is_zero()))
        })?;
        (PointSet::infinite(), if stable { 1 } else { 2 }, None, fixed)
    } else {
        let Some(pts) = base.points else {
            return Err(Error::NeedsExtension { degree: 3 });
        };
        let mut all = pts.clone();
        for p in &pts {
            all.push(pv.sigma(p)?);
        }
        let all = dedup_points(all);
        let mut orbits: Vec<Vec<ProjPoint>> = vec![];
        let mut fixed = vec![];
        for p in &all {
            if orbits.iter().any(|o| o.contains(p)) {
                continue;
            }
            let q = pv.sigma(p)?;
            if &q == p {
                fixed.push(p.clone());
                orbits.push(vec![p.clone()]);
            } else {
                orbits.push(vec![p.clone(), q]);
            }
        }
        (PointSet::from_points(all), 0, Some(orbits), PointSet::from_points(fixed))
    };

    let ylocus = LinearLocus::cut_out(n, &squares)?;
    let x3 = ylocus.common_zeros(&char_variety(f, 3)?.generators)?;
    let x2 = ylocus.common_zeros(&char_variety(f, 2)?.distinct())?;
    Ok(QuotientGeometry {
        linear_forms: gs.iter().map(|g| to_rat(g)).collect(),
        squares: squares.iter().map(|a| to_rat(a)).collect(),
        e,
        lines,
        orbits,
        fixed,
        x3,
        x2,
    })
}

fn eval_linear(g: &[Scalar], p: &ProjPoint) -> crate::scalar::QuadExt {
    g.iter()
        .zip(p.coords())
        .fold(crate::scalar::QuadExt::zero(), |acc, (a, c)| acc + crate::scalar::QuadExt::rational(a.clone()) * c.clone())
}

/// Outcome of the fiber lemma checks on a finite `E_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub strictly_two_to_one: bool,
    pub free_action: bool,
    pub x2_empty: bool,
    /// `Φ(E_A) = X_A^(3)` as sets.
    pub image_matches: bool,
    /// `#E_A = 2·#X_A^(3) − #X_A^(2)`.
    pub count_identity: bool,
    /// `σ(p) = p` exactly when the 2-minors vanish at `Φ(p)`, for every `p ∈ E_A`.
    pub fixed_points_match: bool,
}

/// Checks the double-cover properties; any internal disagreement is reported as an error.
pub fn fiber_check(f: &SymMatrixSeq, g: &QuotientGeometry) -> Result<FiberReport> {
    let pv: PointVariety = multilinearize(&build_sf(f)?)?;
    let minors: VarietyIdeal = char_variety(f, 2)?;
    let (Some(e), Some(x3), Some(x2)) = (&g.e.points, &g.x3.points, &g.x2.points) else {
        return Err(Error::PositiveDimensional("fiber checks need finite, resolved point sets".into()));
    };
    let mut images = vec![];
    let mut fixed_points_match = true;
    for p in e {
        let img = pv.phi(p)?;
        let fixed = pv.sigma(p)? == *p;
        if fixed != minors.vanishes_at(img.coords())? {
            fixed_points_match = false;
        }
        images.push(img);
    }
    let distinct = dedup_points(images.clone());
    let strictly_two_to_one = distinct.iter().all(|q| images.iter().filter(|i| *i == q).count() == 2);
    let free_action = g.fixed.count == Count::Finite(0);
    let x2_empty = x2.is_empty();
    let report = FiberReport {
        strictly_two_to_one,
        free_action,
        x2_empty,
        image_matches: same_points(&distinct, x3),
        count_identity: e.len() + x2.len() == 2 * x3.len(),
        fixed_points_match,
    };
    let agree = report.strictly_two_to_one == report.free_action && report.free_action == report.x2_empty;
    if !(agree && report.image_matches && report.count_identity && report.fixed_points_match) {
        return Err(Error::Inconsistent(format!("fiber lemma violated: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(c: &[i64]) -> Vec<Scalar> {
        c.iter().map(|&x| int(x)).collect()
    }

    fn family(a: i64, b: i64, c: i64) -> SymMatrixSeq {
        SymMatrixSeq::family(&int(a), &int(b), &int(c))
    }

    #[test]
    fn skew_row_with_a_line() {
        let f = family(0, 0, 0);
        let g = quotient_geometry(&f, &[v(&[1, 0, 0])]).unwrap();
        assert_eq!(g.e.count, Count::Infinite);
        assert_eq!(g.lines, 1);
        assert_eq!(g.fixed.count, Count::Finite(2));
        assert_eq!(g.counts(), (Count::Infinite, Count::Finite(2)));
        assert!(fiber_check(&f, &g).is_err());
    }

    #[test]
    fn smooth_skew_row() {
        let f = family(0, 0, 0);
        let g = quotient_geometry(&f, &[v(&[1, 1, 1])]).unwrap();
        assert_eq!(g.e.count, Count::Finite(6));
        assert_eq!(g.swaps(), Some(3));
        assert_eq!(g.counts(), (Count::Finite(3), Count::Finite(0)));
        let r = fiber_check(&f, &g).unwrap();
        assert!(r.strictly_two_to_one && r.free_action && r.x2_empty);
    }

    #[test]
    fn rows_with_fixed_points() {
        let f = family(1, 0, 0);
        let g = quotient_geometry(&f, &[v(&[0, 1, 0])]).unwrap();
        assert_eq!(g.e.count, Count::Finite(1));
        assert_eq!(g.fixed.count, Count::Finite(1));
        assert_eq!(g.counts(), (Count::Finite(1), Count::Finite(1)));
        assert!(!fiber_check(&f, &g).unwrap().free_action);

        let s = family(0, 0, 0);
        let g = quotient_geometry(&s, &[v(&[1, 1, 0])]).unwrap();
        assert_eq!(g.e.count, Count::Finite(3));
        assert_eq!((g.fixed.count, g.swaps()), (Count::Finite(1), Some(1)));
        assert_eq!(g.counts(), (Count::Finite(2), Count::Finite(1)));
        fiber_check(&s, &g).unwrap();
    }

    #[test]
    fn two_and_three_forms() {
        let s = family(0, 0, 0);
        let g = quotient_geometry(&s, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(g.e.count, Count::Finite(1));
        assert_eq!(g.counts(), (Count::Finite(1), Count::Finite(1)));
        let g = quotient_geometry(&s, &[v(&[1, 1, 0]), v(&[1, 0, 1])]).unwrap();
        assert_eq!(g.e, PointSet::empty());
        assert_eq!(g.counts(), (Count::Finite(0), Count::Finite(0)));
        let g = quotient_geometry(&s, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(g.e, PointSet::empty());
    }
}
