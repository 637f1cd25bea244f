use super::linear::LinearLocus;
use super::pair::PointVariety;
use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// Points of the curve found on lines through a known rational point `base`.
///
/// Each line meets the cubic in `base` and in the roots of a residual binary form, which
/// lie over `ℚ` or a single quadratic extension. Directions are enumerated deterministically.
pub fn sample_curve_points(pv: &PointVariety, base: &ProjPoint, count: usize) -> Result<Vec<ProjPoint>> {
    let b = base.to_rational().ok_or_else(|| Error::Invalid("base point must be rational".into()))?;
    if !pv.contains(base)? {
        return Err(Error::NotOnCurve(base.to_string()));
    }
    let n = pv.n();
    let mut out: Vec<ProjPoint> = vec![];
    for dir in directions(n) {
        if out.len() >= count {
            break;
        }
        let locus = LinearLocus { n, basis: vec![b.clone(), dir] };
        if crate::matrix::rank_of(&locus.basis) < 2 {
            continue;
        }
        let zeros = locus.common_zeros(&[pv.curve().clone()])?;
        let pts = match zeros.points {
            Some(p) => p,
            None if zeros.count.finite().is_none() => (1..=4).map(|k| locus.sample(k)).collect::<Result<Vec<_>>>()?,
            None => continue,
        };
        for p in pts {
            if !out.contains(&p) && out.len() < count {
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn directions(n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    (1i64..).flat_map(move |r| {
        let side = 2 * r + 1;
        (0..side.pow(n as u32)).filter_map(move |code| {
            let v: Vec<i64> = (0..n as u32).map(|k| (code / side.pow(k)) % side - r).collect();
            (v.iter().map(|x| x.abs()).max() == Some(r)).then(|| v.into_iter().map(int).collect())
        })
    })
}
