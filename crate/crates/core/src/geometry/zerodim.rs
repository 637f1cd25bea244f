use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::{dedup_points, ProjPoint};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quadratic::{commutator, HilbertEngine, QuadraticPresentation};
use crate::scalar::{int, QuadExt, Scalar};
use crate::unipoly::UniPoly;

/// Highest degree of the coordinate ring examined when looking for a stable Hilbert function.
pub const STABLE_SEARCH_DEGREE: usize = 9;

/// Cardinality of a variety: a number of points, or infinitely many.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<usize> {
        match self {
            Count::Finite(k) => Some(k),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(k) => write!(f, "{k}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(k) => s.serialize_u64(*k as u64),
            Count::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            N(u64),
            S(String),
        }
        match Wire::deserialize(d)? {
            Wire::N(k) => Ok(Count::Finite(k as usize)),
            Wire::S(s) if s == "inf" => Ok(Count::Infinite),
            Wire::S(s) => Err(serde::de::Error::custom(format!("bad count {s:?}"))),
        }
    }
}

/// A variety given by its size and, when representable, its points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub count: Count,
    /// `None` when some coordinates need more than one quadratic extension.
    pub points: Option<Vec<ProjPoint>>,
}

impl PointSet {
    pub fn empty() -> Self {
        Self { count: Count::Finite(0), points: Some(vec![]) }
    }

    pub fn infinite() -> Self {
        Self { count: Count::Infinite, points: None }
    }

    pub fn from_points(points: Vec<ProjPoint>) -> Self {
        let points = dedup_points(points);
        Self { count: Count::Finite(points.len()), points: Some(points) }
    }

    pub fn counted(k: usize) -> Self {
        Self { count: Count::Finite(k), points: None }
    }
}

/// Zero set in `ℙⁿ⁻¹` of homogeneous quadrics, counted without multiplicity.
///
/// The coordinate ring is truncated where its Hilbert function is constant; the number of
/// distinct points is the rank of the trace form of the multiplication operators `xᵢ/ℓ`.
pub fn projective_zeros(n: usize, quadrics: &[Matrix<Scalar>]) -> Result<PointSet> {
    let z = QuadricScheme::new(n, quadrics)?;
    match z {
        None => Ok(PointSet::infinite()),
        Some(z) => z.point_set(quadrics),
    }
}

/// Number of points with multiplicity, or `None` for positive-dimensional zero sets.
pub fn projective_degree(n: usize, quadrics: &[Matrix<Scalar>]) -> Result<Option<usize>> {
    Ok(QuadricScheme::new(n, quadrics)?.map(|z| z.degree))
}

struct QuadricScheme {
    n: usize,
    degree: usize,
    /// `xᵢ/ℓ` acting on the stable graded piece.
    operators: Vec<Matrix<Scalar>>,
}

impl QuadricScheme {
    fn new(n: usize, quadrics: &[Matrix<Scalar>]) -> Result<Option<Self>> {
        for q in quadrics {
            if q.rows() != n || q.cols() != n {
                return Err(Error::DimensionMismatch("quadric of the wrong size".into()));
            }
        }
        let mut rels: Vec<Matrix<Scalar>> = (0..n).flat_map(|i| (i + 1..n).map(move |j| commutator(n, i, j))).collect();
        rels.extend(quadrics.iter().cloned());
        let p = QuadraticPresentation::from_spanning(n, rels)?;
        let eng = HilbertEngine::new(&p, &[], STABLE_SEARCH_DEGREE)?;
        let h = eng.dims();
        let top = h[STABLE_SEARCH_DEGREE];
        if top == 0 {
            return Ok(Some(Self { n, degree: 0, operators: vec![] }));
        }
        let Some(d) = (1..=STABLE_SEARCH_DEGREE - 2).find(|&d| h[d..].iter().all(|&x| x == h[d])) else {
            return Ok(None);
        };
        let deg = h[d] as usize;
        let words = eng.basis_words(d);
        let image = |extra: &[(usize, Scalar)]| -> Result<Matrix<Scalar>> {
            let mut cols = vec![];
            for w in &words {
                let t: Vec<(Vec<usize>, Scalar)> = extra
                    .iter()
                    .map(|(i, c)| {
                        let mut v = w.clone();
                        v.push(*i);
                        (v, c.clone())
                    })
                    .collect();
                cols.push(eng.normal_form(&t)?);
            }
            Ok(Matrix::from_rows(cols)?.transpose())
        };
        for ell in separating_forms(n) {
            let l = image(&ell.iter().cloned().enumerate().collect::<Vec<_>>())?;
            let Some(linv) = l.inverse() else { continue };
            let operators = (0..n)
                .map(|i| image(&[(i, Scalar::one())]).map(|x| linv.mul(&x)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(Self { n, degree: deg, operators }));
        }
        Err(Error::Inconsistent("no linear form is a non-zero-divisor on the stable piece".into()))
    }

    /// Rank of `(P, Q) ↦ tr(PQ)` on the operator algebra.
    fn distinct(&self) -> usize {
        if self.degree == 0 {
            return 0;
        }
        let algebra = operator_algebra(&self.operators, self.degree);
        let m = algebra.len();
        let gram = Matrix::from_fn(m, m, |i, j| trace(&algebra[i].mul(&algebra[j])));
        gram.rank()
    }

    fn point_set(&self, quadrics: &[Matrix<Scalar>]) -> Result<PointSet> {
        let count = self.distinct();
        if count == 0 {
            return Ok(PointSet::empty());
        }
        let mut values: Vec<Vec<QuadExt>> = vec![];
        for t in &self.operators {
            let roots = charpoly(t).resolve_roots()?;
            match roots.all() {
                Ok(v) => {
                    let mut distinct: Vec<QuadExt> = vec![];
                    for x in v {
                        if !distinct.contains(&x) {
                            distinct.push(x);
                        }
                    }
                    values.push(distinct)
                }
                Err(_) => return Ok(PointSet::counted(count)),
            }
        }
        let mut found = vec![];
        let mut idx = vec![0usize; self.n];
        'outer: loop {
            let cand: Vec<QuadExt> = idx.iter().enumerate().map(|(i, &k)| values[i][k].clone()).collect();
            if single_extension(&cand) && cand.iter().any(|c| !c.is_zero()) && vanishes(quadrics, &cand) {
                found.push(ProjPoint::new(cand)?);
            }
            for i in 0..self.n {
                idx[i] += 1;
                if idx[i] < values[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
        let found = dedup_points(found);
        if found.len() == count {
            Ok(PointSet { count: Count::Finite(count), points: Some(found) })
        } else if found.len() > count {
            Err(Error::Inconsistent(format!("{} candidate points but trace rank {count}", found.len())))
        } else {
            Ok(PointSet::counted(count))
        }
    }
}

/// Coordinate forms first, then fixed mixtures.
fn separating_forms(n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let units = (0..n).map(move |k| (0..n).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect());
    let mixed =
        (0..12i64).map(move |k| (0..n as i64).map(|i| int(1 + ((k + 2) * (i + 1) * (i + k + 3)) % 11 - 5 * (k % 2) * (i % 2))).collect());
    units.chain(mixed)
}

fn trace(m: &Matrix<Scalar>) -> Scalar {
    (0..m.rows()).fold(Scalar::zero(), |acc, i| acc + m.get(i, i))
}

fn flat(m: &Matrix<Scalar>) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// A basis of the unital algebra generated by commuting operators.
fn operator_algebra(gens: &[Matrix<Scalar>], bound: usize) -> Vec<Matrix<Scalar>> {
    let size = gens[0].rows();
    let mut basis = vec![Matrix::identity(size)];
    let mut flats = vec![flat(&basis[0])];
    let mut frontier = basis.clone();
    while !frontier.is_empty() && basis.len() < bound {
        let mut next = vec![];
        for f in &frontier {
            for g in gens {
                let p = f.mul(g);
                flats.push(flat(&p));
                if crate::matrix::rank_of(&flats) == flats.len() {
                    basis.push(p.clone());
                    next.push(p);
                } else {
                    flats.pop();
                }
            }
        }
        frontier = next;
    }
    basis
}

/// Characteristic polynomial by the Faddeev–LeVerrier recursion.
pub(crate) fn charpoly(a: &Matrix<Scalar>) -> UniPoly<Scalar> {
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::<Scalar>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            let v = next.get(i, i).clone() + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        m = next;
        let c = -trace(&a.mul(&m)) / int(k as i64);
        coeffs[n - k] = c;
    }
    UniPoly::new(coeffs)
}

fn single_extension(v: &[QuadExt]) -> bool {
    let mut d = None;
    for c in v.iter().filter(|c| !c.is_rational()) {
        match &d {
            None => d = Some(c.radicand().clone()),
            Some(x) if x != c.radicand() => return false,
            _ => {}
        }
    }
    true
}

fn vanishes(quadrics: &[Matrix<Scalar>], v: &[QuadExt]) -> bool {
    quadrics.iter().all(|q| {
        let mut acc = QuadExt::zero();
        for i in 0..v.len() {
            for j in 0..v.len() {
                let c = q.get(i, j);
                if !c.is_zero() {
                    acc = acc + QuadExt::rational(c.clone()) * v[i].clone() * v[j].clone();
                }
            }
        }
        acc.is_zero()
    })
}

/// Symmetric coefficient matrix of a homogeneous quadric.
pub fn quadric_matrix(p: &crate::poly::MultiPoly) -> Result<Matrix<Scalar>> {
    let n = p.nvars();
    if !p.is_zero() && (!p.is_homogeneous() || p.degree().finite() != Some(2)) {
        return Err(Error::Invalid("expected a homogeneous quadric".into()));
    }
    let half = Scalar::new(1.into(), 2.into());
    let mut m = Matrix::zeros(n, n);
    for (e, c) in p.terms() {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            m.set(i, j, c * &half);
            m.set(j, i, c * &half);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use crate::poly::MultiPoly;

    fn q(p: &MultiPoly) -> Matrix<Scalar> {
        quadric_matrix(p).unwrap()
    }

    fn vars() -> [MultiPoly; 3] {
        [MultiPoly::var(3, 0), MultiPoly::var(3, 1), MultiPoly::var(3, 2)]
    }

    #[test]
    fn charpoly_of_companion() {
        let a = int_matrix(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(charpoly(&a).coeffs(), &[int(-6), int(11), int(-6), int(1)]);
    }

    #[test]
    fn four_points_of_two_conics() {
        let [x, y, z] = vars();
        let f = &(&x * &x) - &(&z * &z);
        let g = &(&y * &y) - &(&z * &z);
        let s = projective_zeros(3, &[q(&f), q(&g)]).unwrap();
        assert_eq!(s.count, Count::Finite(4));
        assert_eq!(s.points.unwrap().len(), 4);
    }

    #[test]
    fn tangency_reduces_the_count() {
        let [x, y, z] = vars();
        // y z − x² and y² meet only at (0:0:1), with multiplicity 4
        let f = &(&y * &z) - &(&x * &x);
        let g = &y * &y;
        let s = projective_zeros(3, &[q(&f), q(&g)]).unwrap();
        assert_eq!(s.count, Count::Finite(1));
        assert_eq!(projective_degree(3, &[q(&f), q(&g)]).unwrap(), Some(4));
        assert_eq!(s.points.unwrap(), vec![ProjPoint::from_ints(&[0, 0, 1]).unwrap()]);
    }

    #[test]
    fn points_in_several_extensions_are_counted() {
        let [x, y, z] = vars();
        let f = &(&x * &x) - &(&z * &z).scale(&int(2));
        let g = &(&y * &y) - &(&z * &z).scale(&int(3));
        let s = projective_zeros(3, &[q(&f), q(&g)]).unwrap();
        assert_eq!(s.count, Count::Finite(4));
        assert!(s.points.is_none());
    }

    #[test]
    fn common_component_is_infinite() {
        let [x, y, z] = vars();
        let f = &x * &y;
        let g = &x * &z;
        assert_eq!(projective_zeros(3, &[q(&f), q(&g)]).unwrap().count, Count::Infinite);
        assert_eq!(projective_zeros(3, &[]).unwrap().count, Count::Infinite);
    }

    #[test]
    fn empty_and_coordinate_points() {
        let [x, y, z] = vars();
        let sq: Vec<Matrix<Scalar>> = [&x * &x, &y * &y, &z * &z].iter().map(q).collect();
        assert_eq!(projective_zeros(3, &sq).unwrap(), PointSet::empty());
        let mixed: Vec<Matrix<Scalar>> = [&x * &y, &y * &z, &x * &z].iter().map(q).collect();
        let s = projective_zeros(3, &mixed).unwrap();
        assert_eq!(s.count, Count::Finite(3));
    }

    #[test]
    fn count_serialization() {
        assert_eq!(serde_json::to_string(&Count::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Count>("3").unwrap(), Count::Finite(3));
    }
}
