//! Univariate polynomials over a field, binary forms, and exact root extraction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Degree, MultiPoly};
use crate::scalar::{int, lcm_of_denominators, Field, QuadExt, Scalar};

/// A univariate polynomial, coefficients stored from the constant term upward.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![K::zero(), K::one()])
    }

    /// `c · t^k`.
    pub fn monomial(k: usize, c: K) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() as u32 - 1)
        }
    }

    /// Degree as a count; 0 for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.lead();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![K::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() / dl.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, p: &Self) -> bool {
        p.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead();
        self.scale(&(K::one() / l))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * K::from_scalar(&int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(K::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_root_count(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.squarefree_part().deg())
    }

    /// Squarefree polynomial whose roots are those of `self` with multiplicity at least `k`.
    pub fn roots_of_multiplicity_at_least(&self, k: usize) -> Self {
        let mut g = self.clone();
        let mut d = self.clone();
        for _ in 1..k {
            d = d.derivative();
            g = g.gcd(&d);
        }
        if g.is_zero() {
            return Self::zero();
        }
        g.squarefree_part()
    }

    /// Multiplicity of the roots of the squarefree factor `f` in `self`.
    pub fn multiplicity_of(&self, f: &Self) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && f.divides(&p) && f.deg() > 0 {
            p = p.div_rem(f).0;
            m += 1;
        }
        m
    }
}

impl UniPoly<Scalar> {
    /// Reads a polynomial in one variable `var` of a [`MultiPoly`]; `None` if other variables occur.
    pub fn from_multi(p: &MultiPoly, var: usize) -> Option<Self> {
        let mut v = vec![Scalar::zero(); p.degree_in(var).map_or(0, |d| d as usize + 1)];
        for (e, c) in p.terms() {
            if e.iter().enumerate().any(|(i, &x)| i != var && x > 0) {
                return None;
            }
            v[e[var] as usize] = c.clone();
        }
        Some(Self::new(v))
    }

    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn lift(&self) -> UniPoly<QuadExt> {
        UniPoly::new(self.coeffs.iter().map(QuadExt::from_scalar).collect())
    }

    /// Integer coefficients with content 1 and the same roots.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = lcm_of_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Scalar::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        ints.into_iter().map(|x| x / &g).collect()
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    fn sign_changes(seq: &[Self], x: &Scalar) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in seq {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        if self.deg() == 0 {
            return vec![];
        }
        let mut p = self.squarefree_part();
        let mut roots = vec![];
        if p.coeff(0).is_zero() {
            roots.push(Scalar::zero());
            p = p.div_rem(&Self::t()).0;
        }
        if p.deg() == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let lead = Scalar::from_integer(ints.last().unwrap().abs());
        let bound = Scalar::one()
            + self_max_ratio(&ints);
        let seq = p.sturm_sequence();
        let width = Scalar::one() / &lead;
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = Self::sign_changes(&seq, &lo) - Self::sign_changes(&seq, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && &hi - &lo < width {
                let a = (&lo * &lead).floor().to_integer();
                let b = (&hi * &lead).ceil().to_integer();
                let mut k = a;
                while k <= b {
                    let r = Scalar::new(k.clone(), lead.to_integer());
                    if r > lo && r <= hi && p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                    k += 1;
                }
                continue;
            }
            let mid = (&lo + &hi) / int(2);
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Finds the distinct roots: rational ones, conjugate pairs in one quadratic extension,
    /// and leftover factors of degree ≥ 3 that are counted but not solved.
    pub fn resolve_roots(&self) -> Result<Roots> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut p = self.squarefree_part();
        let rational = p.rational_roots();
        for r in &rational {
            p = p.div_rem(&Self::new(vec![-r.clone(), Scalar::one()])).0;
        }
        let mut quadratic = vec![];
        let mut unresolved = vec![];
        match p.deg() {
            0 => {}
            2 => {
                let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
                let disc = &b * &b - int(4) * &a * &c;
                let s = QuadExt::sqrt_of(&disc);
                let two_a = QuadExt::from_scalar(&(int(2) * &a));
                let mb = QuadExt::from_scalar(&-b);
                quadratic.push((mb.clone() + s.clone()) / two_a.clone());
                quadratic.push((mb - s) / two_a);
            }
            _ => unresolved.push(p),
        }
        Ok(Roots { rational, quadratic, unresolved })
    }
}

fn self_max_ratio(ints: &[BigInt]) -> Scalar {
    let lead = ints.last().unwrap().abs();
    ints.iter()
        .map(|c| Scalar::new(c.abs(), lead.clone()))
        .max()
        .unwrap_or_else(Scalar::zero)
}

/// Distinct roots of a rational polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Roots {
    pub rational: Vec<Scalar>,
    /// Irrational roots lying in a single quadratic extension.
    pub quadratic: Vec<QuadExt>,
    /// Squarefree factors whose roots need an extension of degree ≥ 3.
    pub unresolved: Vec<UniPoly<Scalar>>,
}

impl Roots {
    pub fn count(&self) -> usize {
        self.rational.len() + self.quadratic.len() + self.unresolved.iter().map(|p| p.deg()).sum::<usize>()
    }

    pub fn is_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// All roots as extension elements, when fully resolved.
    pub fn all(&self) -> Result<Vec<QuadExt>> {
        if let Some(p) = self.unresolved.first() {
            return Err(Error::NeedsExtension { degree: p.deg() });
        }
        Ok(self.rational.iter().map(QuadExt::from_scalar).chain(self.quadratic.iter().cloned()).collect())
    }
}

/// A binary form `f(t, s)` of a fixed formal degree, stored as its affine part `f(t, 1)`
/// together with the multiplicity of the root `(1 : 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    affine: UniPoly<Scalar>,
    at_infinity: usize,
}

impl BinaryForm {
    /// From coefficients `c_k` of `t^k s^(degree-k)`.
    pub fn from_coeffs(coeffs: Vec<Scalar>, degree: usize) -> Self {
        assert!(coeffs.len() <= degree + 1, "too many coefficients for the formal degree");
        let affine = UniPoly::new(coeffs);
        let at_infinity = if affine.is_zero() { 0 } else { degree - affine.deg() };
        Self { affine, at_infinity }
    }

    /// From a homogeneous polynomial in two variables `(t, s)`.
    pub fn from_multi(p: &MultiPoly) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::VarCountMismatch { expected: 2, found: p.nvars() });
        }
        if !p.is_homogeneous() {
            return Err(Error::Invalid("binary form must be homogeneous".into()));
        }
        let d = p.degree().finite().unwrap_or(0) as usize;
        let mut c = vec![Scalar::zero(); d + 1];
        for (e, v) in p.terms() {
            c[e[0] as usize] = v.clone();
        }
        Ok(Self::from_coeffs(c, d))
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    pub fn affine(&self) -> &UniPoly<Scalar> {
        &self.affine
    }

    pub fn gcd(&self, o: &Self) -> Self {
        match (self.is_zero(), o.is_zero()) {
            (true, _) => o.clone(),
            (_, true) => self.clone(),
            _ => Self {
                affine: self.affine.gcd(&o.affine),
                at_infinity: self.at_infinity.min(o.at_infinity),
            },
        }
    }

    /// Number of distinct points of `ℙ¹` where the form vanishes; `None` when it is zero.
    pub fn distinct_root_count(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.affine.squarefree_part().deg() + usize::from(self.at_infinity > 0))
    }

    /// Roots as `(t, s)` pairs. Fails when an irreducible factor has degree ≥ 3.
    pub fn roots(&self) -> Result<Vec<[QuadExt; 2]>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: Vec<[QuadExt; 2]> =
            self.affine.resolve_roots()?.all()?.into_iter().map(|t| [t, QuadExt::one()]).collect();
        if self.at_infinity > 0 {
            out.push([QuadExt::one(), QuadExt::zero()]);
        }
        Ok(out)
    }
}
