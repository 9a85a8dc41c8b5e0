//! Truncated polynomial rings `R[y_1, ..., y_k] / (degree > cap)` with
//! even-degree generators, used as a stand-in for the cohomology of a
//! fixed component. Every element with zero constant term is nilpotent.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::ring::{ratio, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// The ring structure: a monomial basis of all monomials of degree at
/// most `cap`, a dense multiplication table, and an integration functional.
#[derive(Debug)]
pub struct NilpotentRing {
    generators: Vec<Generator>,
    cap: u32,
    basis: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
    table: Vec<Option<usize>>,
    integral: Vec<(usize, i64)>,
}

impl NilpotentRing {
    /// `integral` lists `(monomial exponents, weight)`; the integral of a
    /// class is the weighted sum of those coefficients.
    pub fn new(generators: Vec<Generator>, cap: u32, integral: Vec<(Vec<u32>, i64)>) -> Result<Arc<Self>> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(Error::schema(
                    format!("ring.generators[{i}].degree"),
                    format!("generator degree must be positive and even, got {}", g.degree),
                ));
            }
        }
        let k = generators.len();
        let gdeg: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let mut basis: Vec<Vec<u32>> = vec![vec![0; k]];
        // breadth-first over exponent vectors
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                let first = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for i in first..k {
                    let mut mm = m.clone();
                    mm[i] += 1;
                    let d: u32 = mm.iter().zip(&gdeg).map(|(e, g)| e * g).sum();
                    if d <= cap {
                        next.push(mm);
                    }
                }
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort_by_key(|m| (m.iter().zip(&gdeg).map(|(e, g)| e * g).sum::<u32>(), std::cmp::Reverse(m.clone())));
        let degrees: Vec<u32> = basis.iter().map(|m| m.iter().zip(&gdeg).map(|(e, g)| e * g).sum()).collect();
        let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let mut table = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                table[i * n + j] = index.get(&prod).copied();
            }
        }
        let mut integ = Vec::new();
        for (mono, w) in integral {
            if mono.len() != k {
                return Err(Error::schema("ring.integral", "monomial has the wrong number of exponents"));
            }
            let i = *index.get(&mono).ok_or_else(|| {
                Error::schema("ring.integral", "integration monomial exceeds the degree cap")
            })?;
            integ.push((i, w));
        }
        Ok(Arc::new(NilpotentRing { generators, cap, basis, degrees, index, table, integral: integ }))
    }

    /// The ring of a point: just the coefficients.
    pub fn point() -> Arc<Self> {
        NilpotentRing::new(vec![], 0, vec![(vec![], 1)]).expect("point ring")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Smallest `k` with `n^k = 0` for every `n` of zero constant term.
    pub fn nilpotency(&self) -> usize {
        let dmin = self.generators.iter().map(|g| g.degree).min().unwrap_or(2);
        (self.cap / dmin) as usize + 1
    }

    /// Parses a monomial like `"y1^2*y2"` or `"1"`.
    pub fn parse_monomial(generators: &[Generator], s: &str) -> std::result::Result<Vec<u32>, String> {
        let mut e = vec![0u32; generators.len()];
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(e);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (n.trim(), p.trim().parse::<u32>().map_err(|_| format!("bad exponent in {factor:?}"))?),
                None => (factor, 1),
            };
            let i = generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| format!("unknown generator {name:?}"))?;
            e[i] += pow;
        }
        Ok(e)
    }
}

/// An element of a [`NilpotentRing`] with coefficients in `R`.
#[derive(Clone)]
pub struct NilpotentClass<R> {
    ring: Arc<NilpotentRing>,
    c: Vec<R>,
}

impl<R: Ring> fmt::Debug for NilpotentClass<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl<R: Ring> NilpotentClass<R> {
    pub fn zero(ring: &Arc<NilpotentRing>) -> Self {
        NilpotentClass { ring: ring.clone(), c: vec![R::zero(); ring.dim()] }
    }

    pub fn constant(ring: &Arc<NilpotentRing>, v: R) -> Self {
        let mut x = Self::zero(ring);
        x.c[0] = v;
        x
    }

    pub fn one(ring: &Arc<NilpotentRing>) -> Self {
        Self::constant(ring, R::one())
    }

    pub fn generator(ring: &Arc<NilpotentRing>, i: usize) -> Self {
        let mut e = vec![0; ring.generators.len()];
        e[i] = 1;
        let mut x = Self::zero(ring);
        if let Some(&k) = ring.index.get(&e) {
            x.c[k] = R::one();
        }
        x
    }

    pub fn from_coeffs(ring: &Arc<NilpotentRing>, c: Vec<R>) -> Self {
        assert_eq!(c.len(), ring.dim());
        NilpotentClass { ring: ring.clone(), c }
    }

    pub fn ring(&self) -> &Arc<NilpotentRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn constant_term(&self) -> &R {
        &self.c[0]
    }

    pub fn nilpotent_part(&self) -> Self {
        let mut x = self.clone();
        x.c[0] = R::zero();
        x
    }

    pub fn add(&self, o: &Self) -> Self {
        NilpotentClass { ring: self.ring.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        NilpotentClass { ring: self.ring.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        NilpotentClass { ring: self.ring.clone(), c: self.c.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, s: &R) -> Self {
        NilpotentClass { ring: self.ring.clone(), c: self.c.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.ring.dim();
        let mut c = vec![R::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(k) = self.ring.table[i * n + j] {
                    c[k] = c[k].clone() + a.clone() * b.clone();
                }
            }
        }
        NilpotentClass { ring: self.ring.clone(), c }
    }

    /// `sum_k jet_k x^k` for `x` with zero constant term.
    pub fn compose(jet: &Jet<R>, x: &Self) -> Self {
        debug_assert!(x.c[0].is_zero());
        let mut acc = Self::zero(&x.ring);
        let terms = jet.len().min(x.ring.nilpotency());
        for k in (0..terms).rev() {
            acc = acc.mul(x).add(&Self::constant(&x.ring, jet.coeff(k)));
        }
        acc
    }

    pub fn try_inverse(&self) -> Option<Self> {
        let a0_inv = self.c[0].try_inv()?;
        let n = self.nilpotent_part().scale(&a0_inv);
        // (1 + n)^{-1} = sum (-n)^k
        let minus_n = n.neg();
        let mut term = Self::one(&self.ring);
        let mut acc = Self::one(&self.ring);
        for _ in 1..self.ring.nilpotency() {
            term = term.mul(&minus_n);
            acc = acc.add(&term);
        }
        Some(acc.scale(&a0_inv))
    }

    pub fn try_exp(&self) -> Option<Self> {
        let e0 = self.c[0].try_exp()?;
        let n = self.nilpotent_part();
        let mut term = Self::one(&self.ring);
        let mut acc = Self::one(&self.ring);
        for k in 1..self.ring.nilpotency() {
            term = term.mul(&n).scale(&R::from_ratio(&ratio(1, k as i64)));
            acc = acc.add(&term);
        }
        Some(acc.scale(&e0))
    }

    /// Homogeneous component of cohomological degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        let c = self
            .c
            .iter()
            .zip(&self.ring.degrees)
            .map(|(a, &dd)| if dd == d { a.clone() } else { R::zero() })
            .collect();
        NilpotentClass { ring: self.ring.clone(), c }
    }

    pub fn integrate(&self) -> R {
        self.ring.integral.iter().fold(R::zero(), |acc, &(i, w)| acc + self.c[i].clone() * R::from_int(w))
    }

    pub fn magnitude(&self) -> f64 {
        self.c.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }
}

impl NilpotentClass<Complex64> {
    /// Coefficient-wise `max |a - b| / max(1, max |b|)`.
    pub fn relative_residual(&self, other: &Self) -> f64 {
        let scale = other.magnitude().max(1.0);
        self.sub(other).magnitude() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn two_gen(cap: u32) -> Arc<NilpotentRing> {
        let g = vec![
            Generator { name: "y1".into(), degree: 2 },
            Generator { name: "y2".into(), degree: 2 },
        ];
        let top = NilpotentRing::parse_monomial(&g, "y1*y2").unwrap();
        NilpotentRing::new(g, cap, vec![(top, 1)]).unwrap()
    }

    #[test]
    fn basis_size_and_truncation() {
        let r = two_gen(4);
        assert_eq!(r.dim(), 6);
        let y1 = NilpotentClass::<BigRational>::generator(&r, 0);
        let cube = y1.mul(&y1).mul(&y1);
        assert!(cube.coeffs().iter().all(|c| Ring::is_zero(c)));
        assert_eq!(r.nilpotency(), 3);
    }

    #[test]
    fn inverse_and_exp() {
        let r = two_gen(4);
        let y1 = NilpotentClass::<BigRational>::generator(&r, 0);
        let y2 = NilpotentClass::<BigRational>::generator(&r, 1);
        let u = NilpotentClass::constant(&r, ratio(3, 1)).add(&y1).sub(&y2.scale(&ratio(2, 1)));
        let prod = u.mul(&u.try_inverse().unwrap());
        assert_eq!(prod.coeffs()[0], ratio(1, 1));
        assert!(prod.coeffs()[1..].iter().all(|c| Ring::is_zero(c)));
        // exp(y1) exp(y2) = exp(y1 + y2), integral of exp(y1 + y2) = coefficient of y1 y2 = 1
        let e = y1.add(&y2).try_exp().unwrap();
        assert_eq!(e.integrate(), ratio(1, 1));
        assert!(y1.try_inverse().is_none());
    }

    #[test]
    fn compose_matches_exp() {
        let r = two_gen(4);
        let y1 = NilpotentClass::<BigRational>::generator(&r, 0);
        let exp_jet = Jet::variable(ratio(0, 1), 5).try_exp().unwrap();
        let a = NilpotentClass::compose(&exp_jet, &y1);
        let b = y1.try_exp().unwrap();
        assert_eq!(a.coeffs(), b.coeffs());
    }

    #[test]
    fn odd_degree_rejected() {
        let g = vec![Generator { name: "y".into(), degree: 3 }];
        assert!(NilpotentRing::new(g, 6, vec![]).is_err());
    }

    #[test]
    fn point_ring() {
        let p = NilpotentRing::point();
        assert_eq!(p.dim(), 1);
        let x = NilpotentClass::constant(&p, Complex64::new(2.0, 1.0));
        assert_eq!(x.integrate(), Complex64::new(2.0, 1.0));
    }
}
