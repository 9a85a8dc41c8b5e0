//! Genera from characteristic series.
//!
//! For an odd normalized series `f(x) = x + ...` the genus of a manifold
//! with Pontryagin roots `x_j^2` is `< prod_j x_j / f(x_j), [M] >`. We take
//! `log(x/f(x)) = sum_i a_i x^{2i}`, so the total class is
//! `exp(sum_i a_i s_i)` with `s_i` the power sums of the `x_j^2`, rewrite
//! the `s_i` in Pontryagin classes by Newton's identity and pair the top
//! component with the Pontryagin numbers.
//!
//! Everything is generic over the coefficient ring: exact rationals for
//! the A-hat genus, exact `q`-series for the Witten and Ochanine genera,
//! complex numbers for a theta function at fixed `tau`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::jet::{Jet, QSeries};
use crate::nilpotent::{NilpotentClass, NilpotentRing};
use crate::ring::{ratio, Ring};
use crate::theta::{ochanine_product, sigma_product, theta_jet, ThetaFunction};
use crate::{DIM_CAP, Q_ORDER_CAP};

/// A partition `i_1 >= i_2 >= ...` standing for `p_{i_1} p_{i_2} ...`.
pub type Partition = Vec<u32>;

/// Coefficients of an odd normalized series `x + c_3 x^3 + ...`.
#[derive(Clone, Debug)]
pub struct CharacteristicSeries<R> {
    coeffs: Jet<R>,
    source: String,
}

impl<R: Ring> CharacteristicSeries<R> {
    /// Checks the normalization `c_0 = 0, c_1 = 1` and oddness (up to a
    /// relative `1e-10` for inexact rings).
    pub fn new(coeffs: Jet<R>, source: impl Into<String>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::SeriesNotNormalized("need at least the linear coefficient".into()));
        }
        let scale = 1.0 + coeffs.magnitude();
        if coeffs.coeff(0).magnitude() > 1e-10 * scale {
            return Err(Error::SeriesNotNormalized("constant term is not zero".into()));
        }
        if (coeffs.coeff(1) - R::one()).magnitude() > 1e-10 {
            return Err(Error::SeriesNotNormalized("linear coefficient is not one".into()));
        }
        for k in (2..coeffs.len()).step_by(2) {
            if coeffs.coeff(k).magnitude() > 1e-10 * scale {
                return Err(Error::SeriesNotNormalized(format!("even coefficient c_{k} does not vanish")));
            }
        }
        Ok(CharacteristicSeries { coeffs, source: source.into() })
    }

    pub fn coeffs(&self) -> &Jet<R> {
        &self.coeffs
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Highest stored power of `x`.
    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `log(x / f(x))` as a series in `t = x^2`, coefficients `a_0 = 0, a_1, ...`.
    fn log_q_in_t(&self, k: usize) -> Result<Jet<R>> {
        let need = 2 * k + 1;
        if self.cap() < need {
            return Err(Error::SeriesNotNormalized(format!(
                "series known to x^{} but x^{need} is needed",
                self.cap()
            )));
        }
        let f_over_x = self.coeffs.clone().truncate(need + 1).div_by_variable().ok_or_else(|| {
            Error::SeriesNotNormalized("constant term is not zero".into())
        })?;
        let q = f_over_x.try_inv().ok_or(Error::NonUnit)?;
        q.even_part_in_square().truncate(k + 1).try_log().ok_or(Error::NonUnit)
    }
}

/// `a(x) = e^{x/2} - e^{-x/2}` to order `x^cap`.
pub fn a_hat_series(cap: usize) -> CharacteristicSeries<BigRational> {
    let x = Jet::variable(BigRational::from_integer(0.into()), cap + 1);
    let half = x.scale(&ratio(1, 2));
    let f = half.try_exp().unwrap() - (-half).try_exp().unwrap();
    CharacteristicSeries { coeffs: f, source: "a-hat".into() }
}

/// The sigma function as a series in `x` with exact `q`-series
/// coefficients mod `q^{q_order+1}`.
pub fn sigma_q_series(cap: usize, q_order: usize) -> Result<CharacteristicSeries<QSeries>> {
    check_q_order(q_order)?;
    let x = Jet::variable(QSeries::zeros(q_order + 1), cap + 1);
    let q = Jet::constant(QSeries::q_power(1, q_order + 1));
    let f = sigma_product(&x, &q, q_order + 1).ok_or(Error::NonUnit)?;
    CharacteristicSeries::new(f, "sigma")
}

/// The Ochanine function as a series in `x` with exact `q`-series
/// coefficients mod `q^{q_order+1}`.
pub fn ochanine_q_series(cap: usize, q_order: usize) -> Result<CharacteristicSeries<QSeries>> {
    check_q_order(q_order)?;
    let x = Jet::variable(QSeries::zeros(q_order + 1), cap + 1);
    let q = Jet::constant(QSeries::q_power(1, q_order + 1));
    let f = ochanine_product(&x, &q, q_order + 1).ok_or(Error::NonUnit)?;
    CharacteristicSeries::new(f, "ochanine")
}

/// Taylor series of a theta function at the origin, at fixed `tau`.
pub fn theta_series(theta: &dyn ThetaFunction, cap: usize) -> Result<CharacteristicSeries<Complex64>> {
    let jet = theta.eval_jet(&Jet::variable(Complex64::new(0.0, 0.0), cap + 1))?;
    CharacteristicSeries::new(jet, theta.name())
}

fn check_q_order(q_order: usize) -> Result<()> {
    if q_order > Q_ORDER_CAP {
        return Err(Error::QOrderCap { order: q_order, cap: Q_ORDER_CAP });
    }
    Ok(())
}

/// Pontryagin-number data of a closed oriented manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldData {
    pub name: Option<String>,
    pub dim: usize,
    pub pontryagin: BTreeMap<Partition, i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifoldJson {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    pontryagin: BTreeMap<String, i64>,
}

impl ManifoldData {
    pub fn new(dim: usize, numbers: impl IntoIterator<Item = (Partition, i64)>) -> Result<Self> {
        let mut pontryagin = BTreeMap::new();
        for (mut p, v) in numbers {
            p.sort_unstable_by(|a, b| b.cmp(a));
            pontryagin.insert(p, v);
        }
        let m = ManifoldData { name: None, dim, pontryagin };
        m.validate()?;
        Ok(m)
    }

    /// Parses `{"dim": 8, "pontryagin": {"p1^2": A, "p2": B}}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let j: ManifoldJson = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::schema(e.path().to_string(), e.inner().to_string()))?;
        let mut pontryagin = BTreeMap::new();
        for (key, v) in j.pontryagin {
            let p = parse_partition(&key)?;
            pontryagin.insert(p, v);
        }
        let m = ManifoldData { name: j.name, dim: j.dim, pontryagin };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.dim % 2 == 1 {
            return Err(Error::schema("dim", format!("dimension must be even, got {}", self.dim)));
        }
        if self.dim > DIM_CAP {
            return Err(Error::DimensionCap { dim: self.dim, cap: DIM_CAP });
        }
        let weight = (self.dim / 4) as u32;
        for p in self.pontryagin.keys() {
            if self.dim % 4 != 0 || p.iter().sum::<u32>() != weight {
                return Err(Error::BadPontryaginMonomial(partition_name(p)));
            }
        }
        Ok(())
    }

    /// Pontryagin number of a partition; every partition of `dim/4` is
    /// required.
    pub fn number(&self, p: &Partition) -> Result<i64> {
        self.pontryagin.get(p).copied().ok_or_else(|| Error::MissingPontryagin(partition_name(p)))
    }
}

/// Parses `"p1^2*p2"`, `"p1^2 p2"` or `"p3"` into a partition.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let bad = || Error::BadPontryaginMonomial(s.to_string());
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    let number = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        s[start..*i].parse().ok()
    };
    while i < b.len() {
        match b[i] {
            b' ' | b'*' => i += 1,
            b'p' => {
                i += 1;
                let idx = number(&mut i).filter(|&v| v > 0).ok_or_else(bad)?;
                let mut pow = 1;
                if i < b.len() && b[i] == b'^' {
                    i += 1;
                    pow = number(&mut i).ok_or_else(bad)?;
                }
                out.extend(std::iter::repeat_n(idx, pow as usize));
            }
            _ => return Err(bad()),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

pub fn partition_name(p: &Partition) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let j = p[i..].iter().take_while(|&&v| v == p[i]).count();
        parts.push(if j == 1 { format!("p{}", p[i]) } else { format!("p{}^{}", p[i], j) });
        i += j;
    }
    parts.join("*")
}

/// All partitions of `n`, parts in decreasing order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Polynomials in Pontryagin classes, truncated above weight `max`.
#[derive(Clone, Debug)]
struct PPoly<R> {
    terms: BTreeMap<Partition, R>,
    max: u32,
}

impl<R: Ring> PPoly<R> {
    fn zero(max: u32) -> Self {
        PPoly { terms: BTreeMap::new(), max }
    }

    fn monomial(p: Partition, c: R, max: u32) -> Self {
        let mut s = Self::zero(max);
        if p.iter().sum::<u32>() <= max {
            s.terms.insert(p, c);
        }
        s
    }

    fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            let e = t.entry(k.clone()).or_insert_with(R::zero);
            *e = e.clone() + v.clone();
        }
        PPoly { terms: t, max: self.max }
    }

    fn scale(&self, c: &R) -> Self {
        PPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(), max: self.max }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.max);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if a.iter().sum::<u32>() + b.iter().sum::<u32>() > self.max {
                    continue;
                }
                let mut p = a.clone();
                p.extend(b);
                p.sort_unstable_by(|u, v| v.cmp(u));
                let e = out.terms.entry(p).or_insert_with(R::zero);
                *e = e.clone() + x.clone() * y.clone();
            }
        }
        out
    }
}

/// The genus as a linear form on Pontryagin numbers of dimension `4k`.
#[derive(Clone, Debug)]
pub struct GenusPolynomial<R> {
    pub weight: u32,
    pub coefficients: BTreeMap<Partition, R>,
}

impl<R: Ring> GenusPolynomial<R> {
    pub fn pair(&self, m: &ManifoldData) -> Result<R> {
        if m.dim / 4 != self.weight as usize || m.dim % 4 != 0 {
            return Err(Error::Config(format!("genus polynomial of weight {} used on dimension {}", self.weight, m.dim)));
        }
        let mut acc = R::zero();
        for p in partitions(self.weight) {
            let n = m.number(&p)?;
            if let Some(c) = self.coefficients.get(&p) {
                acc = acc + c.clone() * R::from_int(n);
            }
        }
        Ok(acc)
    }
}

/// The weight-`k` part of `prod_j x_j / f(x_j)` in the Pontryagin basis.
pub fn genus_polynomial<R: Ring>(series: &CharacteristicSeries<R>, k: u32) -> Result<GenusPolynomial<R>> {
    let log_q = series.log_q_in_t(k as usize)?;
    Ok(polynomial_from_log(&log_q, k))
}

fn polynomial_from_log<R: Ring>(log_q: &Jet<R>, k: u32) -> GenusPolynomial<R> {
    if k == 0 {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(vec![], R::one());
        return GenusPolynomial { weight: 0, coefficients };
    }
    // Newton: s_n = sum_{i=1}^{n-1} (-1)^{i-1} p_i s_{n-i} + (-1)^{n-1} n p_n
    let mut s: Vec<PPoly<R>> = vec![PPoly::zero(k)];
    for n in 1..=k {
        let sign = |i: u32| if i % 2 == 1 { 1 } else { -1 };
        let mut acc = PPoly::monomial(vec![n], R::from_int(sign(n) * n as i64), k);
        for i in 1..n {
            let pi = PPoly::monomial(vec![i], R::from_int(sign(i)), k);
            acc = acc.add(&pi.mul(&s[(n - i) as usize]));
        }
        s.push(acc);
    }
    let mut l = PPoly::zero(k);
    for i in 1..=k {
        l = l.add(&s[i as usize].scale(&log_q.coeff(i as usize)));
    }
    // exp(L) up to weight k
    let mut total = PPoly::monomial(vec![], R::one(), k);
    let mut term = total.clone();
    for j in 1..=k {
        term = term.mul(&l).scale(&R::from_ratio(&ratio(1, j as i64)));
        total = total.add(&term);
    }
    let coefficients = total.terms.into_iter().filter(|(p, _)| p.iter().sum::<u32>() == k).collect();
    GenusPolynomial { weight: k, coefficients }
}

/// `< prod_j x_j / f(x_j), [M] >`. Zero when `dim` is not divisible by 4.
pub fn genus_eval<R: Ring>(series: &CharacteristicSeries<R>, m: &ManifoldData) -> Result<R> {
    if m.dim > DIM_CAP {
        return Err(Error::DimensionCap { dim: m.dim, cap: DIM_CAP });
    }
    if m.dim % 4 != 0 {
        return Ok(R::zero());
    }
    genus_polynomial(series, (m.dim / 4) as u32)?.pair(m)
}

/// The Witten genus (genus of the sigma function) through `q^{q_order}`.
pub fn witten_genus_q(m: &ManifoldData, q_order: usize) -> Result<QSeries> {
    let series = sigma_q_series(m.dim / 2 + 1, q_order)?;
    genus_eval(&series, m).map(|v| v.extend_to(q_order + 1))
}

/// The genus of the Ochanine function through `q^{q_order}`.
pub fn ochanine_genus_q(m: &ManifoldData, q_order: usize) -> Result<QSeries> {
    let series = ochanine_q_series(m.dim / 2 + 1, q_order)?;
    genus_eval(&series, m).map(|v| v.extend_to(q_order + 1))
}

/// The A-hat genus, exactly.
pub fn a_hat(m: &ManifoldData) -> Result<BigRational> {
    genus_eval(&a_hat_series(m.dim / 2 + 1), m)
}

/// `log` of the A-hat factor twisted by `prod_{n >= 1} Sym_{q^n}` of the
/// reduced complexified tangent bundle, per formal root, as a series in
/// `t = x^2`. Computed from Adams operations: the twist contributes
/// `sum_{n, k} q^{nk}/k (e^{kx} + e^{-kx} - 2)`.
fn twisted_log_in_t(k: usize, q_order: usize) -> Result<Jet<QSeries>> {
    let a = a_hat_series(2 * k + 1).log_q_in_t(k)?;
    let qlen = q_order + 1;
    let mut out = vec![QSeries::zeros(qlen); k + 1];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        let mut v = Jet::monomial(a.coeff(i), 0, qlen);
        // (2k)^{2i}/(2i)! style coefficients: 2 k^{2i} / (2i)!
        let fact: BigInt = (1..=(2 * i) as u64).map(BigInt::from).product();
        for n in 1..=q_order {
            for kk in 1..=q_order / n {
                let c = BigRational::new(BigInt::from(2) * BigInt::from(kk as u64).pow(2 * i as u32), fact.clone() * BigInt::from(kk as u64));
                v = &v + &Jet::monomial(c, n * kk, qlen);
            }
        }
        *slot = v;
    }
    Ok(Jet::new(out))
}

/// `A-hat(M; prod_n Sym_{q^n}(T_C M - dim))` through `q^{q_order}`.
pub fn twisted_a_hat(m: &ManifoldData, q_order: usize) -> Result<QSeries> {
    check_q_order(q_order)?;
    if m.dim > DIM_CAP {
        return Err(Error::DimensionCap { dim: m.dim, cap: DIM_CAP });
    }
    if m.dim % 4 != 0 {
        return Ok(QSeries::zeros(q_order + 1));
    }
    let k = (m.dim / 4) as u32;
    let log_q = twisted_log_in_t(k as usize, q_order)?;
    polynomial_from_log(&log_q, k).pair(m).map(|v| v.extend_to(q_order + 1))
}

/// Chern character of `Sym_{q^n}` of the reduced complexification of a
/// real bundle with Pontryagin roots `x_j`:
/// `prod_j (1 - q^n)^2 / ((1 - q^n e^{x_j})(1 - q^n e^{-x_j}))`, mod `q^{q_order+1}`.
pub fn sym_t_chern_character(
    ring: &Arc<NilpotentRing>,
    roots: &[NilpotentClass<QSeries>],
    n: usize,
    q_order: usize,
) -> Result<NilpotentClass<QSeries>> {
    if n == 0 {
        return Err(Error::Config("Sym_{q^n} needs n >= 1".into()));
    }
    let qlen = q_order + 1;
    let qn = NilpotentClass::constant(ring, QSeries::q_power(n, qlen));
    let one = NilpotentClass::constant(ring, QSeries::q_power(0, qlen));
    let one_minus = one.sub(&qn);
    let mut acc = one.clone();
    for x in roots {
        let ex = x.try_exp().ok_or(Error::NonUnit)?;
        let emx = x.neg().try_exp().ok_or(Error::NonUnit)?;
        let den = one.sub(&qn.mul(&ex)).mul(&one.sub(&qn.mul(&emx)));
        acc = acc.mul(&one_minus).mul(&one_minus).mul(&den.try_inverse().ok_or(Error::NonUnit)?);
    }
    Ok(acc)
}

/// `theta(arg)` for a class `w + n` with `n` nilpotent: the Taylor jet of
/// theta at `w` applied to `n`.
pub fn theta_of_class(theta: &dyn ThetaFunction, arg: &NilpotentClass<Complex64>) -> Result<NilpotentClass<Complex64>> {
    let w = *arg.constant_term();
    let order = arg.ring().nilpotency().saturating_sub(1);
    let jet = theta_jet(theta, w, order.max(1))?;
    Ok(NilpotentClass::compose(&jet, &arg.nilpotent_part()))
}

/// The equivariant Euler class `prod_j theta(x_j + m_j z)` for roots `x_j`
/// (classes with zero constant term) and weights `m_j`.
pub fn euler_class(
    theta: &dyn ThetaFunction,
    ring: &Arc<NilpotentRing>,
    roots: &[(NilpotentClass<Complex64>, i64)],
    z: Complex64,
) -> Result<NilpotentClass<Complex64>> {
    let mut acc = NilpotentClass::one(ring);
    for (x, m) in roots {
        let arg = x.add(&NilpotentClass::constant(ring, z * *m as f64));
        acc = acc.mul(&theta_of_class(theta, &arg)?);
    }
    Ok(acc)
}

/// [`euler_class`], failing with [`Error::NonUnit`] when the class is not
/// invertible (an all-nilpotent argument at a zero of theta).
pub fn euler_class_unit(
    theta: &dyn ThetaFunction,
    ring: &Arc<NilpotentRing>,
    roots: &[(NilpotentClass<Complex64>, i64)],
    z: Complex64,
) -> Result<NilpotentClass<Complex64>> {
    let e = euler_class(theta, ring, roots, z)?;
    if e.constant_term().norm() < 1e-300 {
        return Err(Error::NonUnit);
    }
    Ok(e)
}

#[cfg(test)]
mod tests;
