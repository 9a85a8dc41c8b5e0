//! Truncated power series `c_0 + c_1 e + ... + c_{n-1} e^{n-1}` (mod `e^n`).
//!
//! A [`Jet`] over `Complex64` is a Taylor jet of a function at a point.
//! A [`QSeries`] is a jet over the rationals read as a power series in `q`.
//!
//! Binary operations between jets of different lengths keep the longer
//! length. A shorter operand is treated as exact, i.e. its missing
//! coefficients are zero; constants are length-1 jets.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::ring::{ratio, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<R> {
    c: Vec<R>,
}

/// Power series in `q` with rational coefficients, truncated mod `q^len`.
pub type QSeries = Jet<BigRational>;

impl<R: Ring> Jet<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        if c.is_empty() {
            c.push(R::zero());
        }
        Jet { c }
    }

    pub fn constant(v: R) -> Self {
        Jet { c: vec![v] }
    }

    pub fn zeros(len: usize) -> Self {
        Jet::new(vec![R::zero(); len.max(1)])
    }

    /// The identity jet `base + e` of length `len` (`len >= 2`).
    pub fn variable(base: R, len: usize) -> Self {
        let mut c = vec![R::zero(); len.max(2)];
        c[0] = base;
        c[1] = R::one();
        Jet { c }
    }

    /// `coef * e^k` truncated to length `len` (zero if `k >= len`).
    pub fn monomial(coef: R, k: usize, len: usize) -> Self {
        let mut c = vec![R::zero(); len.max(1)];
        if k < c.len() {
            c[k] = coef;
        }
        Jet { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    /// Coefficient of `e^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn value(&self) -> &R {
        &self.c[0]
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.c.truncate(len.max(1));
        self
    }

    pub fn extend_to(mut self, len: usize) -> Self {
        while self.c.len() < len {
            self.c.push(R::zero());
        }
        self
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Jet<S> {
        Jet { c: self.c.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// `(f - f(0)) / e`, losing one order. `None` if the constant term is
    /// not exactly zero.
    pub fn div_by_variable(&self) -> Option<Self> {
        if !self.c[0].is_zero() {
            return None;
        }
        Some(Jet::new(self.c[1..].to_vec()))
    }

    /// `self(inner)` for `inner` with zero constant term.
    pub fn compose(&self, inner: &Jet<R>) -> Jet<R> {
        let len = self.len().max(inner.len());
        let inner = inner.clone().extend_to(len);
        let mut acc = Jet::zeros(len);
        for a in self.c.iter().rev() {
            acc = &(&acc * &inner) + &Jet::constant(a.clone());
        }
        acc.truncate(len)
    }

    /// Horner evaluation at a ring element (treats `self` as a polynomial).
    pub fn eval(&self, x: &R) -> R {
        self.c.iter().rev().fold(R::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    /// Even part as a series in `t = e^2`: `c_0 + c_2 t + c_4 t^2 + ...`.
    pub fn even_part_in_square(&self) -> Self {
        Jet::new(self.c.iter().step_by(2).cloned().collect())
    }

    /// Natural logarithm for jets with constant term one.
    pub fn try_log(&self) -> Option<Self> {
        let one = R::one();
        if (self.c[0].clone() - one).magnitude() > 1e-12 * (1.0 + self.c[0].magnitude()) {
            return None;
        }
        // f = 1 + g, log f = integral f'/f
        let n = self.len();
        let inv = self.try_inv()?;
        let mut deriv = vec![R::zero(); n];
        for k in 1..n {
            deriv[k - 1] = self.c[k].scale_int(k as i64);
        }
        let q = &Jet::new(deriv) * &inv;
        let mut out = vec![R::zero(); n];
        for k in 1..n {
            out[k] = q.coeff(k - 1) * R::from_ratio(&ratio(1, k as i64));
        }
        Some(Jet::new(out))
    }
}

impl<R: Ring> Add for &Jet<R> {
    type Output = Jet<R>;
    fn add(self, rhs: &Jet<R>) -> Jet<R> {
        let n = self.len().max(rhs.len());
        Jet { c: (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect() }
    }
}

impl<R: Ring> Sub for &Jet<R> {
    type Output = Jet<R>;
    fn sub(self, rhs: &Jet<R>) -> Jet<R> {
        let n = self.len().max(rhs.len());
        Jet { c: (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect() }
    }
}

impl<R: Ring> Mul for &Jet<R> {
    type Output = Jet<R>;
    fn mul(self, rhs: &Jet<R>) -> Jet<R> {
        let n = self.len().max(rhs.len());
        let mut c = vec![R::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Jet { c }
    }
}

impl<R: Ring> Neg for &Jet<R> {
    type Output = Jet<R>;
    fn neg(self) -> Jet<R> {
        self.map(|a| -a.clone())
    }
}

impl<R: Ring> Add for Jet<R> {
    type Output = Jet<R>;
    fn add(self, rhs: Jet<R>) -> Jet<R> {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Jet<R> {
    type Output = Jet<R>;
    fn sub(self, rhs: Jet<R>) -> Jet<R> {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Jet<R> {
    type Output = Jet<R>;
    fn mul(self, rhs: Jet<R>) -> Jet<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Jet<R> {
    type Output = Jet<R>;
    fn neg(self) -> Jet<R> {
        -&self
    }
}

impl<R: Ring> Ring for Jet<R> {
    fn zero() -> Self {
        Jet::constant(R::zero())
    }
    fn one() -> Self {
        Jet::constant(R::one())
    }
    fn from_int(n: i64) -> Self {
        Jet::constant(R::from_int(n))
    }
    fn from_ratio(r: &BigRational) -> Self {
        Jet::constant(R::from_ratio(r))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.len();
        let b0 = self.c[0].try_inv()?;
        let mut b: Vec<R> = Vec::with_capacity(n);
        b.push(b0.clone());
        for k in 1..n {
            let mut s = R::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s = s + self.c[j].clone() * b[k - j].clone();
                }
            }
            b.push(-(b0.clone() * s));
        }
        Some(Jet { c: b })
    }
    fn try_exp(&self) -> Option<Self> {
        // k f_k = sum_{j=1}^k j g_j f_{k-j}
        let n = self.len();
        let mut f: Vec<R> = Vec::with_capacity(n);
        f.push(self.c[0].try_exp()?);
        for k in 1..n {
            let mut s = R::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s = s + self.c[j].scale_int(j as i64) * f[k - j].clone();
                }
            }
            f.push(s * R::from_ratio(&ratio(1, k as i64)));
        }
        Some(Jet { c: f })
    }
    fn magnitude(&self) -> f64 {
        self.c.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }
}

impl QSeries {
    /// `q^k` mod `q^len`.
    pub fn q_power(k: usize, len: usize) -> Self {
        Jet::monomial(BigRational::from_integer(1.into()), k, len)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Jet<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})q")?,
                _ => write!(f, "({a})q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.len())
    }
}
