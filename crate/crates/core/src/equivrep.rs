//! Virtual complex circle representations `f = sum d_j z^{m_j}`, the
//! divisor `D(f) = -sum d_j C[m_j]` of their Thom sheaf, and the
//! trivialization `g(z) = prod sigma(m_j z)^{d_j}` when the degree vanishes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::lattice::{line_bundle_trivial, CurvePoint, Divisor, Lattice, SpecialPointSource};
use crate::par::{self, Execution};
use crate::ring::Ring;
use crate::theta::{theta_jet, ResidualReport, ThetaFunction, SINGULAR_EXCLUSION};

/// A finitely supported map `m -> d_m`. Zero multiplicities are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualRep {
    terms: BTreeMap<i64, i64>,
}

impl VirtualRep {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut f = Self::zero();
        for (m, d) in terms {
            f.add_term(m, d);
        }
        f
    }

    /// `d z^m`.
    pub fn monomial(m: i64, d: i64) -> Self {
        Self::new([(m, d)])
    }

    pub fn add_term(&mut self, m: i64, d: i64) {
        let e = self.terms.entry(m).or_insert(0);
        *e += d;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &VirtualRep) -> VirtualRep {
        let mut f = self.clone();
        for (&m, &d) in &o.terms {
            f.add_term(m, d);
        }
        f
    }

    pub fn neg(&self) -> VirtualRep {
        VirtualRep { terms: self.terms.iter().map(|(&m, &d)| (m, -d)).collect() }
    }

    fn nonzero(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().filter(|(&m, _)| m != 0).map(|(&m, &d)| (m, d))
    }

    /// `-sum d_j C[|m_j|]` over `m_j != 0`.
    pub fn divisor_of(&self, lattice: &Lattice) -> Result<Divisor> {
        let mut d = Divisor::new();
        for (m, mult) in self.nonzero() {
            for p in lattice.torsion_points(m.unsigned_abs())? {
                d.add_point(lattice, p.z, -mult);
            }
        }
        Ok(d)
    }

    /// `-sum d_j m_j^2`.
    pub fn degree(&self) -> i64 {
        -self.p1_equivariant()
    }

    /// Coefficient of `z^2` in the equivariant `p_1`: `sum d_j m_j^2`.
    pub fn p1_equivariant(&self) -> i64 {
        self.terms.iter().map(|(&m, &d)| d * m * m).sum()
    }

    /// `sum d_j m_j mod 2`.
    pub fn w2_equivariant(&self) -> u8 {
        self.terms.iter().map(|(&m, &d)| d * m).sum::<i64>().rem_euclid(2) as u8
    }

    /// `sum d_j` over `m_j != 0`: the vanishing order of `g` at the origin.
    pub fn order_at_origin(&self) -> i64 {
        self.nonzero().map(|(_, d)| d).sum()
    }

    /// Whether the Thom sheaf is trivial. The group condition holds
    /// automatically, so this is `degree = 0`.
    pub fn is_trivial(&self) -> bool {
        self.degree() == 0
    }

    /// [`is_trivial`](Self::is_trivial) decided from the divisor instead.
    pub fn divisor_trivial(&self, lattice: &Lattice) -> Result<bool> {
        Ok(line_bundle_trivial(lattice, &self.divisor_of(lattice)?))
    }

    /// `g(z) = prod_{m_j != 0} theta(m_j z)^{d_j}`, using
    /// `theta(-m z) = -theta(m z)` for negative exponents.
    pub fn trivialization_eval(&self, theta: &dyn ThetaFunction, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for (m, d) in self.nonzero() {
            let w = z * m.unsigned_abs() as f64;
            if theta.singular_distance(w) < SINGULAR_EXCLUSION {
                return Err(Error::Singular(z));
            }
            let mut v = theta.eval(w)?;
            if m < 0 {
                v = -v;
            }
            acc *= v.powi(d as i32);
        }
        Ok(acc)
    }

    /// Leading term `c z^k` of `g` at the origin, from the Taylor jets of
    /// the factors: `k = sum d_j` and `c = prod (m_j theta'(0))^{d_j}`.
    pub fn leading_term(&self, theta: &dyn ThetaFunction) -> Result<(i64, Complex64)> {
        let t = theta_jet(theta, Complex64::new(0.0, 0.0), 2)?;
        let t_over_x = t.div_by_variable().ok_or(Error::NonUnit)?;
        let mut acc = Jet::constant(Complex64::new(1.0, 0.0));
        for (m, d) in self.nonzero() {
            let inner = Jet::new(vec![Complex64::new(0.0, 0.0), Complex64::new(m as f64, 0.0)]);
            // theta(m x) / x = m * (theta(y)/y) at y = m x
            let f = t_over_x.compose(&inner).scale(&Complex64::new(m as f64, 0.0));
            let f = if d < 0 { f.try_inv().ok_or(Error::NonUnit)? } else { f };
            for _ in 0..d.unsigned_abs() {
                acc = &acc * &f;
            }
        }
        Ok((self.order_at_origin(), *acc.value()))
    }

    /// `max |g(z + l) - g(z)| / (1 + |g(z)|)` over the samples and the two
    /// generators of the curve lattice.
    pub fn check_double_periodicity(
        &self,
        theta: &dyn ThetaFunction,
        zs: &[Complex64],
        exec: Execution,
    ) -> ResidualReport {
        let (g1, g2) = theta.curve_lattice().generators();
        let per = |z: &Complex64| -> Option<f64> {
            let gz = self.trivialization_eval(theta, *z).ok()?;
            let mut worst: f64 = 0.0;
            for l in [g1, g2] {
                let gl = self.trivialization_eval(theta, *z + l).ok()?;
                worst = worst.max((gl - gz).norm() / (1.0 + gz.norm()));
            }
            Some(worst)
        };
        collect(par::map(exec, zs, per))
    }

    /// Fits `g(-z) = s g(z)` with `s = +1` or `-1` and returns the better
    /// sign together with its residual and the predicted sign
    /// `(-1)^{sum d_j}`.
    pub fn check_parity(&self, theta: &dyn ThetaFunction, zs: &[Complex64]) -> Parity {
        let mut res = [0.0f64; 2];
        for z in zs {
            let (Ok(a), Ok(b)) = (self.trivialization_eval(theta, -*z), self.trivialization_eval(theta, *z)) else {
                continue;
            };
            let scale = 1.0 + b.norm();
            res[0] = res[0].max((a - b).norm() / scale);
            res[1] = res[1].max((a + b).norm() / scale);
        }
        let (sign, residual) = if res[0] <= res[1] { (1, res[0]) } else { (-1, res[1]) };
        let expected = if self.order_at_origin().rem_euclid(2) == 0 { 1 } else { -1 };
        Parity { sign, residual, expected }
    }

    /// Order of `g` at `p` by the argument principle on a circle of radius
    /// `radius` around `p`.
    pub fn winding_order(&self, theta: &dyn ThetaFunction, p: Complex64, radius: f64) -> Result<i64> {
        let k = 720;
        let mut total = 0.0;
        let mut prev = self.trivialization_eval(theta, p + radius)?;
        for j in 1..=k {
            let t = std::f64::consts::TAU * j as f64 / k as f64;
            let cur = self.trivialization_eval(theta, p + Complex64::from_polar(radius, t))?;
            total += (cur / prev).arg();
            prev = cur;
        }
        Ok((total / std::f64::consts::TAU).round() as i64)
    }

    /// For each point of `D(f)`, the expected order `-mult` of `g` and the
    /// order counted by [`winding_order`](Self::winding_order).
    pub fn zero_pole_ledger(&self, theta: &dyn ThetaFunction) -> Result<Vec<(CurvePoint, i64, i64)>> {
        let lattice = theta.curve_lattice();
        let d = self.divisor_of(lattice)?;
        let pts: Vec<CurvePoint> = d.entries().iter().map(|(p, _)| p.clone()).collect();
        let mut sep = lattice.min_length();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                sep = sep.min(lattice.distance(a.z, b.z));
            }
        }
        let radius = sep / 3.0;
        let mut out = Vec::new();
        for (p, mult) in d.entries() {
            out.push((p.clone(), -mult, self.winding_order(theta, p.z, radius)?));
        }
        Ok(out)
    }
}

fn collect(items: Vec<Option<f64>>) -> ResidualReport {
    let mut r = ResidualReport { max_residual: 0.0, evaluated: 0, skipped: 0 };
    for it in items {
        match it {
            Some(v) => {
                r.evaluated += 1;
                r.max_residual = r.max_residual.max(if v.is_nan() { f64::INFINITY } else { v });
            }
            None => r.skipped += 1,
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parity {
    pub sign: i8,
    pub residual: f64,
    pub expected: i8,
}

impl Parity {
    pub fn name(&self) -> &'static str {
        if self.sign == 1 {
            "even"
        } else {
            "odd"
        }
    }
}

impl SpecialPointSource for VirtualRep {
    fn isotropy_orders(&self) -> Vec<u64> {
        Vec::new()
    }

    fn rotation_numbers(&self) -> Vec<i64> {
        self.nonzero().map(|(m, _)| m).collect()
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&m, &d)) in self.terms.iter().rev().enumerate() {
            let (sign, a) = if d < 0 { ("-", -d) } else { ("+", d) };
            if i == 0 {
                if d < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let coef = if a == 1 && m != 0 { String::new() } else { a.to_string() };
            match m {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}z")?,
                _ => write!(f, "{coef}z^{m}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for VirtualRep {
    type Err = Error;

    /// Integer Laurent polynomials such as `z^3 - 9z`, `2 z^-1`, `z^{-3}`,
    /// `3*z^(2) + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err("empty input"));
        }
        let bytes: Vec<char> = t.chars().collect();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && !matches!(bytes[i - 1], '^' | '{' | '(') {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);

        let mut f = VirtualRep::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'+') => (1, &term[1..]),
                Some(b'-') => (-1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef, rest) = match body.find('z') {
                None => (body, ""),
                Some(p) => (&body[..p], &body[p..]),
            };
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c: i64 = if coef.is_empty() {
                if rest.is_empty() {
                    return Err(err("empty term"));
                }
                1
            } else {
                coef.parse().map_err(|_| err(&format!("bad coefficient {coef:?}")))?
            };
            let m: i64 = if rest.is_empty() {
                0
            } else {
                let e = &rest[1..];
                if e.is_empty() {
                    1
                } else {
                    let e = e.strip_prefix('^').ok_or_else(|| err(&format!("expected '^' in {rest:?}")))?;
                    let e = e
                        .strip_prefix('{')
                        .and_then(|x| x.strip_suffix('}'))
                        .or_else(|| e.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
                        .unwrap_or(e);
                    e.parse().map_err(|_| err(&format!("bad exponent {e:?}")))?
                }
            };
            f.add_term(m, sign * c);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{halton_disc, DEFAULT_CENTER};
    use crate::theta::Sigma;

    fn sigma() -> Sigma {
        Sigma::new(Lattice::witten(Complex64::new(0.0, 1.0)).unwrap(), 60)
    }

    fn p(s: &str) -> VirtualRep {
        s.parse().unwrap()
    }

    #[test]
    fn parser_forms() {
        assert_eq!(p("z^3 - 9z"), VirtualRep::new([(3, 1), (1, -9)]));
        assert_eq!(p("z^-2 + z^{-3}"), VirtualRep::new([(-2, 1), (-3, 1)]));
        assert_eq!(p("3*z^(2) + 1 - z^2"), VirtualRep::new([(2, 2), (0, 1)]));
        assert_eq!(p("-z"), VirtualRep::monomial(1, -1));
        assert!(p("z - z").is_zero());
        assert!("z^".parse::<VirtualRep>().is_err());
        assert!("3x".parse::<VirtualRep>().is_err());
        assert!("".parse::<VirtualRep>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["z^3 - 9z", "-z^2 + 4z", "z^-2", "2z^5 - 1", "0"] {
            assert_eq!(p(&p(s).to_string()), p(s), "{s}");
        }
        assert_eq!(p("z^3 - 9z").to_string(), "z^3 - 9z");
    }

    #[test]
    fn invariants_of_examples() {
        let f = p("z^3 - 9z");
        assert_eq!((f.degree(), f.p1_equivariant(), f.w2_equivariant()), (0, 0, 0));
        assert!(f.is_trivial());
        for n in 1..5 {
            let g = VirtualRep::monomial(n, 1);
            assert_eq!(g.degree(), -n * n);
            assert_eq!(g.p1_equivariant(), n * n);
            assert!(!g.is_trivial());
        }
        assert_eq!(VirtualRep::monomial(1, 1).w2_equivariant(), 1);
        let z = VirtualRep::zero();
        assert_eq!((z.degree(), z.p1_equivariant(), z.w2_equivariant()), (0, 0, 0));
    }

    #[test]
    fn divisor_of_examples() {
        let l = Lattice::witten(Complex64::new(0.0, 1.0)).unwrap();
        let d = p("z^3 - 9z").divisor_of(&l).unwrap();
        assert_eq!(d.entries().len(), 9);
        assert_eq!(d.mult_at(&l, Complex64::new(0.0, 0.0)), 8);
        assert_eq!(d.mult_at(&l, l.point(1.0 / 3.0, 2.0 / 3.0)), -1);
        assert_eq!(d.degree(), -9 + 9);
        let d3 = VirtualRep::monomial(3, 1).divisor_of(&l).unwrap();
        assert_eq!(d3.degree(), -9);
        assert!(VirtualRep::zero().divisor_of(&l).unwrap().entries().is_empty());
    }

    #[test]
    fn trivialization_examples() {
        let s = sigma();
        let z = Complex64::new(0.37, 0.52);
        let g = VirtualRep::monomial(1, 1).trivialization_eval(&s, z).unwrap();
        assert!((g - s.eval(z).unwrap()).norm() < 1e-14);
        let f = p("z^3 - 9z");
        let g = f.trivialization_eval(&s, z).unwrap();
        let oracle = s.eval(z * 3.0).unwrap() / s.eval(z).unwrap().powi(9);
        assert!((g - oracle).norm() / oracle.norm() < 1e-12);
        let neg = VirtualRep::monomial(-2, 1).trivialization_eval(&s, z).unwrap();
        assert!((neg + s.eval(z * 2.0).unwrap()).norm() < 1e-12);
        assert!(f.trivialization_eval(&s, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn leading_term_at_origin() {
        let (k, c) = p("z^3 - 9z").leading_term(&sigma()).unwrap();
        assert_eq!(k, -8);
        assert!((c - 3.0).norm() < 1e-12);
        let (k, c) = p("z^-2 + 2z^3").leading_term(&sigma()).unwrap();
        assert_eq!(k, 3);
        assert!((c + 18.0).norm() < 1e-12);
    }

    #[test]
    fn periodicity_and_parity() {
        let s = sigma();
        let zs = halton_disc(DEFAULT_CENTER, 0.3, 20, 0);
        let f = p("z^3 - 9z");
        assert!(f.check_double_periodicity(&s, &zs, Execution::Sequential).max_residual < 1e-8);
        let g = VirtualRep::monomial(2, 1);
        assert!(g.check_double_periodicity(&s, &zs, Execution::Sequential).max_residual > 0.1);
        assert_eq!(VirtualRep::zero().check_double_periodicity(&s, &zs, Execution::Sequential).max_residual, 0.0);

        let par = f.check_parity(&s, &zs);
        assert_eq!((par.sign, par.expected), (1, 1));
        assert!(par.residual < 1e-8);
        let par = VirtualRep::monomial(1, 1).check_parity(&s, &zs);
        assert_eq!((par.sign, par.expected), (-1, -1));
        assert_eq!(VirtualRep::zero().check_parity(&s, &zs).sign, 1);
    }

    #[test]
    fn zero_pole_orders_match_divisor() {
        let s = sigma();
        for f in [p("z^2"), p("z^3 - 9z"), p("z^2 - 4z")] {
            for (pt, expected, counted) in f.zero_pole_ledger(&s).unwrap() {
                assert_eq!(expected, counted, "{f} at {:?}", pt.coords());
            }
        }
    }

    #[test]
    fn special_points_of_monomial() {
        let l = Lattice::witten(Complex64::new(0.0, 1.0)).unwrap();
        let sp = crate::lattice::special_points(&l, &VirtualRep::monomial(3, 1), 1).unwrap();
        assert_eq!(sp.len(), 9);
        let sp = crate::lattice::special_points(&l, &p("z^2 - 4z"), 1).unwrap();
        assert_eq!(sp.len(), 4);
    }
}
