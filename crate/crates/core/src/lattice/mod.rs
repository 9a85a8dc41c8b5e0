//! Period lattices `L = Z g1 + Z g2` and the quotient curve `C/L`.
//!
//! Two scales are used: the Witten scale `g1 = 2 pi i, g2 = 2 pi i tau` and
//! the Ochanine scale `g1 = 2 pi i, g2 = 4 pi i tau`. Points are handled as
//! lifts in `C`; two lifts are the same point of the curve when their
//! lattice coordinates differ by integers up to [`POINT_TOL`].

mod cover;
mod divisor;

pub use cover::{build_adapted_cover, verify_adapted, AdaptedCover, CoverCheck, CoverReport, OpenDisc};
pub use divisor::{line_bundle_trivial, Divisor};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate tolerance for identifying points of the curve.
pub const POINT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Witten,
    Ochanine,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    tau: Complex64,
    scale: Scale,
    g1: Complex64,
    g2: Complex64,
    // Lagrange-Gauss reduced basis and its integer coordinates in (g1, g2).
    b1: Complex64,
    b2: Complex64,
    b1_int: (i64, i64),
    b2_int: (i64, i64),
}

/// A point of the curve, stored by its canonical lift in the fundamental
/// parallelogram `{s g1 + t g2 : 0 <= s, t < 1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub z: Complex64,
    pub s: f64,
    pub t: f64,
}

/// Lattice JSON: `{"tau": [re, im], "scale": "witten" | "ochanine"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub tau: [f64; 2],
    #[serde(default = "default_scale")]
    pub scale: Scale,
}

fn default_scale() -> Scale {
    Scale::Witten
}

impl Lattice {
    pub fn new(tau: Complex64, scale: Scale) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() {
            return Err(Error::InvalidTau { re: tau.re, im: tau.im, min: 0.0 });
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let g1 = two_pi_i;
        let g2 = match scale {
            Scale::Witten => two_pi_i * tau,
            Scale::Ochanine => two_pi_i * tau * 2.0,
        };
        let (b1, b1_int, b2, b2_int) = gauss_reduce(g1, g2);
        Ok(Lattice { tau, scale, g1, g2, b1, b2, b1_int, b2_int })
    }

    pub fn witten(tau: Complex64) -> Result<Self> {
        Lattice::new(tau, Scale::Witten)
    }

    pub fn ochanine(tau: Complex64) -> Result<Self> {
        Lattice::new(tau, Scale::Ochanine)
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        Lattice::new(Complex64::new(j.tau[0], j.tau[1]), j.scale)
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn generators(&self) -> (Complex64, Complex64) {
        (self.g1, self.g2)
    }

    /// `g2 / (2 pi i)`: the modulus of the lattice in the normalization
    /// `2 pi i (Z + tau_eff Z)`.
    pub fn effective_tau(&self) -> Complex64 {
        self.g2 / self.g1
    }

    pub fn vector(&self, j: i64, k: i64) -> Complex64 {
        self.g1 * j as f64 + self.g2 * k as f64
    }

    pub fn point(&self, s: f64, t: f64) -> Complex64 {
        self.g1 * s + self.g2 * t
    }

    /// Real coordinates `(s, t)` with `z = s g1 + t g2`.
    pub fn coords(&self, z: Complex64) -> (f64, f64) {
        let det = self.g1.re * self.g2.im - self.g1.im * self.g2.re;
        let s = (z.re * self.g2.im - z.im * self.g2.re) / det;
        let t = (self.g1.re * z.im - self.g1.im * z.re) / det;
        (s, t)
    }

    /// Canonical representative of `z` modulo the lattice.
    pub fn reduce(&self, z: Complex64) -> CurvePoint {
        let (s, t) = self.coords(z);
        let (s, t) = (canonical_coord(s), canonical_coord(t));
        CurvePoint { z: self.point(s, t), s, t }
    }

    pub fn curve_point(&self, s: f64, t: f64) -> CurvePoint {
        self.reduce(self.point(s, t))
    }

    /// Integer coordinates of `z` if it is a lattice vector.
    pub fn as_lattice_vector(&self, z: Complex64) -> Option<(i64, i64)> {
        let (s, t) = self.coords(z);
        let (j, k) = (s.round(), t.round());
        ((s - j).abs() <= POINT_TOL && (t - k).abs() <= POINT_TOL).then_some((j as i64, k as i64))
    }

    pub fn same_point(&self, a: Complex64, b: Complex64) -> bool {
        self.as_lattice_vector(a - b).is_some()
    }

    /// Integer coordinates of a lattice vector closest to `z`.
    pub fn closest_vector(&self, z: Complex64) -> (i64, i64) {
        let det = self.b1.re * self.b2.im - self.b1.im * self.b2.re;
        let x = (z.re * self.b2.im - z.im * self.b2.re) / det;
        let y = (self.b1.re * z.im - self.b1.im * z.re) / det;
        let (x0, y0) = (x.round() as i64, y.round() as i64);
        let mut best = (f64::INFINITY, (0, 0));
        for dx in -1..=1 {
            for dy in -1..=1 {
                let (a, b) = (x0 + dx, y0 + dy);
                let v = self.b1 * a as f64 + self.b2 * b as f64;
                let d = (z - v).norm();
                if d < best.0 {
                    let j = a * self.b1_int.0 + b * self.b2_int.0;
                    let k = a * self.b1_int.1 + b * self.b2_int.1;
                    best = (d, (j, k));
                }
            }
        }
        best.1
    }

    /// Distance between the images of `a` and `b` in the quotient.
    pub fn distance(&self, a: Complex64, b: Complex64) -> f64 {
        let d = a - b;
        let (j, k) = self.closest_vector(d);
        (d - self.vector(j, k)).norm()
    }

    /// Length of a shortest nonzero lattice vector.
    pub fn min_length(&self) -> f64 {
        self.b1.norm()
    }

    /// The `n`-torsion subgroup `C[n] = {(j g1 + k g2)/n : 0 <= j, k < n}`.
    pub fn torsion_points(&self, n: u64) -> Result<Vec<CurvePoint>> {
        if n == 0 {
            return Err(Error::ZeroTorsionOrder);
        }
        let nf = n as f64;
        let mut pts = Vec::with_capacity((n * n) as usize);
        for j in 0..n {
            for k in 0..n {
                pts.push(self.curve_point(j as f64 / nf, k as f64 / nf));
            }
        }
        Ok(pts)
    }

    /// Smallest `n >= 1` with `n p = 0`, searched up to `max`.
    pub fn torsion_order(&self, p: Complex64, max: u64) -> Option<u64> {
        (1..=max).find(|&n| self.as_lattice_vector(p * n as f64).is_some())
    }
}

impl CurvePoint {
    pub fn coords(&self) -> (f64, f64) {
        (self.s, self.t)
    }
}

fn canonical_coord(s: f64) -> f64 {
    let mut f = s - s.floor();
    if f >= 1.0 - POINT_TOL || f < POINT_TOL {
        f = 0.0;
    }
    f
}

fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

fn gauss_reduce(g1: Complex64, g2: Complex64) -> (Complex64, (i64, i64), Complex64, (i64, i64)) {
    let (mut u, mut ui) = (g1, (1i64, 0i64));
    let (mut v, mut vi) = (g2, (0i64, 1i64));
    if v.norm() < u.norm() {
        std::mem::swap(&mut u, &mut v);
        std::mem::swap(&mut ui, &mut vi);
    }
    loop {
        let m = (dot(u, v) / u.norm_sqr()).round();
        v -= u * m;
        let mi = m as i64;
        vi = (vi.0 - mi * ui.0, vi.1 - mi * ui.1);
        if v.norm() >= u.norm() {
            break;
        }
        std::mem::swap(&mut u, &mut v);
        std::mem::swap(&mut ui, &mut vi);
    }
    (u, ui, v, vi)
}

/// Data that determines a set of special points: isotropy orders of a
/// circle action and the rotation numbers along its fixed set.
pub trait SpecialPointSource {
    fn isotropy_orders(&self) -> Vec<u64>;
    fn rotation_numbers(&self) -> Vec<i64>;
}

/// The union of `C[N k]` over all isotropy orders `k` and all `|m|` of
/// nonzero rotation numbers, with `N` the level of the theta function.
pub fn special_points(
    lattice: &Lattice,
    source: &dyn SpecialPointSource,
    level: u64,
) -> Result<Vec<CurvePoint>> {
    if level == 0 {
        return Err(Error::ZeroTorsionOrder);
    }
    let mut orders: Vec<u64> = source.isotropy_orders();
    orders.extend(source.rotation_numbers().into_iter().filter(|&m| m != 0).map(|m| m.unsigned_abs()));
    orders.push(1);
    orders.sort_unstable();
    orders.dedup();
    let mut out: Vec<CurvePoint> = Vec::new();
    for k in orders {
        if k == 0 {
            return Err(Error::ZeroTorsionOrder);
        }
        for p in lattice.torsion_points(level * k)? {
            if !out.iter().any(|q| lattice.same_point(q.z, p.z)) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(re: f64, im: f64) -> Lattice {
        Lattice::witten(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn reduce_lands_in_fundamental_domain() {
        let l = lat(0.0, 1.0);
        let p = l.reduce(l.point(0.3, 1.7));
        assert!((p.s - 0.3).abs() < 1e-12 && (p.t - 0.7).abs() < 1e-12);
        // brute-force oracle: the difference is the lattice vector 1 g2
        let d = l.point(0.3, 1.7) - p.z;
        assert_eq!(l.as_lattice_vector(d), Some((0, 1)));
    }

    #[test]
    fn ochanine_scale_doubles_second_period() {
        let l = Lattice::ochanine(Complex64::new(0.1, 0.8)).unwrap();
        let (g1, g2) = l.generators();
        assert!((g2 - g1 * Complex64::new(0.2, 1.6)).norm() < 1e-12);
        assert!((l.effective_tau() - Complex64::new(0.2, 1.6)).norm() < 1e-12);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(Lattice::witten(Complex64::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn torsion_counts() {
        let l = lat(0.2, 0.9);
        for n in 1..6u64 {
            let pts = l.torsion_points(n).unwrap();
            assert_eq!(pts.len() as u64, n * n);
            for p in &pts {
                assert!(l.as_lattice_vector(p.z * n as f64).is_some());
            }
        }
        assert!(l.torsion_points(0).is_err());
    }

    #[test]
    fn closest_vector_matches_brute_force() {
        let l = lat(0.47, 0.31);
        let samples = [
            Complex64::new(3.1, -7.2),
            Complex64::new(-11.0, 4.4),
            Complex64::new(0.5, 0.5),
            Complex64::new(20.0, 13.0),
        ];
        for z in samples {
            let (j, k) = l.closest_vector(z);
            let fast = (z - l.vector(j, k)).norm();
            let mut brute = f64::INFINITY;
            for a in -40..=40 {
                for b in -40..=40 {
                    brute = brute.min((z - l.vector(a, b)).norm());
                }
            }
            assert!((fast - brute).abs() < 1e-12, "{fast} vs {brute}");
        }
    }

    #[test]
    fn min_length_is_shortest_vector() {
        let l = lat(-0.45, 0.25);
        let mut brute = f64::INFINITY;
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                if (a, b) != (0, 0) {
                    brute = brute.min(l.vector(a, b).norm());
                }
            }
        }
        assert!((l.min_length() - brute).abs() < 1e-12);
    }

    struct Rot(Vec<i64>);
    impl SpecialPointSource for Rot {
        fn isotropy_orders(&self) -> Vec<u64> {
            vec![]
        }
        fn rotation_numbers(&self) -> Vec<i64> {
            self.0.clone()
        }
    }

    #[test]
    fn special_points_union() {
        let l = lat(0.0, 1.0);
        // C[2] u C[3] has 4 + 9 - 1 points
        let s = special_points(&l, &Rot(vec![2, -3, 1]), 1).unwrap();
        assert_eq!(s.len(), 12);
        let s2 = special_points(&l, &Rot(vec![1]), 2).unwrap();
        assert_eq!(s2.len(), 4);
    }
}
