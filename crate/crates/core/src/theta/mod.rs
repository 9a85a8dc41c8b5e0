//! Theta functions for a lattice.
//!
//! A theta function for `L` with character `(gamma, c)` and level `N` is
//! an odd entire (or meromorphic) function with
//!
//! ```text
//! theta(z + l) = c(l) exp(gamma(l) (z + l/2)) theta(z),    l in L,
//! ```
//!
//! where `gamma: L -> C` is additive, `c: L -> {+1, -1}`, and the zeros
//! and poles lie in the `N`-torsion. Two instances are provided: the sigma
//! function ([`Sigma`], level 1) and the Ochanine function
//! ([`OchanineS`] and its sigma-quotient form [`OchanineQuotient`],
//! level 2).

mod ochanine;
mod product;
mod sigma;

pub use ochanine::{OchanineQuotient, OchanineS};
pub use product::{ochanine_product, sigma_product};
pub use sigma::{sigma_character, Sigma};

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::lattice::Lattice;
use crate::par::{self, Execution};
use crate::JET_CAP;

/// Exponents of `c(j g1 + k g2) = (-1)^{a j + b k + e j k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignRule {
    pub a: u8,
    pub b: u8,
    pub e: u8,
}

#[derive(Clone, Debug)]
pub struct ThetaCharacter {
    lattice: Lattice,
    gamma1: Complex64,
    gamma2: Complex64,
    sign: SignRule,
    level: u64,
}

impl ThetaCharacter {
    pub fn new(lattice: Lattice, gamma1: Complex64, gamma2: Complex64, sign: SignRule, level: u64) -> Self {
        ThetaCharacter { lattice, gamma1, gamma2, sign, level }
    }

    /// The lattice the character is defined on.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn lambda(&self, j: i64, k: i64) -> Complex64 {
        self.lattice.vector(j, k)
    }

    pub fn gamma(&self, j: i64, k: i64) -> Complex64 {
        self.gamma1 * j as f64 + self.gamma2 * k as f64
    }

    pub fn c(&self, j: i64, k: i64) -> i8 {
        let e = self.sign.a as i64 * j + self.sign.b as i64 * k + self.sign.e as i64 * j * k;
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `c(l) exp(gamma(l) (z + l/2))`.
    pub fn translation_factor(&self, z: Complex64, j: i64, k: i64) -> Complex64 {
        let l = self.lambda(j, k);
        (self.gamma(j, k) * (z + l * 0.5)).exp() * self.c(j, k) as f64
    }

    /// `(gamma(l) l' - l gamma(l')) / (2 pi i)`; an integer for a valid
    /// character.
    pub fn period_pairing(&self, l: (i64, i64), lp: (i64, i64)) -> Complex64 {
        let v = self.gamma(l.0, l.1) * self.lambda(lp.0, lp.1) - self.lambda(l.0, l.1) * self.gamma(lp.0, lp.1);
        v / Complex64::new(0.0, 2.0 * PI)
    }
}

/// An odd theta function for a lattice, evaluable at points and on jets.
pub trait ThetaFunction: Send + Sync {
    fn name(&self) -> &'static str;
    /// The lattice of the elliptic curve the function lives on.
    fn curve_lattice(&self) -> &Lattice;
    fn character(&self) -> &ThetaCharacter;
    fn eval(&self, z: Complex64) -> Result<Complex64>;
    /// Evaluation on a Taylor jet `z_0 + e`; returns the Taylor jet of
    /// `theta` at `z_0`.
    fn eval_jet(&self, z: &Jet<Complex64>) -> Result<Jet<Complex64>>;
    /// Distance from `z` to the nearest zero or pole.
    fn singular_distance(&self, z: Complex64) -> f64;
}

/// Taylor coefficients `c_0..c_order` of `theta(w + x)` in `x`.
pub fn theta_jet(theta: &dyn ThetaFunction, w: Complex64, order: usize) -> Result<Jet<Complex64>> {
    if order > JET_CAP {
        return Err(Error::JetOrder { order, cap: JET_CAP });
    }
    theta.eval_jet(&Jet::variable(w, order + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Sigma,
    Ochanine,
    OchanineQuotient,
}

impl FromStr for ThetaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma" => Ok(ThetaKind::Sigma),
            "ochanine" => Ok(ThetaKind::Ochanine),
            "ochanine-quotient" => Ok(ThetaKind::OchanineQuotient),
            other => Err(Error::Config(format!("unknown theta kind {other:?}"))),
        }
    }
}

/// Builds a theta function of the given kind at modulus `tau`. The sigma
/// function lives on the Witten-scale lattice, the Ochanine function on the
/// Ochanine-scale lattice.
pub fn make_theta(kind: ThetaKind, tau: Complex64, q_terms: usize) -> Result<Box<dyn ThetaFunction>> {
    Ok(match kind {
        ThetaKind::Sigma => Box::new(Sigma::new(Lattice::witten(tau)?, q_terms)),
        ThetaKind::Ochanine => Box::new(OchanineS::new(tau, q_terms)?),
        ThetaKind::OchanineQuotient => Box::new(OchanineQuotient::new(tau, q_terms)?),
    })
}

/// Samples closer than this to a zero or pole are skipped.
pub const SINGULAR_EXCLUSION: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

impl ResidualReport {
    fn collect(items: Vec<Option<f64>>) -> Self {
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
}

/// `max |theta(z + l) - c(l) e^{gamma(l)(z + l/2)} theta(z)| / (1 + |rhs|)`
/// over the samples, with `l = j g1 + k g2` in the character lattice.
pub fn verify_translation(
    theta: &dyn ThetaFunction,
    lambda: (i64, i64),
    zs: &[Complex64],
    exec: Execution,
) -> ResidualReport {
    verify_iterated(theta, lambda, 1, zs, exec)
}

/// The `ell`-fold translation law
/// `theta(z + ell l) = c(l)^ell e^{gamma(l)(ell z + ell^2 l / 2)} theta(z)`.
pub fn verify_iterated(
    theta: &dyn ThetaFunction,
    lambda: (i64, i64),
    ell: i64,
    zs: &[Complex64],
    exec: Execution,
) -> ResidualReport {
    let ch = theta.character();
    let l = ch.lambda(lambda.0, lambda.1);
    let g = ch.gamma(lambda.0, lambda.1);
    let c = if ch.c(lambda.0, lambda.1) == 1 || ell.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let ellf = ell as f64;
    let per = |z: &Complex64| -> Option<f64> {
        let z = *z;
        let zt = z + l * ellf;
        if theta.singular_distance(z) < SINGULAR_EXCLUSION || theta.singular_distance(zt) < SINGULAR_EXCLUSION {
            return None;
        }
        let lhs = theta.eval(zt).ok()?;
        let rhs = theta.eval(z).ok()? * (g * (z * ellf + l * (ellf * ellf * 0.5))).exp() * c;
        Some((lhs - rhs).norm() / (1.0 + rhs.norm()))
    };
    ResidualReport::collect(par::map(exec, zs, per))
}

/// Largest distance of `(gamma(l) l' - l gamma(l'))/(2 pi i)` from an
/// integer over all pairs of lattice vectors with coordinates in
/// `-range..=range`.
pub fn check_period_relation(ch: &ThetaCharacter, range: i64) -> f64 {
    let mut worst: f64 = 0.0;
    for_pairs(range, |l, lp| {
        let v = ch.period_pairing(l, lp);
        worst = worst.max((v.re - v.re.round()).abs()).max(v.im.abs());
    });
    worst
}

/// Largest deviation of `c(l + l') / (c(l) c(l'))` from
/// `exp((gamma(l) l' - l gamma(l')) / 2)` over the same pairs.
pub fn check_character_quotient(ch: &ThetaCharacter, range: i64) -> f64 {
    let mut worst: f64 = 0.0;
    for_pairs(range, |l, lp| {
        let lhs = (ch.c(l.0 + lp.0, l.1 + lp.1) * ch.c(l.0, l.1) * ch.c(lp.0, lp.1)) as f64;
        let rhs = (ch.period_pairing(l, lp) * Complex64::new(0.0, PI)).exp();
        worst = worst.max((rhs - lhs).norm());
    });
    worst
}

fn for_pairs(range: i64, mut f: impl FnMut((i64, i64), (i64, i64))) {
    for j in -range..=range {
        for k in -range..=range {
            for jp in -range..=range {
                for kp in -range..=range {
                    f((j, k), (jp, kp));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests;
