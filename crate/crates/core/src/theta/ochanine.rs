use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ochanine_product, SignRule, Sigma, ThetaCharacter, ThetaFunction};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::lattice::Lattice;

/// Points closer than this to a pole are reported as poles.
const POLE_TOL: f64 = 1e-12;

fn ochanine_character(tau: Complex64) -> Result<ThetaCharacter> {
    Ok(ThetaCharacter::new(
        Lattice::witten(tau)?,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        SignRule { a: 0, b: 1, e: 0 },
        2,
    ))
}

// zeros at 2 pi i (Z + tau Z), poles at pi i + 2 pi i (Z + tau Z)
fn singular_distance(ch: &ThetaCharacter, z: Complex64) -> f64 {
    let l = ch.lattice();
    l.distance(z, Complex64::new(0.0, 0.0)).min(l.distance(z, Complex64::new(0.0, PI)))
}

fn pole_distance(ch: &ThetaCharacter, z: Complex64) -> f64 {
    ch.lattice().distance(z, Complex64::new(0.0, PI))
}

/// The Ochanine function on `2 pi i Z + 4 pi i tau Z`, `q = e^{2 pi i tau}`:
///
/// ```text
/// s(z) = -2 (1-u)/(1+u) prod_{n>=1} (1-q^n u)(1-q^n/u)(1+q^n)^2 / ((1+q^n u)(1+q^n/u)(1-q^n)^2).
/// ```
///
/// It is a theta function for `2 pi i (Z + tau Z)` with `gamma = 0` and
/// `c(j g1 + k g2) = (-1)^k`; zeros at `0, 2 pi i tau`, poles at
/// `pi i, pi i + 2 pi i tau`.
#[derive(Clone, Debug)]
pub struct OchanineS {
    lattice: Lattice,
    character: ThetaCharacter,
    q: Complex64,
    terms: usize,
}

impl OchanineS {
    pub fn new(tau: Complex64, terms: usize) -> Result<Self> {
        let lattice = Lattice::ochanine(tau)?;
        let character = ochanine_character(tau)?;
        let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        Ok(OchanineS { lattice, character, q, terms })
    }

    /// The product with `q = 0`, i.e. `2 tanh(z/2)`.
    pub fn q_zero_limit(z: Complex64) -> Option<Complex64> {
        ochanine_product(&z, &Complex64::new(0.0, 0.0), 0)
    }
}

impl ThetaFunction for OchanineS {
    fn name(&self) -> &'static str {
        "ochanine"
    }

    fn curve_lattice(&self) -> &Lattice {
        &self.lattice
    }

    fn character(&self) -> &ThetaCharacter {
        &self.character
    }

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        if pole_distance(&self.character, z) < POLE_TOL {
            return Err(Error::Pole(z));
        }
        ochanine_product(&z, &self.q, self.terms).ok_or(Error::Pole(z))
    }

    fn eval_jet(&self, z: &Jet<Complex64>) -> Result<Jet<Complex64>> {
        if pole_distance(&self.character, *z.value()) < POLE_TOL {
            return Err(Error::Pole(*z.value()));
        }
        ochanine_product(z, &Jet::constant(self.q), self.terms).ok_or(Error::Pole(*z.value()))
    }

    fn singular_distance(&self, z: Complex64) -> f64 {
        singular_distance(&self.character, z)
    }
}

/// The Ochanine function written through the sigma function of its own
/// lattice `L = 2 pi i Z + 4 pi i tau Z`:
///
/// ```text
/// s(z) = sigma(z) sigma(-R1) sigma(-R2) sigma(z - P) / (sigma(z - R1) sigma(z - R2) sigma(-P)),
/// R1 = pi i + 2 pi i tau,  R2 = -pi i,  P = 2 pi i tau.
/// ```
#[derive(Clone, Debug)]
pub struct OchanineQuotient {
    sigma: Sigma,
    character: ThetaCharacter,
    r1: Complex64,
    r2: Complex64,
    p: Complex64,
    constant: Complex64,
}

impl OchanineQuotient {
    pub fn new(tau: Complex64, terms: usize) -> Result<Self> {
        let sigma = Sigma::new(Lattice::ochanine(tau)?, terms);
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let r1 = Complex64::new(0.0, PI) + two_pi_i * tau;
        let r2 = Complex64::new(0.0, -PI);
        let p = two_pi_i * tau;
        let constant = sigma.eval(-r1)? * sigma.eval(-r2)? / sigma.eval(-p)?;
        Ok(OchanineQuotient { sigma, character: ochanine_character(tau)?, r1, r2, p, constant })
    }
}

impl ThetaFunction for OchanineQuotient {
    fn name(&self) -> &'static str {
        "ochanine-quotient"
    }

    fn curve_lattice(&self) -> &Lattice {
        self.sigma.curve_lattice()
    }

    fn character(&self) -> &ThetaCharacter {
        &self.character
    }

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        if pole_distance(&self.character, z) < POLE_TOL {
            return Err(Error::Pole(z));
        }
        let s = &self.sigma;
        Ok(self.constant * s.eval(z)? * s.eval(z - self.p)? / (s.eval(z - self.r1)? * s.eval(z - self.r2)?))
    }

    fn eval_jet(&self, z: &Jet<Complex64>) -> Result<Jet<Complex64>> {
        if pole_distance(&self.character, *z.value()) < POLE_TOL {
            return Err(Error::Pole(*z.value()));
        }
        let s = &self.sigma;
        let shift = |c: Complex64| z - &Jet::constant(c);
        let num = &s.eval_jet(z)? * &s.eval_jet(&shift(self.p))?;
        let den = &s.eval_jet(&shift(self.r1))? * &s.eval_jet(&shift(self.r2))?;
        let inv = crate::ring::Ring::try_inv(&den).ok_or(Error::Pole(*z.value()))?;
        Ok((&num * &inv).scale(&self.constant))
    }

    fn singular_distance(&self, z: Complex64) -> f64 {
        singular_distance(&self.character, z)
    }
}
