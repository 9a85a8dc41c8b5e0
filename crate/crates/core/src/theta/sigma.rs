use std::f64::consts::PI;

use num_complex::Complex64;

use super::{sigma_product, SignRule, ThetaCharacter, ThetaFunction};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::lattice::Lattice;

/// The sigma function of `L = 2 pi i (Z + t Z)`:
///
/// ```text
/// sigma(z) = (u^{1/2} - u^{-1/2}) prod_{n>=1} (1 - q^n u)(1 - q^n/u) / (1 - q^n)^2,
/// u = e^z,  q = e^{2 pi i t}.
/// ```
///
/// Character: `gamma(g1) = 0`, `gamma(g2) = -1`, `c(l) = 1` iff `l in 2L`.
#[derive(Clone, Debug)]
pub struct Sigma {
    lattice: Lattice,
    character: ThetaCharacter,
    q: Complex64,
    terms: usize,
}

/// The character of the sigma function of `lattice`.
pub fn sigma_character(lattice: &Lattice) -> ThetaCharacter {
    ThetaCharacter::new(
        lattice.clone(),
        Complex64::new(0.0, 0.0),
        Complex64::new(-1.0, 0.0),
        SignRule { a: 1, b: 1, e: 1 },
        1,
    )
}

impl Sigma {
    pub fn new(lattice: Lattice, terms: usize) -> Self {
        let q = (Complex64::new(0.0, 2.0 * PI) * lattice.effective_tau()).exp();
        let character = sigma_character(&lattice);
        Sigma { lattice, character, q, terms }
    }

    pub fn nome(&self) -> Complex64 {
        self.q
    }
}

impl ThetaFunction for Sigma {
    fn name(&self) -> &'static str {
        "sigma"
    }

    fn curve_lattice(&self) -> &Lattice {
        &self.lattice
    }

    fn character(&self) -> &ThetaCharacter {
        &self.character
    }

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        sigma_product(&z, &self.q, self.terms).ok_or(Error::Pole(z))
    }

    fn eval_jet(&self, z: &Jet<Complex64>) -> Result<Jet<Complex64>> {
        sigma_product(z, &Jet::constant(self.q), self.terms).ok_or(Error::Pole(*z.value()))
    }

    fn singular_distance(&self, z: Complex64) -> f64 {
        self.lattice.distance(z, Complex64::new(0.0, 0.0))
    }
}
