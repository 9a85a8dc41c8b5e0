use std::sync::Arc;

use num_complex::Complex64;

use crate::nilpotent::{NilpotentClass, NilpotentRing};

/// An integral degree-2 class `k z + sum c_i y_i`: a multiple of the
/// equivariant parameter plus a linear form in the ring generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinClass {
    pub z: i64,
    pub gens: Vec<i64>,
}

impl LinClass {
    pub fn zero(ngens: usize) -> Self {
        LinClass { z: 0, gens: vec![0; ngens] }
    }

    pub fn from_gens(gens: Vec<i64>) -> Self {
        LinClass { z: 0, gens }
    }

    pub fn add(&self, o: &LinClass) -> LinClass {
        LinClass { z: self.z + o.z, gens: self.gens.iter().zip(&o.gens).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &LinClass) -> LinClass {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> LinClass {
        LinClass { z: self.z * k, gens: self.gens.iter().map(|a| a * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.z == 0 && self.gens.iter().all(|&a| a == 0)
    }

    /// Whether every generator coefficient is divisible by `n` (the
    /// `z`-coefficient is ignored).
    pub fn gens_divisible_by(&self, n: i64) -> bool {
        self.gens.iter().all(|a| a.rem_euclid(n) == 0)
    }

    pub fn gens_div(&self, n: i64) -> LinClass {
        LinClass { z: self.z, gens: self.gens.iter().map(|a| a.div_euclid(n)).collect() }
    }

    /// The class at numeric `z`, scaled by `s`.
    pub fn eval(&self, ring: &Arc<NilpotentRing>, z: Complex64, s: f64) -> NilpotentClass<Complex64> {
        let mut acc = NilpotentClass::constant(ring, z * (self.z as f64 * s));
        for (i, &c) in self.gens.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&NilpotentClass::generator(ring, i).scale(&Complex64::new(c as f64 * s, 0.0)));
            }
        }
        acc
    }

    pub fn fmt_with(&self, ring: &NilpotentRing) -> String {
        let mut parts = Vec::new();
        if self.z != 0 {
            parts.push(format!("{}z", self.z));
        }
        for (g, &c) in ring.generators().iter().zip(&self.gens) {
            if c != 0 {
                parts.push(format!("{c}{}", g.name));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
