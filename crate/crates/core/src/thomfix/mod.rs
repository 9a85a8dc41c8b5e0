//! Fixed-point data of circle manifolds with a pair of bundles `(V, T)`,
//! and the local identities that glue the Thom section of `V - T` over the
//! elliptic curve.
//!
//! A [`FixedComponent`] records, over one component `F` of the fixed set,
//! the rotation numbers `m_j`, ranks `d_j` and Chern roots of the moving
//! summands of `T` and `V`, plus Pontryagin roots of the fixed parts.
//! Roots are integral linear combinations of the generators of a
//! [`NilpotentRing`] modelling `H^*(F)`.
//!
//! For a special point `a` of exact order `n` (so `lambda = n a` is a
//! lattice vector) rotation numbers are written `m = n l + r` with
//! `0 <= r <= n/2` after an optional sign flip ([`decompose`]). From these
//! come the quantities `eps, alpha, G, H` ([`quantities`]), the candidate
//! local section `Theta_a` ([`theta_section`]) and the transfer equation
//!
//! ```text
//! e(a,b)^{-1} tau_a^* e(0,b) = Theta_a
//! ```
//!
//! checked coefficient-wise at sampled `z` by [`transfer_check`].

mod cocycle;
mod fixture;
mod linclass;
mod quantities;
mod report;
mod rigidity;
mod validate;

pub use crate::nilpotent::{Generator, NilpotentClass, NilpotentRing};
pub use cocycle::{
    chart_euler, cocycle_check, e_ab, Chart, ellipticity_check, euler_cocycle_e0b, q_h, theta_section, transfer_check,
    transfer_check_with, CheckResult,
};
pub use fixture::{FixedPointModel, SpecialSpec};
pub use linclass::LinClass;
pub use quantities::{decompose, quantities, EffectiveSummand, Quantities, RotationDecomposition};
pub use report::{verify_model, ComponentAtSpecial, ModelReport, SpecialReport};
pub use rigidity::{rigidity_localized, rigidity_spread, Spread};
pub use validate::{ccr_validate, CcrMode, CcrReport};

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::theta::ThetaFunction;

/// A summand `T(m)` or `V(m)`: rotation number and Chern roots (the rank
/// is the number of roots).
#[derive(Clone, Debug, PartialEq)]
pub struct BundleSummand {
    pub m: i64,
    pub roots: Vec<LinClass>,
}

impl BundleSummand {
    pub fn new(m: i64, roots: Vec<LinClass>) -> Self {
        BundleSummand { m, roots }
    }

    /// `d` copies of the zero root, as over a point.
    pub fn trivial(m: i64, d: usize, ngens: usize) -> Self {
        BundleSummand { m, roots: vec![LinClass::zero(ngens); d] }
    }

    pub fn d(&self) -> i64 {
        self.roots.len() as i64
    }

    /// Sum of the roots (first Chern class of the summand).
    pub fn c1(&self, ngens: usize) -> LinClass {
        self.roots.iter().fold(LinClass::zero(ngens), |acc, x| acc.add(x))
    }

    /// Equivariant first Chern class `d m z + sum x`.
    pub fn c1_equivariant(&self, ngens: usize) -> LinClass {
        let mut c = self.c1(ngens);
        c.z += self.d() * self.m;
        c
    }
}

/// Fixed-point data over one component `F`.
#[derive(Clone, Debug)]
pub struct FixedComponent {
    pub name: String,
    pub ring: Arc<NilpotentRing>,
    pub t: Vec<BundleSummand>,
    pub v: Vec<BundleSummand>,
    /// Pontryagin roots of the fixed part `T(0)`.
    pub t0: Vec<LinClass>,
    /// Pontryagin roots of the fixed part `V(0)`.
    pub v0: Vec<LinClass>,
}

impl FixedComponent {
    /// A point component from a virtual representation `f = sum d z^m`:
    /// positive multiplicities go to `V`, negative ones to `T`.
    pub fn from_virtual_rep(f: &crate::equivrep::VirtualRep) -> Self {
        let mut t = Vec::new();
        let mut v = Vec::new();
        for (&m, &d) in f.terms() {
            if m == 0 {
                continue;
            }
            if d > 0 {
                v.push(BundleSummand::trivial(m, d as usize, 0));
            } else {
                t.push(BundleSummand::trivial(m, (-d) as usize, 0));
            }
        }
        FixedComponent {
            name: "point".into(),
            ring: NilpotentRing::point(),
            t,
            v,
            t0: vec![],
            v0: vec![],
        }
    }

    pub fn ngens(&self) -> usize {
        self.ring.generators().len()
    }

    pub fn rotation_numbers(&self) -> Vec<i64> {
        self.t.iter().chain(&self.v).map(|s| s.m).collect()
    }
}

/// A special point `a` of exact order `n` with its lattice data.
#[derive(Clone, Debug)]
pub struct SpecialPointData {
    pub a: Complex64,
    pub coords: (f64, f64),
    pub n: u64,
    pub lambda: Complex64,
    pub lambda_int: (i64, i64),
    pub gamma: Complex64,
    pub c_lambda: i8,
}

impl SpecialPointData {
    /// `coords` are coordinates in the lattice of the character of `theta`.
    pub fn new(theta: &dyn ThetaFunction, coords: (f64, f64), n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("special point order must be at least 2, got {n}")));
        }
        let ch = theta.character();
        let l = ch.lattice();
        let a = l.point(coords.0, coords.1);
        let lambda = a * n as f64;
        let lambda_int = l.as_lattice_vector(lambda).ok_or_else(|| {
            Error::Config(format!("n a is not a lattice vector for a = ({}, {}), n = {n}", coords.0, coords.1))
        })?;
        if let Some(k) = (1..n).find(|&k| l.as_lattice_vector(a * k as f64).is_some()) {
            return Err(Error::Config(format!(
                "a = ({}, {}) has order {k}, not {n}",
                coords.0, coords.1
            )));
        }
        let lambda = ch.lambda(lambda_int.0, lambda_int.1);
        Ok(SpecialPointData {
            a,
            coords,
            n,
            lambda,
            lambda_int,
            gamma: ch.gamma(lambda_int.0, lambda_int.1),
            c_lambda: ch.c(lambda_int.0, lambda_int.1),
        })
    }

    /// `n/2` for even `n`.
    pub fn h(&self) -> Option<i64> {
        (self.n % 2 == 0).then_some(self.n as i64 / 2)
    }

    /// `c(k lambda) = c(lambda)^k`.
    pub fn c_multiple(&self, k: i64) -> i8 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.c_lambda
        }
    }
}
