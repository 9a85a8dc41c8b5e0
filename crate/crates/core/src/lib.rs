//! Theta functions on elliptic curves, characteristic-series genera,
//! virtual representations of the circle and the local transfer checks
//! behind the rigidity of elliptic genera on string manifolds.
//!
//! Layout:
//!
//! * [`ring`], [`jet`]: the coefficient rings everything is generic over
//!   (complex numbers, exact rationals, truncated Taylor jets, q-series).
//! * [`lattice`]: period lattices, the quotient curve, divisors and
//!   adapted covers.
//! * [`theta`]: the theta function interface, the sigma function and the
//!   Ochanine function.
//! * [`chargenus`]: genera of stably almost complex / spin manifolds from a
//!   characteristic series, Witten and twisted A-hat q-expansions.
//! * [`equivrep`]: virtual circle representations `f = sum d_j z^{m_j}`.
//! * [`nilpotent`]: truncated polynomial rings standing in for the
//!   cohomology of a fixed component.
//! * [`thomfix`]: fixed-point data, transfer functions, cocycles and the
//!   localized rigidity sum.

pub mod chargenus;
pub mod equivrep;
pub mod error;
pub mod jet;
pub mod lattice;
pub mod nilpotent;
pub mod par;
pub mod ring;
pub mod sampling;
pub mod theta;
pub mod thomfix;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default number of product factors kept in `q`-products.
pub const DEFAULT_Q_TERMS: usize = 60;
/// Smallest accepted product truncation.
pub const MIN_Q_TERMS: usize = 40;
/// Smallest accepted imaginary part of the modulus.
pub const MIN_IM_TAU: f64 = 0.2;
/// Default and maximal order of Taylor jets of theta at a point.
pub const JET_CAP: usize = 8;
/// Largest manifold dimension handled by the genus engine.
pub const DIM_CAP: usize = 16;
/// Largest `q`-order handled by exact q-expansions.
pub const Q_ORDER_CAP: usize = 12;
