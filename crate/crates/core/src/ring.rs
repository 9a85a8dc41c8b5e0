//! Commutative coefficient rings.
//!
//! The theta products, the genus engine and the nilpotent cohomology models
//! are written once over [`Ring`] and instantiated with `Complex64`
//! (numerics), `BigRational` (exact), and truncated jets of either.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Ring:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for non-units.
    fn try_inv(&self) -> Option<Self>;
    /// Exponential, `None` where it does not exist in the ring
    /// (e.g. `exp(1)` over the rationals).
    fn try_exp(&self) -> Option<Self>;
    /// A size estimate used for tolerance checks; zero iff exactly zero.
    fn magnitude(&self) -> f64;

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_int(n)
    }
}

/// `p/q` as a `BigRational`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn try_inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn try_exp(&self) -> Option<Self> {
        Some(self.exp())
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn try_exp(&self) -> Option<Self> {
        Zero::is_zero(self).then(One::one)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_exp_only_at_zero() {
        let zero = <BigRational as Ring>::zero();
        assert_eq!(zero.try_exp(), Some(<BigRational as Ring>::one()));
        assert_eq!(<BigRational as Ring>::one().try_exp(), None);
        assert_eq!(ratio(2, 4), ratio(1, 2));
    }

    #[test]
    fn complex_inverse() {
        let z = Complex64::new(3.0, 4.0);
        let w = z.try_inv().unwrap();
        assert!((z * w - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(<Complex64 as Ring>::zero().try_inv().is_none());
    }
}
