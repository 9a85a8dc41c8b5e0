//! Product expansions evaluated over an arbitrary coefficient ring, so the
//! same code yields numbers, Taylor jets and exact q-expansions.

use crate::ring::{ratio, Ring};

/// `sigma(z) = (e^{z/2} - e^{-z/2}) prod_{n<=terms} (1 - q^n u)(1 - q^n/u) / (1 - q^n)^2`
/// with `u = e^z`. `None` if an exponential or an inverse does not exist.
pub fn sigma_product<T: Ring>(z: &T, q: &T, terms: usize) -> Option<T> {
    let half = T::from_ratio(&ratio(1, 2)) * z.clone();
    let u = z.try_exp()?;
    let u_inv = (-z.clone()).try_exp()?;
    let mut acc = half.try_exp()? - (-half).try_exp()?;
    let mut qn = T::one();
    for _ in 0..terms {
        qn = qn * q.clone();
        if qn.is_zero() {
            break;
        }
        let one = T::one();
        let num = (one.clone() - qn.clone() * u.clone()) * (one.clone() - qn.clone() * u_inv.clone());
        let den = one.clone() - qn.clone();
        let den_inv = den.try_inv()?;
        acc = acc * num * den_inv.clone() * den_inv;
    }
    Some(acc)
}

/// `s(z) = -2 (1-u)/(1+u) prod (1-q^n u)(1-q^n/u)(1+q^n)^2 / ((1+q^n u)(1+q^n/u)(1-q^n)^2)`.
/// `None` at a pole.
pub fn ochanine_product<T: Ring>(z: &T, q: &T, terms: usize) -> Option<T> {
    let u = z.try_exp()?;
    let u_inv = (-z.clone()).try_exp()?;
    let one = T::one();
    let mut acc = T::from_int(-2) * (one.clone() - u.clone()) * (one.clone() + u.clone()).try_inv()?;
    let mut qn = T::one();
    for _ in 0..terms {
        qn = qn * q.clone();
        if qn.is_zero() {
            break;
        }
        let a = qn.clone() * u.clone();
        let b = qn.clone() * u_inv.clone();
        let num = (one.clone() - a.clone())
            * (one.clone() - b.clone())
            * (one.clone() + qn.clone())
            * (one.clone() + qn.clone());
        let den = (one.clone() + a) * (one.clone() + b) * (one.clone() - qn.clone()) * (one.clone() - qn.clone());
        acc = acc * num * den.try_inv()?;
    }
    Some(acc)
}
