use num_complex::Complex64;

use super::{euler_cocycle_e0b, FixedComponent, FixedPointModel, LinClass};
use crate::chargenus::theta_of_class;
use crate::error::{Error, Result};
use crate::nilpotent::NilpotentClass;
use crate::par::{self, Execution};
use crate::sampling::halton_unit_square;
use crate::theta::{theta_jet, ThetaFunction};

type Class = NilpotentClass<Complex64>;

/// `theta(y) / theta'(0)`.
fn theta_hat(theta: &dyn ThetaFunction, y: &Class, d0: Complex64) -> Result<Class> {
    Ok(theta_of_class(theta, y)?.scale(&(1.0 / d0)))
}

/// `prod_{T0} y / theta_hat(y) * prod_{V0} theta_hat(y')`: the
/// contribution of the fixed parts, independent of `z`.
fn fixed_factor(f: &FixedComponent, theta: &dyn ThetaFunction) -> Result<Class> {
    let ring = &f.ring;
    let d0 = theta_jet(theta, Complex64::new(0.0, 0.0), 1)?.coeff(1);
    let mut acc = NilpotentClass::one(ring);
    let as_class = |x: &LinClass| x.eval(ring, Complex64::new(0.0, 0.0), 1.0);
    if !f.t0.is_empty() {
        // y / theta_hat(y) as the series 1 / (theta(y) / (theta'(0) y))
        let order = ring.nilpotency();
        let jet = theta_jet(theta, Complex64::new(0.0, 0.0), order.min(crate::JET_CAP))?;
        let q = jet.div_by_variable().ok_or(Error::NonUnit)?.scale(&(1.0 / d0));
        for y in &f.t0 {
            let v = NilpotentClass::compose(&q, &as_class(y));
            acc = acc.mul(&v.try_inverse().ok_or(Error::NonUnit)?);
        }
    }
    for y in &f.v0 {
        acc = acc.mul(&theta_hat(theta, &as_class(y), d0)?);
    }
    Ok(acc)
}

/// The fixed-point sum `sum_F int_F [fixed parts] e(0,b)(z)` at each
/// sample; `None` for samples at a zero or pole of some factor.
pub fn rigidity_localized(
    model: &FixedPointModel,
    theta: &dyn ThetaFunction,
    zs: &[Complex64],
    exec: Execution,
) -> Result<Vec<Option<Complex64>>> {
    let fixed = model.components.iter().map(|f| fixed_factor(f, theta)).collect::<Result<Vec<_>>>()?;
    let per = |z: &Complex64| -> Result<Option<Complex64>> {
        let mut total = Complex64::new(0.0, 0.0);
        for (f, ff) in model.components.iter().zip(&fixed) {
            let Some(e) = euler_cocycle_e0b(f, theta, *z)? else { return Ok(None) };
            total += e.mul(ff).integrate();
        }
        Ok(total.is_finite().then_some(total))
    };
    par::map(exec, zs, per).into_iter().collect()
}

/// Spread of the localized sum over a fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spread {
    pub spread: f64,
    pub reference: Complex64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// `max |v(z) - v(z_0)|` over `samples` Halton points of the fundamental
/// parallelogram of the curve lattice.
pub fn rigidity_spread(
    model: &FixedPointModel,
    theta: &dyn ThetaFunction,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<Spread> {
    let lat = theta.curve_lattice();
    let zs: Vec<Complex64> = halton_unit_square(samples, seed).into_iter().map(|(s, t)| lat.point(s, t)).collect();
    let vals = rigidity_localized(model, theta, &zs, exec)?;
    let good: Vec<Complex64> = vals.iter().flatten().copied().collect();
    let reference = good.first().copied().unwrap_or_default();
    let spread = good.iter().map(|v| (v - reference).norm()).fold(0.0, f64::max);
    Ok(Spread { spread, reference, evaluated: good.len(), skipped: vals.len() - good.len() })
}
