use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::quantities::{effective, quantities, EffectiveSummand};
use super::{BundleSummand, FixedComponent, LinClass, SpecialPointData};
use crate::chargenus::theta_of_class;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::nilpotent::{NilpotentClass, NilpotentRing};
use crate::par::{self, Execution};
use crate::ring::Ring;
use crate::theta::{theta_jet, ThetaFunction, SINGULAR_EXCLUSION};
use crate::JET_CAP;

type Class = NilpotentClass<Complex64>;

/// Outcome of a sampled identity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckResult {
    pub max_residual: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

impl CheckResult {
    fn collect(items: Vec<Option<f64>>) -> Self {
        let mut r = CheckResult { max_residual: 0.0, evaluated: 0, skipped: 0 };
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

    fn merge(self, o: CheckResult) -> CheckResult {
        CheckResult {
            max_residual: self.max_residual.max(o.max_residual),
            evaluated: self.evaluated + o.evaluated,
            skipped: self.skipped + o.skipped,
        }
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.evaluated > 0 && self.max_residual < tol
    }
}

/// A theta argument `k z + sum c_i y_i + offset`.
#[derive(Clone, Debug)]
struct Arg {
    class: LinClass,
    offset: Complex64,
}

impl Arg {
    fn new(class: LinClass, offset: Complex64) -> Self {
        Arg { class, offset }
    }

    fn key(&self) -> (LinClass, u64, u64) {
        (self.class.clone(), self.offset.re.to_bits(), self.offset.im.to_bits())
    }

    fn eval(&self, ring: &Arc<NilpotentRing>, z: Complex64) -> Class {
        self.class.eval(ring, z, 1.0).add(&NilpotentClass::constant(ring, self.offset))
    }
}

/// `prod theta(num) / prod theta(den)`, with identical arguments cancelled
/// before evaluation.
#[derive(Default)]
struct Ratio {
    num: Vec<Arg>,
    den: Vec<Arg>,
}

impl Ratio {
    fn cancel(&mut self) {
        let mut count: HashMap<(LinClass, u64, u64), i64> = HashMap::new();
        for a in &self.num {
            *count.entry(a.key()).or_default() += 1;
        }
        for a in &self.den {
            *count.entry(a.key()).or_default() -= 1;
        }
        fn keep(list: &mut Vec<Arg>, sign: i64, count: &mut HashMap<(LinClass, u64, u64), i64>) {
            list.retain(|a| {
                let c = count.get_mut(&a.key()).unwrap();
                if *c * sign > 0 {
                    *c -= sign;
                    true
                } else {
                    false
                }
            });
        }
        let mut c2 = count.clone();
        keep(&mut self.num, 1, &mut c2);
        keep(&mut self.den, -1, &mut count);
    }

    /// `Ok(None)` when some argument sits within [`SINGULAR_EXCLUSION`] of a
    /// zero or pole of theta.
    fn eval(&self, theta: &dyn ThetaFunction, ring: &Arc<NilpotentRing>, z: Complex64) -> Result<Option<Class>> {
        let mut acc = NilpotentClass::one(ring);
        for (list, inv) in [(&self.num, false), (&self.den, true)] {
            for a in list {
                let Some(t) = theta_at(theta, &a.eval(ring, z))? else { return Ok(None) };
                acc = if inv {
                    match t.try_inverse() {
                        Some(i) => acc.mul(&i),
                        None => return Ok(None),
                    }
                } else {
                    acc.mul(&t)
                };
            }
        }
        Ok(Some(acc))
    }
}

fn theta_at(theta: &dyn ThetaFunction, arg: &Class) -> Result<Option<Class>> {
    let w = *arg.constant_term();
    if theta.singular_distance(w) < SINGULAR_EXCLUSION {
        return Ok(None);
    }
    match theta_of_class(theta, arg) {
        Ok(t) => Ok(Some(t)),
        Err(Error::Pole(_)) | Err(Error::Singular(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check_ring(ring: &NilpotentRing) -> Result<()> {
    let order = ring.nilpotency().saturating_sub(1);
    if order > JET_CAP {
        return Err(Error::JetOrder { order, cap: JET_CAP });
    }
    Ok(())
}

fn with_z(x: &LinClass, m: i64) -> LinClass {
    LinClass { z: x.z + m, gens: x.gens.clone() }
}

fn push_summands(list: &[BundleSummand], out: &mut Vec<Arg>, shift: Complex64) {
    for s in list {
        for x in &s.roots {
            out.push(Arg::new(with_z(x, s.m), shift * s.m as f64));
        }
    }
}

/// `e(0,b)(z) = prod theta(x' + m' z) / prod theta(x + m z)` in the stored
/// signs. `Ok(None)` marks a singular sample.
pub fn euler_cocycle_e0b(f: &FixedComponent, theta: &dyn ThetaFunction, z: Complex64) -> Result<Option<Class>> {
    check_ring(&f.ring)?;
    let mut r = Ratio::default();
    push_summands(&f.v, &mut r.num, Complex64::new(0.0, 0.0));
    push_summands(&f.t, &mut r.den, Complex64::new(0.0, 0.0));
    r.cancel();
    r.eval(theta, &f.ring, z)
}

fn check_delta(f: &FixedComponent, sp: &SpecialPointData, delta: u8, delta_prime: u8) -> Result<()> {
    if delta > 1 || delta_prime > 1 {
        return Err(Error::Config("delta and delta' take values 0 or 1".into()));
    }
    match sp.h() {
        None if delta != 0 || delta_prime != 0 => {
            Err(Error::Config(format!("delta and delta' must vanish at a point of odd order {}", sp.n)))
        }
        Some(_) => {
            let te = effective(&f.t, sp.n);
            let ve = effective(&f.v, sp.n);
            let has_h = |l: &[EffectiveSummand]| l.iter().any(|s| 2 * s.dec.r == sp.n as i64 && s.d() > 0);
            if delta == 1 && !has_h(&te) {
                return Err(Error::Config(format!("delta = 1 needs a summand of T with m = n/2 mod {}", sp.n)));
            }
            if delta_prime == 1 && !has_h(&ve) {
                return Err(Error::Config(format!("delta' = 1 needs a summand of V with m = n/2 mod {}", sp.n)));
            }
            Ok(())
        }
        None => Ok(()),
    }
}

fn delta_sign(delta: u8, delta_prime: u8) -> f64 {
    if (delta_prime as i64 - delta as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The `r = 0` block `Pi_0 = prod_{m' = 0 mod n} theta(x' + m' z) /
/// prod_{m = 0 mod n} theta(x + m z)` times `(-1)^{delta' - delta}`: the
/// cocycle `e(a,b)` on `U_a` meeting an ordinary `U_b`, in the local
/// coordinate `z` at `a`.
pub fn e_ab(
    f: &FixedComponent,
    sp: &SpecialPointData,
    delta: u8,
    delta_prime: u8,
    theta: &dyn ThetaFunction,
    z: Complex64,
) -> Result<Option<Class>> {
    check_ring(&f.ring)?;
    check_delta(f, sp, delta, delta_prime)?;
    let mut r = Ratio::default();
    let zero = Complex64::new(0.0, 0.0);
    for (list, out) in [(&f.v, &mut r.num), (&f.t, &mut r.den)] {
        for s in effective(list, sp.n) {
            if s.dec.r == 0 {
                for x in &s.roots {
                    out.push(Arg::new(with_z(x, s.dec.m_eff), zero));
                }
            }
        }
    }
    r.cancel();
    let sign = delta_sign(delta, delta_prime);
    Ok(r.eval(theta, &f.ring, z)?.map(|c| c.scale(&Complex64::new(sign, 0.0))))
}

/// Taylor jet at `0` of `Q_h(x) = S(-x/2) theta(x + lambda/2)` with
/// `S(x) = e^{gamma(lambda) x}`.
pub fn q_h(theta: &dyn ThetaFunction, sp: &SpecialPointData, order: usize) -> Result<Jet<Complex64>> {
    let t = theta_jet(theta, sp.lambda * 0.5, order)?;
    let s = Jet::variable(Complex64::new(0.0, 0.0), order + 1).scale(&(-sp.gamma * 0.5));
    let s = s.try_exp().ok_or(Error::NonUnit)?;
    Ok((&s * &t).truncate(order + 1))
}

/// The local section `Theta_a` restricted to `F`:
///
/// ```text
/// eps S(a alpha) S(c_1(V)/n) prod_{0<r<h} Q_r(V_r)/Q_r(T_r) [Q_h(V_h)/Q_h(T_h)]
/// ```
///
/// with `Q_r(x) = theta(x + r a)`. For even `n`, `c_1(V)/n` is the class
/// `c_1(V^{1/h})/2`, and the orientation of `T_h` (resp. `V_h`) differs from
/// the complex one by negating a root when `delta = 1` (resp. `delta' = 1`).
pub fn theta_section(
    f: &FixedComponent,
    sp: &SpecialPointData,
    delta: u8,
    delta_prime: u8,
    theta: &dyn ThetaFunction,
    z: Complex64,
) -> Result<Option<Class>> {
    check_ring(&f.ring)?;
    check_delta(f, sp, delta, delta_prime)?;
    let ring = &f.ring;
    let n = sp.n as i64;
    let q = quantities(f, sp, delta, delta_prime);
    let alpha = *q.alpha.numer() as f64 / *q.alpha.denom() as f64;

    let mut ratio = Ratio::default();
    let mut qh = Ratio::default();
    for (list, out, qout) in [(&f.v, &mut ratio.num, &mut qh.num), (&f.t, &mut ratio.den, &mut qh.den)] {
        for s in effective(list, sp.n) {
            let r = s.dec.r;
            for x in &s.roots {
                let w = with_z(x, s.dec.m_eff);
                if r > 0 && 2 * r < n {
                    out.push(Arg::new(w, sp.a * r as f64));
                } else if 2 * r == n {
                    qout.push(Arg::new(w, sp.lambda * 0.5));
                }
            }
        }
    }
    if delta_prime == 1 {
        qh.num[0].class = qh.num[0].class.scale(-1);
    }
    if delta == 1 {
        qh.den[0].class = qh.den[0].class.scale(-1);
    }
    ratio.cancel();
    qh.cancel();

    // exponent of S: a alpha + c_1(V)/n - (sum w'_h - sum w_h)/2
    let mut expo = q.c1_script_v.eval(ring, z, 1.0 / n as f64).add(&NilpotentClass::constant(ring, sp.a * alpha));
    for a in &qh.num {
        expo = expo.sub(&a.class.eval(ring, z, 0.5));
    }
    for a in &qh.den {
        expo = expo.add(&a.class.eval(ring, z, 0.5));
    }
    let s = expo.scale(&sp.gamma).try_exp().ok_or(Error::NonUnit)?;

    let Some(p) = ratio.eval(theta, ring, z)? else { return Ok(None) };
    let Some(ph) = qh.eval(theta, ring, z)? else { return Ok(None) };
    Ok(Some(s.mul(&p).mul(&ph).scale(&Complex64::new(q.epsilon as f64, 0.0))))
}

/// `e(a,b)^{-1} tau_a^* e(0,b)` at `z`, with `e(0,b)` written in the signs
/// adapted to `a`.
fn transfer_lhs(
    f: &FixedComponent,
    sp: &SpecialPointData,
    delta: u8,
    delta_prime: u8,
    theta: &dyn ThetaFunction,
    z: Complex64,
) -> Result<Option<Class>> {
    let mut r = Ratio::default();
    let zero = Complex64::new(0.0, 0.0);
    for (list, top) in [(&f.v, true), (&f.t, false)] {
        for s in effective(list, sp.n) {
            for x in &s.roots {
                let w = with_z(x, s.dec.m_eff);
                let shifted = Arg::new(w.clone(), sp.a * s.dec.m_eff as f64);
                let (out, back) = if top { (&mut r.num, &mut r.den) } else { (&mut r.den, &mut r.num) };
                out.push(shifted);
                if s.dec.r == 0 {
                    back.push(Arg::new(w, zero));
                }
            }
        }
    }
    r.cancel();
    let sign = delta_sign(delta, delta_prime);
    Ok(r.eval(theta, &f.ring, z)?.map(|c| c.scale(&Complex64::new(sign, 0.0))))
}

/// Max coefficient-wise residual of the transfer equation
/// `e(a,b)^{-1} tau_a^* e(0,b) = Theta_a` over the samples.
pub fn transfer_check(
    f: &FixedComponent,
    sp: &SpecialPointData,
    delta: u8,
    delta_prime: u8,
    theta: &dyn ThetaFunction,
    zs: &[Complex64],
) -> Result<CheckResult> {
    transfer_check_with(f, sp, delta, delta_prime, theta, zs, Execution::default())
}

pub fn transfer_check_with(
    f: &FixedComponent,
    sp: &SpecialPointData,
    delta: u8,
    delta_prime: u8,
    theta: &dyn ThetaFunction,
    zs: &[Complex64],
    exec: Execution,
) -> Result<CheckResult> {
    check_ring(&f.ring)?;
    check_delta(f, sp, delta, delta_prime)?;
    let per = |z: &Complex64| -> Result<Option<f64>> {
        let Some(l) = transfer_lhs(f, sp, delta, delta_prime, theta, *z)? else { return Ok(None) };
        let Some(r) = theta_section(f, sp, delta, delta_prime, theta, *z)? else { return Ok(None) };
        Ok(Some(l.relative_residual(&r)))
    };
    let items = par::map(exec, zs, per).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CheckResult::collect(items))
}

/// Max residual of `e(0,b)(z + l) = e(0,b)(z)` for `l` in
/// `{g1, g2, g1 + g2}` of the character lattice.
pub fn ellipticity_check(
    f: &FixedComponent,
    theta: &dyn ThetaFunction,
    zs: &[Complex64],
    exec: Execution,
) -> Result<CheckResult> {
    check_ring(&f.ring)?;
    let ch = theta.character();
    let mut out = CheckResult { max_residual: 0.0, evaluated: 0, skipped: 0 };
    for (j, k) in [(1, 0), (0, 1), (1, 1)] {
        let l = ch.lambda(j, k);
        let per = |z: &Complex64| -> Result<Option<f64>> {
            let Some(a) = euler_cocycle_e0b(f, theta, *z + l)? else { return Ok(None) };
            let Some(b) = euler_cocycle_e0b(f, theta, *z)? else { return Ok(None) };
            Ok(Some(a.relative_residual(&b)))
        };
        let items = par::map(exec, zs, per).into_iter().collect::<Result<Vec<_>>>()?;
        out = out.merge(CheckResult::collect(items));
    }
    Ok(out)
}

/// A chart of the cover: an ordinary point, or a special point with its
/// orientation data.
#[derive(Clone, Copy, Debug)]
pub enum Chart<'a> {
    Ordinary(Complex64),
    Special { sp: &'a SpecialPointData, delta: u8, delta_prime: u8 },
}

/// Euler class of the part of `V - T` fixed by the chart point `p`, at
/// `w` in the coordinate of `C`: summands with `m p` in the lattice
/// contribute `theta(x + m (w - p))`.
pub fn chart_euler(f: &FixedComponent, theta: &dyn ThetaFunction, chart: Chart<'_>, w: Complex64) -> Result<Option<Class>> {
    check_ring(&f.ring)?;
    let lat = theta.character().lattice();
    match chart {
        Chart::Ordinary(p) => {
            let mut r = Ratio::default();
            for (list, out) in [(&f.v, &mut r.num), (&f.t, &mut r.den)] {
                for s in list.iter().filter(|s| s.m != 0 && lat.as_lattice_vector(p * s.m as f64).is_some()) {
                    for x in &s.roots {
                        out.push(Arg::new(with_z(x, s.m), Complex64::new(0.0, 0.0)));
                    }
                }
            }
            r.cancel();
            r.eval(theta, &f.ring, w - p)
        }
        Chart::Special { sp, delta, delta_prime } => e_ab(f, sp, delta, delta_prime, theta, w - sp.a),
    }
}

/// Residual of `e(p,q) e(q,r) = e(p,r)` with `e(p,q) = E_p / E_q`, at the
/// points `w = a + z` of the samples, where `a` is the first chart's point.
pub fn cocycle_check(
    f: &FixedComponent,
    theta: &dyn ThetaFunction,
    charts: [Chart<'_>; 3],
    zs: &[Complex64],
) -> Result<CheckResult> {
    let base = match charts[0] {
        Chart::Ordinary(p) => p,
        Chart::Special { sp, .. } => sp.a,
    };
    let mut items = Vec::new();
    for z in zs {
        let w = base + z;
        let mut e = Vec::new();
        for c in charts {
            match chart_euler(f, theta, c, w)? {
                Some(v) => e.push(v),
                None => break,
            }
        }
        if e.len() < 3 {
            items.push(None);
            continue;
        }
        let inv = |c: &Class| c.try_inverse();
        let (Some(i1), Some(i2)) = (inv(&e[1]), inv(&e[2])) else {
            items.push(None);
            continue;
        };
        let lhs = e[0].mul(&i1).mul(&e[1].mul(&i2));
        let rhs = e[0].mul(&i2);
        items.push(Some(lhs.relative_residual(&rhs)));
    }
    Ok(CheckResult::collect(items))
}
