use super::*;
use crate::ring::Ring;
use crate::sampling::{halton_disc, DEFAULT_CENTER};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Independent oracle: sigma from the Jacobi theta_1 series,
/// sigma(z) = i theta_1(v) / (q^{1/8} prod (1 - q^n)^3), z = 2 pi i v.
fn sigma_from_theta_series(z: Complex64, tau: Complex64) -> Complex64 {
    let i_pi = c(0.0, PI);
    let v = z / c(0.0, 2.0 * PI);
    let mut th = c(0.0, 0.0);
    for n in 0..40 {
        let h = n as f64 + 0.5;
        let term = (i_pi * tau * h * h).exp() * (v * (2.0 * n as f64 + 1.0) * PI).sin() * 2.0;
        th += if n % 2 == 0 { term } else { -term };
    }
    let q = (i_pi * tau * 2.0).exp();
    let mut euler = c(1.0, 0.0);
    let mut qn = c(1.0, 0.0);
    for _ in 0..200 {
        qn *= q;
        euler *= c(1.0, 0.0) - qn;
    }
    c(0.0, 1.0) * th / ((i_pi * tau * 0.25).exp() * euler * euler * euler)
}

#[test]
fn sigma_matches_theta_series() {
    for tau in [c(0.0, 1.0), c(0.3, 0.9), c(-0.4, 0.25)] {
        let s = Sigma::new(Lattice::witten(tau).unwrap(), 60);
        for z in [c(0.3, 0.1), c(-1.2, 2.5), c(0.05, -4.0)] {
            let a = s.eval(z).unwrap();
            let b = sigma_from_theta_series(z, tau);
            assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "{a} vs {b}");
        }
    }
}

#[test]
fn sigma_is_odd_with_unit_derivative() {
    let s = Sigma::new(Lattice::witten(c(0.1, 0.7)).unwrap(), 60);
    let jet = theta_jet(&s, c(0.0, 0.0), 5).unwrap();
    assert!(jet.coeff(0).norm() < 1e-15);
    assert!((jet.coeff(1) - c(1.0, 0.0)).norm() < 1e-13);
    assert!(jet.coeff(2).norm() < 1e-13 && jet.coeff(4).norm() < 1e-13);
    let z = c(0.7, -0.3);
    assert!((s.eval(-z).unwrap() + s.eval(z).unwrap()).norm() < 1e-13);
}

#[test]
fn sigma_translation_law() {
    let zs = halton_disc(DEFAULT_CENTER, 0.3, 50, 0);
    for tau in [c(0.0, 1.0), c(0.3, 0.9)] {
        let s = Sigma::new(Lattice::witten(tau).unwrap(), 60);
        for l in [(1, 0), (0, 1), (1, 1), (-2, 3)] {
            let r = verify_translation(&s, l, &zs, Execution::Sequential);
            assert!(r.max_residual < 1e-8, "{l:?}: {}", r.max_residual);
            assert_eq!(r.evaluated, 50);
        }
        let r = verify_iterated(&s, (1, 1), 3, &zs, Execution::Sequential);
        assert!(r.max_residual < 1e-8);
    }
}

struct WrongSign(Sigma, ThetaCharacter);

impl ThetaFunction for WrongSign {
    fn name(&self) -> &'static str {
        "wrong"
    }
    fn curve_lattice(&self) -> &Lattice {
        self.0.curve_lattice()
    }
    fn character(&self) -> &ThetaCharacter {
        &self.1
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.0.eval(z)
    }
    fn eval_jet(&self, z: &Jet<Complex64>) -> Result<Jet<Complex64>> {
        self.0.eval_jet(z)
    }
    fn singular_distance(&self, z: Complex64) -> f64 {
        self.0.singular_distance(z)
    }
}

#[test]
fn wrong_character_is_detected() {
    let l = Lattice::witten(c(0.0, 1.0)).unwrap();
    let ch = ThetaCharacter::new(l.clone(), c(0.0, 0.0), c(-1.0, 0.0), SignRule { a: 0, b: 1, e: 1 }, 1);
    let w = WrongSign(Sigma::new(l, 60), ch);
    let zs = halton_disc(DEFAULT_CENTER, 0.3, 20, 0);
    assert!(verify_translation(&w, (1, 0), &zs, Execution::Sequential).max_residual > 1e-2);
}

#[test]
fn character_identities() {
    let s = Sigma::new(Lattice::witten(c(0.3, 0.9)).unwrap(), 60);
    let ch = s.character();
    let v = ch.period_pairing((1, 0), (0, 1));
    assert!((v - c(1.0, 0.0)).norm() < 1e-12);
    assert!(check_period_relation(ch, 2) < 1e-10);
    assert!(check_character_quotient(ch, 2) < 1e-10);
    assert_eq!(ch.c(2, 0), 1);
    assert_eq!(ch.c(1, 0), -1);
    assert_eq!(ch.c(1, 1), -1);
    assert_eq!(ch.c(2, 4), 1);
    let o = OchanineS::new(c(0.3, 0.9), 60).unwrap();
    assert!(check_character_quotient(o.character(), 2) < 1e-10);
}

#[test]
fn ochanine_forms_agree() {
    let tau = c(0.1, 0.8);
    let a = OchanineS::new(tau, 60).unwrap();
    let b = OchanineQuotient::new(tau, 60).unwrap();
    for z in halton_disc(c(0.5, 0.9), 1.5, 30, 1) {
        let (x, y) = (a.eval(z).unwrap(), b.eval(z).unwrap());
        assert!((x - y).norm() < 1e-7 * (1.0 + x.norm()), "{z}: {x} vs {y}");
    }
    let ja = theta_jet(&a, c(0.2, 0.4), 4).unwrap();
    let jb = theta_jet(&b, c(0.2, 0.4), 4).unwrap();
    assert!((&ja - &jb).magnitude() < 1e-9);
}

#[test]
fn ochanine_half_period_and_limit() {
    let tau = c(0.3, 0.9);
    let s = OchanineS::new(tau, 60).unwrap();
    let p = c(0.0, 2.0 * PI) * tau;
    for z in halton_disc(DEFAULT_CENTER, 0.3, 20, 2) {
        let (a, b) = (s.eval(z + p).unwrap(), s.eval(z).unwrap());
        assert!((a + b).norm() < 1e-8 * (1.0 + b.norm()));
        let lim = OchanineS::q_zero_limit(z).unwrap();
        assert!((lim - (z * 0.5).tanh() * 2.0).norm() < 1e-12);
    }
    let jet = theta_jet(&s, c(0.0, 0.0), 3).unwrap();
    assert!((jet.coeff(1) - c(1.0, 0.0)).norm() < 1e-12);
    assert!(matches!(s.eval(c(0.0, PI)), Err(Error::Pole(_))));
}

#[test]
fn ochanine_translation_law() {
    let zs = halton_disc(DEFAULT_CENTER, 0.3, 50, 0);
    for tau in [c(0.0, 1.0), c(0.3, 0.9)] {
        let s = OchanineS::new(tau, 60).unwrap();
        for l in [(1, 0), (0, 1), (1, 1)] {
            assert!(verify_translation(&s, l, &zs, Execution::Sequential).max_residual < 1e-8);
        }
    }
}

#[test]
fn theta_jet_matches_finite_differences() {
    let s = Sigma::new(Lattice::witten(c(0.2, 1.1)).unwrap(), 60);
    let w = c(0.4, 0.9);
    let jet = theta_jet(&s, w, 3).unwrap();
    let f = |x: Complex64| s.eval(x).unwrap();
    let h = 1e-4;
    let d1 = (f(w + h) - f(w - h)) / (2.0 * h);
    let d2 = (f(w + h) - f(w) * 2.0 + f(w - h)) / (h * h);
    assert!((jet.coeff(1) - d1).norm() < 1e-6 * (1.0 + d1.norm()));
    assert!((jet.coeff(2) * 2.0 - d2).norm() < 1e-5 * (1.0 + d2.norm()));
    // fourth-order stencil for the third derivative
    let h = 1e-2;
    let d3 = (-f(w + 3.0 * h) + f(w + 2.0 * h) * 8.0 - f(w + h) * 13.0 + f(w - h) * 13.0 - f(w - 2.0 * h) * 8.0
        + f(w - 3.0 * h))
        / (8.0 * h * h * h);
    assert!((jet.coeff(3) * 6.0 - d3).norm() < 1e-5 * (1.0 + d3.norm()));
}

#[test]
fn jet_order_cap() {
    let s = Sigma::new(Lattice::witten(c(0.0, 1.0)).unwrap(), 60);
    assert!(matches!(theta_jet(&s, c(0.0, 0.0), JET_CAP + 1), Err(Error::JetOrder { .. })));
}
