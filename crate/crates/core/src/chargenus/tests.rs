use super::*;
use crate::lattice::Lattice;
use crate::nilpotent::Generator;
use crate::theta::{OchanineS, Sigma};

fn r(p: i64, q: i64) -> BigRational {
    ratio(p, q)
}

fn manifold(dim: usize, numbers: &[(&str, i64)]) -> ManifoldData {
    ManifoldData::new(dim, numbers.iter().map(|(k, v)| (parse_partition(k).unwrap(), *v))).unwrap()
}

// Reference coefficients from an independent symbolic expansion of
// prod_j (x_j/2)/sinh(x_j/2) solved in the elementary-symmetric basis.
fn a_hat_reference(k: u32) -> Vec<(&'static str, BigRational)> {
    match k {
        1 => vec![("p1", r(-1, 24))],
        2 => vec![("p2", r(-1, 1440)), ("p1^2", r(7, 5760))],
        3 => vec![("p3", r(-1, 60480)), ("p2*p1", r(11, 241920)), ("p1^3", r(-31, 967680))],
        4 => vec![
            ("p4", r(-1, 2419200)),
            ("p3*p1", r(1, 907200)),
            ("p2^2", r(13, 29030400)),
            ("p2*p1^2", r(-113, 58060800)),
            ("p1^4", r(127, 154828800)),
        ],
        _ => unreachable!(),
    }
}

#[test]
fn a_hat_polynomials_match_reference() {
    let series = a_hat_series(9);
    for k in 1..=4 {
        let poly = genus_polynomial(&series, k).unwrap();
        let reference = a_hat_reference(k);
        assert_eq!(poly.coefficients.len(), reference.len());
        for (name, v) in reference {
            assert_eq!(poly.coefficients[&parse_partition(name).unwrap()], v, "k={k} {name}");
        }
    }
}

#[test]
fn a_hat_examples() {
    assert_eq!(a_hat(&manifold(4, &[("p1", -48)])).unwrap(), r(2, 1));
    let (a, b) = (1003, -217);
    let m = manifold(8, &[("p1^2", a), ("p2", b)]);
    assert_eq!(a_hat(&m).unwrap(), r(7 * a - 4 * b, 5760));
}

#[test]
fn zero_numbers_and_odd_dimensions() {
    let m = manifold(8, &[("p1^2", 0), ("p2", 0)]);
    assert_eq!(a_hat(&m).unwrap(), r(0, 1));
    assert!(witten_genus_q(&m, 6).unwrap().is_zero());
    let m6 = ManifoldData::new(6, []).unwrap();
    assert_eq!(a_hat(&m6).unwrap(), r(0, 1));
}

#[test]
fn missing_number_is_an_error() {
    let m = manifold(8, &[("p1^2", 3)]);
    assert!(matches!(a_hat(&m), Err(Error::MissingPontryagin(p)) if p == "p2"));
    assert!(ManifoldData::new(8, [(vec![1], 2)]).is_err());
    assert!(ManifoldData::new(20, []).is_err());
}

#[test]
fn witten_four_manifold_is_minus_e2_over_24() {
    // -E_2/24 = -1/24 + sum sigma_1(n) q^n
    let m = manifold(4, &[("p1", 1)]);
    let w = witten_genus_q(&m, 10).unwrap();
    let sigma1 = [1, 3, 4, 7, 6, 12, 8, 15, 13, 18];
    assert_eq!(w.coeff(0), r(-1, 24));
    for (n, s) in sigma1.iter().enumerate() {
        assert_eq!(w.coeff(n + 1), r(*s, 1), "q^{}", n + 1);
    }
}

#[test]
fn witten_eight_manifold_reference() {
    // independent symbolic expansion through q^3
    let series = sigma_q_series(5, 3).unwrap();
    let poly = genus_polynomial(&series, 2).unwrap();
    let p2 = &poly.coefficients[&vec![2]];
    let p11 = &poly.coefficients[&vec![1, 1]];
    assert_eq!(p2.coeffs(), &[r(-1, 1440), r(-1, 6), r(-3, 2), r(-14, 3)]);
    assert_eq!(p11.coeffs(), &[r(7, 5760), r(1, 24), r(9, 8), r(31, 6)]);
}

#[test]
fn witten_equals_twisted_a_hat() {
    for m in [
        manifold(4, &[("p1", -48)]),
        manifold(8, &[("p1^2", 17), ("p2", -5)]),
        manifold(12, &[("p1^3", 2), ("p2*p1", -7), ("p3", 11)]),
    ] {
        let w = witten_genus_q(&m, 8).unwrap();
        let t = twisted_a_hat(&m, 8).unwrap();
        assert_eq!(w, t);
        assert_eq!(w.coeff(0), a_hat(&m).unwrap());
    }
}

#[test]
fn ochanine_genus_constant_term_is_signature_like() {
    // s(x) at q = 0 is 2 tanh(x/2); x / (2 tanh(x/2)) = 1 + x^2/12 + ...
    let m = manifold(4, &[("p1", 3)]);
    let o = ochanine_genus_q(&m, 4).unwrap();
    assert_eq!(o.coeff(0), r(1, 4));
}

#[test]
fn numeric_theta_series_matches_exact_q_expansion() {
    let tau = Complex64::new(0.1, 1.2);
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau).exp();
    let m = manifold(8, &[("p1^2", 5), ("p2", 3)]);
    let sigma = Sigma::new(Lattice::witten(tau).unwrap(), 60);
    let numeric = genus_eval(&theta_series(&sigma, 5).unwrap(), &m).unwrap();
    let exact = witten_genus_q(&m, 12).unwrap();
    let summed = exact.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
        acc * q + Complex64::new(num_traits::ToPrimitive::to_f64(c).unwrap(), 0.0)
    });
    assert!((numeric - summed).norm() < 1e-9, "{numeric} vs {summed}");
    let s = OchanineS::new(tau, 60).unwrap();
    assert!(theta_series(&s, 5).is_ok());
}

#[test]
fn additivity_in_numbers() {
    let series = sigma_q_series(5, 4).unwrap();
    let a = manifold(8, &[("p1^2", 3), ("p2", 1)]);
    let b = manifold(8, &[("p1^2", -2), ("p2", 9)]);
    let ab = manifold(8, &[("p1^2", 1), ("p2", 10)]);
    let sum = genus_eval(&series, &a).unwrap() + genus_eval(&series, &b).unwrap();
    assert_eq!(sum, genus_eval(&series, &ab).unwrap());
}

#[test]
fn rejects_unnormalized_series() {
    let bad = Jet::new(vec![r(0, 1), r(2, 1), r(0, 1), r(1, 1)]);
    assert!(CharacteristicSeries::new(bad, "bad").is_err());
    let even = Jet::new(vec![r(0, 1), r(1, 1), r(1, 1)]);
    assert!(CharacteristicSeries::new(even, "bad").is_err());
}

#[test]
fn partition_parsing() {
    assert_eq!(parse_partition("p1^2*p2").unwrap(), vec![2, 1, 1]);
    assert_eq!(parse_partition("p2 p1^2").unwrap(), vec![2, 1, 1]);
    assert!(parse_partition("q1").is_err());
    assert_eq!(partition_name(&vec![2, 1, 1]), "p2*p1^2");
    assert_eq!(partitions(4).len(), 5);
}

fn one_root_ring(cap: u32) -> Arc<NilpotentRing> {
    let g = vec![Generator { name: "x".into(), degree: 2 }];
    NilpotentRing::new(g, cap, vec![(vec![cap / 2], 1)]).unwrap()
}

#[test]
fn sym_t_factor_examples() {
    let ring = one_root_ring(8);
    let x = NilpotentClass::<QSeries>::generator(&ring, 0);
    let zero = NilpotentClass::<QSeries>::zero(&ring);
    let f0 = sym_t_chern_character(&ring, &[zero.clone(), zero], 1, 5).unwrap();
    assert!(f0.coeffs()[1..].iter().all(Ring::is_zero));
    assert_eq!(f0.coeffs()[0], QSeries::q_power(0, 6));
    // q^1 part of the factor is e^x + e^{-x} - 2 = x^2 + x^4/12 + ...
    let f = sym_t_chern_character(&ring, &[x.clone()], 1, 3).unwrap();
    let c = |k: usize| f.coeffs()[k].coeff(1);
    assert_eq!(c(0), r(0, 1));
    assert_eq!(c(1), r(0, 1));
    assert_eq!(c(2), r(1, 1));
    assert_eq!(c(4), r(1, 12));
}

#[test]
fn sym_t_is_multiplicative() {
    let g = vec![
        Generator { name: "a".into(), degree: 2 },
        Generator { name: "b".into(), degree: 2 },
    ];
    let ring = NilpotentRing::new(g, 6, vec![]).unwrap();
    let a = NilpotentClass::<QSeries>::generator(&ring, 0);
    let b = NilpotentClass::<QSeries>::generator(&ring, 1);
    let ab = a.add(&b.scale(&QSeries::constant(r(2, 1))));
    for n in 1..3 {
        let whole = sym_t_chern_character(&ring, &[a.clone(), ab.clone()], n, 6).unwrap();
        let parts = sym_t_chern_character(&ring, &[a.clone()], n, 6)
            .unwrap()
            .mul(&sym_t_chern_character(&ring, &[ab.clone()], n, 6).unwrap());
        assert_eq!(whole.coeffs(), parts.coeffs());
    }
}

#[test]
fn sym_t_matches_twisting_log() {
    // the product over n of Sym factors, times the A-hat factor, is x/sigma(x)
    let ring = one_root_ring(8);
    let x = NilpotentClass::<QSeries>::generator(&ring, 0);
    let q_order = 4;
    let mut prod = NilpotentClass::constant(&ring, QSeries::q_power(0, q_order + 1));
    for n in 1..=q_order {
        prod = prod.mul(&sym_t_chern_character(&ring, &[x.clone()], n, q_order).unwrap());
    }
    let a = a_hat_series(9);
    let q_a = a.coeffs().div_by_variable().unwrap().try_inv().unwrap();
    let a_class = NilpotentClass::compose(&q_a.map(|c| QSeries::constant(c.clone())), &x);
    let total = prod.mul(&a_class);
    let sigma = sigma_q_series(9, q_order).unwrap();
    let q_sigma = sigma.coeffs().div_by_variable().unwrap().try_inv().unwrap();
    let direct = NilpotentClass::compose(&q_sigma, &x);
    for (u, v) in total.coeffs().iter().zip(direct.coeffs()) {
        assert_eq!(u.clone().extend_to(q_order + 1), v.clone().extend_to(q_order + 1));
    }
}

#[test]
fn euler_class_examples() {
    let tau = Complex64::new(0.2, 0.9);
    let sigma = Sigma::new(Lattice::witten(tau).unwrap(), 60);
    let ring = one_root_ring(2);
    let x = NilpotentClass::<Complex64>::generator(&ring, 0);
    let z = Complex64::new(0.3, 0.4);
    let empty = euler_class(&sigma, &ring, &[], z).unwrap();
    assert_eq!(empty.coeffs()[0], Complex64::new(1.0, 0.0));
    let e0 = euler_class(&sigma, &ring, &[(x.clone(), 0)], z).unwrap();
    assert!(e0.coeffs()[0].norm() < 1e-15 && (e0.coeffs()[1] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
    assert!(matches!(euler_class_unit(&sigma, &ring, &[(x.clone(), 0)], z), Err(Error::NonUnit)));
    let e1 = euler_class(&sigma, &ring, &[(x.clone(), 1)], z).unwrap();
    let jet = theta_jet(&sigma, z, 1).unwrap();
    assert!((e1.coeffs()[0] - jet.coeff(0)).norm() < 1e-14);
    assert!((e1.coeffs()[1] - jet.coeff(1)).norm() < 1e-14);
}

#[test]
fn euler_class_is_multiplicative() {
    let sigma = Sigma::new(Lattice::witten(Complex64::new(0.0, 1.0)).unwrap(), 60);
    let g = vec![
        Generator { name: "a".into(), degree: 2 },
        Generator { name: "b".into(), degree: 2 },
    ];
    let ring = NilpotentRing::new(g, 4, vec![]).unwrap();
    let a = NilpotentClass::<Complex64>::generator(&ring, 0);
    let b = NilpotentClass::<Complex64>::generator(&ring, 1);
    let left = vec![(a.clone(), 1), (b.clone(), -2)];
    let right = vec![(a.sub(&b), 3)];
    let z = Complex64::new(0.41, 0.27);
    let all: Vec<_> = left.iter().chain(&right).cloned().collect();
    let whole = euler_class(&sigma, &ring, &all, z).unwrap();
    let parts = euler_class(&sigma, &ring, &left, z).unwrap().mul(&euler_class(&sigma, &ring, &right, z).unwrap());
    assert!(whole.relative_residual(&parts) < 1e-14);
}
