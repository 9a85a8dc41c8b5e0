use proptest::prelude::*;

use sigma_rigidity::chargenus::{a_hat, witten_genus_q, ManifoldData};
use sigma_rigidity::equivrep::VirtualRep;
use sigma_rigidity::jet::Jet;
use sigma_rigidity::lattice::{build_adapted_cover, verify_adapted, Lattice};
use sigma_rigidity::par::Execution;
use sigma_rigidity::sampling::{halton_disc, DEFAULT_CENTER, DEFAULT_RADIUS};
use sigma_rigidity::theta::{verify_translation, Sigma};
use sigma_rigidity::thomfix::{
    ccr_validate, decompose, quantities, transfer_check_with, CcrMode, FixedComponent, SpecialPointData,
};
use sigma_rigidity::Complex64;

fn tau() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, 0.5f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn rep() -> impl Strategy<Value = VirtualRep> {
    prop::collection::vec((-5i64..=5, -3i64..=3), 0..5).prop_map(VirtualRep::new)
}

/// Point data with `sum d m^2 = 0`, built from pairs `k^2 z^m - m^2 z^k`.
fn balanced_rep() -> impl Strategy<Value = VirtualRep> {
    prop::collection::vec((1i64..=4, 1i64..=4, prop::bool::ANY), 1..3).prop_map(|pairs| {
        let mut f = VirtualRep::zero();
        for (m, k, flip) in pairs {
            let s = if flip { -1 } else { 1 };
            f.add_term(s * m, k * k);
            f.add_term(k, -m * m);
        }
        f
    })
}

fn sigma(tau: Complex64) -> Sigma {
    Sigma::new(Lattice::witten(tau).unwrap(), 60)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduce_is_periodic_and_idempotent(t in tau(), s in -3.0f64..3.0, u in -3.0f64..3.0, j in -4i64..4, k in -4i64..4) {
        let l = Lattice::witten(t).unwrap();
        let z = l.point(s, u);
        let p = l.reduce(z);
        prop_assert!(l.same_point(p.z, l.reduce(z + l.vector(j, k)).z));
        prop_assert!(l.same_point(p.z, l.reduce(p.z).z));
        prop_assert!((0.0..1.0).contains(&p.s) && (0.0..1.0).contains(&p.t));
    }

    #[test]
    fn torsion_count(t in tau(), n in 1u64..8) {
        let l = Lattice::witten(t).unwrap();
        let pts = l.torsion_points(n).unwrap();
        prop_assert_eq!(pts.len() as u64, n * n);
        for p in &pts {
            prop_assert!(l.as_lattice_vector(p.z * n as f64).is_some());
        }
    }

    #[test]
    fn cover_is_adapted(t in tau(), n in 1u64..=6) {
        let l = Lattice::witten(t).unwrap();
        let cover = build_adapted_cover(&l, &l.torsion_points(n).unwrap()).unwrap();
        let rep = verify_adapted(&cover);
        prop_assert!(rep.pass(), "{:?}", rep.checks);
    }

    #[test]
    fn divisor_is_additive(f in rep(), g in rep()) {
        let l = Lattice::witten(Complex64::new(0.1, 1.1)).unwrap();
        let (df, dg, dfg) = (f.divisor_of(&l).unwrap(), g.divisor_of(&l).unwrap(), f.add(&g).divisor_of(&l).unwrap());
        prop_assert_eq!(dfg.degree(), df.degree() + dg.degree());
        for (p, _) in df.entries().iter().chain(dg.entries()) {
            prop_assert_eq!(dfg.mult_at(&l, p.z), df.mult_at(&l, p.z) + dg.mult_at(&l, p.z));
        }
    }

    #[test]
    fn rep_invariants_are_additive(f in rep(), g in rep()) {
        let h = f.add(&g);
        prop_assert_eq!(h.degree(), f.degree() + g.degree());
        prop_assert_eq!(h.p1_equivariant(), f.p1_equivariant() + g.p1_equivariant());
        prop_assert_eq!(h.w2_equivariant(), (f.w2_equivariant() + g.w2_equivariant()) % 2);
        prop_assert_eq!(h.degree().rem_euclid(2) as u8, h.w2_equivariant());
        prop_assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn triviality_agrees_with_divisor(f in rep(), t in tau()) {
        let l = Lattice::witten(t).unwrap();
        prop_assert_eq!(f.is_trivial(), f.divisor_trivial(&l).unwrap());
    }

    #[test]
    fn trivialization_is_multiplicative(f in rep(), g in rep(), i in 0usize..16) {
        let th = sigma(Complex64::new(0.0, 1.0));
        let z = halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, 16, 9)[i];
        if let (Ok(a), Ok(b), Ok(c)) = (
            f.trivialization_eval(&th, z),
            g.trivialization_eval(&th, z),
            f.add(&g).trivialization_eval(&th, z),
        ) {
            prop_assert!((a * b - c).norm() <= 1e-9 * (1.0 + c.norm()));
        }
    }

    #[test]
    fn sigma_translation_law(t in tau(), j in -3i64..=3, k in -3i64..=3) {
        let th = sigma(t);
        let zs = halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, 8, 1);
        let r = verify_translation(&th, (j, k), &zs, Execution::Sequential);
        prop_assert!(r.max_residual < 1e-8, "{:?}", r);
    }

    #[test]
    fn jet_product_is_truncated_convolution(
        a in prop::collection::vec(-5.0f64..5.0, 6),
        b in prop::collection::vec(-5.0f64..5.0, 6),
    ) {
        let ja = Jet::new(a.iter().map(|&x| Complex64::new(x, 0.0)).collect());
        let jb = Jet::new(b.iter().map(|&x| Complex64::new(0.0, x)).collect());
        let p = &ja * &jb;
        for k in 0..6 {
            let want: Complex64 = (0..=k).map(|i| ja.coeff(i) * jb.coeff(k - i)).sum();
            prop_assert!((p.coeff(k) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn genus_is_additive(x1 in -300i64..300, y1 in -300i64..300, x2 in -300i64..300, y2 in -300i64..300) {
        let m = |x: i64, y: i64| ManifoldData::new(8, [(vec![1, 1], x), (vec![2], y)]).unwrap();
        let (a, b, s) = (m(x1, y1), m(x2, y2), m(x1 + x2, y1 + y2));
        prop_assert_eq!(a_hat(&s).unwrap(), a_hat(&a).unwrap() + a_hat(&b).unwrap());
        let w = witten_genus_q(&a, 3).unwrap() + witten_genus_q(&b, 3).unwrap();
        prop_assert_eq!(witten_genus_q(&s, 3).unwrap(), w);
    }

    #[test]
    fn decompose_reconstructs(m in -60i64..60, n in 2u64..10) {
        let d = decompose(m, n);
        prop_assert_eq!(d.m_eff, n as i64 * d.ell + d.r);
        prop_assert_eq!(d.m_eff, if d.flipped { -m } else { m });
        prop_assert!(0 <= d.r && 2 * d.r <= n as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ccr_data_satisfies_local_identities(f in balanced_rep(), n in 2u64..=6, j in 0i64..6, k in 0i64..6) {
        let (j, k) = (j % n as i64, k % n as i64);
        prop_assume!(gcd(gcd(j, k), n as i64) == 1);
        let comp = FixedComponent::from_virtual_rep(&f);
        prop_assume!(ccr_validate(&comp, &[n], CcrMode::Strict).pass());
        let th = sigma(Complex64::new(0.0, 1.0));
        let sp = SpecialPointData::new(&th, (j as f64 / n as f64, k as f64 / n as f64), n).unwrap();
        let q = quantities(&comp, &sp, 0, 0);
        prop_assert!(q.alpha_equals_g(), "{f}: alpha {} G {}", q.alpha, q.g);
        prop_assert!(q.root_identity_holds());
        let zs = halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, 6, 2);
        let r = transfer_check_with(&comp, &sp, 0, 0, &th, &zs, Execution::Sequential).unwrap();
        prop_assert!(r.pass(1e-8), "{f} at ({j},{k})/{n}: {r:?}");
    }

    #[test]
    fn balanced_data_is_doubly_periodic(f in balanced_rep(), i in 0usize..8) {
        let th = sigma(Complex64::new(0.2, 0.9));
        let z = halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, 8, 5)[i];
        let per = f.check_double_periodicity(&th, &[z], Execution::Sequential);
        prop_assert!(per.max_residual < 1e-8 || per.evaluated == 0);
    }
}
