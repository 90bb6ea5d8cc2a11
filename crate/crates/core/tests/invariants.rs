use std::sync::Arc;

use algebroid_paths::{APath, Algebroid, Connection, TrigCurve};
use proptest::prelude::*;

fn vec_of(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, len)
}

fn builtins() -> Vec<Algebroid> {
    vec![
        Algebroid::so3(),
        Algebroid::heisenberg(),
        Algebroid::sl2(),
        Algebroid::upper_triangular(),
        Algebroid::tangent(2),
        Algebroid::twisted_surface(vec![1.0, 2f64.sqrt()]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structure_is_exactly_antisymmetric(x in vec_of(4)) {
        for spec in builtins() {
            let p = &x[..spec.m()];
            let c = spec.structure(p);
            let n = spec.n();
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        prop_assert_eq!(c[(k * n + i) * n + j], -c[(k * n + j) * n + i]);
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_is_bilinear_and_swap_antisymmetric(
        x in vec_of(2), vt in vec_of(2), ve in vec_of(2),
        a in vec_of(3), b in vec_of(3), a2 in vec_of(3), s in -3.0f64..3.0, seed in 0u64..50,
    ) {
        let spec = Algebroid::twisted_surface(vec![1.3]);
        let conn = Connection::random(&spec, seed, 0.7);
        let t = |a: &[f64], b: &[f64], vt: &[f64], ve: &[f64]| spec.torsion_reduced(&conn, &x, vt, ve, a, b).unwrap();
        let lhs = t(&a, &b, &vt, &ve);
        let swapped = t(&b, &a, &ve, &vt);
        for (p, q) in lhs.iter().zip(&swapped) {
            prop_assert!((p + q).abs() <= 1e-12 * (1.0 + p.abs()));
        }
        // linear in a with (b, velocities) fixed, up to the affine velocity terms
        let zero = t(&vec![0.0; 3], &b, &vt, &ve);
        let comb: Vec<f64> = a.iter().zip(&a2).map(|(p, q)| p + s * q).collect();
        let l = t(&comb, &b, &vt, &ve);
        let l1 = t(&a, &b, &vt, &ve);
        let l2 = t(&a2, &b, &vt, &ve);
        // a enters through Gamma(v_eps - rho b) a, Gamma(rho a) b and c(a, b): all linear
        for k in 0..3 {
            let expected = (l1[k] - zero[k]) + s * (l2[k] - zero[k]) + zero[k];
            prop_assert!((l[k] - expected).abs() <= 1e-10 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn lie_algebra_torsion_is_bilinear(a in vec_of(3), b in vec_of(3), s in -3.0f64..3.0) {
        let spec = Algebroid::sl2();
        let z = Connection::zero(&spec);
        let t = |a: &[f64], b: &[f64]| spec.torsion_reduced(&z, &[], &[], &[], a, b).unwrap();
        let sb: Vec<f64> = b.iter().map(|v| s * v).collect();
        let (l, r) = (t(&a, &sb), t(&a, &b));
        for k in 0..3 {
            prop_assert!((l[k] - s * r[k]).abs() <= 1e-12 * (1.0 + l[k].abs()));
        }
    }

    #[test]
    fn invert_is_an_involution_and_swaps_endpoints(seed in 0u64..1000) {
        let spec = Arc::new(Algebroid::tangent(2));
        let c = TrigCurve::random(2, seed, 2, 1.0, 1.0);
        let p = APath::integrate_base(spec.clone(), |t| c.eval(t), &[0.1, -0.2], 32).unwrap();
        let q = APath::integrate_base(spec, |t| c.eval(1.0 - t), &p.endpoints().1, 32).unwrap();
        let j = p.concat(&q, 1e-12).unwrap();
        let back = j.invert().invert();
        prop_assert_eq!(back.a_rows(), j.a_rows());
        prop_assert_eq!(back.gamma_rows(), j.gamma_rows());
        prop_assert_eq!(back.a_right(16), j.a_right(16));
        let (s, t) = j.endpoints();
        prop_assert_eq!(j.invert().endpoints(), (t, s));
    }

    #[test]
    fn residual_converges_at_second_order(seed in 0u64..1000) {
        let spec = Arc::new(Algebroid::tangent(2));
        let c = TrigCurve::random(2, seed, 2, 1.0, 1.0);
        let r1 = APath::integrate_base(spec.clone(), |t| c.eval(t), &[0.0, 0.0], 64).unwrap().residual();
        let r2 = APath::integrate_base(spec, |t| c.eval(t), &[0.0, 0.0], 128).unwrap().residual();
        prop_assert!(r1 / r2 >= 3.5, "{} {}", r1, r2);
    }

    #[test]
    fn reparam_gives_exact_a0_boundaries(seed in 0u64..1000) {
        let spec = Arc::new(Algebroid::tangent(2));
        let c = TrigCurve::random(2, seed, 2, 1.0, 1.0);
        let p = APath::integrate_base(spec, |t| c.eval(t), &[0.0, 0.0], 64).unwrap().reparam_tau();
        prop_assert!(p.is_a0());
        prop_assert!(p.a(0).iter().chain(p.a(64)).all(|&v| v == 0.0));
        let (d0, d1) = p.boundary_derivatives();
        // |a_1| / h = O(h) for a smoothstep reparameterisation
        prop_assert!(d0 < 1.0 && d1 < 1.0, "{} {}", d0, d1);
    }
}
