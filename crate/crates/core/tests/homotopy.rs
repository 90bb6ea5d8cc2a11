use std::f64::consts::PI;
use std::sync::Arc;

use algebroid_paths::families::associator_triple;
use algebroid_paths::path::smoothstep_prime;
use algebroid_paths::{
    check_connection_independence, check_dual_apath, develop, equivalent_oracle, fit_order, is_homotopy, smoothstep,
    solve_b, tangent_oracle, APath, Algebroid, Connection, Convention, HomotopySheet, LieFamily, MatrixModel,
    MeridianSweep, Order, Rescaling, Variation,
};

fn tangent2() -> Arc<Algebroid> {
    Arc::new(Algebroid::tangent(2))
}

/// Smooth A0-path in the plane from the origin to `(1, 0)` bulging by `h`.
fn bulge(spec: &Arc<Algebroid>, h: f64, n: usize) -> APath {
    APath::sample(
        spec.clone(),
        n,
        |t| {
            let (s, ds) = (smoothstep(t), smoothstep_prime(t));
            (vec![ds, h * PI * (PI * s).cos() * ds], vec![s, h * (PI * s).sin()])
        },
        true,
    )
    .unwrap()
}

#[test]
fn eps_independent_sheet_gives_zero_b() {
    let spec = Arc::new(Algebroid::so3());
    let p = algebroid_paths::random_path(spec.clone(), 1, 1.0, &[], 100).unwrap();
    let sheet = HomotopySheet::constant(&p, 10).unwrap();
    let sol = solve_b(&Connection::zero(&spec), &sheet).unwrap();
    assert!(sol.max_terminal() < 1e-14);
    assert!(is_homotopy(&Connection::zero(&spec), &sheet, 1e-14).unwrap().pass);
}

#[test]
fn abelian_b_is_the_eps_derivative_of_the_integral() {
    // a(eps, t) = (1 + eps^2) cos(3t) + eps t^2, so
    // d/deps int_0^1 a = 2 eps sin(3)/3 + 1/3
    let spec = Arc::new(Algebroid::abelian(1));
    let sheet = HomotopySheet::from_fn(spec.clone(), 40, 200, |e, t| {
        (vec![(1.0 + e * e) * (3.0 * t).cos() + e * t * t], vec![])
    })
    .unwrap();
    let sol = solve_b(&Connection::zero(&spec), &sheet).unwrap();
    for j in 0..=40 {
        let e = j as f64 / 40.0;
        let expected = 2.0 * e * (3.0f64).sin() / 3.0 + 1.0 / 3.0;
        assert!((sol.b(j, 200)[0] - expected).abs() < 1e-10, "row {j}");
    }
}

#[test]
fn gauge_families_are_homotopies_and_shifts_are_not() {
    let spec = Arc::new(Algebroid::so3());
    let z = Connection::zero(&spec);
    let m = MatrixModel::su2();
    for seed in 0..3 {
        let g = LieFamily::random(spec.clone(), seed, Variation::Gauge, 0.5).unwrap();
        let sheet = g.sheet(200, 200).unwrap();
        assert!(is_homotopy(&z, &sheet, 1e-5).unwrap().pass);
        assert!(equivalent_oracle(&m, &sheet.row(0), &sheet.row(200), 1e-6).unwrap());
        let s = LieFamily::random(spec.clone(), seed, Variation::Shift, 0.5).unwrap();
        let sheet = s.sheet(200, 200).unwrap();
        let r = is_homotopy(&z, &sheet, 1e-5).unwrap();
        assert!(!r.pass && r.max_terminal > 1e-2);
        assert!(!equivalent_oracle(&m, &sheet.row(0), &sheet.row(200), 1e-6).unwrap());
    }
}

#[test]
fn tangent_interpolation_is_a_homotopy() {
    let spec = tangent2();
    let p0 = bulge(&spec, 0.0, 200);
    let p1 = bulge(&spec, 0.8, 200);
    let sheet = HomotopySheet::tangent_interpolation(&p0, &p1, 200).unwrap();
    assert!(is_homotopy(&Connection::zero(&spec), &sheet, 1e-5).unwrap().pass);
    assert!(sheet.max_row_residual() < 1e-3);
}

#[test]
fn tangent_oracle_agrees_with_interpolation_sheets() {
    let spec = tangent2();
    let z = Connection::zero(&spec);
    let mut agreed = 0;
    for k in 0..20 {
        let c0 = algebroid_paths::TrigCurve::random(2, 300 + k, 2, 1.0, 0.6);
        let c1 = algebroid_paths::TrigCurve::random(2, 400 + k, 2, 1.0, 0.6);
        // both end at (1, 0) when k is even; otherwise p1 ends elsewhere
        let shift = if k % 2 == 0 { 0.0 } else { 0.5 };
        let path = |c: &algebroid_paths::TrigCurve, dy: f64| {
            APath::sample(
                spec.clone(),
                100,
                |t| {
                    let (s, ds) = (smoothstep(t), smoothstep_prime(t));
                    let w = (PI * s).sin();
                    let dw = PI * (PI * s).cos() * ds;
                    let f = c.eval(s);
                    let df: Vec<f64> = {
                        let h = 1e-6;
                        let (fp, fm) = (c.eval(s + h), c.eval(s - h));
                        fp.iter().zip(&fm).map(|(p, q)| (p - q) / (2.0 * h) * ds).collect()
                    };
                    // gamma = (s, dy s) + w f(s)
                    let g = vec![s + w * f[0], dy * s + w * f[1]];
                    let a = vec![ds + dw * f[0] + w * df[0], dy * ds + dw * f[1] + w * df[1]];
                    (a, g)
                },
                true,
            )
            .unwrap()
        };
        let p0 = path(&c0, 0.0);
        let p1 = path(&c1, shift);
        let oracle = tangent_oracle(&p0, &p1, 1e-9).unwrap();
        let engine = if oracle {
            let sheet = HomotopySheet::tangent_interpolation(&p0, &p1, 100).unwrap();
            is_homotopy(&z, &sheet, 1e-5).unwrap().pass
        } else {
            // the sheet constructor refuses moving endpoints
            HomotopySheet::tangent_interpolation(&p0, &p1, 100).is_ok()
        };
        assert_eq!(oracle, k % 2 == 0);
        if oracle == engine {
            agreed += 1;
        }
    }
    assert_eq!(agreed, 20);
}

#[test]
fn su2_rows_with_different_developments_fail() {
    let spec = Arc::new(Algebroid::so3());
    let f = LieFamily::random(spec.clone(), 77, Variation::Shift, 0.8).unwrap();
    let sheet = f.sheet(100, 100).unwrap();
    let r = is_homotopy(&Connection::zero(&spec), &sheet, 1e-5).unwrap();
    assert!(r.max_terminal > 0.05);
}

#[test]
fn homotopy_decision_is_invariant_under_flipping_eps() {
    let spec = Arc::new(Algebroid::so3());
    let z = Connection::zero(&spec);
    for v in [Variation::Gauge, Variation::Shift] {
        let sheet = LieFamily::random(spec.clone(), 5, v, 0.5).unwrap().sheet(100, 100).unwrap();
        let a = is_homotopy(&z, &sheet, 1e-5).unwrap();
        let b = is_homotopy(&z, &sheet.flip_eps(), 1e-5).unwrap();
        assert_eq!(a.pass, b.pass);
    }
}

#[test]
fn doubling_the_variation_doubles_b_in_the_tangent_family() {
    let spec = tangent2();
    let p0 = bulge(&spec, 0.0, 100);
    let p1 = bulge(&spec, 0.4, 100);
    let p2 = bulge(&spec, 0.8, 100);
    let z = Connection::zero(&spec);
    let s1 = solve_b(&z, &HomotopySheet::tangent_interpolation(&p0, &p1, 50).unwrap()).unwrap();
    let s2 = solve_b(&z, &HomotopySheet::tangent_interpolation(&p0, &p2, 50).unwrap()).unwrap();
    for j in [0, 17, 50] {
        for i in [0, 33, 100] {
            for k in 0..2 {
                assert!((s2.b(j, i)[k] - 2.0 * s1.b(j, i)[k]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn connection_independence_examples() {
    // zero against zero, and a Lie algebra where connections cannot act
    let so3 = Arc::new(Algebroid::so3());
    let sheet = LieFamily::random(so3.clone(), 2, Variation::Gauge, 0.5).unwrap().sheet(40, 40).unwrap();
    let zero = Connection::zero(&so3);
    assert_eq!(check_connection_independence(&sheet, &zero, &zero, 0.0).unwrap().max_difference, 0.0);
    let other = Connection::random(&so3, 3, 1.0);
    assert_eq!(check_connection_independence(&sheet, &zero, &other, 0.0).unwrap().max_difference, 0.0);

    let tw = Arc::new(Algebroid::twisted_surface(vec![1.0]));
    let sweep = MeridianSweep::full(tw.clone()).unwrap();
    let random = Connection::random(&tw, 1, 0.1);
    let d100 = check_connection_independence(&sweep.sheet(100, 100).unwrap(), &Connection::zero(&tw), &random, 1e-3)
        .unwrap();
    let d200 = check_connection_independence(&sweep.sheet(200, 200).unwrap(), &Connection::zero(&tw), &random, 2.6e-4)
        .unwrap();
    assert!(d100.pass && d200.pass, "{d100:?} {d200:?}");
    let ratio = d100.max_difference / d200.max_difference;
    assert!((3.0..=5.0).contains(&ratio), "{ratio}");
}

#[test]
fn dual_path_residuals() {
    let so3 = Arc::new(Algebroid::so3());
    let sheet = LieFamily::random(so3.clone(), 4, Variation::Shift, 0.5).unwrap().sheet(20, 40).unwrap();
    let sol = solve_b(&Connection::zero(&so3), &sheet).unwrap();
    assert_eq!(check_dual_apath(&sheet, &sol, 0.0).max_residual, 0.0);

    let spec = tangent2();
    let conn = Connection::random(&spec, 1, 0.1);
    let grids = [50, 100, 200];
    let residuals: Vec<f64> = grids
        .iter()
        .map(|&n| {
            let sheet = HomotopySheet::tangent_interpolation(&bulge(&spec, 0.0, n), &bulge(&spec, 0.8, n), n).unwrap();
            let sol = solve_b(&conn, &sheet).unwrap();
            check_dual_apath(&sheet, &sol, 1e-3).max_residual
        })
        .collect();
    assert!(residuals[1] <= 1e-3);
    let Order::Fitted(p) = fit_order(&grids, &residuals).unwrap() else { panic!("{residuals:?}") };
    assert!((1.8..=2.2).contains(&p), "{p}");
}

#[test]
fn associator_of_zero_paths_is_constant() {
    let spec = Arc::new(Algebroid::so3());
    let z = APath::constant(spec.clone(), &[], 40).unwrap();
    let sheet = HomotopySheet::associator(&z, &z, &z, 10, 40, Rescaling::Quintic, 0.0).unwrap();
    for j in 0..=10 {
        for i in 0..=40 {
            assert!(sheet.a(j, i).iter().all(|&v| v == 0.0));
        }
    }
    let r = is_homotopy(&Connection::zero(&spec), &sheet, 0.0).unwrap();
    assert!(r.pass && r.max_terminal == 0.0);
}

#[test]
fn linear_rescaling_ends_at_the_other_bracketing() {
    // cubic fibre curves are reproduced exactly by the cubic interpolation
    let spec = Arc::new(Algebroid::so3());
    let cubic = |c: [f64; 3]| {
        APath::sample(spec.clone(), 80, |t| (c.iter().map(|k| k * (1.0 + t - 2.0 * t * t * t)).collect(), vec![]), false)
            .unwrap()
    };
    let (a1, a2, a3) = (cubic([1.0, 0.0, 0.5]), cubic([0.0, -1.0, 0.2]), cubic([0.3, 0.3, -0.7]));
    let sheet = HomotopySheet::associator(&a1, &a2, &a3, 8, 80, Rescaling::Linear, 0.0).unwrap();
    let left = a3.concat(&a2.concat(&a1, 0.0).unwrap(), 0.0).unwrap();
    let right = a3.concat(&a2, 0.0).unwrap().concat(&a1, 0.0).unwrap();
    let last = sheet.row(8);
    let first = sheet.row(0);
    for i in 0..=80 {
        for k in 0..3 {
            assert!((last.a(i)[k] - right.a(i)[k]).abs() < 1e-6, "node {i}");
            assert!((last.a_right(i)[k] - right.a_right(i)[k]).abs() < 1e-6, "node {i}");
            assert!((first.a(i)[k] - left.a(i)[k]).abs() < 1e-6, "node {i}");
        }
    }
}

#[test]
fn seeded_su2_associator_is_a_homotopy() {
    let spec = Arc::new(Algebroid::so3());
    let [a1, a2, a3] = associator_triple(spec.clone(), 0, 1600).unwrap();
    let sheet = HomotopySheet::associator(&a1, &a2, &a3, 400, 1600, Rescaling::Quintic, 1e-12).unwrap();
    let r = is_homotopy(&Connection::zero(&spec), &sheet, 1e-5).unwrap();
    assert!(r.pass, "{}", r.max_terminal);
    let m = MatrixModel::su2();
    let d0 = develop(&m, &sheet.row(0), Convention::Right).unwrap();
    let d1 = develop(&m, &sheet.row(400), Convention::Right).unwrap();
    assert!(d0.distance(&d1) < 1e-6);
}

#[test]
fn meridian_sweep_reproduces_the_area() {
    for lambda in [1.0, 2f64.sqrt()] {
        let spec = Arc::new(Algebroid::twisted_surface(vec![lambda]));
        let sweep = MeridianSweep::full(spec).unwrap();
        let (area, flux) = sweep.integrals(400);
        assert!((area - 4.0 * PI * lambda).abs() < 1e-6);
        assert!((flux - 4.0 * PI * lambda).abs() < 1e-6);
    }
}
