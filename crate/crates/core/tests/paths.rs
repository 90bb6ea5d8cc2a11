use std::f64::consts::PI;
use std::sync::Arc;

use algebroid_paths::{develop, equivalent_oracle, random_path, APath, Algebroid, Convention, MatrixModel};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn su2() -> Arc<Algebroid> {
    Arc::new(Algebroid::so3())
}

/// Closed form `exp(sum x_k X_k)` for `X_k = -(i/2) sigma_k`:
/// `cos(r/2) I - i sin(r/2) (x/r . sigma)`.
fn su2_exp(x: [f64; 3]) -> DMatrix<Complex64> {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let (c, s) = ((r / 2.0).cos(), (r / 2.0).sin());
    let n = x.map(|v| v / r);
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    // -i s (n1 sigma1 + n2 sigma2 + n3 sigma3)
    DMatrix::from_row_slice(
        2,
        2,
        &[
            one * c - i * s * n[2],
            -i * s * n[0] - one * s * n[1],
            -i * s * n[0] + one * s * n[1],
            one * c + i * s * n[2],
        ],
    )
}

fn dev(p: &APath) -> DMatrix<Complex64> {
    develop(&MatrixModel::su2(), p, Convention::Right).unwrap().matrix
}

#[test]
fn constant_element_reparameterised_develops_to_its_exponential() {
    let x = [0.7, -0.3, 1.1];
    let p = APath::integrate_base(su2(), |_| x.to_vec(), &[], 2000).unwrap();
    let expected = su2_exp(x);
    assert!((dev(&p) - &expected).norm() < 1e-8);
    let q = p.reparam_tau();
    assert!(q.is_a0());
    assert!((dev(&q) - &expected).norm() < 1e-8);
}

#[test]
fn development_is_a_homomorphism_for_concatenation() {
    for seed in 0..10 {
        let a0 = random_path(su2(), 2 * seed, 1.0, &[], 2000).unwrap();
        let a1 = random_path(su2(), 2 * seed + 1, 1.0, &[], 2000).unwrap();
        // a1 . a0 runs a0 first
        let joined = a0.concat(&a1, 1e-12).unwrap();
        let err = (dev(&joined) - dev(&a0) * dev(&a1)).norm();
        assert!(err < 1e-8, "seed {seed}: {err}");
    }
}

#[test]
fn inverse_develops_to_the_inverse() {
    for seed in 0..5 {
        let p = random_path(su2(), 40 + seed, 1.0, &[], 2000).unwrap();
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!((dev(&p) * dev(&p.invert()) - id).norm() < 1e-8);
    }
}

#[test]
fn appending_a_zero_path_keeps_the_development() {
    let p = random_path(su2(), 7, 1.0, &[], 2000).unwrap();
    let zero = APath::constant(su2(), &[], 2000).unwrap();
    let joined = p.concat(&zero, 0.0).unwrap();
    assert!((dev(&joined) - dev(&p)).norm() < 1e-8);
}

#[test]
fn su2_developments_stay_unitary() {
    let p = random_path(su2(), 3, 1.0, &[], 2000).unwrap();
    let d = develop(&MatrixModel::su2(), &p, Convention::Right).unwrap();
    assert!(d.drift < 1e-8, "{}", d.drift);
}

#[test]
fn left_convention_reverses_products() {
    let a0 = random_path(su2(), 11, 1.0, &[], 800).unwrap();
    let a1 = random_path(su2(), 12, 1.0, &[], 800).unwrap();
    let joined = a0.concat(&a1, 0.0).unwrap();
    let m = MatrixModel::su2();
    let l = |p: &APath| develop(&m, p, Convention::Left).unwrap().matrix;
    assert!((l(&joined) - l(&a1) * l(&a0)).norm() < 1e-8);
}

#[test]
fn oracle_examples() {
    let m = MatrixModel::su2();
    let p = random_path(su2(), 5, 1.0, &[], 1000).unwrap();
    assert!(equivalent_oracle(&m, &p, &p.reparam_tau(), 1e-6).unwrap());
    let lp = APath::integrate_base(su2(), |t| vec![0.0, 0.0, 2.0 * PI * 0.3 * (PI * t).sin() * PI / 2.0], &[], 1000)
        .unwrap()
        .reparam_tau();
    let moved = p.concat(&lp, 0.0).unwrap();
    assert!(!equivalent_oracle(&m, &p, &moved, 1e-6).unwrap());
    let there_and_back = p.concat(&p.invert(), 0.0).unwrap();
    let zero = APath::constant(su2(), &[], 1000).unwrap();
    assert!(equivalent_oracle(&m, &there_and_back, &zero, 1e-6).unwrap());
}

#[test]
fn endpoints_of_operations() {
    let t2 = Arc::new(Algebroid::tangent(2));
    let x = [0.4, -1.0];
    let c = APath::constant(t2.clone(), &x, 32).unwrap();
    assert_eq!(c.endpoints(), (x.to_vec(), x.to_vec()));
    assert_eq!(c.residual(), 0.0);
    let p = APath::integrate_base(t2.clone(), |t| vec![1.0, t], &[0.0, 0.0], 32).unwrap();
    let q = APath::integrate_base(t2, |t| vec![-t, 2.0], &p.endpoints().1, 32).unwrap();
    let j = p.concat(&q, 0.0).unwrap();
    assert_eq!(j.endpoints(), (p.endpoints().0, q.endpoints().1));
    assert_eq!(j.gamma(16), p.gamma(32));
    let (s, t) = p.endpoints();
    assert_eq!(p.invert().endpoints(), (t, s));
}

#[test]
fn circle_source_equals_target() {
    let p = APath::circle(2000).unwrap();
    let (s, t) = p.endpoints();
    let d: f64 = s.iter().zip(&t).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    assert!(d < 1e-8);
    // gamma(t) = (sin 2 pi t, 1 - cos 2 pi t)
    let g = p.gamma(500);
    assert!((g[0] - 1.0).abs() < 1e-10 && (g[1] - 1.0).abs() < 1e-10);
}

#[test]
fn integrate_base_reports_chart_exit() {
    let line = Arc::new(Algebroid::tangent(1).with_domain(vec![(-1.0, 1.0)]));
    let err = APath::integrate_base(line, |_| vec![4.0], &[0.0], 16).unwrap_err();
    assert_eq!(err, algebroid_paths::CoreError::LeftChart { index: 5 });
}
