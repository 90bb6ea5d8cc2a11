//! Seeded two-parameter families of paths in a Lie algebra, with and
//! without a fixed development endpoint.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{Algebroid, Family};
use crate::homotopy::HomotopySheet;
use crate::path::{APath, TrigCurve};
use crate::CoreError;

/// `exp(s ad_y)` acting on fibre vectors, `(ad_y)^k_b = c^k_{ab} y^a`.
pub fn ad_exp(spec: &Algebroid, y: &[f64], s: f64) -> DMatrix<f64> {
    let n = spec.n();
    let c = spec.structure(&[]);
    let ad = DMatrix::from_fn(n, n, |k, b| (0..n).map(|a| c[(k * n + a) * n + b] * y[a]).sum::<f64>());
    (ad * s).exp()
}

/// How the family moves away from its base path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variation {
    /// `Ad_{exp(-eps phi Y)} a + eps phi' Y`: every row develops to the
    /// same endpoint.
    Gauge,
    /// `a + eps psi Z`: the endpoint moves with `eps`.
    Shift,
}

/// `64 t^3 (1 - t)^3` and its derivative.
fn bump(t: f64) -> (f64, f64) {
    let u = t * (1.0 - t);
    (64.0 * u * u * u, 192.0 * u * u * (1.0 - 2.0 * t))
}

#[derive(Debug, Clone)]
pub struct LieFamily {
    spec: Arc<Algebroid>,
    curve: TrigCurve,
    direction: Vec<f64>,
    amplitude: f64,
    variation: Variation,
}

impl LieFamily {
    /// A random base A0-path and a random unit direction drawn from `seed`.
    pub fn random(spec: Arc<Algebroid>, seed: u64, variation: Variation, amplitude: f64) -> Result<Self, CoreError> {
        if spec.family() != Family::LieAlgebra {
            return Err(CoreError::WrongFamily(format!("{} is not a Lie algebra", spec.name())));
        }
        let n = spec.n();
        let curve = TrigCurve::random(n, seed, 2, 1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let raw = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let direction = raw.normalize().as_slice().to_vec();
        Ok(Self {
            spec,
            curve,
            direction,
            amplitude,
            variation,
        })
    }

    pub fn variation(&self) -> Variation {
        self.variation
    }

    pub fn eval(&self, eps: f64, t: f64) -> Vec<f64> {
        let a = self.curve.eval_a0(t);
        let (p, dp) = bump(t);
        let (p, dp) = (self.amplitude * p, self.amplitude * dp);
        match self.variation {
            Variation::Gauge => {
                let g = ad_exp(&self.spec, &self.direction, -eps * p);
                let moved = g * DVector::from_column_slice(&a);
                moved.iter().zip(&self.direction).map(|(v, y)| v + eps * dp * y).collect()
            }
            Variation::Shift => a.iter().zip(&self.direction).map(|(v, z)| v + eps * p * z).collect(),
        }
    }

    pub fn sheet(&self, n_eps: usize, n_t: usize) -> Result<HomotopySheet, CoreError> {
        HomotopySheet::from_fn(self.spec.clone(), n_eps, n_t, |e, t| (self.eval(e, t), Vec::new()))
    }

    /// Row `eps` as a path on `n` intervals.
    pub fn row(&self, eps: f64, n: usize) -> Result<APath, CoreError> {
        APath::integrate_base(self.spec.clone(), |t| self.eval(eps, t), &[], n)
    }
}

/// Three seeded paths for the associator check, on `n` intervals. The
/// curves are pinned (see [`TrigCurve::eval_pinned`]) so that the nested
/// concatenations stay smooth at their joints.
pub fn associator_triple(spec: Arc<Algebroid>, seed: u64, n: usize) -> Result<[APath; 3], CoreError> {
    let x0 = vec![0.0; spec.m()];
    let make = |k: u64| {
        let c = TrigCurve::random(spec.n(), seed.wrapping_mul(3).wrapping_add(k), 2, 1.0, 0.4);
        APath::integrate_base(spec.clone(), |t| c.eval_pinned(t), &x0, n)
    };
    Ok([make(0)?, make(1)?, make(2)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ad_exp_of_zero_is_identity() {
        let spec = Algebroid::so3();
        let m = ad_exp(&spec, &[0.3, 0.1, -0.2], 0.0);
        assert_eq!(m, DMatrix::identity(3, 3));
        // rotation about e3 by pi/2 sends e1 to e2
        let r = ad_exp(&spec, &[0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2);
        assert!((r[(1, 0)] - 1.0).abs() < 1e-12 && r[(0, 0)].abs() < 1e-12);
    }

    #[test]
    fn families_are_a0_in_every_row() {
        let spec = Arc::new(Algebroid::so3());
        for v in [Variation::Gauge, Variation::Shift] {
            let f = LieFamily::random(spec.clone(), 9, v, 0.5).unwrap();
            for e in [0.0, 0.4, 1.0] {
                assert!(f.eval(e, 0.0).iter().chain(&f.eval(e, 1.0)).all(|x| x.abs() < 1e-15));
            }
        }
    }
}
