//! Meridian sweeps on products of unit spheres in the twisted algebroid
//! `TM x R`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::algebroid::{Algebroid, Family};
use crate::grid::{simpson, simpson_2d};
use crate::homotopy::HomotopySheet;
use crate::path::{smoothstep, smoothstep_prime};
use crate::CoreError;

/// A sweep in which factor `f` moves its meridian `wraps[f]` times around
/// the axis: `gamma_f(eps, t) = (pi s(t), -2 pi k_f eps)`.
#[derive(Debug, Clone)]
pub struct MeridianSweep {
    spec: Arc<Algebroid>,
    wraps: Vec<i32>,
}

impl MeridianSweep {
    pub fn new(spec: Arc<Algebroid>, wraps: Vec<i32>) -> Result<Self, CoreError> {
        if spec.family() != Family::TwistedSurface {
            return Err(CoreError::WrongFamily(format!("{} is not a twisted surface", spec.name())));
        }
        if wraps.len() != spec.lambdas().len() {
            return Err(CoreError::Dimension {
                what: "wrap counts",
                expected: spec.lambdas().len(),
                got: wraps.len(),
            });
        }
        Ok(Self { spec, wraps })
    }

    /// One full turn of every factor.
    pub fn full(spec: Arc<Algebroid>) -> Result<Self, CoreError> {
        let k = spec.lambdas().len();
        Self::new(spec, vec![1; k])
    }

    /// `sum_f 4 pi k_f lambda_f`, the symplectic area swept.
    pub fn expected_area(&self) -> f64 {
        self.wraps
            .iter()
            .zip(self.spec.lambdas())
            .map(|(&k, l)| 4.0 * PI * k as f64 * l)
            .sum()
    }

    pub fn base(&self, eps: f64, t: f64) -> Vec<f64> {
        self.wraps
            .iter()
            .flat_map(|&k| [PI * smoothstep(t), -2.0 * PI * k as f64 * eps])
            .collect()
    }

    /// The `R` component of the fibre, chosen so that `v(eps, 1) = 0`.
    pub fn u(&self, eps: f64, t: f64) -> f64 {
        let beta = smoothstep_prime(t);
        0.5 * beta - eps * beta * self.expected_area()
    }

    pub fn fiber(&self, eps: f64, t: f64) -> Vec<f64> {
        let mut a: Vec<f64> = self.wraps.iter().flat_map(|_| [PI * smoothstep_prime(t), 0.0]).collect();
        a.push(self.u(eps, t));
        a
    }

    /// `b(eps, 0) = b(eps, 1)`: the lift of `d_eps gamma` at the poles.
    pub fn boundary_lift(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.wraps.iter().flat_map(|&k| [0.0, -2.0 * PI * k as f64]).collect();
        b.push(0.0);
        b
    }

    pub fn sheet(&self, n_eps: usize, n_t: usize) -> Result<HomotopySheet, CoreError> {
        let lift = self.boundary_lift();
        HomotopySheet::from_fn(self.spec.clone(), n_eps, n_t, |e, t| (self.fiber(e, t), self.base(e, t)))?
            .with_boundary(lift.clone(), lift)
    }

    /// `(int int Omega(gamma_eps, gamma_t), int_0^1 (u(0, t) - u(1, t)) dt)`
    /// by composite Simpson quadrature on an `n x n` grid.
    pub fn integrals(&self, n: usize) -> (f64, f64) {
        let area = simpson_2d(
            |_, t| {
                let (ds, th) = (smoothstep_prime(t), PI * smoothstep(t));
                self.wraps
                    .iter()
                    .zip(self.spec.lambdas())
                    .map(|(&k, l)| {
                        let (th_e, ph_e) = (0.0, -2.0 * PI * k as f64);
                        let (th_t, ph_t) = (PI * ds, 0.0);
                        l * th.sin() * (th_e * ph_t - ph_e * th_t)
                    })
                    .sum()
            },
            (0.0, 1.0),
            (0.0, 1.0),
            n,
        );
        let flux = simpson(|t| self.u(0.0, t) - self.u(1.0, t), 0.0, 1.0, n);
        (area, flux)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::Connection;
    use crate::homotopy::{is_homotopy, solve_b};

    #[test]
    fn sweep_integrals_match_the_area() {
        let spec = Arc::new(Algebroid::twisted_surface(vec![1.0]));
        let sweep = MeridianSweep::full(spec).unwrap();
        let (area, flux) = sweep.integrals(400);
        assert!((area - 4.0 * PI).abs() < 1e-7, "{area}");
        assert!((flux - 4.0 * PI).abs() < 1e-7, "{flux}");
    }

    #[test]
    fn sweep_is_a_homotopy_with_zero_connection() {
        let spec = Arc::new(Algebroid::twisted_surface(vec![2f64.sqrt()]));
        let sweep = MeridianSweep::full(spec.clone()).unwrap();
        let sheet = sweep.sheet(20, 100).unwrap();
        let report = is_homotopy(&Connection::zero(&spec), &sheet, 1e-5).unwrap();
        assert!(report.pass, "{}", report.max_terminal);
    }

    #[test]
    fn second_component_integrates_the_twist() {
        // v(eps, t) collects -Omega(a, b) minus the u-flux
        let spec = Arc::new(Algebroid::twisted_surface(vec![1.0]));
        let sweep = MeridianSweep::full(spec.clone()).unwrap();
        let sheet = sweep.sheet(8, 400).unwrap();
        let sol = solve_b(&Connection::zero(&spec), &sheet).unwrap();
        let t = 200;
        let tt = t as f64 / 400.0;
        let expected = 2.0 * PI * PI * (1.0 - (PI * smoothstep(tt)).cos()) / PI - 4.0 * PI * smoothstep(tt);
        assert!((sol.b(3, t)[2] - expected).abs() < 1e-8, "{} {expected}", sol.b(3, t)[2]);
    }
}
