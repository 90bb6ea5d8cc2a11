use std::f64::consts::PI;
use std::sync::Arc;

use crate::algebroid::{Algebroid, Family};
use crate::grid::{interpolate, piece_containing, pieces};
use crate::CoreError;

/// Quintic smoothstep `10t^3 - 15t^4 + 6t^5`.
pub fn smoothstep(t: f64) -> f64 {
    t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
}

/// Derivative of [`smoothstep`], `30 t^2 (1 - t)^2`.
pub fn smoothstep_prime(t: f64) -> f64 {
    30.0 * t * t * (1.0 - t) * (1.0 - t)
}

pub fn smoothstep_second(t: f64) -> f64 {
    60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)
}

/// A discretised A-path on the uniform grid `t_i = i / N`.
///
/// The path may be piecewise smooth: at each breakpoint the grid keeps the
/// left limit of `a` and a separate right limit.
#[derive(Debug, Clone)]
pub struct APath {
    spec: Arc<Algebroid>,
    n: usize,
    a: Vec<f64>,
    gamma: Vec<f64>,
    a0: bool,
    breaks: Vec<usize>,
    right: Vec<Vec<f64>>,
}

impl APath {
    /// Builds a path from explicit node values. The A-path and boundary
    /// claims are not checked here; see [`APath::residual`].
    pub fn from_grid(
        spec: Arc<Algebroid>,
        a: Vec<Vec<f64>>,
        gamma: Vec<Vec<f64>>,
        a0: bool,
    ) -> Result<Self, CoreError> {
        let (m, r) = (spec.m(), spec.n());
        if a.len() < 2 || a.len() != gamma.len() {
            return Err(CoreError::InvalidPath(format!(
                "{} fibre samples and {} base samples",
                a.len(),
                gamma.len()
            )));
        }
        for (what, rows, dim) in [("fibre sample", &a, r), ("base sample", &gamma, m)] {
            if let Some(row) = rows.iter().find(|row| row.len() != dim) {
                return Err(CoreError::Dimension {
                    what,
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        let n = a.len() - 1;
        let path = Self {
            spec,
            n,
            a: a.concat(),
            gamma: gamma.concat(),
            a0,
            breaks: Vec::new(),
            right: Vec::new(),
        };
        if a0 && !(path.a(0).iter().all(|&v| v == 0.0) && path.a(n).iter().all(|&v| v == 0.0)) {
            return Err(CoreError::InvalidPath("A0 claim with nonzero end values".into()));
        }
        Ok(path)
    }

    /// Samples a closed-form A-path `t -> (a(t), gamma(t))` on `n` intervals.
    pub fn sample(
        spec: Arc<Algebroid>,
        n: usize,
        f: impl Fn(f64) -> (Vec<f64>, Vec<f64>),
        a0: bool,
    ) -> Result<Self, CoreError> {
        let (a, gamma) = (0..=n).map(|i| f(i as f64 / n as f64)).unzip();
        Self::from_grid(spec, a, gamma, a0)
    }

    /// Integrates `d gamma/dt = rho(gamma) a(t)` with the classical
    /// fourth-order Runge-Kutta method, sampling `fiber` exactly.
    pub fn integrate_base(
        spec: Arc<Algebroid>,
        fiber: impl Fn(f64) -> Vec<f64>,
        gamma0: &[f64],
        n: usize,
    ) -> Result<Self, CoreError> {
        if n < 8 {
            return Err(CoreError::InvalidPath(format!("grid size {n} below 8")));
        }
        spec.check_point(gamma0)?;
        let (m, r) = (spec.m(), spec.n());
        let h = 1.0 / n as f64;
        let mut a = Vec::with_capacity((n + 1) * r);
        let mut gamma = Vec::with_capacity((n + 1) * m);
        let mut x = gamma0.to_vec();
        let field = |x: &[f64], v: &[f64]| spec.apply_anchor(x, v);
        let a_first = fiber(0.0);
        if a_first.len() != r {
            return Err(CoreError::Dimension {
                what: "fibre sample",
                expected: r,
                got: a_first.len(),
            });
        }
        a.extend_from_slice(&a_first);
        gamma.extend_from_slice(&x);
        let mut a_left = a_first;
        for i in 0..n {
            let t = i as f64 * h;
            let a_mid = fiber(t + 0.5 * h);
            let a_right = fiber(t + h);
            if m > 0 {
                let k1 = field(&x, &a_left);
                let x2: Vec<f64> = x.iter().zip(&k1).map(|(p, k)| p + 0.5 * h * k).collect();
                let k2 = field(&x2, &a_mid);
                let x3: Vec<f64> = x.iter().zip(&k2).map(|(p, k)| p + 0.5 * h * k).collect();
                let k3 = field(&x3, &a_mid);
                let x4: Vec<f64> = x.iter().zip(&k3).map(|(p, k)| p + h * k).collect();
                let k4 = field(&x4, &a_right);
                for d in 0..m {
                    x[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
                }
                if !spec.in_chart(&x) {
                    return Err(CoreError::LeftChart { index: i + 1 });
                }
            }
            a.extend_from_slice(&a_right);
            gamma.extend_from_slice(&x);
            a_left = a_right;
        }
        let zero_ends = a[..r].iter().chain(&a[n * r..]).all(|&v| v == 0.0);
        Ok(Self {
            spec,
            n,
            a,
            gamma,
            a0: zero_ends,
            breaks: Vec::new(),
            right: Vec::new(),
        })
    }

    /// The constant path `0_x`.
    pub fn constant(spec: Arc<Algebroid>, x: &[f64], n: usize) -> Result<Self, CoreError> {
        spec.check_point(x)?;
        let r = spec.n();
        Ok(Self {
            a: vec![0.0; (n + 1) * r],
            gamma: x.repeat(n + 1),
            spec,
            n,
            a0: true,
            breaks: Vec::new(),
            right: Vec::new(),
        })
    }

    /// Unit circle through the origin in the tangent algebroid of `R^2`,
    /// `a(t) = 2 pi (cos 2 pi t, sin 2 pi t)`.
    pub fn circle(n: usize) -> Result<Self, CoreError> {
        let spec = Arc::new(Algebroid::tangent(2));
        Self::integrate_base(
            spec,
            |t| vec![2.0 * PI * (2.0 * PI * t).cos(), 2.0 * PI * (2.0 * PI * t).sin()],
            &[0.0, 0.0],
            n,
        )
    }

    /// Smooth A0-path in the tangent algebroid of the plane from the origin
    /// to `(1, 0)` along `(s, h sin(pi s))` with `s = smoothstep(t)`.
    pub fn planar_arc(spec: Arc<Algebroid>, h: f64, n: usize) -> Result<Self, CoreError> {
        if spec.family() != Family::Tangent || spec.m() != 2 {
            return Err(CoreError::WrongFamily(format!("{} is not the tangent algebroid of the plane", spec.name())));
        }
        Self::sample(
            spec,
            n,
            |t| {
                let (s, ds) = (smoothstep(t), smoothstep_prime(t));
                (vec![ds, h * PI * (PI * s).cos() * ds], vec![s, h * (PI * s).sin()])
            },
            true,
        )
    }

    /// Marks interior breakpoints with their right limits of `a`.
    pub fn with_breaks(mut self, breaks: Vec<usize>, right: Vec<Vec<f64>>) -> Self {
        debug_assert_eq!(breaks.len(), right.len());
        self.breaks = breaks;
        self.right = right;
        self
    }

    pub fn spec(&self) -> &Arc<Algebroid> {
        &self.spec
    }

    /// Number of grid intervals `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_a0(&self) -> bool {
        self.a0
    }

    pub fn breaks(&self) -> &[usize] {
        &self.breaks
    }

    /// Node value of `a` (the left limit at a breakpoint).
    pub fn a(&self, i: usize) -> &[f64] {
        let r = self.spec.n();
        &self.a[i * r..(i + 1) * r]
    }

    /// Value of `a` seen from the right of node `i`.
    pub fn a_right(&self, i: usize) -> &[f64] {
        match self.breaks.iter().position(|&b| b == i) {
            Some(p) => &self.right[p],
            None => self.a(i),
        }
    }

    pub fn gamma(&self, i: usize) -> &[f64] {
        let m = self.spec.m();
        &self.gamma[i * m..(i + 1) * m]
    }

    pub fn a_rows(&self) -> Vec<Vec<f64>> {
        (0..=self.n).map(|i| self.a(i).to_vec()).collect()
    }

    pub fn gamma_rows(&self) -> Vec<Vec<f64>> {
        (0..=self.n).map(|i| self.gamma(i).to_vec()).collect()
    }

    /// Smooth pieces as `(first, last)` node indices.
    pub fn pieces(&self) -> Vec<(usize, usize)> {
        pieces(self.n, &self.breaks)
    }

    /// `(gamma(0), gamma(1))`.
    pub fn endpoints(&self) -> (Vec<f64>, Vec<f64>) {
        (self.gamma(0).to_vec(), self.gamma(self.n).to_vec())
    }

    /// Piecewise cubic interpolant of `a` at `t`.
    pub fn fiber_at(&self, t: f64) -> Vec<f64> {
        self.fiber_limit(t, false)
    }

    /// Like [`APath::fiber_at`], but at a breakpoint `from_left` selects the
    /// left limit instead of the right one.
    pub fn fiber_limit(&self, t: f64, from_left: bool) -> Vec<f64> {
        let pcs = self.pieces();
        let s = t.clamp(0.0, 1.0) * self.n as f64;
        let mut p = piece_containing(&pcs, s);
        if from_left && p > 0 && s == pcs[p].0 as f64 {
            p -= 1;
        }
        let (lo, hi) = pcs[p];
        let mut out = vec![0.0; self.spec.n()];
        interpolate(lo, hi, s, self.spec.n(), |i| if i == lo { self.a_right(i) } else { self.a(i) }, &mut out);
        out
    }

    pub fn base_at(&self, t: f64) -> Vec<f64> {
        let pcs = self.pieces();
        let s = t.clamp(0.0, 1.0) * self.n as f64;
        let (lo, hi) = pcs[piece_containing(&pcs, s)];
        let mut out = vec![0.0; self.spec.m()];
        interpolate(lo, hi, s, self.spec.m(), |i| self.gamma(i), &mut out);
        out
    }

    /// `max_i |(gamma_{i+1} - gamma_i)/h - rho(mid) (a_i + a_{i+1})/2|`.
    pub fn residual(&self) -> f64 {
        let m = self.spec.m();
        if m == 0 {
            return 0.0;
        }
        let h = 1.0 / self.n as f64;
        (0..self.n)
            .map(|i| {
                let (g0, g1) = (self.gamma(i), self.gamma(i + 1));
                let mid: Vec<f64> = g0.iter().zip(g1).map(|(p, q)| 0.5 * (p + q)).collect();
                let am: Vec<f64> = self.a_right(i).iter().zip(self.a(i + 1)).map(|(p, q)| 0.5 * (p + q)).collect();
                let v = self.spec.apply_anchor(&mid, &am);
                (0..m)
                    .map(|d| ((g1[d] - g0[d]) / h - v[d]).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `(|a_1| / h, |a_{N-1}| / h)`, the discrete endpoint derivatives of an
    /// A0-path.
    pub fn boundary_derivatives(&self) -> (f64, f64) {
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nn = self.n as f64;
        (norm(self.a(1)) * nn, norm(self.a(self.n - 1)) * nn)
    }

    /// `a^tau(t) = tau'(t) a(tau(t))` over `gamma(tau(t))` with the quintic
    /// smoothstep, sampled on the same grid.
    pub fn reparam_tau(&self) -> Self {
        let r = self.spec.n();
        let mut a = Vec::with_capacity(self.a.len());
        let mut gamma = Vec::with_capacity(self.gamma.len());
        for i in 0..=self.n {
            let t = i as f64 / self.n as f64;
            let tau = smoothstep(t);
            let speed = smoothstep_prime(t);
            if i == 0 || i == self.n {
                a.extend(std::iter::repeat_n(0.0, r));
                gamma.extend_from_slice(self.gamma(if i == 0 { 0 } else { self.n }));
            } else {
                a.extend(self.fiber_at(tau).into_iter().map(|v| speed * v));
                gamma.extend(self.base_at(tau));
            }
        }
        Self {
            spec: self.spec.clone(),
            n: self.n,
            a,
            gamma,
            a0: true,
            breaks: Vec::new(),
            right: Vec::new(),
        }
    }

    /// Concatenation running `self` on `[0, 1/2]` as `2 a(2t)` and `next` on
    /// `[1/2, 1]` as `2 next(2t - 1)`; requires `gamma(1) = next.gamma(0)`.
    pub fn concat(&self, next: &Self, tol: f64) -> Result<Self, CoreError> {
        if self.n != next.n || self.n % 2 != 0 {
            return Err(CoreError::GridIncompatible(format!(
                "concatenation needs equal even grids, got {} and {}",
                self.n, next.n
            )));
        }
        if !same_spec(&self.spec, &next.spec) {
            return Err(CoreError::GridIncompatible("paths over different algebroids".into()));
        }
        let (end, start) = (self.gamma(self.n), next.gamma(0));
        if !self.spec.same_point(end, start, tol) {
            let distance = end.iter().zip(start).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
            return Err(CoreError::EndpointMismatch { distance });
        }
        let half = self.n / 2;
        let mut a = Vec::with_capacity(self.a.len());
        let mut gamma = Vec::with_capacity(self.gamma.len());
        let mut breaks = Vec::new();
        let mut right = Vec::new();
        let twice = |v: &[f64]| v.iter().map(|x| 2.0 * x).collect::<Vec<f64>>();
        for (offset, path) in [(0, self), (half, next)] {
            for &b in &path.breaks {
                if b % 2 != 0 {
                    return Err(CoreError::GridIncompatible(format!("breakpoint {b} falls between coarse nodes")));
                }
                breaks.push(offset + b / 2);
                right.push(twice(path.a_right(b)));
            }
            if offset == half {
                breaks.push(half);
                right.push(twice(path.a(0)));
            }
        }
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..breaks.len()).collect();
            idx.sort_by_key(|&i| breaks[i]);
            idx
        };
        let breaks: Vec<usize> = order.iter().map(|&i| breaks[i]).collect();
        let right: Vec<Vec<f64>> = order.iter().map(|&i| right[i].clone()).collect();
        for i in 0..=half {
            a.extend(twice(self.a(2 * i)));
            gamma.extend_from_slice(self.gamma(2 * i));
        }
        for i in 1..=half {
            a.extend(twice(next.a(2 * i)));
            gamma.extend_from_slice(next.gamma(2 * i));
        }
        Ok(Self {
            spec: self.spec.clone(),
            n: self.n,
            a,
            gamma,
            a0: self.a0 && next.a0,
            breaks,
            right,
        })
    }

    /// The reversed path `-a(1 - t)` over `gamma(1 - t)`.
    pub fn invert(&self) -> Self {
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<f64>>();
        let n = self.n;
        let mut a = Vec::with_capacity(self.a.len());
        let mut gamma = Vec::with_capacity(self.gamma.len());
        for i in 0..=n {
            let j = n - i;
            // left limit at the mirrored node is the old right limit
            a.extend(neg(self.a_right(j)));
            gamma.extend_from_slice(self.gamma(j));
        }
        let mut pairs: Vec<(usize, Vec<f64>)> = self
            .breaks
            .iter()
            .map(|&b| (n - b, neg(self.a(b))))
            .collect();
        pairs.sort_by_key(|p| p.0);
        let (breaks, right) = pairs.into_iter().unzip();
        Self {
            spec: self.spec.clone(),
            n,
            a,
            gamma,
            a0: self.a0,
            breaks,
            right,
        }
    }

    /// Resamples onto a grid with `n` intervals by piecewise cubic
    /// interpolation; breakpoints must land on the new grid.
    pub fn resample(&self, n: usize) -> Result<Self, CoreError> {
        let mut breaks = Vec::new();
        let mut right = Vec::new();
        for &b in &self.breaks {
            let nb = b * n;
            if nb % self.n != 0 {
                return Err(CoreError::GridIncompatible(format!("breakpoint {b} is off the new grid")));
            }
            breaks.push(nb / self.n);
            right.push(self.a_right(b).to_vec());
        }
        let mut out = Self {
            spec: self.spec.clone(),
            n,
            a: Vec::new(),
            gamma: Vec::new(),
            a0: self.a0,
            breaks: breaks.clone(),
            right,
        };
        let pcs = pieces(n, &breaks);
        for (p, &(lo, hi)) in pcs.iter().enumerate() {
            let first = if p == 0 { lo } else { lo + 1 };
            for i in first..=hi {
                let t = i as f64 / n as f64;
                // evaluate the old interpolant at t from the correct side
                let t_inner = if i == hi && p + 1 < pcs.len() { t - 1e-15 } else { t };
                out.a.extend(self.fiber_at(t_inner));
                out.gamma.extend(self.base_at(t));
            }
        }
        Ok(out)
    }
}

fn same_spec(a: &Arc<Algebroid>, b: &Arc<Algebroid>) -> bool {
    Arc::ptr_eq(a, b) || (a.name() == b.name() && a.m() == b.m() && a.n() == b.n() && a.lambdas() == b.lambdas())
}

/// A smooth random fibre curve `f(s) = sum_k c_k cos(2 pi k s) + s_k sin(2 pi k s)`
/// with seeded coefficients decaying like `(1 + k)^-smoothness`.
#[derive(Debug, Clone)]
pub struct TrigCurve {
    rank: usize,
    cos: Vec<Vec<f64>>,
    sin: Vec<Vec<f64>>,
}

impl TrigCurve {
    pub fn random(rank: usize, seed: u64, harmonics: usize, smoothness: f64, amplitude: f64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k: usize| -> Vec<f64> {
            let scale = amplitude / (1.0 + k as f64).powf(smoothness);
            (0..rank).map(|_| rng.random_range(-scale..scale)).collect()
        };
        let cos = (0..=harmonics).map(&mut draw).collect();
        let sin = (0..=harmonics).map(&mut draw).collect();
        Self { rank, cos, sin }
    }

    pub fn eval(&self, s: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.rank];
        for (k, (c, sn)) in self.cos.iter().zip(&self.sin).enumerate() {
            let w = 2.0 * PI * k as f64 * s;
            let (cw, sw) = (w.cos(), w.sin());
            for d in 0..self.rank {
                out[d] += c[d] * cw + sn[d] * sw;
            }
        }
        out
    }

    /// `tau'(t) f(tau(t))`, an A0 fibre curve.
    pub fn eval_a0(&self, t: f64) -> Vec<f64> {
        self.eval_flat(t, 1)
    }

    /// `tau'(t) sin(pi tau(t)) f(tau(t))`: vanishes to fifth order at both
    /// ends, so concatenations of such curves are `C^4` at the joints.
    pub fn eval_pinned(&self, t: f64) -> Vec<f64> {
        let w = (PI * smoothstep(t)).sin();
        self.eval_a0(t).into_iter().map(|x| w * x).collect()
    }

    /// `f` reparameterised by `depth` nested smoothsteps; each level raises
    /// the order to which the curve vanishes at both ends.
    pub fn eval_flat(&self, t: f64, depth: usize) -> Vec<f64> {
        let (mut s, mut v) = (t, 1.0);
        for _ in 0..depth {
            v *= smoothstep_prime(s);
            s = smoothstep(s);
        }
        self.eval(s).into_iter().map(|x| v * x).collect()
    }
}

/// A seeded smooth A0-path: `random(seed, smoothness)` from the CLI.
pub fn random_path(
    spec: Arc<Algebroid>,
    seed: u64,
    smoothness: f64,
    gamma0: &[f64],
    n: usize,
) -> Result<APath, CoreError> {
    let amplitude = if spec.family() == Family::LieAlgebra { 1.0 } else { 0.5 };
    let curve = TrigCurve::random(spec.n(), seed, 2, smoothness, amplitude);
    APath::integrate_base(spec, |t| curve.eval_a0(t), gamma0, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tangent1() -> Arc<Algebroid> {
        Arc::new(Algebroid::tangent(1))
    }

    #[test]
    fn unit_speed_line() {
        let p = APath::integrate_base(tangent1(), |_| vec![1.0], &[0.0], 16).unwrap();
        for i in 0..=16 {
            assert!((p.gamma(i)[0] - i as f64 / 16.0).abs() < 1e-14);
        }
        assert!(p.residual() < 1e-13);
        let q = p.invert();
        assert_eq!(q.endpoints(), (vec![1.0], vec![0.0]));
        assert_eq!(q.a(3), &[-1.0]);
    }

    #[test]
    fn lie_algebra_paths_have_a_point_base() {
        let spec = Arc::new(Algebroid::so3());
        let p = random_path(spec, 3, 1.0, &[], 32).unwrap();
        assert!(p.gamma_rows().iter().all(Vec::is_empty));
        assert!(p.is_a0());
    }

    #[test]
    fn circle_closes() {
        let p = APath::circle(2000).unwrap();
        let (s, t) = p.endpoints();
        assert!(s.iter().zip(&t).all(|(a, b)| (a - b).abs() < 1e-8));
    }

    #[test]
    fn reparam_is_a0() {
        let p = APath::circle(64).unwrap().reparam_tau();
        assert!(p.is_a0());
        assert!(p.a(0).iter().chain(p.a(64)).all(|&v| v == 0.0));
        let z = APath::constant(Arc::new(Algebroid::tangent(2)), &[1.0, 2.0], 16).unwrap();
        assert!(z.reparam_tau().a_rows().iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn concat_layout_and_errors() {
        let p = APath::integrate_base(tangent1(), |_| vec![1.0], &[0.0], 16).unwrap();
        let q = APath::integrate_base(tangent1(), |_| vec![-0.5], &[1.0], 16).unwrap();
        let c = p.concat(&q, 1e-12).unwrap();
        assert_eq!(c.breaks(), &[8]);
        assert_eq!(c.a(8), &[2.0]);
        assert_eq!(c.a_right(8), &[-1.0]);
        assert_eq!(c.gamma(8), &[1.0]);
        assert_eq!(c.endpoints(), (vec![0.0], vec![0.5]));
        assert!(c.residual() < 1e-12);
        assert!(matches!(q.concat(&p, 1e-12), Err(CoreError::EndpointMismatch { .. })));
        let inv = c.invert();
        assert_eq!(inv.breaks(), &[8]);
        assert_eq!(inv.a(8), &[1.0]);
        assert_eq!(inv.a_right(8), &[-2.0]);
        assert!(inv.residual() < 1e-12);
        // invert is an involution on the grid
        let back = inv.invert();
        assert_eq!(back.a_rows(), c.a_rows());
        assert_eq!(back.a_right(8), c.a_right(8));
    }

    #[test]
    fn nested_concat_needs_fine_enough_grid() {
        let p = APath::constant(tangent1(), &[0.0], 6).unwrap();
        let pp = p.concat(&p, 0.0).unwrap();
        assert_eq!(pp.breaks(), &[3]);
        assert!(matches!(pp.concat(&p, 0.0), Err(CoreError::GridIncompatible(_))));
    }

    #[test]
    fn residual_is_second_order() {
        let spec = Arc::new(Algebroid::tangent(2));
        let f = |t: f64| vec![(3.0 * t).cos(), t * t];
        let r1 = APath::integrate_base(spec.clone(), f, &[0.0, 0.0], 50).unwrap().residual();
        let r2 = APath::integrate_base(spec, f, &[0.0, 0.0], 100).unwrap().residual();
        assert!(r1 / r2 >= 3.5, "{r1} {r2}");
    }

    #[test]
    fn resample_keeps_breaks() {
        let p = APath::integrate_base(tangent1(), |t| vec![t], &[0.0], 16).unwrap();
        let c = p.concat(&p.invert(), 1e-12).unwrap();
        let r = c.resample(32).unwrap();
        assert_eq!(r.breaks(), &[16]);
        assert!((r.a(16)[0] - c.a(8)[0]).abs() < 1e-12);
        assert!((r.a_right(16)[0] - c.a_right(8)[0]).abs() < 1e-12);
        assert!(c.resample(12).is_err() || c.resample(12).unwrap().breaks() == [6]);
    }
}
