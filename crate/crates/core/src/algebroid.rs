use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CoreError;

/// Fills an output buffer from a chart point.
pub type PointFn = Arc<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    LieAlgebra,
    Tangent,
    TwistedSurface,
    Custom,
}

/// A Lie algebroid over one coordinate chart of `R^m`, with a frame
/// `e_1..e_n` of the bundle.
///
/// The anchor is stored row-major as `rho[k * n + j] = rho^k_j(x)` and the
/// structure functions as `c[(k * n + i) * n + j] = c^k_ij(x)`, so that
/// `[e_i, e_j] = c^k_ij e_k`. Indices in this API are zero based.
#[derive(Clone)]
pub struct Algebroid {
    name: String,
    family: Family,
    m: usize,
    n: usize,
    anchor: PointFn,
    structure: PointFn,
    /// Per sphere factor coefficient of the twisting form, for the twisted family.
    lambdas: Vec<f64>,
    /// Optional coordinate box; points outside have left the chart.
    domain: Option<Vec<(f64, f64)>>,
}

impl fmt::Debug for Algebroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebroid")
            .field("name", &self.name)
            .field("family", &self.family)
            .field("m", &self.m)
            .field("n", &self.n)
            .finish()
    }
}

impl Algebroid {
    pub fn custom(name: &str, m: usize, n: usize, anchor: PointFn, structure: PointFn) -> Self {
        Self {
            name: name.to_string(),
            family: Family::Custom,
            m,
            n,
            anchor,
            structure,
            lambdas: Vec::new(),
            domain: None,
        }
    }

    pub fn with_domain(mut self, domain: Vec<(f64, f64)>) -> Self {
        assert_eq!(domain.len(), self.m, "domain box must have one interval per coordinate");
        self.domain = Some(domain);
        self
    }

    /// A Lie algebra over a point from constant structure constants laid out
    /// as `c[(k * n + i) * n + j]`.
    pub fn lie_algebra(name: &str, n: usize, constants: Vec<f64>) -> Self {
        assert_eq!(constants.len(), n * n * n, "structure constants must be n^3");
        let constants: Arc<[f64]> = constants.into();
        Self {
            name: name.to_string(),
            family: Family::LieAlgebra,
            m: 0,
            n,
            anchor: Arc::new(|_, _| {}),
            structure: Arc::new(move |_, out| out.copy_from_slice(&constants)),
            lambdas: Vec::new(),
            domain: None,
        }
    }

    /// Builds structure constants from a list of brackets `[e_i, e_j] = sum coeff e_k`.
    pub fn constants_from_brackets(n: usize, brackets: &[(usize, usize, usize, f64)]) -> Vec<f64> {
        let mut c = vec![0.0; n * n * n];
        for &(i, j, k, v) in brackets {
            c[(k * n + i) * n + j] += v;
            c[(k * n + j) * n + i] -= v;
        }
        c
    }

    /// `so(3) = su(2)` with `[e_1, e_2] = e_3` and cyclic.
    pub fn so3() -> Self {
        let c = Self::constants_from_brackets(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)]);
        Self::lie_algebra("so3", 3, c)
    }

    /// Heisenberg algebra `[e_1, e_2] = e_3`.
    pub fn heisenberg() -> Self {
        let c = Self::constants_from_brackets(3, &[(0, 1, 2, 1.0)]);
        Self::lie_algebra("heisenberg", 3, c)
    }

    /// `sl(2)` in the basis `h, e, f`.
    pub fn sl2() -> Self {
        let c = Self::constants_from_brackets(3, &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]);
        Self::lie_algebra("sl2", 3, c)
    }

    /// Two-dimensional non-abelian algebra `[e_1, e_2] = e_2`.
    pub fn upper_triangular() -> Self {
        let c = Self::constants_from_brackets(2, &[(0, 1, 1, 1.0)]);
        Self::lie_algebra("upper_triangular", 2, c)
    }

    pub fn abelian(n: usize) -> Self {
        Self::lie_algebra("abelian", n, vec![0.0; n * n * n])
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "so3" | "su2" => Some(Self::so3()),
            "heisenberg" => Some(Self::heisenberg()),
            "sl2" => Some(Self::sl2()),
            "upper_triangular" => Some(Self::upper_triangular()),
            _ => None,
        }
    }

    /// Tangent bundle of `R^m` with the coordinate frame.
    pub fn tangent(m: usize) -> Self {
        Self {
            name: format!("tangent{m}"),
            family: Family::Tangent,
            m,
            n: m,
            anchor: Arc::new(move |_, out| {
                out.fill(0.0);
                for k in 0..m {
                    out[k * m + k] = 1.0;
                }
            }),
            structure: Arc::new(|_, out| out.fill(0.0)),
            lambdas: Vec::new(),
            domain: None,
        }
    }

    /// `TM x R` over a product of unit spheres in latitude-longitude
    /// coordinates `(theta_f, phi_f)` per factor, twisted by
    /// `Omega = sum_f lambda_f sin(theta_f) dtheta_f ^ dphi_f`.
    ///
    /// The frame is `d/dtheta_1, d/dphi_1, ..., (0, 1)`; the only nonzero
    /// brackets are `[d/dtheta_f, d/dphi_f] = lambda_f sin(theta_f) (0, 1)`.
    pub fn twisted_surface(lambdas: Vec<f64>) -> Self {
        let k = lambdas.len();
        assert!(k > 0, "at least one sphere factor");
        let m = 2 * k;
        let n = m + 1;
        let ls = lambdas.clone();
        Self {
            name: "twisted_surface".into(),
            family: Family::TwistedSurface,
            m,
            n,
            anchor: Arc::new(move |_, out| {
                out.fill(0.0);
                for i in 0..m {
                    out[i * n + i] = 1.0;
                }
            }),
            structure: Arc::new(move |x, out| {
                out.fill(0.0);
                let r = n - 1;
                for (f, &l) in ls.iter().enumerate() {
                    let (th, ph) = (2 * f, 2 * f + 1);
                    let v = l * x[th].sin();
                    out[(r * n + th) * n + ph] = v;
                    out[(r * n + ph) * n + th] = -v;
                }
            }),
            lambdas,
            domain: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Base dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Rank.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn anchor_into(&self, x: &[f64], out: &mut [f64]) {
        (self.anchor)(x, out)
    }

    pub fn structure_into(&self, x: &[f64], out: &mut [f64]) {
        (self.structure)(x, out)
    }

    pub fn anchor(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.m * self.n];
        self.anchor_into(x, &mut out);
        out
    }

    pub fn structure(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n * self.n * self.n];
        self.structure_into(x, &mut out);
        out
    }

    /// `rho(x) a`.
    pub fn apply_anchor(&self, x: &[f64], a: &[f64]) -> Vec<f64> {
        let rho = self.anchor(x);
        (0..self.m)
            .map(|k| (0..self.n).map(|j| rho[k * self.n + j] * a[j]).sum())
            .collect()
    }

    pub fn in_chart(&self, x: &[f64]) -> bool {
        x.iter().all(|v| v.is_finite())
            && self
                .domain
                .as_ref()
                .is_none_or(|d| x.iter().zip(d).all(|(v, (lo, hi))| v >= lo && v <= hi))
    }

    /// Point equality that knows the chart: for the twisted family a
    /// coordinate pair at a pole names one point whatever its longitude.
    pub fn same_point(&self, x: &[f64], y: &[f64], tol: f64) -> bool {
        if self.family != Family::TwistedSurface {
            return x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol);
        }
        x.chunks(2).zip(y.chunks(2)).all(|(p, q)| {
            if (p[0] - q[0]).abs() > tol {
                return false;
            }
            if p[0].sin().abs() <= tol {
                return true;
            }
            let d = (p[1] - q[1]).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d) <= tol
        })
    }

    /// Whether the frame vector `e_i` is degenerate at `x` in this chart
    /// (longitude directions at the poles of the twisted family).
    pub fn chart_degenerate(&self, x: &[f64], i: usize) -> bool {
        self.family == Family::TwistedSurface && i < self.m && i % 2 == 1 && x[i - 1].sin().abs() < 1e-12
    }

    /// `[e_i, e_j]` at `x`.
    pub fn bracket_frame(&self, i: usize, j: usize, x: &[f64]) -> Result<Vec<f64>, CoreError> {
        if i >= self.n || j >= self.n {
            return Err(CoreError::IndexOutOfRange { index: i.max(j), len: self.n });
        }
        self.check_point(x)?;
        let c = self.structure(x);
        Ok((0..self.n).map(|k| c[(k * self.n + i) * self.n + j]).collect())
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<(), CoreError> {
        if x.len() != self.m {
            return Err(CoreError::Dimension {
                what: "chart point",
                expected: self.m,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Right-hand side of the homotopy equation minus `d_eps a`:
    ///
    /// `-c(a, b) + Gamma(v_eps - rho b) a + Gamma(rho a - v_t) b`,
    ///
    /// the covariant form `nabla_t b - nabla_eps a = T(b, a)` written in the
    /// frame. The connection terms vanish whenever `rho a = v_t` and
    /// `rho b = v_eps`.
    pub fn torsion_reduced(
        &self,
        conn: &Connection,
        x: &[f64],
        v_t: &[f64],
        v_eps: &[f64],
        a: &[f64],
        b: &[f64],
    ) -> Result<Vec<f64>, CoreError> {
        self.check_point(x)?;
        for (what, v, len) in [("v_t", v_t, self.m), ("v_eps", v_eps, self.m), ("a", a, self.n), ("b", b, self.n)] {
            if v.len() != len {
                return Err(CoreError::Dimension {
                    what,
                    expected: len,
                    got: v.len(),
                });
            }
        }
        conn.check(self)?;
        let mut ws = Workspace::new(self);
        let mut out = vec![0.0; self.n];
        self.torsion_into(conn, x, v_t, v_eps, a, b, &mut ws, &mut out);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn torsion_into(
        &self,
        conn: &Connection,
        x: &[f64],
        v_t: &[f64],
        v_eps: &[f64],
        a: &[f64],
        b: &[f64],
        ws: &mut Workspace,
        out: &mut [f64],
    ) {
        let (m, n) = (self.m, self.n);
        self.structure_into(x, &mut ws.c);
        for k in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                if a[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    s += ws.c[(k * n + i) * n + j] * a[i] * b[j];
                }
            }
            out[k] = -s;
        }
        if m == 0 || conn.is_zero() {
            return;
        }
        self.anchor_into(x, &mut ws.rho);
        for i in 0..m {
            let mut ra = 0.0;
            let mut rb = 0.0;
            for j in 0..n {
                ra += ws.rho[i * n + j] * a[j];
                rb += ws.rho[i * n + j] * b[j];
            }
            ws.da[i] = v_eps[i] - rb;
            ws.db[i] = ra - v_t[i];
        }
        conn.eval_into(x, &mut ws.gamma);
        for k in 0..n {
            let mut s = 0.0;
            for i in 0..m {
                for j in 0..n {
                    let g = ws.gamma[(i * n + k) * n + j];
                    s += g * (ws.da[i] * a[j] + ws.db[i] * b[j]);
                }
            }
            out[k] += s;
        }
    }

    /// Numerical check of the algebroid identities on sample points.
    pub fn validate(&self, conn: &Connection, samples: &[Vec<f64>], fd_step: f64, tol: f64) -> ValidationReport {
        let (m, n) = (self.m, self.n);
        let mut antisymmetry: f64 = 0.0;
        let mut jacobi: f64 = 0.0;
        let mut anchor: f64 = 0.0;
        let connection_ok = conn.check(self).is_ok();
        let points: Vec<Vec<f64>> = if m == 0 { vec![Vec::new()] } else { samples.to_vec() };
        for x in &points {
            if x.len() != m {
                return ValidationReport::failed(format!("sample of dimension {} instead of {m}", x.len()));
            }
            let c = self.structure(x);
            let rho = self.anchor(x);
            // derivatives d_a c and d_a rho by central differences
            let mut dc = vec![vec![0.0; n * n * n]; m];
            let mut drho = vec![vec![0.0; m * n]; m];
            for a in 0..m {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[a] += fd_step;
                xm[a] -= fd_step;
                let (cp, cm) = (self.structure(&xp), self.structure(&xm));
                let (rp, rm) = (self.anchor(&xp), self.anchor(&xm));
                for (d, (p, q)) in dc[a].iter_mut().zip(cp.iter().zip(&cm)) {
                    *d = (p - q) / (2.0 * fd_step);
                }
                for (d, (p, q)) in drho[a].iter_mut().zip(rp.iter().zip(&rm)) {
                    *d = (p - q) / (2.0 * fd_step);
                }
            }
            let cc = |k: usize, i: usize, j: usize| c[(k * n + i) * n + j];
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        antisymmetry = antisymmetry.max((cc(k, i, j) + cc(k, j, i)).abs());
                    }
                }
            }
            // [[e_i, e_j], e_k]^r = c^l_ij c^r_lk - rho^a_k d_a c^r_ij
            let double = |i: usize, j: usize, k: usize, r: usize| {
                let mut s = 0.0;
                for l in 0..n {
                    s += cc(l, i, j) * cc(r, l, k);
                }
                for a in 0..m {
                    s -= rho[a * n + k] * dc[a][(r * n + i) * n + j];
                }
                s
            };
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for r in 0..n {
                            let s = double(i, j, k, r) + double(j, k, i, r) + double(k, i, j, r);
                            jacobi = jacobi.max(s.abs());
                        }
                    }
                }
            }
            // rho([e_i, e_j]) - [rho e_i, rho e_j]
            for i in 0..n {
                for j in 0..n {
                    for k in 0..m {
                        let mut s: f64 = (0..n).map(|l| rho[k * n + l] * cc(l, i, j)).sum();
                        for a in 0..m {
                            s -= rho[a * n + i] * drho[a][k * n + j] - rho[a * n + j] * drho[a][k * n + i];
                        }
                        anchor = anchor.max(s.abs());
                    }
                }
            }
        }
        let pass = connection_ok && antisymmetry == 0.0 && jacobi <= tol && anchor <= tol;
        ValidationReport {
            antisymmetry,
            jacobi,
            anchor,
            connection_ok,
            pass,
            message: None,
        }
    }

    /// Same algebroid with the single entry `c^k_ij` shifted by `delta`,
    /// leaving `c^k_ji` alone.
    pub fn corrupted(&self, k: usize, i: usize, j: usize, delta: f64) -> Self {
        let inner = self.structure.clone();
        let n = self.n;
        let mut out = self.clone();
        out.family = Family::Custom;
        out.name = format!("{}+corrupted", self.name);
        out.structure = Arc::new(move |x, buf| {
            inner(x, buf);
            buf[(k * n + i) * n + j] += delta;
        });
        out
    }

    /// Same algebroid with one structure constant perturbed (antisymmetrically).
    pub fn perturbed(&self, k: usize, i: usize, j: usize, delta: f64) -> Self {
        let inner = self.structure.clone();
        let n = self.n;
        let mut out = self.clone();
        out.family = Family::Custom;
        out.name = format!("{}+perturbed", self.name);
        out.structure = Arc::new(move |x, buf| {
            inner(x, buf);
            buf[(k * n + i) * n + j] += delta;
            buf[(k * n + j) * n + i] -= delta;
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub anchor: f64,
    pub connection_ok: bool,
    pub pass: bool,
    pub message: Option<String>,
}

impl ValidationReport {
    fn failed(message: String) -> Self {
        Self {
            antisymmetry: f64::NAN,
            jacobi: f64::NAN,
            anchor: f64::NAN,
            connection_ok: false,
            pass: false,
            message: Some(message),
        }
    }
}

/// Scratch buffers for the pointwise evaluations in the solvers.
pub(crate) struct Workspace {
    pub c: Vec<f64>,
    pub rho: Vec<f64>,
    pub gamma: Vec<f64>,
    pub da: Vec<f64>,
    pub db: Vec<f64>,
}

impl Workspace {
    pub fn new(spec: &Algebroid) -> Self {
        let (m, n) = (spec.m, spec.n);
        Self {
            c: vec![0.0; n * n * n],
            rho: vec![0.0; m * n],
            gamma: vec![0.0; m * n * n],
            da: vec![0.0; m],
            db: vec![0.0; m],
        }
    }
}

/// A linear connection on the bundle in the chart frame, with Christoffel
/// symbols `gamma[(i * n + k) * n + a] = Gamma^k_{i a}(x)`:
/// `nabla_v s = v^i (d_i s^k + Gamma^k_{i a} s^a) e_k`.
#[derive(Clone)]
pub struct Connection {
    m: usize,
    n: usize,
    gamma: Option<PointFn>,
    label: String,
}

impl fmt::Debug for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Connection").field("label", &self.label).finish()
    }
}

impl Connection {
    pub fn zero(spec: &Algebroid) -> Self {
        Self {
            m: spec.m,
            n: spec.n,
            gamma: None,
            label: "zero".into(),
        }
    }

    pub fn constant(spec: &Algebroid, values: Vec<f64>) -> Result<Self, CoreError> {
        let len = spec.m * spec.n * spec.n;
        if values.len() != len {
            return Err(CoreError::Dimension {
                what: "connection",
                expected: len,
                got: values.len(),
            });
        }
        let values: Arc<[f64]> = values.into();
        Ok(Self {
            m: spec.m,
            n: spec.n,
            gamma: Some(Arc::new(move |_, out| out.copy_from_slice(&values))),
            label: "constant".into(),
        })
    }

    /// A smooth bounded connection `G0 + sum_i G_i sin(x_i)` with entries of
    /// `G0` uniform in `(-scale, scale)` and of `G_i` in `(-scale/2, scale/2)`.
    pub fn random(spec: &Algebroid, seed: u64, scale: f64) -> Self {
        let (m, n) = (spec.m, spec.n);
        let len = m * n * n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base: Vec<f64> = (0..len).map(|_| rng.random_range(-scale..scale)).collect();
        let slopes: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..len).map(|_| rng.random_range(-0.5 * scale..0.5 * scale)).collect())
            .collect();
        Self {
            m,
            n,
            gamma: Some(Arc::new(move |x, out| {
                out.copy_from_slice(&base);
                for (xi, slope) in x.iter().zip(&slopes) {
                    let s = xi.sin();
                    for (o, g) in out.iter_mut().zip(slope) {
                        *o += g * s;
                    }
                }
            })),
            label: format!("random({seed})"),
        }
    }

    pub fn from_fn(spec: &Algebroid, label: &str, gamma: PointFn) -> Self {
        Self {
            m: spec.m,
            n: spec.n,
            gamma: Some(gamma),
            label: label.to_string(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_none()
    }

    pub fn check(&self, spec: &Algebroid) -> Result<(), CoreError> {
        if self.m != spec.m || self.n != spec.n {
            return Err(CoreError::Dimension {
                what: "connection shape",
                expected: spec.m * spec.n * spec.n,
                got: self.m * self.n * self.n,
            });
        }
        Ok(())
    }

    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        match &self.gamma {
            Some(g) => g(x, out),
            None => out.fill(0.0),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.m * self.n * self.n];
        self.eval_into(x, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_frame_bracket() {
        let s = Algebroid::so3();
        assert_eq!(s.bracket_frame(0, 1, &[]).unwrap(), vec![0.0, 0.0, 1.0]);
        assert_eq!(s.bracket_frame(1, 1, &[]).unwrap(), vec![0.0; 3]);
        assert!(s.bracket_frame(0, 3, &[]).is_err());
        let t = Algebroid::tangent(2);
        assert_eq!(t.bracket_frame(0, 1, &[0.3, -1.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn builtins_validate() {
        let samples = vec![vec![0.3, 1.1], vec![2.0, -0.4], vec![1.2, 0.7]];
        let h = 1e-4;
        for spec in [Algebroid::so3(), Algebroid::heisenberg(), Algebroid::sl2(), Algebroid::upper_triangular()] {
            let r = spec.validate(&Connection::zero(&spec), &[], h, 1e-12);
            assert!(r.pass, "{}: {r:?}", spec.name());
        }
        let t = Algebroid::tangent(2);
        assert!(t.validate(&Connection::zero(&t), &samples, h, 10.0 * h * h).pass);
        let tw = Algebroid::twisted_surface(vec![1.0, 2f64.sqrt()]);
        let pts: Vec<Vec<f64>> = samples.iter().map(|p| vec![p[0], p[1], p[1], p[0]]).collect();
        let r = tw.validate(&Connection::random(&tw, 1, 0.5), &pts, h, 10.0 * h * h);
        assert!(r.pass, "{r:?}");
    }

    /// Independent Jacobi sum over raw constants: `sum_l c^l_ij c^r_lk` plus
    /// cyclic terms.
    fn jacobi_sum(c: &[f64], n: usize) -> f64 {
        let cc = |k: usize, i: usize, j: usize| c[(k * n + i) * n + j];
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for r in 0..n {
                        let s: f64 = (0..n)
                            .map(|l| cc(l, i, j) * cc(r, l, k) + cc(l, j, k) * cc(r, l, i) + cc(l, k, i) * cc(r, l, j))
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    #[test]
    fn corrupted_so3_fails_jacobi() {
        let s = Algebroid::so3().corrupted(0, 1, 2, 0.1);
        let r = s.validate(&Connection::zero(&s), &[], 1e-4, 1e-6);
        assert!(!r.pass);
        let expected = jacobi_sum(&s.structure(&[]), 3);
        assert!(expected > 1e-3);
        assert!((r.jacobi - expected).abs() < 1e-15, "{} {expected}", r.jacobi);
        assert!((r.antisymmetry - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rescaled_so3_is_still_a_lie_algebra() {
        // an antisymmetric change of c^1_23 gives another class A algebra
        let s = Algebroid::so3().perturbed(0, 1, 2, 0.1);
        let r = s.validate(&Connection::zero(&s), &[], 1e-4, 1e-12);
        assert!(r.pass, "{r:?}");
        assert_eq!(jacobi_sum(&s.structure(&[]), 3), 0.0);
    }

    #[test]
    fn torsion_for_lie_algebras_is_minus_the_bracket() {
        let s = Algebroid::so3();
        let z = Connection::zero(&s);
        let r = s.torsion_reduced(&z, &[], &[], &[], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(r, vec![0.0, 0.0, -1.0]);
        assert!(s.torsion_reduced(&z, &[], &[], &[], &[1.0, 0.0], &[0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn twisted_component_is_minus_omega() {
        let s = Algebroid::twisted_surface(vec![1.5]);
        let z = Connection::zero(&s);
        let x = [0.7, 0.2];
        let a = [0.3, -0.2, 0.9];
        let b = [1.1, 0.4, -0.5];
        let r = s.torsion_reduced(&z, &x, &a[..2], &b[..2], &a, &b).unwrap();
        let omega = 1.5 * x[0].sin() * (a[0] * b[1] - a[1] * b[0]);
        assert!((r[2] + omega).abs() < 1e-15);
        assert_eq!(&r[..2], &[0.0, 0.0]);
    }

    #[test]
    fn pole_points_ignore_longitude() {
        let s = Algebroid::twisted_surface(vec![1.0]);
        assert!(s.same_point(&[0.0, 1.0], &[0.0, -3.0], 1e-12));
        assert!(s.same_point(&[1.0, 0.1], &[1.0, 0.1 + 2.0 * PI], 1e-12));
        assert!(!s.same_point(&[1.0, 0.1], &[1.0, 0.2], 1e-12));
        assert!(s.chart_degenerate(&[PI, 0.0], 1));
        assert!(!s.chart_degenerate(&[PI, 0.0], 0));
    }
}
