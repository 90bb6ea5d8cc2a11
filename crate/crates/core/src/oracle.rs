//! Matrix development of paths in a Lie algebra and the two equivalence
//! oracles built on it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebroid::{Algebroid, Family};
use crate::grid::interpolate;
use crate::path::APath;
use crate::CoreError;

pub type CMat = DMatrix<Complex64>;

/// Which side the Lie algebra element multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `g' = g a`; concatenation `a1 . a0` (run `a0` first) develops to
    /// `dev(a0) dev(a1)`.
    #[default]
    Right,
    /// `g' = a g`.
    Left,
}

/// A matrix realisation `X_1, ..., X_n` of a Lie algebra.
#[derive(Debug, Clone)]
pub struct MatrixModel {
    name: String,
    basis: Vec<CMat>,
    simply_connected: bool,
    unitary: bool,
}

fn real(d: usize, entries: &[(usize, usize, f64)]) -> CMat {
    let mut m = CMat::zeros(d, d);
    for &(i, j, v) in entries {
        m[(i, j)] = Complex64::new(v, 0.0);
    }
    m
}

impl MatrixModel {
    pub fn new(name: &str, basis: Vec<CMat>, simply_connected: bool) -> Self {
        Self {
            name: name.into(),
            basis,
            simply_connected,
            unitary: false,
        }
    }

    /// `X_k = -(i/2) sigma_k` in `SU(2)`, matching the `so3` structure
    /// constants.
    pub fn su2() -> Self {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let z = c(0.0, 0.0);
        let h = 0.5;
        let basis = vec![
            CMat::from_row_slice(2, 2, &[z, c(0.0, -h), c(0.0, -h), z]),
            CMat::from_row_slice(2, 2, &[z, c(-h, 0.0), c(h, 0.0), z]),
            CMat::from_row_slice(2, 2, &[c(0.0, -h), z, z, c(0.0, h)]),
        ];
        Self {
            name: "su2".into(),
            basis,
            simply_connected: true,
            unitary: true,
        }
    }

    /// Strictly upper triangular `3 x 3`: `E12, E23, E13`.
    pub fn heisenberg() -> Self {
        let basis = vec![real(3, &[(0, 1, 1.0)]), real(3, &[(1, 2, 1.0)]), real(3, &[(0, 2, 1.0)])];
        Self::new("heisenberg", basis, true)
    }

    /// `E11, E12` in `2 x 2`; the group `{(a, b; 0, 1) : a > 0}` is
    /// contractible.
    pub fn upper_triangular() -> Self {
        let basis = vec![real(2, &[(0, 0, 1.0)]), real(2, &[(0, 1, 1.0)])];
        Self::new("upper_triangular", basis, true)
    }

    /// Rotation generators of `SO(3)`; the group has fundamental group `Z2`.
    pub fn so3() -> Self {
        let basis = vec![
            real(3, &[(1, 2, -1.0), (2, 1, 1.0)]),
            real(3, &[(0, 2, 1.0), (2, 0, -1.0)]),
            real(3, &[(0, 1, -1.0), (1, 0, 1.0)]),
        ];
        Self {
            name: "so3-matrices".into(),
            basis,
            simply_connected: false,
            unitary: true,
        }
    }

    /// The simply connected model for a built-in Lie algebra spec.
    pub fn for_spec(spec: &Algebroid) -> Option<Self> {
        match spec.name() {
            "so3" => Some(Self::su2()),
            "heisenberg" => Some(Self::heisenberg()),
            "upper_triangular" => Some(Self::upper_triangular()),
            _ => None,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "su2" => Some(Self::su2()),
            "heisenberg" => Some(Self::heisenberg()),
            "upper_triangular" => Some(Self::upper_triangular()),
            "so3" | "so3-matrices" => Some(Self::so3()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis[0].nrows()
    }

    pub fn is_simply_connected(&self) -> bool {
        self.simply_connected
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    /// `sum_k v_k X_k`.
    pub fn element(&self, v: &[f64]) -> CMat {
        let mut out = CMat::zeros(self.dim(), self.dim());
        for (x, &c) in self.basis.iter().zip(v) {
            out += x * Complex64::new(c, 0.0);
        }
        out
    }

    /// Structure constants `c[(k n + i) n + j]` recovered from commutators by
    /// least squares, plus the worst reconstruction error.
    pub fn structure_constants(&self) -> (Vec<f64>, f64) {
        let n = self.rank();
        let d2 = self.dim() * self.dim();
        // real design matrix with rows (re, im) of each entry
        let design = DMatrix::from_fn(2 * d2, n, |r, k| {
            let z = self.basis[k][(r / 2 / self.dim(), (r / 2) % self.dim())];
            if r % 2 == 0 { z.re } else { z.im }
        });
        let svd = design.clone().svd(true, true);
        let mut c = vec![0.0; n * n * n];
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let br = &self.basis[i] * &self.basis[j] - &self.basis[j] * &self.basis[i];
                let rhs = DVector::from_fn(2 * d2, |r, _| {
                    let z = br[(r / 2 / self.dim(), (r / 2) % self.dim())];
                    if r % 2 == 0 { z.re } else { z.im }
                });
                let coef = svd.solve(&rhs, 1e-14).expect("svd with both factors");
                worst = worst.max((&design * &coef - &rhs).amax());
                for k in 0..n {
                    c[(k * n + i) * n + j] = coef[k];
                }
            }
        }
        (c, worst)
    }

    /// Max deviation between the recovered constants and those of `spec`.
    pub fn matches(&self, spec: &Algebroid) -> Option<f64> {
        if spec.family() != Family::LieAlgebra || spec.n() != self.rank() {
            return None;
        }
        let (c, worst) = self.structure_constants();
        let dev = c.iter().zip(spec.structure(&[])).map(|(p, q)| (p - q).abs()).fold(worst, f64::max);
        Some(dev)
    }
}

/// Endpoint of a development with its conservation diagnostics.
#[derive(Debug, Clone)]
pub struct Development {
    pub matrix: CMat,
    /// `|g^* g - I|_F` for unitary models, otherwise `|det g - exp(int tr a)|`.
    pub drift: f64,
}

impl Development {
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }

    /// `|g - I|_F`.
    pub fn distance_to_identity(&self) -> f64 {
        let d = self.matrix.nrows();
        (&self.matrix - CMat::identity(d, d)).norm()
    }

    pub fn product(&self, other: &Self) -> CMat {
        &self.matrix * &other.matrix
    }
}

/// Solves `g' = g a(t)` (or `a(t) g`), `g(0) = I`, with fourth-order
/// Runge-Kutta steps restarted at every breakpoint of the path.
pub fn develop(model: &MatrixModel, path: &APath, convention: Convention) -> Result<Development, CoreError> {
    let spec = path.spec();
    if spec.family() != Family::LieAlgebra {
        return Err(CoreError::WrongFamily(format!("{} has a nontrivial base", spec.name())));
    }
    if spec.n() != model.rank() {
        return Err(CoreError::Dimension {
            what: "model rank",
            expected: spec.n(),
            got: model.rank(),
        });
    }
    let d = model.dim();
    let n = spec.n();
    let h = 1.0 / path.n() as f64;
    let mut g = CMat::identity(d, d);
    let mut trace_integral = Complex64::new(0.0, 0.0);
    let rhs = |g: &CMat, x: &CMat| match convention {
        Convention::Right => g * x,
        Convention::Left => x * g,
    };
    let mut mid = vec![0.0; n];
    for (lo, hi) in path.pieces() {
        for i in lo..hi {
            let a0 = model.element(if i == lo { path.a_right(i) } else { path.a(i) });
            interpolate(lo, hi, i as f64 + 0.5, n, |q| if q == lo { path.a_right(q) } else { path.a(q) }, &mut mid);
            let am = model.element(&mid);
            let a1 = model.element(path.a(i + 1));
            let k1 = rhs(&g, &a0);
            let k2 = rhs(&(&g + &k1 * Complex64::new(0.5 * h, 0.0)), &am);
            let k3 = rhs(&(&g + &k2 * Complex64::new(0.5 * h, 0.0)), &am);
            let k4 = rhs(&(&g + &k3 * Complex64::new(h, 0.0)), &a1);
            g += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * Complex64::new(h / 6.0, 0.0);
            trace_integral += (a0.trace() + am.trace() * Complex64::new(4.0, 0.0) + a1.trace()) * Complex64::new(h / 6.0, 0.0);
        }
    }
    let drift = if model.unitary {
        (g.adjoint() * &g - CMat::identity(d, d)).norm()
    } else {
        (g.determinant() - trace_integral.exp()).norm()
    };
    Ok(Development { matrix: g, drift })
}

/// For simply connected model groups, two A0-paths over a point are
/// equivalent iff their developments agree.
pub fn equivalent_oracle(model: &MatrixModel, p0: &APath, p1: &APath, tol: f64) -> Result<bool, CoreError> {
    if !model.is_simply_connected() {
        return Err(CoreError::NotSimplyConnected(model.name().into()));
    }
    let d0 = develop(model, p0, Convention::Right)?;
    let d1 = develop(model, p1, Convention::Right)?;
    Ok(d0.distance(&d1) <= tol)
}

/// In a tangent algebroid over a convex chart, paths are equivalent iff
/// their base endpoints agree.
pub fn tangent_oracle(p0: &APath, p1: &APath, tol: f64) -> Result<bool, CoreError> {
    for p in [p0, p1] {
        if p.spec().family() != Family::Tangent {
            return Err(CoreError::WrongFamily(format!("{} is not a tangent algebroid", p.spec().name())));
        }
    }
    let (s0, t0) = p0.endpoints();
    let (s1, t1) = p1.endpoints();
    let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol);
    Ok(close(&s0, &s1) && close(&t0, &t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn models_reproduce_their_structure_constants() {
        for (model, spec) in [
            (MatrixModel::su2(), Algebroid::so3()),
            (MatrixModel::heisenberg(), Algebroid::heisenberg()),
            (MatrixModel::upper_triangular(), Algebroid::upper_triangular()),
            (MatrixModel::so3(), Algebroid::so3()),
        ] {
            let dev = model.matches(&spec).unwrap();
            assert!(dev < 1e-12, "{}: {dev}", model.name());
        }
        assert!(MatrixModel::su2().matches(&Algebroid::heisenberg()).unwrap() > 0.5);
    }

    #[test]
    fn zero_path_develops_to_identity() {
        let spec = Arc::new(Algebroid::so3());
        let p = APath::constant(spec, &[], 32).unwrap();
        let d = develop(&MatrixModel::su2(), &p, Convention::Right).unwrap();
        assert_eq!(d.distance_to_identity(), 0.0);
    }

    #[test]
    fn so3_matrices_are_refused() {
        let spec = Arc::new(Algebroid::so3());
        let p = APath::constant(spec, &[], 16).unwrap();
        assert!(matches!(
            equivalent_oracle(&MatrixModel::so3(), &p, &p, 1e-6),
            Err(CoreError::NotSimplyConnected(_))
        ));
    }

    #[test]
    fn heisenberg_stays_unipotent() {
        let spec = Arc::new(Algebroid::heisenberg());
        let p = crate::path::random_path(spec, 4, 1.0, &[], 400).unwrap();
        let g = develop(&MatrixModel::heisenberg(), &p, Convention::Right).unwrap().matrix;
        for i in 0..3 {
            assert_eq!(g[(i, i)], Complex64::new(1.0, 0.0));
            for j in 0..i {
                assert_eq!(g[(i, j)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn tangent_oracle_needs_tangent_paths() {
        let p = APath::constant(Arc::new(Algebroid::so3()), &[], 16).unwrap();
        assert!(tangent_oracle(&p, &p, 1e-9).is_err());
    }
}
