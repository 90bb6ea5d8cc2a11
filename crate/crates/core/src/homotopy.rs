use std::sync::Arc;

use crate::algebroid::{Algebroid, Connection, Family, Workspace};
use crate::grid::{cubic_stencil, derivative, pieces};
use crate::path::APath;
use crate::CoreError;

/// Rescaling used by [`HomotopySheet::associator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rescaling {
    /// `C^2` piecewise quintic Hermite through the associator nodes.
    #[default]
    Quintic,
    /// The piecewise-linear map through the same nodes; the `eps = 1` row is
    /// then the other bracketing on the nose.
    Linear,
}

const SIGMA_NODES: [(f64, f64, f64); 4] = [(0.0, 0.0, 2.0), (0.25, 0.5, 1.5), (0.5, 0.75, 0.75), (1.0, 1.0, 0.5)];

/// `(sigma(t), sigma'(t))` for the associator rescaling.
pub fn sigma(rescaling: Rescaling, t: f64) -> (f64, f64) {
    let t = t.clamp(0.0, 1.0);
    let k = SIGMA_NODES.windows(2).position(|w| t <= w[1].0).unwrap_or(2);
    let (t0, y0, d0) = SIGMA_NODES[k];
    let (t1, y1, d1) = SIGMA_NODES[k + 1];
    let w = t1 - t0;
    if rescaling == Rescaling::Linear {
        let slope = (y1 - y0) / w;
        return (y0 + slope * (t - t0), slope);
    }
    // quintic Hermite with zero second derivatives at both nodes
    let s = (t - t0) / w;
    let (s2, s3) = (s * s, s * s * s);
    let (s4, s5) = (s3 * s, s3 * s2);
    let h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h2 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    let h3 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    let dh0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    let dh1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    let dh3 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    let value = h0 * y0 + h1 * w * d0 + h2 * y1 + h3 * w * d1;
    let slope = (dh0 * y0 - dh0 * y1) / w + dh1 * d0 + dh3 * d1;
    (value, slope)
}

/// A two-parameter family `a(eps_j, t_i)` of A-paths with fixed base
/// endpoints, stored row by row (`eps` outer).
#[derive(Debug, Clone)]
pub struct HomotopySheet {
    spec: Arc<Algebroid>,
    n_eps: usize,
    n_t: usize,
    a: Vec<f64>,
    gamma: Vec<f64>,
    breaks: Vec<usize>,
    /// Right limits of `a`, indexed `[row * breaks.len() + p]`.
    right: Vec<Vec<f64>>,
    b_start: Vec<f64>,
    b_end: Vec<f64>,
}

impl HomotopySheet {
    /// Stacks paths sharing a grid and breakpoints into a sheet.
    pub fn from_rows(rows: &[APath]) -> Result<Self, CoreError> {
        if rows.len() < 5 {
            return Err(CoreError::InvalidSheet(format!("{} rows, need at least 5", rows.len())));
        }
        let first = &rows[0];
        let spec = first.spec().clone();
        let n_t = first.n();
        let breaks = first.breaks().to_vec();
        let mut a = Vec::new();
        let mut gamma = Vec::new();
        let mut right = Vec::new();
        for (j, row) in rows.iter().enumerate() {
            if row.n() != n_t || row.breaks() != breaks.as_slice() {
                return Err(CoreError::InvalidSheet(format!("row {j} has a different grid")));
            }
            if row.spec().m() != spec.m() || row.spec().n() != spec.n() {
                return Err(CoreError::InvalidSheet(format!("row {j} lives over another algebroid")));
            }
            for i in 0..=n_t {
                a.extend_from_slice(row.a(i));
                gamma.extend_from_slice(row.gamma(i));
            }
            right.extend(breaks.iter().map(|&b| row.a_right(b).to_vec()));
        }
        let sheet = Self {
            b_start: vec![0.0; spec.n()],
            b_end: vec![0.0; spec.n()],
            spec,
            n_eps: rows.len() - 1,
            n_t,
            a,
            gamma,
            breaks,
            right,
        };
        sheet.check_fixed_endpoints(1e-9)?;
        Ok(sheet)
    }

    /// Samples `f(eps, t) = (a, gamma)` on an `(n_eps + 1) x (n_t + 1)` grid.
    pub fn from_fn(
        spec: Arc<Algebroid>,
        n_eps: usize,
        n_t: usize,
        f: impl Fn(f64, f64) -> (Vec<f64>, Vec<f64>),
    ) -> Result<Self, CoreError> {
        if n_eps < 4 || n_t < 8 {
            return Err(CoreError::InvalidSheet(format!("grid {n_eps} x {n_t} too small")));
        }
        let (m, n) = (spec.m(), spec.n());
        let mut a = Vec::with_capacity((n_eps + 1) * (n_t + 1) * n);
        let mut gamma = Vec::with_capacity((n_eps + 1) * (n_t + 1) * m);
        for j in 0..=n_eps {
            for i in 0..=n_t {
                let (av, gv) = f(j as f64 / n_eps as f64, i as f64 / n_t as f64);
                if av.len() != n || gv.len() != m {
                    return Err(CoreError::Dimension {
                        what: "sheet sample",
                        expected: n + m,
                        got: av.len() + gv.len(),
                    });
                }
                a.extend(av);
                gamma.extend(gv);
            }
        }
        let sheet = Self {
            b_start: vec![0.0; n],
            b_end: vec![0.0; n],
            spec,
            n_eps,
            n_t,
            a,
            gamma,
            breaks: Vec::new(),
            right: Vec::new(),
        };
        sheet.check_fixed_endpoints(1e-9)?;
        Ok(sheet)
    }

    /// Every row equal to `path`.
    pub fn constant(path: &APath, n_eps: usize) -> Result<Self, CoreError> {
        Self::from_rows(&vec![path.clone(); n_eps + 1])
    }

    /// Linear interpolation `(1 - eps) p0 + eps p1` of two paths in a tangent
    /// algebroid; each row is again an A-path because the anchor is the
    /// identity.
    pub fn tangent_interpolation(p0: &APath, p1: &APath, n_eps: usize) -> Result<Self, CoreError> {
        if p0.spec().family() != Family::Tangent {
            return Err(CoreError::WrongFamily(format!("{} is not a tangent algebroid", p0.spec().name())));
        }
        if p0.n() != p1.n() || p0.breaks() != p1.breaks() {
            return Err(CoreError::GridIncompatible("interpolated paths need the same grid".into()));
        }
        let mix = |x: &[f64], y: &[f64], e: f64| x.iter().zip(y).map(|(p, q)| (1.0 - e) * p + e * q).collect::<Vec<f64>>();
        let rows = (0..=n_eps)
            .map(|j| {
                let e = j as f64 / n_eps as f64;
                let a = (0..=p0.n()).map(|i| mix(p0.a(i), p1.a(i), e)).collect();
                let g = (0..=p0.n()).map(|i| mix(p0.gamma(i), p1.gamma(i), e)).collect();
                APath::from_grid(p0.spec().clone(), a, g, false)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&rows)
    }

    /// The associator family between `(a1 . a2) . a3` (row 0) and
    /// `a1 . (a2 . a3)` up to rescaling (last row). Here `x . y` runs `y`
    /// first, so `x . y = y.concat(x)`.
    ///
    /// Row `eps` is `phi'(t) A(phi(t))` over `gamma_A(phi(t))` with
    /// `phi = (1 - eps) t + eps sigma(t)` and `A = (a1 . a2) . a3`, sampled
    /// on `n_t` intervals (divisible by 4). The inputs may use a finer grid.
    pub fn associator(
        a1: &APath,
        a2: &APath,
        a3: &APath,
        n_eps: usize,
        n_t: usize,
        rescaling: Rescaling,
        tol: f64,
    ) -> Result<Self, CoreError> {
        if n_t % 4 != 0 {
            return Err(CoreError::GridIncompatible(format!("grid {n_t} not divisible by 4")));
        }
        let big = a3.concat(&a2.concat(a1, tol)?, tol)?;
        let spec = a1.spec().clone();
        let (m, n) = (spec.m(), spec.n());
        let breaks = match rescaling {
            Rescaling::Linear => vec![n_t / 4, n_t / 2, 3 * n_t / 4],
            Rescaling::Quintic => Vec::new(),
        };
        let mut a = Vec::with_capacity((n_eps + 1) * (n_t + 1) * n);
        let mut gamma = Vec::with_capacity((n_eps + 1) * (n_t + 1) * m);
        let mut right = Vec::new();
        let eval = |e: f64, t: f64, from_right: bool| -> (Vec<f64>, Vec<f64>) {
            // one-sided values at the kinks of the linear rescaling and at the
            // joints of the concatenation
            let probe = if from_right { t + 1e-12 } else { t - 1e-12 };
            let (s, ds) = sigma(rescaling, t);
            let (_, ds_side) = sigma(rescaling, probe.clamp(0.0, 1.0));
            let ds = if rescaling == Rescaling::Linear && t > 0.0 && t < 1.0 { ds_side } else { ds };
            let phi = (1.0 - e) * t + e * s;
            let dphi = (1.0 - e) + e * ds;
            let av = big.fiber_limit(phi, !from_right).into_iter().map(|v| dphi * v).collect();
            (av, big.base_at(phi))
        };
        for j in 0..=n_eps {
            let e = j as f64 / n_eps as f64;
            for i in 0..=n_t {
                let t = i as f64 / n_t as f64;
                let (av, gv) = eval(e, t, false);
                a.extend(av);
                gamma.extend(gv);
            }
            for &b in &breaks {
                right.push(eval(e, b as f64 / n_t as f64, true).0);
            }
        }
        Ok(Self {
            b_start: vec![0.0; n],
            b_end: vec![0.0; n],
            spec,
            n_eps,
            n_t,
            a,
            gamma,
            breaks,
            right,
        })
    }

    /// Sets the initial value `b(eps, 0)` and the expected terminal value
    /// `b(eps, 1)`; both default to zero.
    pub fn with_boundary(mut self, b_start: Vec<f64>, b_end: Vec<f64>) -> Result<Self, CoreError> {
        let n = self.spec.n();
        for v in [&b_start, &b_end] {
            if v.len() != n {
                return Err(CoreError::Dimension {
                    what: "boundary value",
                    expected: n,
                    got: v.len(),
                });
            }
        }
        self.b_start = b_start;
        self.b_end = b_end;
        Ok(self)
    }

    /// The same family with `eps` running backwards.
    pub fn flip_eps(&self) -> Self {
        let (n, m) = (self.spec.n(), self.spec.m());
        let row_a = (self.n_t + 1) * n;
        let row_g = (self.n_t + 1) * m;
        let nb = self.breaks.len();
        let mut out = self.clone();
        for j in 0..=self.n_eps {
            let k = self.n_eps - j;
            out.a[j * row_a..(j + 1) * row_a].copy_from_slice(&self.a[k * row_a..(k + 1) * row_a]);
            out.gamma[j * row_g..(j + 1) * row_g].copy_from_slice(&self.gamma[k * row_g..(k + 1) * row_g]);
            for p in 0..nb {
                out.right[j * nb + p] = self.right[k * nb + p].clone();
            }
        }
        // d_eps gamma changes sign, and with it the boundary lifts
        out.b_start = self.b_start.iter().map(|v| -v).collect();
        out.b_end = self.b_end.iter().map(|v| -v).collect();
        out
    }

    fn check_fixed_endpoints(&self, tol: f64) -> Result<(), CoreError> {
        for j in 1..=self.n_eps {
            for i in [0, self.n_t] {
                if !self.spec.same_point(self.gamma(0, i), self.gamma(j, i), tol) {
                    return Err(CoreError::InvalidSheet(format!("base endpoint moves on row {j}")));
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &Arc<Algebroid> {
        &self.spec
    }

    pub fn n_eps(&self) -> usize {
        self.n_eps
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn breaks(&self) -> &[usize] {
        &self.breaks
    }

    pub fn a(&self, j: usize, i: usize) -> &[f64] {
        let n = self.spec.n();
        let o = (j * (self.n_t + 1) + i) * n;
        &self.a[o..o + n]
    }

    pub fn a_right(&self, j: usize, i: usize) -> &[f64] {
        match self.breaks.iter().position(|&b| b == i) {
            Some(p) => &self.right[j * self.breaks.len() + p],
            None => self.a(j, i),
        }
    }

    pub fn gamma(&self, j: usize, i: usize) -> &[f64] {
        let m = self.spec.m();
        let o = (j * (self.n_t + 1) + i) * m;
        &self.gamma[o..o + m]
    }

    /// Row `j` as a path.
    pub fn row(&self, j: usize) -> APath {
        let a = (0..=self.n_t).map(|i| self.a(j, i).to_vec()).collect();
        let g = (0..=self.n_t).map(|i| self.gamma(j, i).to_vec()).collect();
        let mut p = APath::from_grid(self.spec.clone(), a, g, false).expect("sheet rows are well formed");
        if !self.breaks.is_empty() {
            let rights = self.breaks.iter().map(|&b| self.a_right(j, b).to_vec()).collect();
            p = p.with_breaks(self.breaks.clone(), rights);
        }
        p
    }

    /// Largest A-path residual over the rows.
    pub fn max_row_residual(&self) -> f64 {
        (0..=self.n_eps).map(|j| self.row(j).residual()).fold(0.0, f64::max)
    }

    pub fn b_start(&self) -> &[f64] {
        &self.b_start
    }

    pub fn b_end(&self) -> &[f64] {
        &self.b_end
    }

    /// `d/d eps` of a node quantity by second-order differences over rows.
    fn eps_derivative(&self, j: usize, dim: usize, node: impl Fn(usize) -> Vec<f64>, out: &mut [f64]) {
        let rows: Vec<Vec<f64>> = match j {
            0 => (0..3).map(&node).collect(),
            j if j == self.n_eps => (j - 2..=j).map(&node).collect(),
            j => (j - 1..=j + 1).map(&node).collect(),
        };
        let base = match j {
            0 => 0,
            j if j == self.n_eps => j - 2,
            j => j - 1,
        };
        let h = 1.0 / self.n_eps as f64;
        derivative(base, base + 2, j, h, dim, |k| &rows[k - base], out);
    }
}

/// Companion solution `b(eps, t)` of the homotopy equation.
#[derive(Debug, Clone)]
pub struct BSolution {
    n_eps: usize,
    n_t: usize,
    rank: usize,
    b: Vec<f64>,
    /// `|b(eps_j, 1) - b_end|` per row.
    pub terminal: Vec<f64>,
}

impl BSolution {
    pub fn b(&self, j: usize, i: usize) -> &[f64] {
        let o = (j * (self.n_t + 1) + i) * self.rank;
        &self.b[o..o + self.rank]
    }

    pub fn n_eps(&self) -> usize {
        self.n_eps
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn max_terminal(&self) -> f64 {
        self.terminal.iter().copied().fold(0.0, f64::max)
    }

    /// `max |b1 - b2|` over the whole grid.
    pub fn max_difference(&self, other: &Self) -> f64 {
        self.b.iter().zip(&other.b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
    }
}

/// Node data of one smooth piece of one row.
struct PieceData {
    lo: usize,
    a: Vec<f64>,
    da: Vec<f64>,
    g: Vec<f64>,
    dg_eps: Vec<f64>,
    dg_t: Vec<f64>,
}

impl PieceData {
    fn build(sheet: &HomotopySheet, j: usize, lo: usize, hi: usize) -> Self {
        let (m, n) = (sheet.spec.m(), sheet.spec.n());
        let len = hi - lo + 1;
        let node_a = |row: usize, i: usize| {
            if i == lo {
                sheet.a_right(row, i).to_vec()
            } else {
                sheet.a(row, i).to_vec()
            }
        };
        let mut d = Self {
            lo,
            a: Vec::with_capacity(len * n),
            da: vec![0.0; len * n],
            g: Vec::with_capacity(len * m),
            dg_eps: vec![0.0; len * m],
            dg_t: vec![0.0; len * m],
        };
        for i in lo..=hi {
            let k = i - lo;
            d.a.extend(node_a(j, i));
            d.g.extend_from_slice(sheet.gamma(j, i));
            sheet.eps_derivative(j, n, |r| node_a(r, i), &mut d.da[k * n..(k + 1) * n]);
            if m > 0 {
                sheet.eps_derivative(j, m, |r| sheet.gamma(r, i).to_vec(), &mut d.dg_eps[k * m..(k + 1) * m]);
            }
        }
        if m > 0 {
            let h = 1.0 / sheet.n_t as f64;
            let g = &d.g;
            for i in lo..=hi {
                let k = i - lo;
                derivative(lo, hi, i, h, m, |q| &g[(q - lo) * m..(q - lo + 1) * m], &mut d.dg_t[k * m..(k + 1) * m]);
            }
        }
        d
    }
}

/// Integrates `d_t b = d_eps a - c(a, b) + Gamma(d_eps gamma - rho b) a +
/// Gamma(rho a - d_t gamma) b` in `t` for every `eps`, starting from the
/// sheet's `b_start`, with fourth-order Runge-Kutta steps that restart at
/// every breakpoint. Midpoint data come from cubic interpolation inside the
/// piece.
pub fn solve_b(conn: &Connection, sheet: &HomotopySheet) -> Result<BSolution, CoreError> {
    let spec = &sheet.spec;
    conn.check(spec)?;
    let (m, n) = (spec.m(), spec.n());
    let n_t = sheet.n_t;
    let h = 1.0 / n_t as f64;
    let mut ws = Workspace::new(spec);
    let mut b_all = Vec::with_capacity((sheet.n_eps + 1) * (n_t + 1) * n);
    let mut terminal = Vec::with_capacity(sheet.n_eps + 1);
    let pcs = pieces(n_t, &sheet.breaks);
    // scratch: a, da, g, dg_eps, dg_t at one time
    let mut pa = vec![0.0; n];
    let mut pda = vec![0.0; n];
    let mut pg = vec![0.0; m];
    let mut pge = vec![0.0; m];
    let mut pgt = vec![0.0; m];
    let mut tors = vec![0.0; n];
    let mut stage = vec![0.0; n];
    let mut k = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for j in 0..=sheet.n_eps {
        let mut b = sheet.b_start.clone();
        b_all.extend_from_slice(&b);
        for &(lo, hi) in &pcs {
            let d = PieceData::build(sheet, j, lo, hi);
            let at_node = |i: usize, out: [&mut [f64]; 5]| {
                let q = i - d.lo;
                let [a, da, g, ge, gt] = out;
                a.copy_from_slice(&d.a[q * n..(q + 1) * n]);
                da.copy_from_slice(&d.da[q * n..(q + 1) * n]);
                g.copy_from_slice(&d.g[q * m..(q + 1) * m]);
                ge.copy_from_slice(&d.dg_eps[q * m..(q + 1) * m]);
                gt.copy_from_slice(&d.dg_t[q * m..(q + 1) * m]);
            };
            let at_mid = |s: f64, out: [&mut [f64]; 5]| {
                let [a, da, g, ge, gt] = out;
                let (start, w) = cubic_stencil(lo, hi, s);
                for (dst, src, dim) in [
                    (a, &d.a, n),
                    (da, &d.da, n),
                    (g, &d.g, m),
                    (ge, &d.dg_eps, m),
                    (gt, &d.dg_t, m),
                ] {
                    dst.fill(0.0);
                    for (c, wc) in w.iter().enumerate() {
                        let q = start + c - lo;
                        for x in 0..dim {
                            dst[x] += wc * src[q * dim + x];
                        }
                    }
                }
            };
            for i in lo..hi {
                rk4_step(
                    spec,
                    conn,
                    &mut ws,
                    &mut b,
                    h,
                    |stage_idx, bufs| match stage_idx {
                        0 => at_node(i, bufs),
                        1 => at_mid(i as f64 + 0.5, bufs),
                        _ => at_node(i + 1, bufs),
                    },
                    [&mut pa, &mut pda, &mut pg, &mut pge, &mut pgt],
                    &mut tors,
                    &mut stage,
                    &mut k,
                );
                if b.iter().any(|v| !v.is_finite() || v.abs() > 1e12) {
                    return Err(CoreError::BlowUp {
                        row: j,
                        t: (i + 1) as f64 * h,
                    });
                }
                b_all.extend_from_slice(&b);
            }
        }
        let dist = b
            .iter()
            .zip(&sheet.b_end)
            .map(|(p, q)| (p - q).powi(2))
            .sum::<f64>()
            .sqrt();
        terminal.push(dist);
    }
    Ok(BSolution {
        n_eps: sheet.n_eps,
        n_t,
        rank: n,
        b: b_all,
        terminal,
    })
}

#[allow(clippy::too_many_arguments)]
fn rk4_step(
    spec: &Algebroid,
    conn: &Connection,
    ws: &mut Workspace,
    b: &mut [f64],
    h: f64,
    load: impl Fn(usize, [&mut [f64]; 5]),
    bufs: [&mut [f64]; 5],
    tors: &mut [f64],
    stage: &mut [f64],
    k: &mut [Vec<f64>; 4],
) {
    let [pa, pda, pg, pge, pgt] = bufs;
    let n = b.len();
    for s in 0..4 {
        let which = match s {
            0 => 0,
            1 | 2 => 1,
            _ => 2,
        };
        if s != 2 {
            load(which, [&mut *pa, &mut *pda, &mut *pg, &mut *pge, &mut *pgt]);
        }
        let coef = match s {
            0 => 0.0,
            1 | 2 => 0.5,
            _ => 1.0,
        };
        for x in 0..n {
            stage[x] = b[x] + if s == 0 { 0.0 } else { coef * h * k[s - 1][x] };
        }
        spec.torsion_into(conn, pg, pgt, pge, pa, stage, ws, tors);
        for x in 0..n {
            k[s][x] = pda[x] + tors[x];
        }
    }
    for x in 0..n {
        b[x] += h / 6.0 * (k[0][x] + 2.0 * k[1][x] + 2.0 * k[2][x] + k[3][x]);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyReport {
    pub pass: bool,
    pub max_terminal: f64,
    pub profile: Vec<f64>,
}

/// Whether the sheet is a homotopy: `|b(eps, 1) - b_end| <= tol` on every row.
pub fn is_homotopy(conn: &Connection, sheet: &HomotopySheet, tol: f64) -> Result<HomotopyReport, CoreError> {
    let sol = solve_b(conn, sheet)?;
    let max_terminal = sol.max_terminal();
    Ok(HomotopyReport {
        pass: max_terminal <= tol,
        max_terminal,
        profile: sol.terminal,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceReport {
    pub pass: bool,
    pub max_difference: f64,
}

/// Solves with two connections and compares the solutions everywhere.
pub fn check_connection_independence(
    sheet: &HomotopySheet,
    first: &Connection,
    second: &Connection,
    tol: f64,
) -> Result<IndependenceReport, CoreError> {
    let b1 = solve_b(first, sheet)?;
    let b2 = solve_b(second, sheet)?;
    let max_difference = b1.max_difference(&b2);
    Ok(IndependenceReport {
        pass: max_difference <= tol,
        max_difference,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualReport {
    pub pass: bool,
    pub max_residual: f64,
}

/// `max |rho(gamma) b - d_eps gamma|` over the grid: `b` is an A-path in
/// `eps` for every fixed `t`.
pub fn check_dual_apath(sheet: &HomotopySheet, sol: &BSolution, tol: f64) -> DualReport {
    let m = sheet.spec.m();
    let mut max_residual: f64 = 0.0;
    if m > 0 {
        let mut deps = vec![0.0; m];
        for j in 0..=sheet.n_eps {
            for i in 0..=sheet.n_t {
                sheet.eps_derivative(j, m, |r| sheet.gamma(r, i).to_vec(), &mut deps);
                let rb = sheet.spec.apply_anchor(sheet.gamma(j, i), sol.b(j, i));
                let r = rb.iter().zip(&deps).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
                max_residual = max_residual.max(r);
            }
        }
    }
    DualReport {
        pass: max_residual <= tol,
        max_residual,
    }
}
