//! Uniform-grid helpers: piecewise cubic interpolation and second-order
//! differences that never reach across a breakpoint.

/// Piece boundaries `[0, b_1, ..., N]` from interior breakpoints.
pub(crate) fn pieces(n: usize, breaks: &[usize]) -> Vec<(usize, usize)> {
    let mut cuts = vec![0];
    cuts.extend(breaks.iter().copied().filter(|&b| b > 0 && b < n));
    cuts.push(n);
    cuts.dedup();
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Index of the piece containing `s` (grid units); a breakpoint belongs to
/// the piece on its right, except the final node.
pub(crate) fn piece_containing(pieces: &[(usize, usize)], s: f64) -> usize {
    pieces
        .iter()
        .position(|&(_, hi)| s < hi as f64)
        .unwrap_or(pieces.len() - 1)
}

/// Lagrange weights of the (up to) four nodes around `s` inside `[lo, hi]`.
/// Returns the first node index and its weights.
pub(crate) fn cubic_stencil(lo: usize, hi: usize, s: f64) -> (usize, Vec<f64>) {
    let width = (hi - lo).min(3);
    let j = (s.floor() as isize).clamp(lo as isize, hi as isize - 1) as usize;
    let start = if width < 3 {
        lo
    } else {
        j.saturating_sub(1).clamp(lo, hi - 3)
    };
    let nodes: Vec<f64> = (0..=width).map(|k| (start + k) as f64).collect();
    let weights = nodes
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &xk)| (s - xk) / (xi - xk))
                .product()
        })
        .collect();
    (start, weights)
}

/// Interpolates a vector-valued node function at grid coordinate `s` using
/// the nodes of one piece. `node(i)` gives the value used at index `i`
/// inside that piece.
pub(crate) fn interpolate<'a>(
    lo: usize,
    hi: usize,
    s: f64,
    dim: usize,
    node: impl Fn(usize) -> &'a [f64],
    out: &mut [f64],
) {
    let (start, w) = cubic_stencil(lo, hi, s);
    out[..dim].fill(0.0);
    for (k, wk) in w.iter().enumerate() {
        let v = node(start + k);
        for d in 0..dim {
            out[d] += wk * v[d];
        }
    }
}

/// Second-order derivative of node values on one piece with spacing `h`:
/// central inside, one-sided three-point at the piece ends.
pub(crate) fn derivative<'a>(
    lo: usize,
    hi: usize,
    i: usize,
    h: f64,
    dim: usize,
    node: impl Fn(usize) -> &'a [f64],
    out: &mut [f64],
) {
    let (w, idx): ([f64; 3], [usize; 3]) = if hi - lo < 2 {
        // two nodes only
        let (p, q) = (node(lo), node(hi));
        for d in 0..dim {
            out[d] = (q[d] - p[d]) / (h * (hi - lo) as f64);
        }
        return;
    } else if i == lo {
        ([-1.5, 2.0, -0.5], [i, i + 1, i + 2])
    } else if i == hi {
        ([0.5, -2.0, 1.5], [i - 2, i - 1, i])
    } else {
        ([-0.5, 0.0, 0.5], [i - 1, i, i + 1])
    };
    out[..dim].fill(0.0);
    for (wk, &j) in w.iter().zip(&idx) {
        if *wk == 0.0 {
            continue;
        }
        let v = node(j);
        for d in 0..dim {
            out[d] += wk * v[d] / h;
        }
    }
}

/// Composite Simpson rule for `n` (even) intervals on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2 && n % 2 == 0, "Simpson needs an even number of intervals");
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h))
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// Tensor-product composite Simpson rule on a rectangle.
pub fn simpson_2d(f: impl Fn(f64, f64) -> f64, x: (f64, f64), y: (f64, f64), n: usize) -> f64 {
    simpson(|u| simpson(|v| f(u, v), y.0, y.1, n), x.0, x.1, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_from_breaks() {
        assert_eq!(pieces(8, &[]), vec![(0, 8)]);
        assert_eq!(pieces(8, &[4]), vec![(0, 4), (4, 8)]);
        let p = pieces(8, &[2, 4]);
        assert_eq!(piece_containing(&p, 2.0), 1);
        assert_eq!(piece_containing(&p, 1.99), 0);
        assert_eq!(piece_containing(&p, 8.0), 2);
    }

    #[test]
    fn cubic_interpolation_is_exact_on_cubics() {
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x * x;
        let vals: Vec<[f64; 1]> = (0..=10).map(|i| [f(i as f64)]).collect();
        for s in [0.0, 0.3, 4.5, 9.7, 10.0] {
            let mut out = [0.0];
            interpolate(0, 10, s, 1, |i| &vals[i][..], &mut out);
            assert!((out[0] - f(s)).abs() < 1e-10, "{s}");
        }
        // midpoint weights are the classic (-1, 9, 9, -1)/16
        let (start, w) = cubic_stencil(0, 10, 4.5);
        assert_eq!(start, 3);
        let expected = [-1.0 / 16.0, 9.0 / 16.0, 9.0 / 16.0, -1.0 / 16.0];
        for (a, b) in w.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_is_exact_on_quadratics() {
        let h = 0.1;
        let vals: Vec<[f64; 1]> = (0..=6).map(|i| [(i as f64 * h).powi(2)]).collect();
        for i in 0..=6 {
            let mut out = [0.0];
            derivative(0, 6, i, h, 1, |j| &vals[j][..], &mut out);
            assert!((out[0] - 2.0 * i as f64 * h).abs() < 1e-12);
        }
    }

    #[test]
    fn simpson_on_polynomials_and_sine() {
        assert!((simpson(|x| x * x * x, 0.0, 2.0, 2) - 4.0).abs() < 1e-14);
        let s = simpson(f64::sin, 0.0, std::f64::consts::PI, 400);
        assert!((s - 2.0).abs() < 1e-9);
        let s2 = simpson_2d(|x, y| x * y, (0.0, 1.0), (0.0, 2.0), 4);
        assert!((s2 - 1.0).abs() < 1e-14);
    }
}
