//! Integer solutions of small linear systems `M n = v` by unimodular column
//! reduction (a column-style Hermite form).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Finds an integer vector `n` with `M n = v`, or `None` when `v` is not in
/// the Z-span of the columns of `M`.
///
/// `rows` is the row-major matrix; every row must have the same length.
pub fn solve_integer_combination(rows: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(rows.len(), v.len(), "row count must match target length");
    let k = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    // Columns of `u` record the unimodular transform applied to the columns of M.
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let mut pivot_col = 0;
    let mut pivots = Vec::new();
    for r in 0..m.len() {
        if pivot_col == k {
            break;
        }
        // Euclid on columns pivot_col.. of row r until a single nonzero remains.
        loop {
            let nonzero: Vec<usize> = (pivot_col..k).filter(|&c| !m[r][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    swap_cols(&mut m, &mut u, c, pivot_col);
                    pivots.push((r, pivot_col));
                    pivot_col += 1;
                }
                break;
            }
            let &c_min = nonzero
                .iter()
                .min_by(|&&a, &&b| m[r][a].abs().cmp(&m[r][b].abs()))
                .expect("nonempty");
            for &c in &nonzero {
                if c != c_min {
                    let f = m[r][c].div_floor(&m[r][c_min]);
                    sub_col(&mut m, &mut u, c, c_min, &f);
                }
            }
        }
    }

    // Forward substitution in the reduced (lower echelon) basis.
    let mut y = vec![BigInt::zero(); k];
    let mut residual: Vec<BigInt> = v.to_vec();
    for &(r, c) in &pivots {
        let (q, rem) = residual[r].div_rem(&m[r][c]);
        if !rem.is_zero() {
            return None;
        }
        for (rr, res) in residual.iter_mut().enumerate() {
            *res -= &m[rr][c] * &q;
        }
        y[c] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(
        (0..k)
            .map(|i| (0..k).map(|j| &u[i][j] * &y[j]).sum())
            .collect(),
    )
}

fn swap_cols(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut().chain(u.iter_mut()) {
        row.swap(a, b);
    }
}

fn sub_col(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], target: usize, src: usize, f: &BigInt) {
    for row in m.iter_mut().chain(u.iter_mut()) {
        let delta = &row[src] * f;
        row[target] -= delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(rows: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigInt>> {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| big(r)).collect();
        let target = big(v);
        let sol = solve_integer_combination(&m, &target)?;
        for (row, t) in m.iter().zip(&target) {
            let s: BigInt = row.iter().zip(&sol).map(|(a, b)| a * b).sum();
            assert_eq!(&s, t);
        }
        Some(sol)
    }

    #[test]
    fn gcd_combination() {
        assert!(check(&[vec![6, 10, 15]], &[1]).is_some());
        assert!(check(&[vec![6, 10]], &[3]).is_none());
    }

    #[test]
    fn two_rows() {
        // columns (1,0) and (0,1): everything reachable
        assert!(check(&[vec![1, 0], vec![0, 1]], &[5, -3]).is_some());
        // columns (2,0), (0,2): odd targets are not reachable
        assert!(check(&[vec![2, 0], vec![0, 2]], &[1, 0]).is_none());
        // dependent columns (1,1), (2,2)
        assert!(check(&[vec![1, 2], vec![1, 2]], &[3, 3]).is_some());
        assert!(check(&[vec![1, 2], vec![1, 2]], &[3, 4]).is_none());
    }

    #[test]
    fn zero_matrix() {
        assert!(check(&[vec![0, 0], vec![0, 0]], &[0, 0]).is_some());
        assert!(check(&[vec![0, 0], vec![0, 0]], &[1, 0]).is_none());
    }
}
