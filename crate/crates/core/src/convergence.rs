//! Empirical convergence orders from residuals on refined grids.

use std::fmt;

use crate::CoreError;

/// Residuals at or below this are treated as exact zeros.
pub const EXACT_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    /// Every residual is at round-off level.
    Exact,
    Fitted(f64),
}

impl Order {
    pub fn value(self) -> Option<f64> {
        match self {
            Order::Exact => None,
            Order::Fitted(p) => Some(p),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact => write!(f, "exact"),
            Order::Fitted(p) => write!(f, "{p:.4}"),
        }
    }
}

/// Least-squares slope of `log r` against `log h = -log N`.
pub fn fit_order(grids: &[usize], residuals: &[f64]) -> Result<Order, CoreError> {
    if grids.len() < 3 || grids.len() != residuals.len() {
        return Err(CoreError::GridIncompatible(format!(
            "need at least 3 grids with one residual each, got {} and {}",
            grids.len(),
            residuals.len()
        )));
    }
    if residuals.iter().all(|&r| r.abs() <= EXACT_FLOOR) {
        return Ok(Order::Exact);
    }
    if residuals.iter().any(|&r| r.abs() <= 0.0 || !r.is_finite()) {
        return Err(CoreError::GridIncompatible("mixed zero and nonzero residuals".into()));
    }
    let xs: Vec<f64> = grids.iter().map(|&n| -(n as f64).ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.abs().ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(Order::Fitted(sxy / sxx))
}
