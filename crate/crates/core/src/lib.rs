//! Lie algebroids in one chart, discretised A-paths and their homotopies.
//!
//! Layouts used throughout (all row-major, 0-based):
//! anchor `rho[k * n + j]`, structure `c[(k * n + i) * n + j] = c^k_{ij}`,
//! connection `gamma[(i * n + k) * n + a] = Gamma^k_{i a}`.

pub mod algebroid;
pub mod convergence;
pub mod families;
pub mod grid;
pub mod homotopy;
pub mod oracle;
pub mod path;
pub mod twisted;

pub use algebroid::{Algebroid, Connection, Family, PointFn, ValidationReport};
pub use convergence::{fit_order, Order};
pub use families::{LieFamily, Variation};
pub use grid::{simpson, simpson_2d};
pub use homotopy::{
    check_connection_independence, check_dual_apath, is_homotopy, solve_b, BSolution, DualReport, HomotopyReport,
    HomotopySheet, IndependenceReport, Rescaling,
};
pub use oracle::{develop, equivalent_oracle, tangent_oracle, Convention, Development, MatrixModel};
pub use path::{random_path, smoothstep, APath, TrigCurve};
pub use twisted::MeridianSweep;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("{what}: expected length {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("index {index} out of range for rank {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("base path left the chart at grid index {index}")]
    LeftChart { index: usize },
    #[error("endpoints do not match (distance {distance:e})")]
    EndpointMismatch { distance: f64 },
    #[error("incompatible grids: {0}")]
    GridIncompatible(String),
    #[error("homotopy solve blew up on row {row} at t = {t}")]
    BlowUp { row: usize, t: f64 },
    #[error("model group is not simply connected: {0}")]
    NotSimplyConnected(String),
    #[error("wrong algebroid family: {0}")]
    WrongFamily(String),
    #[error("invalid sheet: {0}")]
    InvalidSheet(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}
