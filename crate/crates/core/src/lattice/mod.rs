//! Finite boxes: Laplacian assembly, Green columns, finite-volume probabilities
//! and brute-force forest enumeration on tiny graphs.

mod cholesky;
mod domain;
mod finite;
mod laplacian;
mod tiny;

pub use cholesky::BandCholesky;
pub use domain::{RectDomain, Site};
pub use finite::{
    convergence_sweep, det_f64, diag_green_drift, green_solve, watermelon_prob_finite, DriftRow, DriftTable,
    GreenColumn, GreenSolver, SweepRow, SweepTable,
};
pub use laplacian::{assemble_laplacian, SparseLaplacian};
pub use tiny::{forests_bruteforce, grid_edges, standard_corpus, ForestCounts, TinyGraph, MAX_FREE_VERTICES};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("matrix is not positive definite (pivot {pivot:e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("linear solve did not reach the residual target (residual {residual:e})")]
    NotConverged { residual: f64 },
    #[error("probability {0} lies outside [0, 1]")]
    OutOfRange(f64),
    #[error("graph has {0} non-boundary vertices, above the enumeration limit of 12")]
    TooLarge(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}
