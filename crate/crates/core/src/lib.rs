//! Exact bandwidth, pathwidth and vertex boundary width of multidimensional
//! grids, even tori and hypercubes.
//!
//! Grids `P_{n_1} □ … □ P_{n_d}` admit an isoperimetric vertex ordering (the
//! simplicial order), so their vertex boundary width, pathwidth and bandwidth
//! coincide and can be read off a single pass over that order. This crate
//! provides:
//!
//! - [`shape`]: grid shapes, vertices, the simplicial order and id encoding;
//! - [`sweep`]: the exact boundary-profile sweep;
//! - [`formulas`]: closed forms (large maximum factor, 3D grids, cubes,
//!   hypercubes, tori, and the 4D conjecture);
//! - [`torus`]: reduction of even tori to grids;
//! - [`certificate`]: optimal orderings and path decompositions, plus
//!   verifiers for arbitrary graphs;
//! - [`oracle`]: brute-force ground truth on tiny graphs.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod adjacency;
mod bitset;

pub mod certificate;
pub mod formulas;
pub mod oracle;
pub mod shape;
pub mod sweep;
pub mod torus;

pub use adjacency::Adjacency;
pub use certificate::{
    emit_bandwidth_ordering, emit_path_decomposition, ordering_bandwidth,
    verify_path_decomposition, OrderingError, PathDecomposition, Violation, VertexOrdering,
};
pub use formulas::{best_formula, FormulaError, FormulaResult, Method};
pub use oracle::{FactorKind, Graph, OracleError};
pub use shape::{GridError, GridShape, Vertex};
pub use sweep::{
    sweep_profile, sweep_with, vbw_sweep, BoundaryProfile, SweepError, SweepSummary,
    DEFAULT_MEMORY_CAP,
};
pub use torus::{reduce_torus, vbw_torus, TorusError, TorusShape, TorusWidth};
