//! Even tori `C_{2n_1} □ … □ C_{2n_d}`.
//!
//! The vertex isoperimetric function of such a torus equals that of the grid
//! `P_2^d □ P_{n_1} □ … □ P_{n_d}` at every size, and tori have an
//! isoperimetric ordering, so all three widths of the torus are the vertex
//! boundary width of that grid.

use alloc::vec::Vec;
use core::iter;

use thiserror::Error;

use crate::formulas::vbw_torus_large_max;
use crate::shape::{GridError, GridShape};
use crate::sweep::{vbw_sweep, SweepError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("a torus needs at least one cycle")]
    Empty,
    #[error("cycle length {0} is odd; only even tori are supported")]
    OddLength(usize),
    #[error("cycle length {0} is below 4")]
    TooShort(usize),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

/// An even torus, entered by its cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusShape {
    cycle_lengths: Vec<usize>,
    half_dims: Vec<usize>,
}

impl TorusShape {
    pub fn new(cycle_lengths: &[usize]) -> Result<Self, TorusError> {
        if cycle_lengths.is_empty() {
            return Err(TorusError::Empty);
        }
        for &l in cycle_lengths {
            if l % 2 == 1 {
                return Err(TorusError::OddLength(l));
            }
            if l < 4 {
                return Err(TorusError::TooShort(l));
            }
        }
        let mut half_dims: Vec<usize> = cycle_lengths.iter().map(|l| l / 2).collect();
        half_dims.sort_unstable();
        Ok(Self {
            cycle_lengths: cycle_lengths.to_vec(),
            half_dims,
        })
    }

    pub fn cycle_lengths(&self) -> &[usize] {
        &self.cycle_lengths
    }

    /// Half cycle lengths, sorted ascending.
    pub fn half_dims(&self) -> &[usize] {
        &self.half_dims
    }
}

/// The grid `P_2^d □ P_{n_1} □ … □ P_{n_d}` with the same isoperimetric
/// function as the torus.
pub fn reduce_torus(t: &TorusShape) -> Result<GridShape, TorusError> {
    let dims: Vec<usize> = iter::repeat_n(2, t.half_dims.len())
        .chain(t.half_dims.iter().copied())
        .collect();
    Ok(GridShape::new(&dims)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusRoute {
    LargeMaxFormula,
    ReducedSweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusWidth {
    pub value: u64,
    pub route: TorusRoute,
}

/// Vertex boundary width (= pathwidth = bandwidth) of the torus: the
/// large-maximum formula when it applies, otherwise a sweep of the reduced
/// grid.
pub fn vbw_torus(t: &TorusShape, memory_cap: u64) -> Result<TorusWidth, TorusError> {
    if let Ok(r) = vbw_torus_large_max(&t.half_dims) {
        if let Some(value) = r.value {
            return Ok(TorusWidth { value, route: TorusRoute::LargeMaxFormula });
        }
    }
    let grid = reduce_torus(t)?;
    Ok(TorusWidth {
        value: vbw_sweep(&grid, memory_cap)?,
        route: TorusRoute::ReducedSweep,
    })
}
