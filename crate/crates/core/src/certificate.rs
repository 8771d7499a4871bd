//! Optimal-width certificates and their verifiers.
//!
//! For a grid, the simplicial order itself is a bandwidth-optimal ordering,
//! and the bags `X_k = {v_k} ∪ ∂(I_k)` (the `k`-th vertex together with the
//! boundary of the first `k`) form a path decomposition whose width is the
//! vertex boundary width. The verifiers check orderings and decompositions
//! of any [`Adjacency`] against the definitions directly.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::adjacency::Adjacency;
use crate::shape::{advance_simplicial, GridShape};
use crate::sweep::{sweep_with, SweepError, Sweeper};

/// Largest grid whose certificates are materialized.
pub const MATERIALIZE_VERTEX_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("{n} vertices exceed the certificate cap of {cap}")]
    TooLarge { n: u64, cap: u64 },
    #[error("certificate needs {required} bytes but the cap is {cap}")]
    MemoryCap { required: u64, cap: u64 },
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("ordering lists {found} vertices, graph has {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("ordering contains id {id} outside 0..{n}")]
    OutOfRange { id: usize, n: usize },
    #[error("ordering lists vertex {id} twice")]
    Duplicate { id: usize },
}

/// A bijection from ranks to vertices: `order()[k]` is the vertex at rank
/// `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Self {
        Self { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Rank (0-based) of every vertex; fails unless the ordering is a
    /// permutation of `0..n`.
    pub fn positions(&self, n: usize) -> Result<Vec<usize>, OrderingError> {
        if self.order.len() != n {
            return Err(OrderingError::WrongLength { expected: n, found: self.order.len() });
        }
        let mut pos = vec![usize::MAX; n];
        for (rank, &id) in self.order.iter().enumerate() {
            if id >= n {
                return Err(OrderingError::OutOfRange { id, n });
            }
            if pos[id] != usize::MAX {
                return Err(OrderingError::Duplicate { id });
            }
            pos[id] = rank;
        }
        Ok(pos)
    }
}

/// An ordered sequence of bags of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        Self { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> u64 {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1) as u64
    }

    pub fn reversed(&self) -> Self {
        Self { bags: self.bags.iter().rev().cloned().collect() }
    }
}

/// The first condition a path decomposition fails, with a witness. Bag
/// indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { bag: usize, vertex: usize },
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    BrokenInterval { vertex: usize, i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} names vertex {vertex}, which does not exist")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Violation::BrokenInterval { vertex, i, j, k } => write!(
                f,
                "vertex {vertex} is in bags {i} and {k} but not in bag {j}"
            ),
        }
    }
}

fn check_materializable(shape: &GridShape, bytes: u64, memory_cap: u64) -> Result<usize, CertificateError> {
    let n = shape.num_vertices();
    if n > MATERIALIZE_VERTEX_CAP {
        return Err(CertificateError::TooLarge { n, cap: MATERIALIZE_VERTEX_CAP });
    }
    if bytes > memory_cap {
        return Err(CertificateError::MemoryCap { required: bytes, cap: memory_cap });
    }
    Ok(n as usize)
}

/// The simplicial order as an explicit ordering of vertex ids.
pub fn emit_bandwidth_ordering(
    shape: &GridShape,
    memory_cap: u64,
) -> Result<VertexOrdering, CertificateError> {
    let n = check_materializable(shape, shape.num_vertices().saturating_mul(8), memory_cap)?;
    let mut order = Vec::with_capacity(n);
    let mut coords = vec![0; shape.dimension()];
    loop {
        order.push(shape.id_of(&coords) as usize);
        if !advance_simplicial(&mut coords, shape.dims()) {
            break;
        }
    }
    Ok(VertexOrdering { order })
}

/// `max |f(u) − f(v)|` over the edges of `g`.
pub fn ordering_bandwidth<G: Adjacency + ?Sized>(
    g: &G,
    ordering: &VertexOrdering,
) -> Result<u64, OrderingError> {
    let pos = ordering.positions(g.vertex_count())?;
    let mut width = 0;
    g.for_each_edge(&mut |u, v| width = width.max(pos[u].abs_diff(pos[v])));
    Ok(width as u64)
}

/// Bags `{v_k} ∪ ∂(I_k)` for `k = 1..=N`, consecutive duplicates dropped.
pub fn emit_path_decomposition(
    shape: &GridShape,
    memory_cap: u64,
) -> Result<PathDecomposition, CertificateError> {
    // One streaming pass to size the bags before materializing them.
    let mut total: u64 = 0;
    sweep_with(shape, memory_cap, |_, b| total += b + 1)?;
    let bag_bytes = total.saturating_sub(1).saturating_mul(8);
    let required = Sweeper::required_bytes(shape).saturating_add(bag_bytes);
    let n = check_materializable(shape, required, memory_cap)?;

    let mut sweeper = Sweeper::new(shape, memory_cap)?;
    let mut boundary: BTreeSet<usize> = BTreeSet::new();
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    // Index of the last bag each vertex appeared in, for the interval check.
    let mut last_bag = if cfg!(debug_assertions) { vec![usize::MAX; n] } else { Vec::new() };
    while let Some(step) = sweeper.step(|id| {
        boundary.insert(id as usize);
    }) {
        let v = step.id as usize;
        boundary.remove(&v);
        let mut bag: Vec<usize> = Vec::with_capacity(boundary.len() + 1);
        bag.extend(boundary.iter().copied().take_while(|&u| u < v));
        bag.push(v);
        bag.extend(boundary.range(v + 1..).copied());
        if bags.last() == Some(&bag) {
            continue;
        }
        if cfg!(debug_assertions) {
            let here = bags.len();
            for &u in &bag {
                assert!(
                    last_bag[u] == usize::MAX || last_bag[u] + 1 == here,
                    "vertex {u} re-entered the bags at {here}"
                );
                last_bag[u] = here;
            }
        }
        bags.push(bag);
    }
    Ok(PathDecomposition { bags })
}

/// Checks the three path-decomposition conditions on `g` (vertex cover,
/// edge cover, interval property) and returns the width if all hold.
pub fn verify_path_decomposition<G: Adjacency + ?Sized>(
    g: &G,
    pd: &PathDecomposition,
) -> Result<u64, Violation> {
    let n = g.vertex_count();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut widest = 0usize;
    for (i, bag) in pd.bags.iter().enumerate() {
        let mut distinct = 0;
        for &v in bag {
            if v >= n {
                return Err(Violation::VertexOutOfRange { bag: i + 1, vertex: v });
            }
            if occurrences[v].last() != Some(&i) {
                occurrences[v].push(i);
                distinct += 1;
            }
        }
        widest = widest.max(distinct);
    }
    if let Some(v) = occurrences.iter().position(Vec::is_empty) {
        return Err(Violation::UncoveredVertex(v));
    }

    let mut uncovered = None;
    g.for_each_edge(&mut |u, v| {
        if uncovered.is_none() && !sorted_intersect(&occurrences[u], &occurrences[v]) {
            uncovered = Some(Violation::UncoveredEdge(u, v));
        }
    });
    if let Some(violation) = uncovered {
        return Err(violation);
    }

    for (vertex, occ) in occurrences.iter().enumerate() {
        if let Some(w) = occ.windows(2).find(|w| w[1] != w[0] + 1) {
            return Err(Violation::BrokenInterval {
                vertex,
                i: w[0] + 1,
                j: w[0] + 2,
                k: w[1] + 1,
            });
        }
    }
    Ok(widest.saturating_sub(1) as u64)
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}
