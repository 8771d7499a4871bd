//! Brute-force ground truth on tiny graphs.
//!
//! Nothing here relies on grid structure or on the simplicial order: the
//! vertex isoperimetric function is found by enumerating every subset, the
//! bandwidth by branch and bound over orderings, and the pathwidth through
//! its vertex-separation characterization with a DP over subsets. These
//! serve as the independent side of every cross-check in the crate.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::adjacency::Adjacency;

/// Largest graph [`brute_phi`] and [`brute_vbw`] accept.
pub const PHI_VERTEX_CAP: usize = 24;
/// Largest graph [`brute_bandwidth`] accepts.
pub const BANDWIDTH_VERTEX_CAP: usize = 10;
/// Largest graph [`brute_pathwidth`] accepts.
pub const PATHWIDTH_VERTEX_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("a {kind} needs at least {min} vertices, got {n}")]
    FactorTooSmall { kind: FactorKind, n: usize, min: usize },
    #[error("{what} is capped at {cap} vertices, graph has {n}")]
    OverCap { what: &'static str, n: usize, cap: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("product size overflows")]
    Overflow,
    #[error("k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Path,
    Cycle,
}

impl core::fmt::Display for FactorKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            FactorKind::Path => "path",
            FactorKind::Cycle => "cycle",
        })
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<Vec<usize>>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(OracleError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(OracleError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(OracleError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(OracleError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self { adjacency, labels: None })
    }

    pub fn factor(kind: FactorKind, n: usize) -> Result<Self, OracleError> {
        let min = match kind {
            FactorKind::Path => 2,
            FactorKind::Cycle => 3,
        };
        if n < min {
            return Err(OracleError::FactorTooSmall { kind, n, min });
        }
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        if kind == FactorKind::Cycle {
            edges.push((n - 1, 0));
        }
        let mut g = Self::from_edges(n, &edges)?;
        g.labels = Some((0..n).map(|i| vec![i]).collect());
        Ok(g)
    }

    /// `P_{n_1} □ … □ P_{n_d}` in the given axis order. Unit factors are
    /// skipped; an all-ones input gives the single-vertex graph.
    pub fn grid(dims: &[usize]) -> Result<Self, OracleError> {
        Self::product_of(dims.iter().filter(|&&n| n != 1).map(|&n| (FactorKind::Path, n)))
    }

    /// `C_{l_1} □ … □ C_{l_d}`.
    pub fn torus(lengths: &[usize]) -> Result<Self, OracleError> {
        Self::product_of(lengths.iter().map(|&n| (FactorKind::Cycle, n)))
    }

    pub fn product_of(
        factors: impl IntoIterator<Item = (FactorKind, usize)>,
    ) -> Result<Self, OracleError> {
        let mut acc = Self {
            adjacency: vec![Vec::new()],
            labels: Some(vec![Vec::new()]),
        };
        for (kind, n) in factors {
            acc = cartesian_product(&acc, &Self::factor(kind, n)?)?;
        }
        Ok(acc)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Product coordinates of each vertex, when the graph came from factors.
    pub fn labels(&self) -> Option<&[Vec<usize>]> {
        self.labels.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn for_each_neighbor(&self, v: usize, f: &mut dyn FnMut(usize)) {
        self.adjacency[v].iter().for_each(|&u| f(u));
    }
}

/// `g □ h`. Vertex `(a, b)` gets id `a·|V(h)| + b`, which matches the grid
/// id encoding when both sides are grids.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, OracleError> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let n = ng.checked_mul(nh).ok_or(OracleError::Overflow)?;
    let mut adjacency = vec![Vec::new(); n];
    for a in 0..ng {
        for b in 0..nh {
            let list = &mut adjacency[a * nh + b];
            list.extend(g.adjacency[a].iter().map(|&a2| a2 * nh + b));
            list.extend(h.adjacency[b].iter().map(|&b2| a * nh + b2));
            list.sort_unstable();
        }
    }
    let labels = match (&g.labels, &h.labels) {
        (Some(lg), Some(lh)) => Some(
            lg.iter()
                .flat_map(|x| lh.iter().map(move |y| x.iter().chain(y).copied().collect()))
                .collect(),
        ),
        _ => None,
    };
    Ok(Graph { adjacency, labels })
}

fn require(g: &Graph, what: &'static str, cap: usize) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(OracleError::OverCap { what, n, cap });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(n)
}

/// `Φ(k)` for every `k = 0..=n`, by visiting all `2ⁿ` subsets in Gray-code
/// order while keeping the boundary size up to date.
pub fn brute_phi_all(g: &Graph) -> Result<Vec<u64>, OracleError> {
    let n = require(g, "exhaustive boundary search", PHI_VERTEX_CAP)?;
    let mut best = vec![u64::MAX; n + 1];
    best[0] = 0;
    let mut inside = vec![false; n];
    // Neighbors of each vertex currently inside the set.
    let mut touching = vec![0u32; n];
    let mut boundary: u64 = 0;
    let mut size = 0usize;
    for t in 1u64..1 << n {
        let x = t.trailing_zeros() as usize;
        if inside[x] {
            inside[x] = false;
            size -= 1;
            for &y in &g.adjacency[x] {
                touching[y] -= 1;
                if !inside[y] && touching[y] == 0 {
                    boundary -= 1;
                }
            }
            if touching[x] > 0 {
                boundary += 1;
            }
        } else {
            if touching[x] > 0 {
                boundary -= 1;
            }
            inside[x] = true;
            size += 1;
            for &y in &g.adjacency[x] {
                touching[y] += 1;
                if !inside[y] && touching[y] == 1 {
                    boundary += 1;
                }
            }
        }
        if boundary < best[size] {
            best[size] = boundary;
        }
    }
    Ok(best)
}

/// Minimum `|∂(S)|` over all `k`-subsets `S`.
pub fn brute_phi(g: &Graph, k: usize) -> Result<u64, OracleError> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(OracleError::KOutOfRange { k, n });
    }
    Ok(brute_phi_all(g)?[k])
}

pub fn brute_vbw(g: &Graph) -> Result<u64, OracleError> {
    Ok(brute_phi_all(g)?.into_iter().max().unwrap_or(0))
}

/// Exact bandwidth by depth-first placement with branch and bound.
pub fn brute_bandwidth(g: &Graph) -> Result<u64, OracleError> {
    let n = require(g, "bandwidth search", BANDWIDTH_VERTEX_CAP)?;
    let mut search = BandwidthSearch {
        g,
        position: vec![usize::MAX; n],
        best: n.saturating_sub(1),
    };
    if n > 1 {
        // Strictly improve on the trivial bound n − 1.
        search.best = n;
        search.place(0, 0);
    }
    Ok(search.best as u64)
}

struct BandwidthSearch<'a> {
    g: &'a Graph,
    position: Vec<usize>,
    best: usize,
}

impl BandwidthSearch<'_> {
    fn place(&mut self, pos: usize, stretch: usize) {
        let n = self.position.len();
        if pos == n {
            self.best = stretch;
            return;
        }
        for v in 0..n {
            if self.position[v] != usize::MAX {
                continue;
            }
            let local = self.g.adjacency[v]
                .iter()
                .filter(|&&u| self.position[u] != usize::MAX)
                .map(|&u| pos - self.position[u])
                .max()
                .unwrap_or(0);
            let new_stretch = stretch.max(local);
            if new_stretch >= self.best {
                continue;
            }
            self.position[v] = pos;
            // The earliest placed vertex with an unplaced neighbor bounds how
            // far the next positions may run.
            let oldest_open = (0..n)
                .filter(|&u| {
                    self.position[u] != usize::MAX
                        && self.g.adjacency[u].iter().any(|&w| self.position[w] == usize::MAX)
                })
                .map(|u| self.position[u])
                .min();
            if oldest_open.is_none_or(|p| pos + 1 - p < self.best) {
                self.place(pos + 1, new_stretch);
            }
            self.position[v] = usize::MAX;
        }
    }
}

/// Exact pathwidth as the vertex separation number, minimized by a DP over
/// vertex subsets taken as layout prefixes.
pub fn brute_pathwidth(g: &Graph) -> Result<u64, OracleError> {
    let n = require(g, "pathwidth search", PATHWIDTH_VERTEX_CAP)?;
    let masks: Vec<u32> = g
        .adjacency
        .iter()
        .map(|list| list.iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let full = (1u32 << n) - 1;
    let mut best = vec![u8::MAX; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        // Prefix vertices that still have a neighbor to their right.
        let open = (0..n)
            .filter(|&u| set >> u & 1 == 1 && masks[u] & !set != 0)
            .count() as u8;
        let mut value = u8::MAX;
        let mut rest = set;
        while rest != 0 {
            let last = rest.trailing_zeros();
            rest &= rest - 1;
            value = value.min(best[(set & !(1 << last)) as usize]);
        }
        best[set as usize] = value.max(open);
    }
    Ok(best[full as usize] as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::factor(FactorKind::Path, n).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::factor(FactorKind::Cycle, n).unwrap()
    }

    fn sorted_edges(g: &Graph) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        g.for_each_edge(&mut |u, v| e.push((u, v)));
        e
    }

    #[test]
    fn factors() {
        assert_eq!(sorted_edges(&path(2)), vec![(0, 1)]);
        assert_eq!(sorted_edges(&cycle(3)), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(sorted_edges(&cycle(4)), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(
            Graph::factor(FactorKind::Path, 1),
            Err(OracleError::FactorTooSmall { kind: FactorKind::Path, n: 1, min: 2 })
        );
        assert!(Graph::factor(FactorKind::Cycle, 2).is_err());
    }

    #[test]
    fn products() {
        let c4 = cartesian_product(&path(2), &path(2)).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!((0..4).all(|v| c4.neighbors(v).len() == 2));

        let p23 = cartesian_product(&path(2), &path(3)).unwrap();
        assert_eq!((p23.vertex_count(), p23.edge_count()), (6, 7));

        let t = cartesian_product(&cycle(4), &cycle(4)).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (16, 32));
        assert!((0..16).all(|v| t.neighbors(v).len() == 4));
        assert_eq!(t.labels().unwrap()[6], vec![1, 2]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(0, &[]), Err(OracleError::Empty));
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(OracleError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(OracleError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(OracleError::EdgeOutOfRange { .. })
        ));
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_vbw(&split), Err(OracleError::Disconnected));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(brute_phi(&path(4), 2), Ok(1));
        // The star around a corner of Q3 has only three outside neighbors.
        let q3 = Graph::grid(&[2, 2, 2]).unwrap();
        assert_eq!(brute_phi(&q3, 4), Ok(3));
        assert_eq!(brute_phi_all(&q3), Ok(vec![0, 3, 4, 4, 3, 3, 2, 1, 0]));
        assert_eq!(brute_phi(&cycle(6), 3), Ok(2));
        assert_eq!(brute_phi(&path(4), 0), Err(OracleError::KOutOfRange { k: 0, n: 4 }));
    }

    /// Reference Φ by plain subset enumeration without the Gray-code counter.
    fn naive_phi(g: &Graph) -> Vec<u64> {
        let n = g.vertex_count();
        let mut best = vec![u64::MAX; n + 1];
        for set in 0u32..1 << n {
            let b = (0..n)
                .filter(|&v| set >> v & 1 == 0 && g.neighbors(v).iter().any(|&u| set >> u & 1 == 1))
                .count() as u64;
            let k = set.count_ones() as usize;
            best[k] = best[k].min(b);
        }
        best
    }

    #[test]
    fn gray_code_matches_naive_enumeration() {
        for g in [
            Graph::grid(&[3, 4]).unwrap(),
            Graph::torus(&[3, 4]).unwrap(),
            Graph::grid(&[2, 2, 3]).unwrap(),
            cycle(9),
        ] {
            assert_eq!(brute_phi_all(&g).unwrap(), naive_phi(&g));
        }
    }

    #[test]
    fn vbw_examples() {
        assert_eq!(brute_vbw(&path(5)), Ok(1));
        assert_eq!(brute_vbw(&Graph::grid(&[2, 2, 2, 2]).unwrap()), Ok(7));
        assert_eq!(brute_vbw(&Graph::torus(&[4, 4]).unwrap()), Ok(7));
    }

    #[test]
    fn bandwidth_examples() {
        assert_eq!(brute_bandwidth(&path(5)), Ok(1));
        assert_eq!(brute_bandwidth(&Graph::grid(&[3, 3]).unwrap()), Ok(3));
        assert_eq!(brute_bandwidth(&Graph::grid(&[2, 2, 2]).unwrap()), Ok(4));
        assert_eq!(brute_bandwidth(&cycle(6)), Ok(2));
        assert_eq!(brute_bandwidth(&Graph::grid(&[1]).unwrap()), Ok(0));
        // K4: every ordering puts the ends of some edge three apart.
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(brute_bandwidth(&k4), Ok(3));
        assert!(matches!(
            brute_bandwidth(&Graph::grid(&[11]).unwrap()),
            Err(OracleError::OverCap { cap: BANDWIDTH_VERTEX_CAP, .. })
        ));
    }

    #[test]
    fn pathwidth_examples() {
        assert_eq!(brute_pathwidth(&path(5)), Ok(1));
        assert_eq!(brute_pathwidth(&cycle(6)), Ok(2));
        assert_eq!(brute_pathwidth(&Graph::grid(&[2, 2, 3]).unwrap()), Ok(4));
        assert_eq!(brute_pathwidth(&Graph::grid(&[1]).unwrap()), Ok(0));
        // A star has pathwidth 1 but bandwidth ⌈leaves / 2⌉.
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(brute_pathwidth(&star), Ok(1));
        assert_eq!(brute_bandwidth(&star), Ok(2));
    }

    #[test]
    fn sandwich_on_small_graphs() {
        let graphs = [
            Graph::grid(&[2, 4]).unwrap(),
            Graph::grid(&[3, 3]).unwrap(),
            Graph::torus(&[3, 3]).unwrap(),
            cycle(7),
            Graph::product_of([(FactorKind::Cycle, 3), (FactorKind::Path, 3)]).unwrap(),
        ];
        for g in &graphs {
            let (v, p, b) = (
                brute_vbw(g).unwrap(),
                brute_pathwidth(g).unwrap(),
                brute_bandwidth(g).unwrap(),
            );
            assert!(v <= p && p <= b, "{v} {p} {b}");
        }
    }
}
