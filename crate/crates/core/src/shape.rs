//! Grid shapes, vertices, and the simplicial order.
//!
//! A [`GridShape`] is the normalized form of a user-supplied list of path
//! lengths: factors of size one are dropped and the rest are sorted
//! ascending, with the permutation back to the caller's axis order kept
//! alongside. Every vertex handled by this crate is expressed in the sorted
//! axis order; [`GridShape::to_user_order`] converts at the edges.
//!
//! The simplicial order sorts vertices by weight (coordinate sum) and breaks
//! ties anti-lexicographically: among equal weights, the vertex with the
//! larger coordinate at the first differing axis comes first.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("a grid needs at least one factor")]
    EmptyShape,
    #[error("factor {axis} has size 0")]
    ZeroFactor { axis: usize },
    #[error("vertex count overflows 64 bits")]
    TooManyVertices,
    #[error("vertex has {found} coordinates, shape has {expected} axes")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate {value} on axis {axis} is outside 0..{size}")]
    CoordinateOutOfRange { axis: usize, value: usize, size: usize },
    #[error("vertex id {id} is outside 0..{num_vertices}")]
    IdOutOfRange { id: u64, num_vertices: u64 },
}

/// A normalized grid `P_{n_1} □ … □ P_{n_d}` with `2 ≤ n_1 ≤ … ≤ n_d`.
///
/// The all-ones input normalizes to the single-vertex shape, which has no
/// axes at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridShape {
    dims: Vec<usize>,
    /// `input_perm[i]` is the caller's axis index of sorted axis `i`.
    input_perm: Vec<usize>,
    input_rank: usize,
    num_vertices: u64,
    strides: Vec<u64>,
}

impl GridShape {
    pub fn new(input: &[usize]) -> Result<Self, GridError> {
        if input.is_empty() {
            return Err(GridError::EmptyShape);
        }
        if let Some(axis) = input.iter().position(|&n| n == 0) {
            return Err(GridError::ZeroFactor { axis });
        }
        let mut axes: Vec<(usize, usize)> = input
            .iter()
            .enumerate()
            .filter(|&(_, &n)| n > 1)
            .map(|(axis, &n)| (n, axis))
            .collect();
        axes.sort_unstable();
        let dims: Vec<usize> = axes.iter().map(|&(n, _)| n).collect();
        let input_perm = axes.iter().map(|&(_, axis)| axis).collect();

        let mut strides = vec![0u64; dims.len()];
        let mut acc: u64 = 1;
        for (stride, &n) in strides.iter_mut().zip(&dims).rev() {
            *stride = acc;
            acc = acc
                .checked_mul(n as u64)
                .ok_or(GridError::TooManyVertices)?;
        }
        Ok(Self {
            dims,
            input_perm,
            input_rank: input.len(),
            num_vertices: acc,
            strides,
        })
    }

    /// Sorted factor sizes.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    pub fn num_vertices(&self) -> u64 {
        self.num_vertices
    }

    pub fn input_perm(&self) -> &[usize] {
        &self.input_perm
    }

    /// Number of axes the caller supplied, including dropped unit factors.
    pub fn input_rank(&self) -> usize {
        self.input_rank
    }

    pub fn is_single_vertex(&self) -> bool {
        self.dims.is_empty()
    }

    /// Weight of the last vertex, `Σ (n_i − 1)`.
    pub fn max_weight(&self) -> usize {
        self.dims.iter().map(|n| n - 1).sum()
    }

    pub(crate) fn strides(&self) -> &[u64] {
        &self.strides
    }

    pub fn check(&self, v: &Vertex) -> Result<(), GridError> {
        check_coords(&self.dims, &v.0)
    }

    /// Reorders sorted-axis coordinates into the caller's axis order,
    /// filling dropped unit axes with 0.
    pub fn to_user_order(&self, coords: &[usize]) -> Vec<usize> {
        let mut out = vec![0; self.input_rank];
        for (&axis, &c) in self.input_perm.iter().zip(coords) {
            out[axis] = c;
        }
        out
    }

    /// Inverse of [`GridShape::to_user_order`].
    pub fn from_user_order(&self, user: &[usize]) -> Result<Vertex, GridError> {
        if user.len() != self.input_rank {
            return Err(GridError::DimensionMismatch {
                expected: self.input_rank,
                found: user.len(),
            });
        }
        // Unit axes only admit coordinate 0.
        for (axis, &c) in user.iter().enumerate() {
            if c != 0 && !self.input_perm.contains(&axis) {
                return Err(GridError::CoordinateOutOfRange { axis, value: c, size: 1 });
            }
        }
        let v = Vertex(self.input_perm.iter().map(|&axis| user[axis]).collect());
        self.check(&v)?;
        Ok(v)
    }

    pub fn first_vertex(&self) -> Vertex {
        Vertex(vec![0; self.dims.len()])
    }

    /// Compares two vertices under the simplicial order.
    pub fn simplicial_cmp(&self, u: &Vertex, v: &Vertex) -> Result<Ordering, GridError> {
        self.check(u)?;
        self.check(v)?;
        Ok(simplicial_cmp_coords(&u.0, &v.0))
    }

    /// The immediate successor of `v` in the simplicial order, or `None` for
    /// the last vertex.
    pub fn simplicial_successor(&self, v: &Vertex) -> Result<Option<Vertex>, GridError> {
        self.check(v)?;
        let mut next = v.clone();
        Ok(advance_simplicial(&mut next.0, &self.dims).then_some(next))
    }

    /// Iterates every vertex in simplicial order.
    pub fn simplicial_order(&self) -> SimplicialIter<'_> {
        SimplicialIter {
            dims: &self.dims,
            next: Some(self.first_vertex()),
        }
    }

    /// All vertices `v ± e_k` inside the grid, axis by axis.
    pub fn neighbors(&self, v: &Vertex) -> Result<Vec<Vertex>, GridError> {
        self.check(v)?;
        let mut out = Vec::with_capacity(2 * self.dims.len());
        for (axis, &n) in self.dims.iter().enumerate() {
            let c = v.0[axis];
            if c > 0 {
                let mut u = v.clone();
                u.0[axis] -= 1;
                out.push(u);
            }
            if c + 1 < n {
                let mut u = v.clone();
                u.0[axis] += 1;
                out.push(u);
            }
        }
        Ok(out)
    }

    /// Most-significant-first mixed-radix id of `v`.
    pub fn vertex_id(&self, v: &Vertex) -> Result<u64, GridError> {
        self.check(v)?;
        Ok(self.id_of(&v.0))
    }

    pub fn id_vertex(&self, id: u64) -> Result<Vertex, GridError> {
        if id >= self.num_vertices {
            return Err(GridError::IdOutOfRange {
                id,
                num_vertices: self.num_vertices,
            });
        }
        Ok(Vertex(
            self.strides
                .iter()
                .zip(&self.dims)
                .map(|(&s, &n)| ((id / s) % n as u64) as usize)
                .collect(),
        ))
    }

    pub(crate) fn id_of(&self, coords: &[usize]) -> u64 {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as u64 * s)
            .sum()
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return f.write_str("P1");
        }
        for (i, n) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "P{n}")?;
        }
        Ok(())
    }
}

/// A grid vertex in sorted-axis coordinates, 0-based per axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn new(coords: Vec<usize>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }
}

impl From<Vec<usize>> for Vertex {
    fn from(coords: Vec<usize>) -> Self {
        Self(coords)
    }
}

pub struct SimplicialIter<'a> {
    dims: &'a [usize],
    next: Option<Vertex>,
}

impl Iterator for SimplicialIter<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if advance_simplicial(&mut succ.0, self.dims) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

fn check_coords(dims: &[usize], coords: &[usize]) -> Result<(), GridError> {
    if coords.len() != dims.len() {
        return Err(GridError::DimensionMismatch {
            expected: dims.len(),
            found: coords.len(),
        });
    }
    for (axis, (&c, &n)) in coords.iter().zip(dims).enumerate() {
        if c >= n {
            return Err(GridError::CoordinateOutOfRange { axis, value: c, size: n });
        }
    }
    Ok(())
}

/// Simplicial comparison on raw coordinate slices of equal length.
pub fn simplicial_cmp_coords(u: &[usize], v: &[usize]) -> Ordering {
    let wu: usize = u.iter().sum();
    let wv: usize = v.iter().sum();
    wu.cmp(&wv).then_with(|| {
        u.iter()
            .zip(v)
            .find(|(a, b)| a != b)
            .map_or(Ordering::Equal, |(a, b)| b.cmp(a))
    })
}

/// Steps `coords` to its simplicial successor in place. Returns `false`
/// (leaving `coords` untouched) at the last vertex.
pub(crate) fn advance_simplicial(coords: &mut [usize], dims: &[usize]) -> bool {
    // Walking right to left, `cap` and `sum` describe the suffix after `j`.
    let mut cap = 0usize;
    let mut sum = 0usize;
    for j in (0..coords.len()).rev() {
        if coords[j] > 0 && sum < cap {
            coords[j] -= 1;
            fill_greedy(&mut coords[j + 1..], &dims[j + 1..], sum + 1);
            return true;
        }
        cap += dims[j] - 1;
        sum += coords[j];
    }
    if sum >= cap {
        return false;
    }
    fill_greedy(coords, dims, sum + 1);
    true
}

/// Writes the anti-lexicographically first vertex of weight `weight`.
fn fill_greedy(coords: &mut [usize], dims: &[usize], mut weight: usize) {
    for (c, &n) in coords.iter_mut().zip(dims) {
        *c = weight.min(n - 1);
        weight -= *c;
    }
    debug_assert_eq!(weight, 0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn v(c: &[usize]) -> Vertex {
        Vertex(c.to_vec())
    }

    #[test]
    fn weight_examples() {
        assert_eq!(v(&[0, 0, 0]).weight(), 0);
        assert_eq!(v(&[1, 1, 2]).weight(), 4);
        let s = GridShape::new(&[2, 3, 3]).unwrap();
        let last = v(&[1, 2, 2]);
        assert_eq!(last.weight(), s.max_weight());
    }

    #[test]
    fn cmp_examples() {
        let s = GridShape::new(&[2, 3, 3]).unwrap();
        assert_eq!(s.simplicial_cmp(&v(&[1, 0, 0]), &v(&[0, 1, 0])), Ok(Ordering::Less));
        assert_eq!(s.simplicial_cmp(&v(&[1, 1, 1]), &v(&[1, 0, 2])), Ok(Ordering::Less));
        assert_eq!(s.simplicial_cmp(&v(&[0, 2, 2]), &v(&[0, 2, 2])), Ok(Ordering::Equal));
        assert_eq!(
            s.simplicial_cmp(&v(&[0, 0]), &v(&[0, 0, 0])),
            Err(GridError::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn successor_examples() {
        let s = GridShape::new(&[2, 3, 3]).unwrap();
        assert_eq!(s.simplicial_successor(&v(&[0, 0, 1])), Ok(Some(v(&[1, 1, 0]))));
        assert_eq!(s.simplicial_successor(&v(&[1, 2, 2])), Ok(None));
        let p = GridShape::new(&[4]).unwrap();
        assert_eq!(p.simplicial_successor(&v(&[0])), Ok(Some(v(&[1]))));
        assert!(s.simplicial_successor(&v(&[2, 0, 0])).is_err());
    }

    #[test]
    fn order_matches_published_sequence() {
        let s = GridShape::new(&[2, 3, 3]).unwrap();
        let expected: [[usize; 3]; 18] = [
            [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1],
            [0, 2, 0], [0, 1, 1], [0, 0, 2], [1, 2, 0], [1, 1, 1], [1, 0, 2],
            [0, 2, 1], [0, 1, 2], [1, 2, 1], [1, 1, 2], [0, 2, 2], [1, 2, 2],
        ];
        let got: Vec<Vertex> = s.simplicial_order().collect();
        let want: Vec<Vertex> = expected.iter().map(|c| v(c)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn neighbor_examples() {
        let s = GridShape::new(&[2, 3, 3]).unwrap();
        let set = |vs: Vec<Vertex>| vs.into_iter().collect::<HashSet<_>>();
        assert_eq!(
            set(s.neighbors(&v(&[0, 0, 0])).unwrap()),
            set(vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])])
        );
        // Brute force: all vertices at L1 distance one.
        let center = v(&[0, 1, 1]);
        let brute: HashSet<Vertex> = s
            .simplicial_order()
            .filter(|u| {
                u.0.iter()
                    .zip(&center.0)
                    .map(|(&a, &b)| a.abs_diff(b))
                    .sum::<usize>()
                    == 1
            })
            .collect();
        assert_eq!(set(s.neighbors(&center).unwrap()), brute);
        assert_eq!(brute.len(), 5);
        let p = GridShape::new(&[4]).unwrap();
        assert_eq!(set(p.neighbors(&v(&[1])).unwrap()), set(vec![v(&[0]), v(&[2])]));
    }

    #[test]
    fn id_examples() {
        let s = GridShape::new(&[2, 3, 3]).unwrap();
        assert_eq!(s.vertex_id(&v(&[0, 0, 0])), Ok(0));
        assert_eq!(s.vertex_id(&v(&[1, 2, 2])), Ok(17));
        // 0·9 + 1·3 + 2·1
        assert_eq!(s.vertex_id(&v(&[0, 1, 2])), Ok(5));
        assert_eq!(s.id_vertex(5), Ok(v(&[0, 1, 2])));
        assert_eq!(
            s.id_vertex(18),
            Err(GridError::IdOutOfRange { id: 18, num_vertices: 18 })
        );
    }

    #[test]
    fn normalization() {
        let s = GridShape::new(&[3, 1, 2]).unwrap();
        assert_eq!(s.dims(), &[2, 3]);
        assert_eq!(s.input_perm(), &[2, 0]);
        assert_eq!(s.num_vertices(), 6);
        assert_eq!(s.to_user_order(&[1, 2]), vec![2, 0, 1]);
        assert_eq!(s.from_user_order(&[2, 0, 1]), Ok(v(&[1, 2])));
        assert!(s.from_user_order(&[2, 1, 1]).is_err());

        let one = GridShape::new(&[1, 1]).unwrap();
        assert!(one.is_single_vertex());
        assert_eq!(one.num_vertices(), 1);
        assert_eq!(one.simplicial_order().count(), 1);

        assert_eq!(GridShape::new(&[]), Err(GridError::EmptyShape));
        assert_eq!(GridShape::new(&[3, 0]), Err(GridError::ZeroFactor { axis: 1 }));
        assert_eq!(
            GridShape::new(&[1 << 32, 1 << 32]),
            Err(GridError::TooManyVertices)
        );
    }

    #[test]
    fn enumeration_is_sorted_and_exhaustive() {
        for dims in [
            &[2usize, 3, 3][..],
            &[7],
            &[2, 2, 2, 2, 2, 2],
            &[3, 4, 5],
            &[4, 4, 6, 6],
            &[2, 5, 10, 10],
            &[100, 100],
        ] {
            let s = GridShape::new(dims).unwrap();
            let all: Vec<Vertex> = s.simplicial_order().collect();
            assert_eq!(all.len() as u64, s.num_vertices());
            for w in all.windows(2) {
                assert_eq!(simplicial_cmp_coords(&w[0].0, &w[1].0), Ordering::Less);
            }
            let ids: HashSet<u64> = all.iter().map(|u| s.vertex_id(u).unwrap()).collect();
            assert_eq!(ids.len(), all.len());
            // Grid edges join consecutive weight classes.
            for u in &all {
                for n in s.neighbors(u).unwrap() {
                    if simplicial_cmp_coords(&u.0, &n.0) == Ordering::Less {
                        assert_eq!(n.weight(), u.weight() + 1);
                    }
                }
            }
        }
    }
}
