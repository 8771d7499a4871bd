//! Exact boundary profile of a grid by one pass over the simplicial order.
//!
//! Because the simplicial order is isoperimetric for grids, the boundary of
//! the first `k` vertices is as small as the boundary of any `k`-set, so the
//! profile `|∂(I_k)|` computed here is the vertex isoperimetric function
//! itself and its maximum is the vertex boundary width (which for grids is
//! also the pathwidth and the bandwidth).
//!
//! State is two bitmaps over vertex ids (in-prefix, in-boundary) plus a
//! running count, so a sweep over `N` vertices needs about `N / 4` bytes.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::shape::{advance_simplicial, simplicial_cmp_coords, GridShape};

/// Default working-memory budget for a sweep, 2 GiB.
pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("sweep needs {required} bytes of working memory but the cap is {cap}")]
    MemoryCap { required: u64, cap: u64 },
    #[error("{0} vertices do not fit this platform's address space")]
    TooLarge(u64),
    #[error("sweep invariant violated: {0}")]
    Invariant(InvariantViolation),
}

/// A broken structural property of the profile, found by [`InvariantMonitor`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("step {k}: added vertex was not on the boundary of the previous prefix")]
    NotOnBoundary { k: u64 },
    #[error("step {k}: boundary changed by {delta}, more than the dimension {dimension}")]
    StepTooLarge { k: u64, delta: i64, dimension: usize },
    #[error("step {k} (weight {weight}): boundary decreased below the growth threshold")]
    LowWeightDecrease { k: u64, weight: usize },
    #[error("step {k} (weight {weight}): boundary increased above the shrink threshold")]
    HighWeightIncrease { k: u64, weight: usize },
    #[error("step {k} (weight {weight}): boundary moved against the weight-class peak")]
    PeakDirection { k: u64, weight: usize },
    #[error("the full vertex set has boundary {0}, expected 0")]
    NonEmptyFinalBoundary(u64),
}

/// `|∂(I_k)|` for `k = 0..=N` along the simplicial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryProfile {
    shape: GridShape,
    values: Vec<u64>,
    vbw: u64,
    argmax_k: u64,
}

impl BoundaryProfile {
    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    /// Indexed by `k`; `values()[0] == 0` and `values()[N] == 0`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn vbw(&self) -> u64 {
        self.vbw
    }

    /// Smallest `k ≥ 1` with `values()[k] == vbw()`.
    pub fn argmax_k(&self) -> u64 {
        self.argmax_k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    pub vbw: u64,
    pub argmax_k: u64,
    pub num_vertices: u64,
}

/// What happened when the `k`-th vertex joined the prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub k: u64,
    pub id: u64,
    pub weight: usize,
    /// Whether the vertex was on the boundary of `I_{k-1}`.
    pub was_boundary: bool,
    /// Neighbors that entered the boundary at this step.
    pub entered: usize,
    /// `|∂(I_k)|`.
    pub boundary: u64,
}

/// Incremental walk over the simplicial order maintaining `∂(I_k)`.
pub struct Sweeper<'a> {
    shape: &'a GridShape,
    in_prefix: BitSet,
    in_boundary: BitSet,
    coords: Vec<usize>,
    k: u64,
    boundary: u64,
}

impl<'a> Sweeper<'a> {
    /// Bytes of bitmap state a sweep over `shape` allocates.
    pub fn required_bytes(shape: &GridShape) -> u64 {
        2 * BitSet::bytes_for(shape.num_vertices())
    }

    pub fn new(shape: &'a GridShape, memory_cap: u64) -> Result<Self, SweepError> {
        Self::with_extra(shape, memory_cap, 0)
    }

    fn with_extra(shape: &'a GridShape, memory_cap: u64, extra: u64) -> Result<Self, SweepError> {
        let n = shape.num_vertices();
        let len = usize::try_from(n).map_err(|_| SweepError::TooLarge(n))?;
        let required = Self::required_bytes(shape).saturating_add(extra);
        if required > memory_cap {
            return Err(SweepError::MemoryCap { required, cap: memory_cap });
        }
        Ok(Self {
            shape,
            in_prefix: BitSet::new(len),
            in_boundary: BitSet::new(len),
            coords: vec![0; shape.dimension()],
            k: 0,
            boundary: 0,
        })
    }

    pub fn shape(&self) -> &GridShape {
        self.shape
    }

    /// Coordinates of the most recently added vertex.
    pub fn vertex(&self) -> &[usize] {
        &self.coords
    }

    pub fn boundary_len(&self) -> u64 {
        self.boundary
    }

    /// Whether `id` is currently in `∂(I_k)`.
    pub fn on_boundary(&self, id: u64) -> bool {
        self.in_boundary.contains(id as usize)
    }

    /// Adds the next vertex, reporting each id that enters the boundary.
    pub fn step(&mut self, mut on_enter: impl FnMut(u64)) -> Option<Step> {
        if self.k == self.shape.num_vertices()
            || (self.k > 0 && !advance_simplicial(&mut self.coords, self.shape.dims()))
        {
            return None;
        }
        let id = self.shape.id_of(&self.coords);
        let was_boundary = self.in_boundary.remove(id as usize);
        if was_boundary {
            self.boundary -= 1;
        }
        self.in_prefix.insert(id as usize);

        let mut entered = 0;
        let dims = self.shape.dims();
        for (axis, &stride) in self.shape.strides().iter().enumerate() {
            let c = self.coords[axis];
            let below = (c > 0).then(|| id - stride);
            let above = (c + 1 < dims[axis]).then(|| id + stride);
            for nb in below.into_iter().chain(above) {
                if !self.in_prefix.contains(nb as usize) && self.in_boundary.insert(nb as usize) {
                    entered += 1;
                    on_enter(nb);
                }
            }
        }
        self.boundary += entered as u64;
        self.k += 1;
        Some(Step {
            k: self.k,
            id,
            weight: self.coords.iter().sum(),
            was_boundary,
            entered,
            boundary: self.boundary,
        })
    }
}

/// Checks the profile's structural properties step by step.
///
/// For every grid: each added vertex after the first was already on the
/// boundary (so the profile moves by `entered − 1`), and no step moves the
/// profile by more than the dimension. For 3D grids additionally:
/// the profile never decreases while the added weight is below `n₃ − 1`,
/// never increases once the weight reaches `n₁ + n₂ − 2`, and in between it
/// rises up to `(w − n₂ + 2, n₂ − 2, 0)` within each weight class and falls
/// after it.
#[derive(Debug, Clone)]
pub struct InvariantMonitor {
    dimension: usize,
    dims3: Option<[usize; 3]>,
    prev: u64,
}

impl InvariantMonitor {
    pub fn new(shape: &GridShape) -> Self {
        let dims = shape.dims();
        Self {
            dimension: dims.len(),
            dims3: (dims.len() == 3).then(|| [dims[0], dims[1], dims[2]]),
            prev: 0,
        }
    }

    pub fn observe(&mut self, step: &Step, coords: &[usize]) -> Result<(), InvariantViolation> {
        let k = step.k;
        let prev = self.prev;
        self.prev = step.boundary;

        if k >= 2 && !step.was_boundary {
            return Err(InvariantViolation::NotOnBoundary { k });
        }
        let delta = step.boundary as i64 - prev as i64;
        if delta.unsigned_abs() > self.dimension as u64 {
            return Err(InvariantViolation::StepTooLarge {
                k,
                delta,
                dimension: self.dimension,
            });
        }

        let Some([n1, n2, n3]) = self.dims3 else {
            return Ok(());
        };
        let w = step.weight;
        let rising = step.boundary >= prev;
        let falling = step.boundary <= prev;
        if w + 1 < n3 && !rising {
            return Err(InvariantViolation::LowWeightDecrease { k, weight: w });
        }
        if w + 2 >= n1 + n2 && !falling {
            return Err(InvariantViolation::HighWeightIncrease { k, weight: w });
        }
        if w + 1 >= n3 && w + 2 < n1 + n2 {
            let peak = [w + 2 - n2, n2 - 2, 0];
            let ok = match simplicial_cmp_coords(coords, &peak) {
                Ordering::Greater => falling,
                _ => rising,
            };
            if !ok {
                return Err(InvariantViolation::PeakDirection { k, weight: w });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Checks {
    /// Monitor in debug builds only; violations panic.
    Debug,
    /// Always monitor; violations are returned.
    Always,
}

fn run(
    shape: &GridShape,
    memory_cap: u64,
    extra_bytes: u64,
    checks: Checks,
    mut on_value: impl FnMut(u64, u64),
) -> Result<SweepSummary, SweepError> {
    let mut sweeper = Sweeper::with_extra(shape, memory_cap, extra_bytes)?;
    let monitor_on = checks == Checks::Always || cfg!(debug_assertions);
    let mut monitor = InvariantMonitor::new(shape);
    let mut summary = SweepSummary {
        vbw: 0,
        argmax_k: 1,
        num_vertices: shape.num_vertices(),
    };
    on_value(0, 0);
    while let Some(step) = sweeper.step(|_| {}) {
        if monitor_on {
            if let Err(v) = monitor.observe(&step, sweeper.vertex()) {
                match checks {
                    Checks::Always => return Err(SweepError::Invariant(v)),
                    Checks::Debug => panic!("sweep invariant violated on {shape}: {v}"),
                }
            }
        }
        if step.boundary > summary.vbw {
            summary.vbw = step.boundary;
            summary.argmax_k = step.k;
        }
        on_value(step.k, step.boundary);
    }
    if sweeper.boundary_len() != 0 {
        let v = InvariantViolation::NonEmptyFinalBoundary(sweeper.boundary_len());
        match checks {
            Checks::Always => return Err(SweepError::Invariant(v)),
            Checks::Debug => panic!("sweep invariant violated on {shape}: {v}"),
        }
    }
    Ok(summary)
}

/// Streams `(k, |∂(I_k)|)` for `k = 0..=N` to `on_value` without storing
/// the profile.
pub fn sweep_with(
    shape: &GridShape,
    memory_cap: u64,
    on_value: impl FnMut(u64, u64),
) -> Result<SweepSummary, SweepError> {
    run(shape, memory_cap, 0, Checks::Debug, on_value)
}

/// The vertex boundary width of `shape` (equal to its pathwidth and
/// bandwidth), keeping only the running maximum.
pub fn vbw_sweep(shape: &GridShape, memory_cap: u64) -> Result<u64, SweepError> {
    sweep_with(shape, memory_cap, |_, _| {}).map(|s| s.vbw)
}

fn record(shape: &GridShape, memory_cap: u64, checks: Checks) -> Result<BoundaryProfile, SweepError> {
    let n = shape.num_vertices();
    let profile_bytes = n.saturating_add(1).saturating_mul(8);
    let mut values = Vec::new();
    let summary = run(shape, memory_cap, profile_bytes, checks, |k, b| {
        if k == 0 {
            values.reserve_exact(n as usize + 1);
        }
        values.push(b);
    })?;
    Ok(BoundaryProfile {
        shape: shape.clone(),
        values,
        vbw: summary.vbw,
        argmax_k: summary.argmax_k,
    })
}

/// The full boundary profile. `memory_cap` covers the bitmaps and the
/// recorded values.
pub fn sweep_profile(shape: &GridShape, memory_cap: u64) -> Result<BoundaryProfile, SweepError> {
    record(shape, memory_cap, Checks::Debug)
}

/// Like [`sweep_profile`] but runs the [`InvariantMonitor`] in every build
/// and reports violations as [`SweepError::Invariant`].
pub fn sweep_profile_checked(
    shape: &GridShape,
    memory_cap: u64,
) -> Result<BoundaryProfile, SweepError> {
    record(shape, memory_cap, Checks::Always)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_phi_all, Graph};

    fn shape(d: &[usize]) -> GridShape {
        GridShape::new(d).unwrap()
    }

    fn vbw(d: &[usize]) -> u64 {
        vbw_sweep(&shape(d), DEFAULT_MEMORY_CAP).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p = sweep_profile(&shape(&[2]), DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(p.values(), &[0, 1, 0]);
        assert_eq!(p.vbw(), 1);
        assert_eq!(p.argmax_k(), 1);

        assert_eq!(vbw(&[3, 3, 3]), 8);
        assert_eq!(vbw(&[2, 3, 3]), 6);
        assert_eq!(vbw(&[3, 4, 4]), 11);
        assert_eq!(vbw(&[2, 2, 2, 2]), 7);
    }

    #[test]
    fn cube_matches_exhaustive_minimum() {
        let g = Graph::grid(&[2, 2, 2]).unwrap();
        let brute = brute_phi_all(&g).unwrap();
        assert_eq!(brute.iter().max(), Some(&4));
        assert_eq!(vbw(&[2, 2, 2]), 4);
    }

    #[test]
    fn single_vertex() {
        let p = sweep_profile(&shape(&[1, 1, 1]), DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(p.values(), &[0, 0]);
        assert_eq!(p.vbw(), 0);
        assert_eq!(p.argmax_k(), 1);
    }

    #[test]
    fn memory_cap_is_enforced() {
        let s = shape(&[10, 10, 10]);
        let err = sweep_profile(&s, 100).unwrap_err();
        // Two 1000-bit bitmaps (16 words) plus 1001 recorded values.
        assert_eq!(err, SweepError::MemoryCap { required: 2 * 128 + 8008, cap: 100 });
        assert_eq!(
            vbw_sweep(&s, 255),
            Err(SweepError::MemoryCap { required: 256, cap: 255 })
        );
        assert_eq!(vbw_sweep(&s, 256), Ok(vbw(&[10, 10, 10])));
    }

    #[test]
    fn checked_sweep_passes_on_3d_grids() {
        for dims in [[2, 3, 3], [3, 4, 4], [5, 6, 9], [4, 4, 6], [2, 2, 7]] {
            let p = sweep_profile_checked(&shape(&dims), DEFAULT_MEMORY_CAP).unwrap();
            assert_eq!(*p.values().last().unwrap(), 0);
        }
    }

    #[test]
    fn monitor_flags_forged_steps() {
        let s = shape(&[3, 3, 3]);
        let mut m = InvariantMonitor::new(&s);
        let first = Step { k: 1, id: 0, weight: 0, was_boundary: false, entered: 3, boundary: 3 };
        assert_eq!(m.observe(&first, &[0, 0, 0]), Ok(()));
        let off = Step { k: 2, id: 9, weight: 1, was_boundary: false, entered: 2, boundary: 5 };
        assert_eq!(m.observe(&off, &[1, 0, 0]), Err(InvariantViolation::NotOnBoundary { k: 2 }));

        let mut m = InvariantMonitor::new(&s);
        m.observe(&first, &[0, 0, 0]).unwrap();
        let drop = Step { k: 2, id: 9, weight: 1, was_boundary: true, entered: 0, boundary: 2 };
        assert_eq!(
            m.observe(&drop, &[1, 0, 0]),
            Err(InvariantViolation::LowWeightDecrease { k: 2, weight: 1 })
        );
    }

    #[test]
    fn small_profiles_match_oracle() {
        for dims in [&[2usize, 3][..], &[3, 3], &[2, 2, 3], &[5], &[2, 5]] {
            let g = Graph::grid(dims).unwrap();
            let brute = brute_phi_all(&g).unwrap();
            let p = sweep_profile(&shape(dims), DEFAULT_MEMORY_CAP).unwrap();
            assert_eq!(p.values(), &brute[..], "{dims:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn profile_is_permutation_invariant(
                dims in proptest::collection::vec(1usize..6, 1..5),
                seed in any::<u64>(),
            ) {
                let mut shuffled = dims.clone();
                let len = shuffled.len();
                let mut state = seed;
                for i in (1..len).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    shuffled.swap(i, (state >> 33) as usize % (i + 1));
                }
                let a = sweep_profile(&shape(&dims), DEFAULT_MEMORY_CAP).unwrap();
                let b = sweep_profile(&shape(&shuffled), DEFAULT_MEMORY_CAP).unwrap();
                prop_assert_eq!(a.values(), b.values());
            }

            #[test]
            fn steps_are_bounded_by_dimension(dims in proptest::collection::vec(2usize..7, 1..5)) {
                let p = sweep_profile(&shape(&dims), DEFAULT_MEMORY_CAP).unwrap();
                let d = dims.len() as u64;
                prop_assert_eq!(p.values()[0], 0);
                prop_assert_eq!(*p.values().last().unwrap(), 0);
                for w in p.values().windows(2) {
                    prop_assert!(w[0].abs_diff(w[1]) <= d);
                }
                prop_assert_eq!(p.values()[p.argmax_k() as usize], p.vbw());
                prop_assert!(p.values()[..p.argmax_k() as usize].iter().all(|&x| x < p.vbw()));
            }
        }
    }
}
