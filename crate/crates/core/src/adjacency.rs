use crate::shape::GridShape;

/// Read-only adjacency over vertex ids `0..vertex_count()`.
///
/// Implemented by [`GridShape`] (ids per the mixed-radix encoding) and by
/// the oracle's [`Graph`](crate::oracle::Graph), so verifiers work on both.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;

    fn for_each_neighbor(&self, v: usize, f: &mut dyn FnMut(usize));

    /// Calls `f(u, v)` once per edge with `u < v`.
    fn for_each_edge(&self, f: &mut dyn FnMut(usize, usize)) {
        for u in 0..self.vertex_count() {
            self.for_each_neighbor(u, &mut |v| {
                if u < v {
                    f(u, v)
                }
            });
        }
    }
}

impl Adjacency for GridShape {
    fn vertex_count(&self) -> usize {
        self.num_vertices() as usize
    }

    fn for_each_neighbor(&self, v: usize, f: &mut dyn FnMut(usize)) {
        let id = v as u64;
        for (&stride, &n) in self.strides().iter().zip(self.dims()) {
            let c = (id / stride) % n as u64;
            if c > 0 {
                f((id - stride) as usize);
            }
            if c + 1 < n as u64 {
                f((id + stride) as usize);
            }
        }
    }
}
