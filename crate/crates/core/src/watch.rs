//! Incremental monochromatic-edge detection shared by the coloring and alternation searches.

use crate::hypercore::Hypergraph;

/// For every (edge, class) pair, the number of assigned vertices of the edge in that class.
/// Putting `v` in class `c` would complete a monochromatic edge exactly when some edge
/// through `v` already has all its other vertices in `c`.
pub(crate) struct EdgeWatch<'a> {
    h: &'a Hypergraph,
    t: usize,
    counts: Vec<u32>,
}

impl<'a> EdgeWatch<'a> {
    pub(crate) fn new(h: &'a Hypergraph, t: usize) -> Self {
        EdgeWatch {
            h,
            t,
            counts: vec![0; h.edge_count() * t],
        }
    }

    #[inline]
    pub(crate) fn allows(&self, v: usize, c: usize) -> bool {
        self.h
            .incident_edges(v)
            .iter()
            .all(|&e| self.counts[e * self.t + c] as usize + 1 != self.h.edge(e).len())
    }

    #[inline]
    pub(crate) fn assign(&mut self, v: usize, c: usize) {
        for &e in self.h.incident_edges(v) {
            self.counts[e * self.t + c] += 1;
        }
    }

    #[inline]
    pub(crate) fn unassign(&mut self, v: usize, c: usize) {
        for &e in self.h.incident_edges(v) {
            self.counts[e * self.t + c] -= 1;
        }
    }
}
