//! Cooperative resource limits for the exact searches.
//!
//! A search that runs out of budget stops at the next check and reports partial bounds.
//! The node limit is deterministic; the optional wall-clock deadline is not, so reproducible
//! runs should rely on node limits only.

use std::cell::Cell;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    nodes: Cell<u64>,
}

/// Returned by a search that hit its budget before finishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interrupted;

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_time(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
            ..Budget::default()
        }
    }

    pub fn with_nodes(limit: u64) -> Self {
        Budget {
            node_limit: Some(limit),
            ..Budget::default()
        }
    }

    pub fn and_time(mut self, limit: Option<Duration>) -> Self {
        self.deadline = limit.map(|l| Instant::now() + l);
        self
    }

    pub fn and_nodes(mut self, limit: Option<u64>) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn is_unlimited(&self) -> bool {
        self.deadline.is_none() && self.node_limit.is_none()
    }

    pub fn nodes_used(&self) -> u64 {
        self.nodes.get()
    }

    /// Counts one search node. Fails once the node limit or deadline is passed.
    #[inline]
    pub fn tick(&self) -> Result<(), Interrupted> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        if let Some(limit) = self.node_limit {
            if n > limit {
                return Err(Interrupted);
            }
        }
        if n & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Interrupted);
                }
            }
        }
        Ok(())
    }

    pub fn exhausted(&self) -> bool {
        self.node_limit.is_some_and(|l| self.nodes.get() > l) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_trips() {
        let b = Budget::with_nodes(3);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert_eq!(b.tick(), Err(Interrupted));
        assert!(b.exhausted());
    }

    #[test]
    fn unlimited_never_trips() {
        let b = Budget::unlimited();
        for _ in 0..5000 {
            b.tick().unwrap();
        }
        assert_eq!(b.nodes_used(), 5000);
    }
}
