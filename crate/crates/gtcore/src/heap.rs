//! Indexed binary min-heap over node values.
//!
//! Peeling needs three operations beyond a plain priority queue: peek at the
//! minimum, remove the minimum, and lower or raise the value of an arbitrary
//! node still inside the heap. Keys are `(value, node id)` so ties break on
//! the smaller id and every run is deterministic.

use crate::network::NodeId;
use crate::scalar::Scalar;

const ABSENT: usize = usize::MAX;

/// Min-heap keyed by `(value, node id)` with positional lookup by node.
#[derive(Clone, Debug)]
pub struct IndexedMinHeap<S> {
    entries: Vec<(NodeId, S)>,
    pos: Vec<usize>,
}

impl<S: Scalar> IndexedMinHeap<S> {
    /// Builds a heap over `(node, value)` pairs in linear time. Node ids may
    /// span `0..universe` even if only some appear.
    pub fn new(universe: usize, items: impl IntoIterator<Item = (NodeId, S)>) -> Self {
        let mut heap = IndexedMinHeap {
            entries: Vec::new(),
            pos: vec![ABSENT; universe],
        };
        for (id, value) in items {
            assert!(id.0 < universe, "node id out of range");
            assert_eq!(heap.pos[id.0], ABSENT, "duplicate node in heap");
            heap.pos[id.0] = heap.entries.len();
            heap.entries.push((id, value));
        }
        for i in (0..heap.entries.len() / 2).rev() {
            heap.sift_down(i);
        }
        heap
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.pos.get(id.0).is_some_and(|&p| p != ABSENT)
    }

    /// Current value of a node still inside the heap.
    pub fn value(&self, id: NodeId) -> Option<S> {
        let p = *self.pos.get(id.0)?;
        if p == ABSENT {
            None
        } else {
            Some(self.entries[p].1)
        }
    }

    /// Smallest `(node, value)` without removing it.
    pub fn peek(&self) -> Option<(NodeId, S)> {
        self.entries.first().copied()
    }

    /// Removes and returns the smallest `(node, value)`.
    pub fn pop(&mut self) -> Option<(NodeId, S)> {
        if self.entries.is_empty() {
            return None;
        }
        let root = self.entries[0];
        self.pos[root.0 .0] = ABSENT;
        let last = self.entries.pop().expect("nonempty");
        if !self.entries.is_empty() {
            self.entries[0] = last;
            self.pos[last.0 .0] = 0;
            self.sift_down(0);
        }
        Some(root)
    }

    /// Sets a member's value and restores heap order in either direction.
    pub fn update(&mut self, id: NodeId, value: S) {
        let p = self.pos[id.0];
        assert_ne!(p, ABSENT, "update of a node not in the heap");
        let old = self.entries[p].1;
        self.entries[p].1 = value;
        if key(value, id) < key(old, id) {
            self.sift_up(p);
        } else {
            self.sift_down(p);
        }
    }

    /// Nodes currently in the heap, in arbitrary order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, S)> + '_ {
        self.entries.iter().copied()
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.key_at(i) < self.key_at(parent) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let mut best = i;
            for child in [2 * i + 1, 2 * i + 2] {
                if child < self.entries.len() && self.key_at(child) < self.key_at(best) {
                    best = child;
                }
            }
            if best == i {
                return;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn key_at(&self, i: usize) -> (S, usize) {
        let (id, value) = self.entries[i];
        key(value, id)
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.entries.swap(i, j);
        self.pos[self.entries[i].0 .0] = i;
        self.pos[self.entries[j].0 .0] = j;
    }
}

// Values come from monotone property functions and are never NaN, so the
// partial order on (value, id) is total here.
fn key<S: Scalar>(value: S, id: NodeId) -> (S, usize) {
    (value, id.0)
}
