//! Level vectors: per-node drop-out thresholds at a fixed opposite bound.
//!
//! Holding the mode-1 threshold at `p`, every node leaves the core at some
//! largest surviving value of the mode-2 threshold. The level vector `T`
//! records it: `{v : T[v] >= q}` equals `Core(p, q)`, so one sweep answers
//! every `q` at once. Nodes outside `Core(p, 0)` carry no level.
//!
//! One sweep costs little more than a single peel: each node is popped once
//! and the running level only moves up.

use crate::heap::IndexedMinHeap;
use crate::network::{BipartiteNetwork, Mode, NodeId, NodeSubset};
use crate::properties::{evaluate, update_after_removal, PropertyFunction};
use crate::scalar::Scalar;

/// Drop-out levels for every node at one fixed threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelVector<S> {
    /// Mode whose threshold was held fixed.
    pub fixed_mode: Mode,
    /// The fixed threshold value.
    pub threshold: S,
    /// `levels[v]` is the largest opposite threshold keeping `v` in the
    /// core; `None` marks nodes outside the core at opposite threshold 0.
    pub levels: Vec<Option<S>>,
}

impl<S: Scalar> LevelVector<S> {
    pub fn level(&self, v: NodeId) -> Option<S> {
        self.levels[v.0]
    }

    /// Largest level present, `None` when no node has one.
    pub fn max_level(&self) -> Option<S> {
        self.levels
            .iter()
            .flatten()
            .copied()
            .fold(None, |acc, x| Some(acc.map_or(x, |a: S| a.max(x))))
    }

    /// Distinct levels in ascending order.
    pub fn attained_levels(&self) -> Vec<S> {
        let mut out: Vec<S> = self.levels.iter().flatten().copied().collect();
        out.sort_by(|a, b| a.partial_cmp(b).expect("levels are never NaN"));
        out.dedup();
        out
    }

    /// Members of the core at opposite threshold `q`, read off the levels.
    pub fn members_at_least(&self, net: &BipartiteNetwork<S>, q: S) -> NodeSubset {
        NodeSubset::from_indices(
            net,
            net.nodes().filter(|v| self.levels[v.0].is_some_and(|t| t >= q)),
        )
    }

    /// Core sizes per mode at each attained level, ascending.
    pub fn size_curve(&self, net: &BipartiteNetwork<S>) -> Vec<SizePoint<S>> {
        self.attained_levels()
            .into_iter()
            .map(|q| {
                let members = self.members_at_least(net, q);
                SizePoint {
                    q,
                    size1: members.size(Mode::One),
                    size2: members.size(Mode::Two),
                }
            })
            .collect()
    }

    /// Pajek vector file: one level per node, `-1` for nodes without one.
    pub fn to_vec_format(&self) -> String {
        let mut out = format!("*vertices {}\n", self.levels.len());
        for level in &self.levels {
            match level {
                Some(t) => out.push_str(&format!("{t}\n")),
                None => out.push_str("-1\n"),
            }
        }
        out
    }

    /// CSV with one `label,mode,level` row per node.
    pub fn to_csv(&self, net: &BipartiteNetwork<S>) -> String {
        let mut out = String::from("label,mode,level\n");
        for v in net.nodes() {
            let mode = match net.mode_of(v) {
                Mode::One => 1,
                Mode::Two => 2,
            };
            match self.levels[v.0] {
                Some(t) => out.push_str(&format!("{},{},{}\n", net.label(v), mode, t)),
                None => out.push_str(&format!("{},{},-1\n", net.label(v), mode)),
            }
        }
        out
    }
}

/// Core sizes at one threshold value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizePoint<S> {
    pub q: S,
    pub size1: usize,
    pub size2: usize,
}

/// CSV with one `q,size1,size2` row per attained level.
pub fn size_curve_csv<S: Scalar>(points: &[SizePoint<S>]) -> String {
    let mut out = String::from("q,size1,size2\n");
    for pt in points {
        out.push_str(&format!("{},{},{}\n", pt.q, pt.size1, pt.size2));
    }
    out
}

/// Computes drop-out levels in the mode-2 threshold while mode 1 is held at
/// `f(v, C) >= p`.
///
/// Mode-1 nodes below `p` on the full network can never satisfy it and leave
/// unleveled. The sweep then pops mode-2 nodes in value order, raising the
/// running level to each popped value; every pop may cascade mode-1 nodes
/// below `p`, which leave at the current level. Stale heap entries at or
/// below the running level are left alone: their true value can only be
/// smaller, and both pop into the same level.
pub fn core_levels<S: Scalar>(
    net: &BipartiteNetwork<S>,
    p: S,
    f: &PropertyFunction<S>,
    g: &PropertyFunction<S>,
) -> LevelVector<S> {
    let mut c = NodeSubset::full(net);
    let mut levels: Vec<Option<S>> = vec![None; net.n()];
    let mut heap1 = IndexedMinHeap::new(
        net.n(),
        net.mode_nodes(Mode::One)
            .map(|v| (v, evaluate(net, f, v, &c))),
    );
    let mut heap2 = IndexedMinHeap::new(
        net.n(),
        net.mode_nodes(Mode::Two)
            .map(|v| (v, evaluate(net, g, v, &c))),
    );
    let mut q = S::zero();

    // Removing mode-1 nodes cannot change other mode-1 values, so the
    // initial prune is a single pass.
    while let Some((v, value)) = heap1.peek() {
        if value >= p {
            break;
        }
        heap1.pop();
        c.remove(v);
        for nb in net.neighbors(v) {
            if let Some(old) = heap2.value(nb.id) {
                if old > q {
                    heap2.update(nb.id, update_after_removal(net, g, nb.id, v, &c, old));
                }
            }
        }
    }

    while let Some((v2, value)) = heap2.pop() {
        q = q.max(value);
        levels[v2.0] = Some(q);
        c.remove(v2);
        for nb in net.neighbors(v2) {
            if let Some(old) = heap1.value(nb.id) {
                heap1.update(nb.id, update_after_removal(net, f, nb.id, v2, &c, old));
            }
        }
        while let Some((v1, value)) = heap1.peek() {
            if value >= p {
                break;
            }
            heap1.pop();
            levels[v1.0] = Some(q);
            c.remove(v1);
            for nb in net.neighbors(v1) {
                if let Some(old) = heap2.value(nb.id) {
                    if old > q {
                        heap2.update(nb.id, update_after_removal(net, g, nb.id, v1, &c, old));
                    }
                }
            }
        }
    }

    // Mode-1 survivors meet p even on an empty neighborhood (as at p = 0,
    // or below an affine transform's offset) and stay in the core at every
    // remaining threshold. They take the top attained level; an empty
    // second mode still leaves them level 0.
    let floor = q.max(S::zero());
    while let Some((v1, _)) = heap1.pop() {
        levels[v1.0] = Some(floor);
    }

    LevelVector {
        fixed_mode: Mode::One,
        threshold: p,
        levels,
    }
}

/// Computes drop-out levels in the mode-1 threshold while mode 2 is held at
/// `g(v, C) >= q`, by sweeping the mirrored network.
pub fn core_levels_mirrored<S: Scalar>(
    net: &BipartiteNetwork<S>,
    q: S,
    f: &PropertyFunction<S>,
    g: &PropertyFunction<S>,
) -> LevelVector<S> {
    let mirror = net.mirror();
    let swept = core_levels(&mirror, q, g, f);
    let mut levels = vec![None; net.n()];
    for v in net.nodes() {
        levels[v.0] = swept.levels[net.mirror_index(v).0];
    }
    LevelVector {
        fixed_mode: Mode::Two,
        threshold: q,
        levels,
    }
}
