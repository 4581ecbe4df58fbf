//! Core extraction by heap-based peeling.
//!
//! `Core(p, q; f, g)` is the largest member set whose induced values satisfy
//! `f(v, C) >= p` on mode 1 and `g(v, C) >= q` on mode 2. For monotonic
//! functions it is unique and equals the union of all feasible sets, so any
//! removal order reaches it; the heaps here just reach it fastest by always
//! discarding a current minimum and touching only its neighbors.

use serde_json::json;

use crate::heap::IndexedMinHeap;
use crate::network::{BipartiteNetwork, Mode, NodeId, NodeSubset};
use crate::properties::{evaluate, update_after_removal, PropertyFunction};
use crate::scalar::Scalar;

/// Thresholds and property functions selecting a core.
#[derive(Clone, Copy, Debug)]
pub struct CoreQuery<S> {
    /// Mode-1 threshold.
    pub p: S,
    /// Mode-2 threshold.
    pub q: S,
    /// Mode-1 property function.
    pub f: PropertyFunction<S>,
    /// Mode-2 property function.
    pub g: PropertyFunction<S>,
}

impl<S: Scalar> CoreQuery<S> {
    pub fn new(p: S, q: S, f: PropertyFunction<S>, g: PropertyFunction<S>) -> Self {
        CoreQuery { p, q, f, g }
    }

    /// Threshold and function governing one mode.
    pub fn side(&self, mode: Mode) -> (S, &PropertyFunction<S>) {
        match mode {
            Mode::One => (self.p, &self.f),
            Mode::Two => (self.q, &self.g),
        }
    }
}

/// One peeled node together with its value at removal time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Removal<S> {
    pub node: NodeId,
    pub value: S,
}

/// A computed core plus the removal trace that produced it.
#[derive(Clone, Debug)]
pub struct CoreResult<S> {
    pub query: CoreQuery<S>,
    pub core: NodeSubset,
    /// Peeled nodes in removal order.
    pub removed: Vec<Removal<S>>,
}

impl<S: Scalar> CoreResult<S> {
    pub fn size(&self, mode: Mode) -> usize {
        self.core.size(mode)
    }

    /// Membership as a `.clu` partition: 1 inside the core, 0 outside.
    pub fn to_clu(&self, net: &BipartiteNetwork<S>) -> String {
        let mut out = format!("*vertices {}\n", net.n());
        for v in net.nodes() {
            out.push_str(if self.core.contains(v) { "1\n" } else { "0\n" });
        }
        out
    }

    pub fn to_json_string(&self, net: &BipartiteNetwork<S>) -> String {
        let labels = |mode: Mode| -> Vec<&str> {
            net.mode_nodes(mode)
                .filter(|&v| self.core.contains(v))
                .map(|v| net.label(v))
                .collect()
        };
        let removed: Vec<_> = self
            .removed
            .iter()
            .map(|r| {
                json!({
                    "node": net.label(r.node),
                    "value": r.value.to_f64(),
                })
            })
            .collect();
        let doc = json!({
            "p": self.query.p.to_f64(),
            "q": self.query.q.to_f64(),
            "f": self.query.f.to_string(),
            "g": self.query.g.to_string(),
            "core1": labels(Mode::One),
            "core2": labels(Mode::Two),
            "removed": removed,
        });
        serde_json::to_string_pretty(&doc).expect("core result serializes")
    }
}

/// Computes `Core(p, q; f, g)` by alternating heap peeling.
pub fn compute_core<S: Scalar>(net: &BipartiteNetwork<S>, query: &CoreQuery<S>) -> CoreResult<S> {
    peel(net, query, false).0
}

/// Like [`compute_core`], but also reports the largest absolute gap between
/// maintained heap values and fresh evaluations, checked at every pop and on
/// all survivors.
pub fn compute_core_audited<S: Scalar>(
    net: &BipartiteNetwork<S>,
    query: &CoreQuery<S>,
) -> (CoreResult<S>, f64) {
    peel(net, query, true)
}

fn peel<S: Scalar>(
    net: &BipartiteNetwork<S>,
    query: &CoreQuery<S>,
    audit: bool,
) -> (CoreResult<S>, f64) {
    let mut c = NodeSubset::full(net);
    let mut heaps = [
        IndexedMinHeap::new(
            net.n(),
            net.mode_nodes(Mode::One)
                .map(|v| (v, evaluate(net, &query.f, v, &c))),
        ),
        IndexedMinHeap::new(
            net.n(),
            net.mode_nodes(Mode::Two)
                .map(|v| (v, evaluate(net, &query.g, v, &c))),
        ),
    ];
    let mut removed = Vec::new();
    let mut drift = 0.0f64;
    let mut gap = |maintained: S, fresh: S| {
        let d = (maintained.to_f64().unwrap_or(f64::NAN) - fresh.to_f64().unwrap_or(f64::NAN)).abs();
        drift = drift.max(d);
    };
    loop {
        let mut changed = false;
        for mode in [Mode::One, Mode::Two] {
            let (threshold, func) = query.side(mode);
            let (_, other_func) = query.side(mode.other());
            while let Some((v, value)) = heaps[mode as usize].peek() {
                if value >= threshold {
                    break;
                }
                heaps[mode as usize].pop();
                if audit {
                    gap(value, evaluate(net, func, v, &c));
                }
                c.remove(v);
                removed.push(Removal { node: v, value });
                changed = true;
                let other = &mut heaps[mode.other() as usize];
                for nb in net.neighbors(v) {
                    if let Some(old) = other.value(nb.id) {
                        other.update(nb.id, update_after_removal(net, other_func, nb.id, v, &c, old));
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if audit {
        for mode in [Mode::One, Mode::Two] {
            let (_, func) = query.side(mode);
            for (v, value) in heaps[mode as usize].iter().collect::<Vec<_>>() {
                gap(value, evaluate(net, func, v, &c));
            }
        }
    }
    (
        CoreResult {
            query: *query,
            core: c,
            removed,
        },
        drift,
    )
}

/// Removal priority for the reference peeler.
#[derive(Clone, Copy, Debug)]
pub enum DeletionOrder {
    /// Always delete the violating node with the smallest id.
    Ascending,
    /// Always delete the violating node with the largest id.
    Descending,
    /// Delete violators by a seeded random priority.
    Shuffled(u64),
}

/// Reference peeler: rescans all members, deletes one violator at a time in
/// the requested order. Quadratic, order-insensitive in its result, and kept
/// as an independent check on the heap implementation.
pub fn naive_core<S: Scalar>(
    net: &BipartiteNetwork<S>,
    query: &CoreQuery<S>,
    order: DeletionOrder,
) -> NodeSubset {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let n = net.n();
    let mut rank: Vec<usize> = (0..n).collect();
    match order {
        DeletionOrder::Ascending => {}
        DeletionOrder::Descending => rank.reverse(),
        DeletionOrder::Shuffled(seed) => {
            rank.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        }
    }
    let mut c = NodeSubset::full(net);
    loop {
        let mut victim: Option<NodeId> = None;
        for v in c.iter() {
            let (threshold, func) = query.side(net.mode_of(v));
            if evaluate(net, func, v, &c) < threshold
                && victim.is_none_or(|b| rank[v.0] < rank[b.0])
            {
                victim = Some(v);
            }
        }
        match victim {
            Some(v) => c.remove(v),
            None => break,
        }
    }
    c
}

/// True when every member of `c` meets its mode's threshold inside `c`.
pub fn satisfies_thresholds<S: Scalar>(
    net: &BipartiteNetwork<S>,
    query: &CoreQuery<S>,
    c: &NodeSubset,
) -> bool {
    c.iter().all(|v| {
        let (threshold, func) = query.side(net.mode_of(v));
        evaluate(net, func, v, c) >= threshold
    })
}
