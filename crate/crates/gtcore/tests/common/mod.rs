//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles compute cores as the union of all feasible subsets, straight
//! from the definition and without any peeling, so they cannot share a bug
//! with the algorithms under test.

// Each integration test binary compiles this module but uses its own subset.
#![allow(dead_code)]

use gtcore::{
    evaluate, CoreQuery, LinkKind, Mode, Network, NodeId, NodeSubset, PropertyFunction,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TOY_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/toy.net");

pub fn toy() -> Network {
    Network::load_pajek(include_str!("../data/toy.net").as_bytes()).expect("toy fixture parses")
}

pub fn pf(spec: &str) -> PropertyFunction<f64> {
    spec.parse().expect("valid property function")
}

/// Labels of the subset members, in node order.
pub fn labels(net: &Network, c: &NodeSubset) -> Vec<String> {
    c.iter().map(|v| net.label(v).to_string()).collect()
}

/// Random Bernoulli-linked network with the given side bounds. Weights are
/// small integers (exact in floating point) unless `real_weights`; a
/// `directed` network mixes all three link kinds.
pub fn random_net(
    rng: &mut ChaCha8Rng,
    max_n1: usize,
    max_n2: usize,
    real_weights: bool,
    directed: bool,
) -> Network {
    let n1 = rng.random_range(1..=max_n1);
    let n2 = rng.random_range(1..=max_n2);
    let density = rng.random_range(0.15..0.75);
    let mut raw = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            if rng.random_bool(density) {
                let w = if real_weights {
                    rng.random_range(0.25..4.0)
                } else {
                    rng.random_range(1..=9) as f64
                };
                let kind = if directed {
                    match rng.random_range(0..3) {
                        0 => LinkKind::FromFirst,
                        1 => LinkKind::FromSecond,
                        _ => LinkKind::Undirected,
                    }
                } else {
                    LinkKind::Undirected
                };
                raw.push((u, n1 + v, w, kind));
            }
        }
    }
    Network::new(n1, n2, None, raw, None).expect("generated links are valid")
}

/// Degree-threshold core as the union of all feasible subsets, in pure
/// bitmask arithmetic.
pub fn bitmask_core_deg(net: &Network, p: usize, q: usize) -> NodeSubset {
    let n = net.n();
    assert!(n <= 20, "bitmask oracle is exponential in node count");
    let adj: Vec<u32> = net
        .nodes()
        .map(|v| {
            net.neighbors(v)
                .iter()
                .fold(0u32, |acc, nb| acc | 1 << nb.id.0)
        })
        .collect();
    let need: Vec<u32> = net
        .nodes()
        .map(|v| match net.mode_of(v) {
            Mode::One => p as u32,
            Mode::Two => q as u32,
        })
        .collect();
    let mut union = 0u32;
    for mask in 0u32..(1u32 << n) {
        if mask & !union == 0 {
            continue;
        }
        let feasible = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .all(|i| (adj[i] & mask).count_ones() >= need[i]);
        if feasible {
            union |= mask;
        }
    }
    NodeSubset::from_indices(net, (0..n).filter(|i| union >> i & 1 == 1).map(NodeId))
}

/// General-function core as the union of all feasible subsets, with every
/// membership test done by fresh evaluation.
pub fn subset_union_core(net: &Network, query: &CoreQuery<f64>) -> NodeSubset {
    let n = net.n();
    assert!(n <= 16, "subset oracle is exponential in node count");
    let mut union = NodeSubset::empty(net);
    for mask in 0u32..(1u32 << n) {
        let candidate: Vec<NodeId> = (0..n).filter(|i| mask >> i & 1 == 1).map(NodeId).collect();
        if candidate.iter().all(|v| union.contains(*v)) {
            continue;
        }
        let c = NodeSubset::from_indices(net, candidate.iter().copied());
        let feasible = candidate.iter().all(|&v| {
            let (threshold, func) = query.side(net.mode_of(v));
            evaluate(net, func, v, &c) >= threshold
        });
        if feasible {
            for v in candidate {
                union.insert(v);
            }
        }
    }
    union
}
