//! Seeded random two-mode networks for experiments and stress tests.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::network::{BipartiteNetwork, LinkKind};
use crate::scalar::Scalar;

/// Link placement model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenModel {
    /// Exactly `m` links, uniform over distinct node pairs.
    UniformPairs,
    /// Expected `m` links with power-law expected degrees of exponent
    /// `gamma` on both modes.
    ChungLu { gamma: f64 },
}

/// Link weight distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightDist {
    /// Every link weighs 1.
    Unit,
    /// Uniform real weights in `[lo, hi)`.
    Uniform { lo: f64, hi: f64 },
    /// Uniform integer weights in `[lo, hi]`, exact in floating point.
    Integer { lo: u64, hi: u64 },
}

/// Everything needed to reproduce one generated network.
#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub n1: usize,
    pub n2: usize,
    /// Exact link count for [`GenModel::UniformPairs`], expected count for
    /// [`GenModel::ChungLu`].
    pub m: usize,
    pub model: GenModel,
    pub weights: WeightDist,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("cannot place {m} distinct links between {n1} and {n2} nodes")]
    Infeasible { n1: usize, n2: usize, m: usize },
    #[error("weight range is empty or not finite")]
    BadWeightRange,
    #[error("power-law exponent must exceed 1")]
    BadExponent,
}

/// Generates a seeded random two-mode network with labels `u0..` and `v0..`.
pub fn generate<S: Scalar>(spec: &GenSpec) -> Result<BipartiteNetwork<S>, GenError> {
    match spec.weights {
        WeightDist::Uniform { lo, hi } => {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                return Err(GenError::BadWeightRange);
            }
        }
        WeightDist::Integer { lo, hi } => {
            if lo == 0 || hi < lo {
                return Err(GenError::BadWeightRange);
            }
        }
        WeightDist::Unit => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pairs = match spec.model {
        GenModel::UniformPairs => sample_uniform_pairs(spec, &mut rng)?,
        GenModel::ChungLu { gamma } => sample_chung_lu(spec, gamma, &mut rng)?,
    };
    let links = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = draw_weight::<S>(spec.weights, &mut rng);
            (u, spec.n1 + v, w, LinkKind::Undirected)
        })
        .collect();
    let labels = (0..spec.n1)
        .map(|i| format!("u{i}"))
        .chain((0..spec.n2).map(|j| format!("v{j}")))
        .collect();
    Ok(BipartiteNetwork::new(spec.n1, spec.n2, Some(labels), links, None)
        .expect("generated links are valid by construction"))
}

fn draw_weight<S: Scalar>(dist: WeightDist, rng: &mut ChaCha8Rng) -> S {
    let w = match dist {
        WeightDist::Unit => 1.0,
        WeightDist::Uniform { lo, hi } => rng.random_range(lo..hi),
        WeightDist::Integer { lo, hi } => rng.random_range(lo..=hi) as f64,
    };
    S::from_f64(w).expect("weight fits the scalar type")
}

// Sparse Fisher-Yates over the implicit n1 x n2 pair grid: draws exactly m
// distinct cells without materializing the grid.
fn sample_uniform_pairs(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>, GenError> {
    let total = spec
        .n1
        .checked_mul(spec.n2)
        .ok_or(GenError::Infeasible { n1: spec.n1, n2: spec.n2, m: spec.m })?;
    if spec.m > total {
        return Err(GenError::Infeasible { n1: spec.n1, n2: spec.n2, m: spec.m });
    }
    let mut displaced: HashMap<usize, usize> = HashMap::new();
    let cell = |i: usize, displaced: &HashMap<usize, usize>| -> usize {
        *displaced.get(&i).unwrap_or(&i)
    };
    let mut pairs = Vec::with_capacity(spec.m);
    for i in 0..spec.m {
        let j = rng.random_range(i..total);
        let chosen = cell(j, &displaced);
        let filler = cell(i, &displaced);
        displaced.insert(j, filler);
        pairs.push((chosen / spec.n2, chosen % spec.n2));
    }
    Ok(pairs)
}

// Bipartite expected-degree model: node weights follow a power law with
// exponent gamma, scaled so both modes sum to m; each pair links with
// probability min(1, w1[i] * w2[j] / m).
fn sample_chung_lu(
    spec: &GenSpec,
    gamma: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>, GenError> {
    if !gamma.is_finite() || gamma <= 1.0 {
        return Err(GenError::BadExponent);
    }
    if spec.n1 == 0 || spec.n2 == 0 || spec.m == 0 {
        return Ok(Vec::new());
    }
    let exponent = -1.0 / (gamma - 1.0);
    let side = |n: usize| -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(exponent)).collect();
        let sum: f64 = raw.iter().sum();
        let scale = spec.m as f64 / sum;
        raw.into_iter().map(|w| w * scale).collect()
    };
    let w1 = side(spec.n1);
    let w2 = side(spec.n2);
    let mut pairs = Vec::new();
    for (i, wi) in w1.iter().enumerate() {
        for (j, wj) in w2.iter().enumerate() {
            let prob = (wi * wj / spec.m as f64).min(1.0);
            if rng.random_bool(prob) {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs)
}
