//! Node property functions evaluated on induced subnetworks.
//!
//! A property function assigns `f(v, C)` to a node given the current member
//! set `C`; cores are defined by thresholding these values. Every function in
//! the catalogue is local (it depends only on `v`'s neighborhood inside `C`)
//! and monotonic (it cannot grow when `C` shrinks), which is what makes
//! greedy peeling reach the unique maximal core. Values on an empty
//! neighborhood are 0.
//!
//! Catalogue ids: `deg`, `indeg`, `outdeg`, `inoutdeg`, `wdeg`, `mweight`,
//! `pdeg`, `density`, `degrange`, `tdegrange`, `pweight`, `triangles`,
//! `sumt`, `maxt`. A function may be wrapped in a strictly increasing
//! transform, written `affine:a,b(base)` (meaning `a*x + b`, `a > 0`,
//! `b >= 0`) or `square(base)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{BipartiteNetwork, NodeId, NodeSubset};
use crate::scalar::Scalar;

/// Base property functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PropertyKind {
    /// Induced degree.
    Degree,
    /// Induced in-degree; undirected links count in both directions.
    InDegree,
    /// Induced out-degree; undirected links count in both directions.
    OutDegree,
    /// Induced in-degree plus out-degree.
    InOutDegree,
    /// Sum of link weights into the member set.
    WeightedDegree,
    /// Largest link weight into the member set.
    MaxWeight,
    /// Induced degree as a fraction of global degree.
    ProportionDegree,
    /// Induced degree over the largest global degree in the neighborhood.
    Density,
    /// Spread of global degrees over member neighbors.
    DegreeRange,
    /// Spread of global degrees over member neighbors and the node itself.
    TotalDegreeRange,
    /// Induced weighted degree as a fraction of global weighted degree.
    ProportionWeight,
    /// Triangles through the node with both other corners in the member set.
    Triangles,
    /// Sum of neighbor measurements over the member set.
    MeasurementSum,
    /// Largest neighbor measurement over the member set.
    MeasurementMax,
}

/// How expensive one incremental update is after a neighbor removal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateCost {
    /// Constant-time arithmetic on the maintained value.
    Constant,
    /// Rescan of the remaining neighborhood.
    Degree,
}

pub const ALL_KINDS: [PropertyKind; 14] = [
    PropertyKind::Degree,
    PropertyKind::InDegree,
    PropertyKind::OutDegree,
    PropertyKind::InOutDegree,
    PropertyKind::WeightedDegree,
    PropertyKind::MaxWeight,
    PropertyKind::ProportionDegree,
    PropertyKind::Density,
    PropertyKind::DegreeRange,
    PropertyKind::TotalDegreeRange,
    PropertyKind::ProportionWeight,
    PropertyKind::Triangles,
    PropertyKind::MeasurementSum,
    PropertyKind::MeasurementMax,
];

impl PropertyKind {
    pub fn id(self) -> &'static str {
        match self {
            PropertyKind::Degree => "deg",
            PropertyKind::InDegree => "indeg",
            PropertyKind::OutDegree => "outdeg",
            PropertyKind::InOutDegree => "inoutdeg",
            PropertyKind::WeightedDegree => "wdeg",
            PropertyKind::MaxWeight => "mweight",
            PropertyKind::ProportionDegree => "pdeg",
            PropertyKind::Density => "density",
            PropertyKind::DegreeRange => "degrange",
            PropertyKind::TotalDegreeRange => "tdegrange",
            PropertyKind::ProportionWeight => "pweight",
            PropertyKind::Triangles => "triangles",
            PropertyKind::MeasurementSum => "sumt",
            PropertyKind::MeasurementMax => "maxt",
        }
    }

    pub fn update_cost(self) -> UpdateCost {
        match self {
            PropertyKind::MaxWeight
            | PropertyKind::DegreeRange
            | PropertyKind::TotalDegreeRange
            | PropertyKind::Triangles
            | PropertyKind::MeasurementMax => UpdateCost::Degree,
            _ => UpdateCost::Constant,
        }
    }

    /// Needs arc orientation to be meaningful on its own.
    pub fn wants_directions(self) -> bool {
        matches!(
            self,
            PropertyKind::InDegree | PropertyKind::OutDegree | PropertyKind::InOutDegree
        )
    }
}

impl FromStr for PropertyKind {
    type Err = PropertyError;

    fn from_str(s: &str) -> Result<Self, PropertyError> {
        ALL_KINDS
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| PropertyError::UnknownId { id: s.to_string() })
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Strictly increasing rescaling applied on top of a base function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Transform<S> {
    /// `a*x + b` with `a > 0`, `b >= 0`.
    Affine { a: S, b: S },
    /// `x*x`; base values are nonnegative, so this is increasing.
    Square,
}

impl<S: Scalar> Transform<S> {
    pub fn apply(&self, x: S) -> S {
        match *self {
            Transform::Affine { a, b } => a * x + b,
            Transform::Square => x * x,
        }
    }
}

/// A catalogue function, optionally rescaled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyFunction<S> {
    pub kind: PropertyKind,
    pub transform: Option<Transform<S>>,
}

#[derive(Debug, Error)]
pub enum PropertyError {
    #[error("unknown property function `{id}`")]
    UnknownId { id: String },
    #[error("malformed transform `{text}`, expected affine:a,b(base) or square(base)")]
    BadTransform { text: String },
    #[error("transform parameters out of range: need a > 0 and b >= 0")]
    TransformRange,
    #[error("`{id}` needs arc directions but the network has none")]
    MissingDirections { id: String },
}

impl<S: Scalar> PropertyFunction<S> {
    pub fn new(kind: PropertyKind) -> Self {
        PropertyFunction {
            kind,
            transform: None,
        }
    }

    pub fn with_transform(kind: PropertyKind, transform: Transform<S>) -> Self {
        PropertyFunction {
            kind,
            transform: Some(transform),
        }
    }

    /// All catalogue functions stay local; transforms only map values.
    pub fn is_local(&self) -> bool {
        true
    }

    /// All catalogue functions are monotonic and transforms are increasing.
    pub fn is_monotonic(&self) -> bool {
        true
    }

    /// Transformed functions are recomputed by rescanning, so they lose the
    /// constant-time update of their base.
    pub fn update_cost(&self) -> UpdateCost {
        if self.transform.is_some() {
            UpdateCost::Degree
        } else {
            self.kind.update_cost()
        }
    }

    /// In strict-directed mode, reject direction-based functions on networks
    /// without arcs instead of falling back to the reciprocal reading.
    pub fn validate_for(
        &self,
        net: &BipartiteNetwork<S>,
        strict_directed: bool,
    ) -> Result<(), PropertyError> {
        if strict_directed && self.kind.wants_directions() && !net.has_directed_info() {
            return Err(PropertyError::MissingDirections {
                id: self.kind.id().to_string(),
            });
        }
        Ok(())
    }
}

impl<S: Scalar> FromStr for PropertyFunction<S> {
    type Err = PropertyError;

    fn from_str(s: &str) -> Result<Self, PropertyError> {
        let s = s.trim();
        if let Ok(kind) = PropertyKind::from_str(s) {
            return Ok(PropertyFunction::new(kind));
        }
        let bad = || PropertyError::BadTransform {
            text: s.to_string(),
        };
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let base = rest.strip_suffix(')').ok_or_else(bad)?;
        let kind = PropertyKind::from_str(base.trim())?;
        if head == "square" {
            return Ok(PropertyFunction::with_transform(kind, Transform::Square));
        }
        let params = head.strip_prefix("affine:").ok_or_else(bad)?;
        let (a, b) = params.split_once(',').ok_or_else(bad)?;
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        if !a.is_finite() || !b.is_finite() || a <= 0.0 || b < 0.0 {
            return Err(PropertyError::TransformRange);
        }
        let a = S::from_f64(a).ok_or(PropertyError::TransformRange)?;
        let b = S::from_f64(b).ok_or(PropertyError::TransformRange)?;
        Ok(PropertyFunction::with_transform(
            kind,
            Transform::Affine { a, b },
        ))
    }
}

impl<S: Scalar> fmt::Display for PropertyFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.transform {
            None => write!(f, "{}", self.kind),
            Some(Transform::Square) => write!(f, "square({})", self.kind),
            Some(Transform::Affine { a, b }) => write!(f, "affine:{},{}({})", a, b, self.kind),
        }
    }
}

/// Evaluates `f(v, C)` on the subnetwork induced by `c`.
pub fn evaluate<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    v: NodeId,
    c: &NodeSubset,
) -> S {
    let base = evaluate_base(net, f.kind, v, c);
    match &f.transform {
        None => base,
        Some(t) => t.apply(base),
    }
}

fn evaluate_base<S: Scalar>(
    net: &BipartiteNetwork<S>,
    kind: PropertyKind,
    v: NodeId,
    c: &NodeSubset,
) -> S {
    let members = || net.neighbors(v).iter().filter(|nb| c.contains(nb.id));
    match kind {
        PropertyKind::Degree => S::from_count(members().count()),
        PropertyKind::InDegree => S::from_count(members().filter(|nb| nb.incoming).count()),
        PropertyKind::OutDegree => S::from_count(members().filter(|nb| nb.outgoing).count()),
        PropertyKind::InOutDegree => S::from_count(
            members()
                .map(|nb| usize::from(nb.incoming) + usize::from(nb.outgoing))
                .sum(),
        ),
        PropertyKind::WeightedDegree => members().map(|nb| nb.weight).sum(),
        PropertyKind::MaxWeight => members()
            .map(|nb| nb.weight)
            .fold(S::zero(), |acc, w| acc.max(w)),
        PropertyKind::ProportionDegree => {
            let deg = net.deg(v);
            if deg == 0 {
                S::zero()
            } else {
                S::from_count(members().count()) / S::from_count(deg)
            }
        }
        PropertyKind::Density => {
            if net.deg(v) == 0 {
                S::zero()
            } else {
                S::from_count(members().count()) / S::from_count(net.max_neighbor_deg(v))
            }
        }
        PropertyKind::DegreeRange => {
            let mut lo = usize::MAX;
            let mut hi = 0usize;
            let mut any = false;
            for nb in members() {
                let d = net.deg(nb.id);
                lo = lo.min(d);
                hi = hi.max(d);
                any = true;
            }
            if any {
                S::from_count(hi - lo)
            } else {
                S::zero()
            }
        }
        PropertyKind::TotalDegreeRange => {
            // The node itself always belongs to the extended neighborhood.
            let mut lo = net.deg(v);
            let mut hi = net.deg(v);
            for nb in members() {
                let d = net.deg(nb.id);
                lo = lo.min(d);
                hi = hi.max(d);
            }
            S::from_count(hi - lo)
        }
        PropertyKind::ProportionWeight => {
            let total = net.wdeg(v);
            if total > S::zero() {
                net.induced_wdegree(v, c) / total
            } else {
                S::zero()
            }
        }
        PropertyKind::Triangles => {
            let ids: Vec<NodeId> = members().map(|nb| nb.id).collect();
            let mut count = 0usize;
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    if net.are_adjacent(a, b) {
                        count += 1;
                    }
                }
            }
            S::from_count(count)
        }
        PropertyKind::MeasurementSum => members().map(|nb| net.measurement_of(nb.id)).sum(),
        PropertyKind::MeasurementMax => members()
            .map(|nb| net.measurement_of(nb.id))
            .fold(S::zero(), |acc, t| acc.max(t)),
    }
}

/// Evaluates `f(v, C)` for every node of the network.
pub fn evaluate_all<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    c: &NodeSubset,
) -> Vec<S> {
    net.nodes().map(|v| evaluate(net, f, v, c)).collect()
}

/// Recomputes `f(v, C)` after `removed` left `c` (already removed from it),
/// given the previously maintained value.
///
/// Constant-cost functions adjust `old` arithmetically; ratio functions with
/// an integer numerator snap it back to the exact grid first, so the result
/// is bit-identical to a fresh evaluation. The rest rescan the neighborhood.
pub fn update_after_removal<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    v: NodeId,
    removed: NodeId,
    c: &NodeSubset,
    old: S,
) -> S {
    if f.transform.is_some() {
        return evaluate(net, f, v, c);
    }
    let entry = || {
        net.neighbor_entry(v, removed)
            .expect("removed node must be a neighbor of v")
    };
    match f.kind {
        PropertyKind::Degree => old - S::one(),
        PropertyKind::InDegree => {
            if entry().incoming {
                old - S::one()
            } else {
                old
            }
        }
        PropertyKind::OutDegree => {
            if entry().outgoing {
                old - S::one()
            } else {
                old
            }
        }
        PropertyKind::InOutDegree => {
            let e = entry();
            old - S::from_count(usize::from(e.incoming) + usize::from(e.outgoing))
        }
        PropertyKind::WeightedDegree => old - entry().weight,
        PropertyKind::ProportionDegree => snap_ratio_decrement(old, net.deg(v)),
        PropertyKind::Density => snap_ratio_decrement(old, net.max_neighbor_deg(v)),
        PropertyKind::ProportionWeight => {
            let total = net.wdeg(v);
            if total > S::zero() {
                old - entry().weight / total
            } else {
                S::zero()
            }
        }
        PropertyKind::MeasurementSum => old - net.measurement_of(removed),
        PropertyKind::MaxWeight
        | PropertyKind::DegreeRange
        | PropertyKind::TotalDegreeRange
        | PropertyKind::Triangles
        | PropertyKind::MeasurementMax => evaluate(net, f, v, c),
    }
}

// `old` is k/denom for an integer k; recover k exactly, decrement, and divide
// again so the update matches a fresh division bit for bit.
fn snap_ratio_decrement<S: Scalar>(old: S, denom: usize) -> S {
    let d = S::from_count(denom);
    let k = (old * d).round();
    (k - S::one()) / d
}

/// Outcome of a randomized monotonicity check.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub trials: usize,
    pub checks: usize,
    pub violations: usize,
    /// First violating `(node, value on smaller set, value on larger set)`.
    pub first_violation: Option<(NodeId, f64, f64)>,
}

impl MonotonicityReport {
    pub fn is_monotonic(&self) -> bool {
        self.violations == 0
    }
}

/// Samples random chains `C1 ⊆ C2` and checks `eval(v, C1) <= eval(v, C2)`
/// for every node.
pub fn check_monotonic_with<S, F>(
    net: &BipartiteNetwork<S>,
    eval: F,
    trials: usize,
    seed: u64,
) -> MonotonicityReport
where
    S: Scalar,
    F: Fn(&BipartiteNetwork<S>, NodeId, &NodeSubset) -> S,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MonotonicityReport {
        trials,
        checks: 0,
        violations: 0,
        first_violation: None,
    };
    for _ in 0..trials {
        let mut c2 = NodeSubset::empty(net);
        for v in net.nodes() {
            if rng.random_bool(0.5) {
                c2.insert(v);
            }
        }
        let mut c1 = c2.clone();
        for v in c2.iter().collect::<Vec<_>>() {
            if rng.random_bool(0.5) {
                c1.remove(v);
            }
        }
        for v in net.nodes() {
            report.checks += 1;
            let small = eval(net, v, &c1);
            let large = eval(net, v, &c2);
            if small > large {
                report.violations += 1;
                if report.first_violation.is_none() {
                    report.first_violation =
                        Some((v, small.to_f64().unwrap_or(f64::NAN), large.to_f64().unwrap_or(f64::NAN)));
                }
            }
        }
    }
    report
}

/// Randomized monotonicity check for a catalogue function.
pub fn check_monotonic<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    trials: usize,
    seed: u64,
) -> MonotonicityReport {
    check_monotonic_with(net, |n, v, c| evaluate(n, f, v, c), trials, seed)
}

/// Exhaustive single-removal monotonicity check over all subsets; a function
/// is monotonic iff removing one member never raises any value. Only for
/// networks with at most 20 nodes.
pub fn check_monotonic_exhaustive_with<S, F>(net: &BipartiteNetwork<S>, eval: F) -> MonotonicityReport
where
    S: Scalar,
    F: Fn(&BipartiteNetwork<S>, NodeId, &NodeSubset) -> S,
{
    let n = net.n();
    assert!(n <= 20, "exhaustive check is exponential in node count");
    let mut report = MonotonicityReport {
        trials: 1usize << n,
        checks: 0,
        violations: 0,
        first_violation: None,
    };
    for mask in 0u32..(1u32 << n) {
        let c2 = NodeSubset::from_indices(net, (0..n).filter(|i| mask >> i & 1 == 1).map(NodeId));
        for u in c2.iter().collect::<Vec<_>>() {
            let mut c1 = c2.clone();
            c1.remove(u);
            for v in net.nodes() {
                report.checks += 1;
                let small = eval(net, v, &c1);
                let large = eval(net, v, &c2);
                if small > large {
                    report.violations += 1;
                    if report.first_violation.is_none() {
                        report.first_violation = Some((
                            v,
                            small.to_f64().unwrap_or(f64::NAN),
                            large.to_f64().unwrap_or(f64::NAN),
                        ));
                    }
                }
            }
        }
    }
    report
}
