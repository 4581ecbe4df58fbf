//! The staircase boundary of nonempty cores in the `(p, q)` plane.
//!
//! For a fixed `p`, let `q_pi(p)` be the largest `q` at which the core still
//! has leveled members. Scanning candidate `p` values from high to low and
//! keeping only strict improvements in `q` yields the corners of a staircase
//! that separates threshold pairs with nonempty cores from empty ones.

use std::num::NonZeroUsize;

use crate::levels::{core_levels, LevelVector};
use crate::network::{BipartiteNetwork, Mode, NodeId};
use crate::properties::{evaluate, PropertyFunction};
use crate::scalar::Scalar;

/// One staircase corner: the largest `q` with a nonempty core at `p`, plus
/// that core's per-mode sizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryCorner<S> {
    pub p: S,
    pub q: S,
    pub size1: usize,
    pub size2: usize,
}

/// Staircase corners in decreasing `p` (and so increasing `q`).
#[derive(Clone, Debug, PartialEq)]
pub struct Staircase<S> {
    pub corners: Vec<BoundaryCorner<S>>,
}

impl<S: Scalar> Staircase<S> {
    /// CSV with one `p,q,size1,size2` row per corner.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,size1,size2\n");
        for c in &self.corners {
            out.push_str(&format!("{},{},{},{}\n", c.p, c.q, c.size1, c.size2));
        }
        out
    }
}

/// Largest level in a sweep, i.e. the boundary value `q_pi` at its fixed
/// threshold. `None` when nothing survives even at 0.
pub fn boundary_q<S: Scalar>(levels: &LevelVector<S>) -> Option<S> {
    levels.max_level()
}

/// Candidate `p` values worth probing: every value `f(v, V)` takes on mode 1
/// plus 0, in decreasing order. `q_pi` can only change at these.
pub fn default_candidates<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
) -> Vec<S> {
    let full = crate::network::NodeSubset::full(net);
    let mut values: Vec<S> = net
        .mode_nodes(Mode::One)
        .map(|v| evaluate(net, f, v, &full))
        .chain(std::iter::once(S::zero()))
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("property values are never NaN"));
    values.dedup();
    values
}

/// Traces the staircase over the default candidate thresholds.
pub fn staircase<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    g: &PropertyFunction<S>,
) -> Staircase<S> {
    staircase_over(net, f, g, &default_candidates(net, f))
}

/// Traces the staircase over caller-chosen `p` candidates (sorted here in
/// decreasing order before scanning).
pub fn staircase_over<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    g: &PropertyFunction<S>,
    candidates: &[S],
) -> Staircase<S> {
    staircase_with_threads(net, f, g, candidates, NonZeroUsize::new(1).expect("1 is nonzero"))
}

/// Like [`staircase_over`] with the per-candidate sweeps spread over worker
/// threads. The corner selection stays sequential, so the result is
/// identical for any thread count.
pub fn staircase_with_threads<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    g: &PropertyFunction<S>,
    candidates: &[S],
    threads: NonZeroUsize,
) -> Staircase<S> {
    type Probe<S> = (S, Option<(S, usize, usize)>);
    let mut sorted = candidates.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("candidates must not be NaN"));
    sorted.dedup();

    let probe = |&p: &S| -> Probe<S> {
        let levels = core_levels(net, p, f, g);
        let peak = boundary_q(&levels).map(|q| {
            let members = levels.members_at_least(net, q);
            (q, members.size(Mode::One), members.size(Mode::Two))
        });
        (p, peak)
    };

    let workers = threads.get().min(sorted.len().max(1));
    let probed: Vec<Probe<S>> = if workers <= 1 {
        sorted.iter().map(probe).collect()
    } else {
        let chunk_len = sorted.len().div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = sorted
                .chunks(chunk_len)
                .map(|chunk| scope.spawn(move || chunk.iter().map(probe).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut corners = Vec::new();
    let mut q_max = S::zero();
    for (p, peak) in probed {
        if let Some((q, size1, size2)) = peak {
            if q > q_max {
                q_max = q;
                corners.push(BoundaryCorner { p, q, size1, size2 });
            }
        }
    }
    Staircase { corners }
}

/// Members of the core at a staircase corner, recomputed from a sweep.
pub fn corner_members<S: Scalar>(
    net: &BipartiteNetwork<S>,
    f: &PropertyFunction<S>,
    g: &PropertyFunction<S>,
    corner: &BoundaryCorner<S>,
) -> Vec<NodeId> {
    let levels = core_levels(net, corner.p, f, g);
    levels.members_at_least(net, corner.q).iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::PropertyKind;

    const TOY: &str = "*vertices 5 3\n1 \"a\"\n2 \"b\"\n3 \"c\"\n4 \"x\"\n5 \"y\"\n*edges\n1 4 2\n1 5 1\n2 4 1\n3 5 3\n";

    fn toy() -> BipartiteNetwork<f64> {
        BipartiteNetwork::load_pajek(TOY.as_bytes()).unwrap()
    }

    fn deg() -> PropertyFunction<f64> {
        PropertyFunction::new(PropertyKind::Degree)
    }

    #[test]
    fn toy_staircase_has_two_corners() {
        let net = toy();
        let stairs = staircase(&net, &deg(), &deg());
        assert_eq!(
            stairs.corners,
            vec![
                BoundaryCorner { p: 2.0, q: 1.0, size1: 1, size2: 2 },
                BoundaryCorner { p: 1.0, q: 2.0, size1: 3, size2: 2 },
            ]
        );
    }

    #[test]
    fn csv_output_is_stable() {
        let net = toy();
        let stairs = staircase(&net, &deg(), &deg());
        assert_eq!(stairs.to_csv(), "p,q,size1,size2\n2,1,1,2\n1,2,3,2\n");
    }

    #[test]
    fn default_candidates_cover_attained_values_and_zero() {
        let net = toy();
        assert_eq!(default_candidates(&net, &deg()), vec![2.0, 1.0, 0.0]);
        let wdeg = PropertyFunction::new(PropertyKind::WeightedDegree);
        assert_eq!(default_candidates(&net, &wdeg), vec![3.0, 1.0, 0.0]);
    }

    #[test]
    fn corners_are_monotone_in_both_axes() {
        let net = toy();
        let stairs = staircase(&net, &deg(), &deg());
        for pair in stairs.corners.windows(2) {
            assert!(pair[1].p < pair[0].p);
            assert!(pair[1].q > pair[0].q);
        }
    }

    #[test]
    fn boundary_value_survives_total_mode_one_loss() {
        // Above the top mode-1 value the second mode lingers at level 0, so
        // the boundary is 0 there rather than gone.
        let net = toy();
        let lv = core_levels(&net, 3.0, &deg(), &deg());
        assert_eq!(boundary_q(&lv), Some(0.0));
        // With no second mode at all, nothing is leveled above p = 0.
        let bare = BipartiteNetwork::<f64>::from_links(2, 0, None, vec![]).unwrap();
        let lv_bare = core_levels(&bare, 1.0, &deg(), &deg());
        assert_eq!(boundary_q(&lv_bare), None);
    }

    #[test]
    fn explicit_candidates_match_default_when_equivalent() {
        let net = toy();
        let default = staircase(&net, &deg(), &deg());
        let manual = staircase_over(&net, &deg(), &deg(), &[0.0, 1.0, 2.0]);
        assert_eq!(default, manual);
        // Extra candidates between attained values add no corners.
        let dense = staircase_over(&net, &deg(), &deg(), &[2.0, 1.5, 1.0, 0.5, 0.0]);
        assert_eq!(default, dense);
    }

    #[test]
    fn thread_count_does_not_change_the_result() {
        let net = toy();
        let candidates = default_candidates(&net, &deg());
        let single = staircase_with_threads(&net, &deg(), &deg(), &candidates, NonZeroUsize::new(1).unwrap());
        for workers in [2, 3, 8] {
            let multi = staircase_with_threads(
                &net,
                &deg(),
                &deg(),
                &candidates,
                NonZeroUsize::new(workers).unwrap(),
            );
            assert_eq!(single, multi, "{workers} workers");
        }
    }

    #[test]
    fn corner_members_recovers_the_core() {
        let net = toy();
        let stairs = staircase(&net, &deg(), &deg());
        let members = corner_members(&net, &deg(), &deg(), &stairs.corners[0]);
        let labels: Vec<&str> = members.iter().map(|&v| net.label(v)).collect();
        assert_eq!(labels, ["a", "x", "y"]);
    }

    #[test]
    fn empty_network_has_no_corners() {
        let net = BipartiteNetwork::<f64>::from_links(0, 0, None, vec![]).unwrap();
        let stairs = staircase(&net, &deg(), &deg());
        assert!(stairs.corners.is_empty());
    }
}
