//! Generalized two-mode cores of bipartite networks.
//!
//! A two-mode core `Core(p, q; f, g)` is the largest member set in which
//! every mode-1 node keeps `f(v, C) >= p` and every mode-2 node keeps
//! `g(v, C) >= q`, for property functions `f` and `g` evaluated on the
//! induced subnetwork. This crate provides:
//!
//! - a weighted, optionally directed two-mode network model with Pajek,
//!   edge-list, and JSON input and output ([`network`]);
//! - a catalogue of local monotonic property functions with constant-time
//!   or neighborhood-rescan removal updates ([`properties`]);
//! - heap-based peeling to a single core ([`peel`]), drop-out level vectors
//!   answering all thresholds on one axis at once ([`levels`]), and the
//!   staircase boundary of nonempty cores in the `(p, q)` plane
//!   ([`boundary`]);
//! - seeded random network generation ([`generator`]) and SVG charts
//!   ([`plot`]).
//!
//! Numeric work is generic over the [`scalar::Scalar`] floating type;
//! [`Network`] and [`Network32`] fix it to `f64` and `f32`.
//!
//! ```
//! use gtcore::{compute_core, CoreQuery, Network, PropertyFunction};
//!
//! let data = "*vertices 5 3\n1 \"a\"\n2 \"b\"\n3 \"c\"\n4 \"x\"\n5 \"y\"\n*edges\n1 4 2\n1 5 1\n2 4 1\n3 5 3\n";
//! let net = Network::load_pajek(data.as_bytes()).unwrap();
//! let f: PropertyFunction<f64> = "deg".parse().unwrap();
//! let core = compute_core(&net, &CoreQuery::new(2.0, 1.0, f, f));
//! assert_eq!(core.core.len(), 3);
//! ```

pub mod boundary;
pub mod generator;
pub mod heap;
pub mod levels;
pub mod network;
pub mod peel;
pub mod plot;
pub mod properties;
pub mod scalar;

pub use boundary::{boundary_q, default_candidates, staircase, staircase_over, staircase_with_threads, BoundaryCorner, Staircase};
pub use generator::{generate, GenError, GenModel, GenSpec, WeightDist};
pub use levels::{core_levels, core_levels_mirrored, size_curve_csv, LevelVector, SizePoint};
pub use network::{BipartiteNetwork, Link, LinkKind, Mode, NetworkError, NodeId, NodeSubset};
pub use peel::{
    compute_core, compute_core_audited, naive_core, satisfies_thresholds, CoreQuery, CoreResult,
    DeletionOrder, Removal,
};
pub use properties::{
    check_monotonic, check_monotonic_exhaustive_with, check_monotonic_with, evaluate,
    evaluate_all, update_after_removal, MonotonicityReport, PropertyError, PropertyFunction,
    PropertyKind, Transform, UpdateCost, ALL_KINDS,
};
pub use scalar::Scalar;

/// Double-precision two-mode network, the default choice.
pub type Network = network::BipartiteNetwork<f64>;

/// Single-precision two-mode network for memory-tight workloads.
pub type Network32 = network::BipartiteNetwork<f32>;
