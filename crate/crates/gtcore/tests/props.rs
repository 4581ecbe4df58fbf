//! Randomized structural properties, shrunk to minimal counterexamples on
//! failure.

mod common;

use common::pf;
use gtcore::{
    compute_core, core_levels, naive_core, staircase, CoreQuery, DeletionOrder, LinkKind, Mode,
    Network, PropertyFunction,
};
use proptest::prelude::*;

const FUNCTION_POOL: [&str; 8] = [
    "deg", "wdeg", "mweight", "pdeg", "pweight", "sumt", "square(deg)", "affine:2,1(wdeg)",
];

fn arb_network() -> impl Strategy<Value = Network> {
    (1usize..7, 1usize..7)
        .prop_flat_map(|(n1, n2)| {
            let links = proptest::collection::vec((0..n1, 0..n2, 1u8..=5), 0..=n1 * n2);
            (Just(n1), Just(n2), links)
        })
        .prop_map(|(n1, n2, links)| {
            let raw = links
                .into_iter()
                .map(|(u, v, w)| (u, n1 + v, f64::from(w), LinkKind::Undirected))
                .collect();
            Network::new(n1, n2, None, raw, None).expect("generated links are valid")
        })
}

fn query(f_idx: usize, g_idx: usize, p: u8, q: u8) -> CoreQuery<f64> {
    CoreQuery::new(
        f64::from(p) / 2.0,
        f64::from(q) / 2.0,
        pf(FUNCTION_POOL[f_idx % FUNCTION_POOL.len()]),
        pf(FUNCTION_POOL[g_idx % FUNCTION_POOL.len()]),
    )
}

proptest! {
    #[test]
    fn pajek_round_trip_preserves_the_network(net in arb_network()) {
        let mut text = Vec::new();
        net.save_pajek(&mut text).expect("write to memory");
        let back = Network::load_pajek(text.as_slice()).expect("own output parses");
        prop_assert_eq!(net.n1(), back.n1());
        prop_assert_eq!(net.labels(), back.labels());
        prop_assert_eq!(net.links(), back.links());
    }

    #[test]
    fn json_round_trip_preserves_the_network(net in arb_network()) {
        let text = net.to_json_string().expect("serializes");
        let back = Network::from_json_str(&text).expect("own output parses");
        prop_assert_eq!(net.n1(), back.n1());
        prop_assert_eq!(net.labels(), back.labels());
        prop_assert_eq!(net.links(), back.links());
    }

    #[test]
    fn mirroring_twice_is_the_identity(net in arb_network()) {
        let twice = net.mirror().mirror();
        prop_assert_eq!(net.n1(), twice.n1());
        prop_assert_eq!(net.labels(), twice.labels());
        prop_assert_eq!(net.links(), twice.links());
    }

    #[test]
    fn heap_and_reference_peeler_agree(
        net in arb_network(),
        f_idx in 0usize..8,
        g_idx in 0usize..8,
        p in 0u8..12,
        q in 0u8..12,
    ) {
        let query = query(f_idx, g_idx, p, q);
        let fast = compute_core(&net, &query).core;
        prop_assert_eq!(&fast, &naive_core(&net, &query, DeletionOrder::Ascending));
        prop_assert_eq!(&fast, &naive_core(&net, &query, DeletionOrder::Descending));
    }

    #[test]
    fn tighter_thresholds_nest_the_core(
        net in arb_network(),
        f_idx in 0usize..8,
        g_idx in 0usize..8,
        p in 0u8..10,
        q in 0u8..10,
        dp in 0u8..6,
        dq in 0u8..6,
    ) {
        let loose = query(f_idx, g_idx, p, q);
        let tight = query(f_idx, g_idx, p + dp, q + dq);
        let tight_core = compute_core(&net, &tight).core;
        let loose_core = compute_core(&net, &loose).core;
        prop_assert!(tight_core.is_subset_of(&loose_core));
    }

    #[test]
    fn level_cuts_match_direct_peels(
        net in arb_network(),
        f_idx in 0usize..8,
        g_idx in 0usize..8,
        p in 0u8..10,
        q in 0u8..14,
    ) {
        let base = query(f_idx, g_idx, p, q);
        let lv = core_levels(&net, base.p, &base.f, &base.g);
        let top = lv.max_level().unwrap_or(0.0);
        // Mode-1 nodes whose value on an empty neighborhood already meets p
        // (always at p = 0, and below the offset of an affine transform)
        // float in every core; above the top level the cut omits them.
        let empty = gtcore::NodeSubset::empty(&net);
        let floats = net
            .mode_nodes(Mode::One)
            .any(|v| gtcore::evaluate(&net, &base.f, v, &empty) >= base.p);
        prop_assume!(!floats || base.q <= top);
        let cut = lv.members_at_least(&net, base.q);
        prop_assert_eq!(cut, compute_core(&net, &base).core);
    }

    #[test]
    fn staircase_is_strictly_monotone(net in arb_network(), f_idx in 0usize..8, g_idx in 0usize..8) {
        let f = pf(FUNCTION_POOL[f_idx % FUNCTION_POOL.len()]);
        let g = pf(FUNCTION_POOL[g_idx % FUNCTION_POOL.len()]);
        let stairs = staircase(&net, &f, &g);
        for pair in stairs.corners.windows(2) {
            prop_assert!(pair[1].p < pair[0].p);
            prop_assert!(pair[1].q > pair[0].q);
        }
        for corner in &stairs.corners {
            prop_assert!(corner.q > 0.0);
            prop_assert!(corner.size1 + corner.size2 > 0);
            let members = compute_core(&net, &CoreQuery::new(corner.p, corner.q, f, g)).core;
            prop_assert_eq!(members.size(Mode::One), corner.size1);
            prop_assert_eq!(members.size(Mode::Two), corner.size2);
        }
    }

    #[test]
    fn function_syntax_round_trips(
        kind_idx in 0usize..14,
        transform in 0usize..3,
        a in 1u8..9,
        b in 0u8..9,
    ) {
        let base = gtcore::ALL_KINDS[kind_idx].id();
        let text = match transform {
            0 => base.to_string(),
            1 => format!("square({base})"),
            _ => format!("affine:{}.5,{}({base})", a, b),
        };
        let parsed: PropertyFunction<f64> = text.parse().expect("valid syntax");
        prop_assert_eq!(parsed.to_string(), text);
        let reparsed: PropertyFunction<f64> = parsed.to_string().parse().expect("round trip");
        prop_assert_eq!(reparsed, parsed);
    }
}
