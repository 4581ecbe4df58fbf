//! End-to-end acceptance suite.
//!
//! Each test guards one exit requirement and prints a `[PASS]` line with the
//! checked quantities (visible with `cargo test -- --nocapture`). Expected
//! values come from independent oracles: a bitmask subset-union search, a
//! quadratic reference peeler, and hand-verified worked-example numbers.

mod common;

use std::hint::black_box;
use std::time::{Duration, Instant};

use common::{bitmask_core_deg, labels, pf, random_net, subset_union_core, toy};
use gtcore::{
    boundary_q, compute_core, compute_core_audited, core_levels, core_levels_mirrored, evaluate,
    generate, naive_core, satisfies_thresholds, staircase, BoundaryCorner, CoreQuery,
    DeletionOrder, GenModel, GenSpec, LevelVector, Mode, Network, NodeSubset, PropertyFunction,
    WeightDist,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Threshold between 0 and a fifth above the largest value the function
/// takes on the given mode, so peels range from no-op to total.
fn sample_threshold(
    rng: &mut ChaCha8Rng,
    net: &Network,
    func: &PropertyFunction<f64>,
    mode: Mode,
) -> f64 {
    let full = NodeSubset::full(net);
    let vmax = net
        .mode_nodes(mode)
        .map(|v| evaluate(net, func, v, &full))
        .fold(0.0, f64::max);
    if vmax == 0.0 {
        if rng.random_bool(0.5) {
            0.0
        } else {
            0.5
        }
    } else {
        vmax * rng.random_range(0.0..1.2)
    }
}

#[test]
fn heap_peeling_matches_the_reference_peeler_on_a_thousand_networks() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let plain: Vec<PropertyFunction<f64>> = [
        "deg", "wdeg", "mweight", "pdeg", "density", "degrange", "tdegrange", "pweight",
        "triangles", "sumt", "maxt", "affine:3,1(wdeg)", "square(deg)",
    ]
    .iter()
    .map(|s| pf(s))
    .collect();
    let directed_extra: Vec<PropertyFunction<f64>> =
        ["indeg", "outdeg", "inoutdeg"].iter().map(|s| pf(s)).collect();

    let trials = 1000;
    for trial in 0..trials {
        let directed = trial % 3 == 0;
        let real_weights = trial % 4 == 1;
        let side = if trial % 5 == 4 { 50 } else { 14 };
        let net = random_net(&mut rng, side, side, real_weights, directed);
        let mut pool = plain.clone();
        if directed {
            pool.extend_from_slice(&directed_extra);
        }
        let f = pool[rng.random_range(0..pool.len())];
        let g = pool[rng.random_range(0..pool.len())];
        let p = sample_threshold(&mut rng, &net, &f, Mode::One);
        let q = sample_threshold(&mut rng, &net, &g, Mode::Two);
        let query = CoreQuery::new(p, q, f, g);
        let fast = compute_core(&net, &query);
        let reference = naive_core(&net, &query, DeletionOrder::Ascending);
        assert_eq!(
            fast.core, reference,
            "trial {trial}: f={f} g={g} p={p} q={q}"
        );
        assert!(satisfies_thresholds(&net, &query, &fast.core));
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "equivalence sweep took {elapsed:?}"
    );
    println!(
        "[PASS] heap peeling matched the reference peeler on {trials} random networks in {elapsed:.2?}"
    );
}

#[test]
fn cores_equal_the_union_of_all_feasible_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let mut checked = 0;

    for trial in 0..120 {
        let net = random_net(&mut rng, 6, 6, false, false);
        let p = rng.random_range(0..4);
        let q = rng.random_range(0..4);
        let expected = bitmask_core_deg(&net, p, q);
        let query = CoreQuery::new(p as f64, q as f64, pf("deg"), pf("deg"));
        assert_eq!(compute_core(&net, &query).core, expected, "trial {trial} p={p} q={q}");
        checked += 1;
    }

    let pool = [
        "wdeg", "mweight", "pdeg", "pweight", "sumt", "maxt", "density", "degrange",
        "square(deg)", "affine:2,1(wdeg)",
    ];
    for trial in 0..120 {
        let net = random_net(&mut rng, 5, 5, false, false);
        let f = pf(pool[trial % pool.len()]);
        let g = pf(pool[(trial + 3) % pool.len()]);
        let p = sample_threshold(&mut rng, &net, &f, Mode::One);
        let q = sample_threshold(&mut rng, &net, &g, Mode::Two);
        let query = CoreQuery::new(p, q, f, g);
        let expected = subset_union_core(&net, &query);
        assert_eq!(compute_core(&net, &query).core, expected, "trial {trial} f={f} g={g}");
        checked += 1;
    }
    assert!(checked >= 200);
    println!(
        "[PASS] peeled cores equal the union of all feasible subsets on {checked} small networks"
    );
}

#[test]
fn nesting_order_mirror_and_rescaling_invariants_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(3003);

    // Antitone nesting over a 4 by 4 threshold grid.
    for _ in 0..25 {
        let net = random_net(&mut rng, 10, 10, false, false);
        for (fs, gs) in [("deg", "deg"), ("wdeg", "mweight"), ("pdeg", "wdeg")] {
            let (f, g) = (pf(fs), pf(gs));
            let full = NodeSubset::full(&net);
            let vmax = |func: &PropertyFunction<f64>, mode: Mode| {
                net.mode_nodes(mode)
                    .map(|v| evaluate(&net, func, v, &full))
                    .fold(0.0, f64::max)
            };
            let pmax = vmax(&f, Mode::One);
            let qmax = vmax(&g, Mode::Two);
            let ps: Vec<f64> = (0..4).map(|i| pmax * i as f64 / 3.0).collect();
            let qs: Vec<f64> = (0..4).map(|j| qmax * j as f64 / 3.0).collect();
            let grid: Vec<Vec<NodeSubset>> = ps
                .iter()
                .map(|&p| {
                    qs.iter()
                        .map(|&q| compute_core(&net, &CoreQuery::new(p, q, f, g)).core)
                        .collect()
                })
                .collect();
            for i in 0..4 {
                for j in 0..4 {
                    for i2 in i..4 {
                        for j2 in j..4 {
                            assert!(
                                grid[i2][j2].is_subset_of(&grid[i][j]),
                                "{fs}/{gs}: core at ({},{}) not inside core at ({},{})",
                                ps[i2], qs[j2], ps[i], qs[j]
                            );
                        }
                    }
                }
            }
        }
    }

    // Ten removal orders land on the same core.
    for _ in 0..20 {
        let net = random_net(&mut rng, 10, 10, false, false);
        let f = pf("wdeg");
        let g = pf("deg");
        let p = sample_threshold(&mut rng, &net, &f, Mode::One);
        let q = sample_threshold(&mut rng, &net, &g, Mode::Two);
        let query = CoreQuery::new(p, q, f, g);
        let expected = compute_core(&net, &query).core;
        let mut orders = vec![DeletionOrder::Ascending, DeletionOrder::Descending];
        orders.extend((0..8).map(DeletionOrder::Shuffled));
        for order in orders {
            assert_eq!(naive_core(&net, &query, order), expected, "{order:?}");
        }
    }

    // Swapping modes, functions, and thresholds mirrors the core.
    for trial in 0..20 {
        let net = random_net(&mut rng, 9, 9, false, trial % 2 == 0);
        let mirror = net.mirror();
        let f = pf("deg");
        let g = pf("wdeg");
        let p = sample_threshold(&mut rng, &net, &f, Mode::One);
        let q = sample_threshold(&mut rng, &net, &g, Mode::Two);
        let direct = compute_core(&net, &CoreQuery::new(p, q, f, g)).core;
        let swapped = compute_core(&mirror, &CoreQuery::new(q, p, g, f)).core;
        for v in net.nodes() {
            assert_eq!(
                direct.contains(v),
                swapped.contains(net.mirror_index(v)),
                "trial {trial} node {v:?}"
            );
        }
    }

    // Increasing transforms of a function and its threshold leave the core
    // unchanged (integer values keep every comparison exact).
    for _ in 0..20 {
        let net = random_net(&mut rng, 9, 9, false, false);
        let full = NodeSubset::full(&net);
        let wmax = net
            .mode_nodes(Mode::Two)
            .map(|v| evaluate(&net, &pf("wdeg"), v, &full))
            .fold(0.0, f64::max);
        let p = rng.random_range(0..=net.max_degree() + 1) as f64;
        let q = rng.random_range(0..=(wmax as usize + 1)) as f64;
        let base = compute_core(&net, &CoreQuery::new(p, q, pf("deg"), pf("wdeg"))).core;
        let affine_f = compute_core(
            &net,
            &CoreQuery::new(3.0 * p + 1.0, q, pf("affine:3,1(deg)"), pf("wdeg")),
        )
        .core;
        assert_eq!(base, affine_f, "scaling the first slot moved the core");
        let affine_g = compute_core(
            &net,
            &CoreQuery::new(p, 3.0 * q + 1.0, pf("deg"), pf("affine:3,1(wdeg)")),
        )
        .core;
        assert_eq!(base, affine_g, "scaling the second slot moved the core");
        let squared = compute_core(
            &net,
            &CoreQuery::new(p * p, q * q, pf("square(deg)"), pf("square(wdeg)")),
        )
        .core;
        assert_eq!(base, squared, "squaring both slots moved the core");
    }

    println!(
        "[PASS] nesting, ten-order invariance, mirroring, and transform invariance verified on random networks"
    );
}

#[test]
fn level_cuts_reproduce_cores_at_every_probed_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    let pool = ["deg", "wdeg", "mweight", "pdeg", "sumt"];
    let trials = 110;

    let probes_for = |lv: &LevelVector<f64>, floats: bool| -> Vec<f64> {
        let attained = lv.attained_levels();
        let mut probes = attained.clone();
        for pair in attained.windows(2) {
            probes.push((pair[0] + pair[1]) / 2.0);
        }
        probes.push(0.0);
        // Nodes meeting their fixed bound even on an empty neighborhood
        // float in every core but carry only the top attained level, so
        // probe beyond it only when no node floats.
        if !floats {
            probes.push(lv.max_level().unwrap_or(0.0) + 1.0);
        }
        probes
    };
    let floats_above = |net: &Network, func: &PropertyFunction<f64>, mode: Mode, fixed: f64| {
        let empty = NodeSubset::empty(net);
        net.mode_nodes(mode).any(|v| evaluate(net, func, v, &empty) >= fixed)
    };

    for trial in 0..trials {
        let net = random_net(&mut rng, 8, 8, false, false);
        let f = pf(pool[trial % pool.len()]);
        let g = pf(pool[(trial + 2) % pool.len()]);

        let p = sample_threshold(&mut rng, &net, &f, Mode::One);
        let lv = core_levels(&net, p, &f, &g);
        for q in probes_for(&lv, floats_above(&net, &f, Mode::One, p)) {
            let cut = lv.members_at_least(&net, q);
            let expected = naive_core(
                &net,
                &CoreQuery::new(p, q, f, g),
                DeletionOrder::Ascending,
            );
            assert_eq!(cut, expected, "trial {trial} fixed p={p} probe q={q} f={f} g={g}");
        }

        let q = sample_threshold(&mut rng, &net, &g, Mode::Two);
        let mlv = core_levels_mirrored(&net, q, &f, &g);
        for probe in probes_for(&mlv, floats_above(&net, &g, Mode::Two, q)) {
            let cut = mlv.members_at_least(&net, probe);
            let expected = naive_core(
                &net,
                &CoreQuery::new(probe, q, f, g),
                DeletionOrder::Ascending,
            );
            assert_eq!(cut, expected, "trial {trial} fixed q={q} probe p={probe} f={f} g={g}");
        }
    }
    println!(
        "[PASS] level cuts equal independently peeled cores at attained, midpoint, zero, and beyond-top thresholds on {trials} networks"
    );
}

#[test]
fn staircase_corners_match_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    let trials = 100;
    for trial in 0..trials {
        let net = random_net(&mut rng, 6, 6, false, false);
        let stairs = staircase(&net, &pf("deg"), &pf("deg"));

        // Independent corner list: candidate thresholds from raw degrees,
        // boundary values from the bitmask oracle.
        let mut candidates: Vec<usize> = net.mode_nodes(Mode::One).map(|v| net.deg(v)).collect();
        candidates.push(0);
        candidates.sort_unstable_by(|a, b| b.cmp(a));
        candidates.dedup();
        let bf_boundary = |p: usize| -> Option<usize> {
            let mut best = None;
            for q in 0..=net.max_degree() {
                let core = bitmask_core_deg(&net, p, q);
                let alive = if p > 0 {
                    !core.is_empty()
                } else {
                    core.size(Mode::Two) > 0
                };
                if alive {
                    best = Some(q);
                }
            }
            best
        };
        let mut expected = Vec::new();
        let mut q_max = 0usize;
        for &p in &candidates {
            if let Some(q) = bf_boundary(p) {
                if q > q_max {
                    q_max = q;
                    let members = bitmask_core_deg(&net, p, q);
                    expected.push(BoundaryCorner {
                        p: p as f64,
                        q: q as f64,
                        size1: members.size(Mode::One),
                        size2: members.size(Mode::Two),
                    });
                }
            }
        }
        assert_eq!(stairs.corners, expected, "trial {trial}");

        // Each corner is sharp: one step up in q empties the core, apart
        // from the unleveled first mode surviving a threshold of 0.
        for corner in &stairs.corners {
            let (p, q) = (corner.p as usize, corner.q as usize);
            assert!(!bitmask_core_deg(&net, p, q).is_empty());
            let above = bitmask_core_deg(&net, p, q + 1);
            if corner.p > 0.0 {
                assert!(above.is_empty(), "trial {trial} corner ({p},{q})");
            } else {
                assert_eq!(above.size(Mode::Two), 0, "trial {trial} corner ({p},{q})");
            }
        }
    }
    println!(
        "[PASS] staircase corners and their sharpness match exhaustive subset search on {trials} networks"
    );
}

#[test]
fn worked_example_values_are_reproduced_exactly() {
    let net = toy();
    assert_eq!((net.n1(), net.n2(), net.m()), (3, 2, 4));

    let deg = pf("deg");
    let wdeg = pf("wdeg");
    let core21 = compute_core(&net, &CoreQuery::new(2.0, 1.0, deg, deg));
    assert_eq!(labels(&net, &core21.core), ["a", "x", "y"]);
    assert_eq!(
        core21.removed.iter().map(|r| (net.label(r.node), r.value)).collect::<Vec<_>>(),
        [("b", 1.0), ("c", 1.0)]
    );
    assert_eq!(core21.to_clu(&net), "*vertices 5\n1\n0\n0\n1\n1\n");

    let weighted = compute_core(&net, &CoreQuery::new(3.0, 1.0, wdeg, deg));
    assert_eq!(labels(&net, &weighted.core), ["a", "c", "x", "y"]);

    let floor = compute_core(&net, &CoreQuery::new(5.0, 0.0, deg, deg));
    assert_eq!(labels(&net, &floor.core), ["x", "y"]);

    let lv = |p: f64| core_levels(&net, p, &deg, &deg);
    let as_raw = |lv: &LevelVector<f64>| -> Vec<f64> {
        lv.levels.iter().map(|t| t.unwrap_or(-1.0)).collect()
    };
    assert_eq!(as_raw(&lv(2.0)), [1.0, -1.0, -1.0, 1.0, 1.0]);
    assert_eq!(as_raw(&lv(1.0)), [2.0; 5]);
    assert_eq!(as_raw(&lv(0.0)), [2.0; 5]);
    assert_eq!(lv(2.0).to_vec_format(), "*vertices 5\n1\n-1\n-1\n1\n1\n");
    assert_eq!(boundary_q(&lv(3.0)), Some(0.0));

    let mirrored = core_levels_mirrored(&net, 2.0, &deg, &deg);
    assert_eq!(as_raw(&mirrored), [1.0; 5]);
    let mirrored3 = core_levels_mirrored(&net, 3.0, &deg, &deg);
    assert_eq!(as_raw(&mirrored3), [0.0, 0.0, 0.0, -1.0, -1.0]);

    let stairs = staircase(&net, &deg, &deg);
    assert_eq!(
        stairs.corners,
        [
            BoundaryCorner { p: 2.0, q: 1.0, size1: 1, size2: 2 },
            BoundaryCorner { p: 1.0, q: 2.0, size1: 3, size2: 2 },
        ]
    );
    assert_eq!(stairs.to_csv(), "p,q,size1,size2\n2,1,1,2\n1,2,3,2\n");

    println!("[PASS] worked-example cores, levels, level vectors, and staircase all match their frozen values");
}

#[test]
fn peeling_scales_near_linearly_in_link_count() {
    let time_peel = |net: &Network, query: &CoreQuery<f64>| -> Duration {
        (0..3)
            .map(|_| {
                let start = Instant::now();
                black_box(compute_core(net, query));
                start.elapsed()
            })
            .min()
            .expect("three runs")
    };
    let sizes = [100_000usize, 200_000, 400_000];
    let budget = Duration::from_secs(5);

    // Constant-update path: fixed node count, growing density.
    let mut deg_times = Vec::new();
    for (i, &m) in sizes.iter().enumerate() {
        let spec = GenSpec {
            n1: 10_000,
            n2: 10_000,
            m,
            model: GenModel::UniformPairs,
            weights: WeightDist::Unit,
            seed: 71 + i as u64,
        };
        let net: Network = generate(&spec).expect("feasible spec");
        let mean = m as f64 / 10_000.0;
        let query = CoreQuery::new(mean + 1.0, mean + 1.0, pf("deg"), pf("deg"));
        let t = time_peel(&net, &query);
        assert!(t <= budget, "degree peel of m={m} took {t:?}");
        deg_times.push((m, t));
    }

    // Rescan path: node count grows with the links, degrees stay bounded.
    let mut rescan_times = Vec::new();
    for (i, &m) in sizes.iter().enumerate() {
        let side = m / 10;
        let spec = GenSpec {
            n1: side,
            n2: side,
            m,
            model: GenModel::UniformPairs,
            weights: WeightDist::Integer { lo: 1, hi: 5 },
            seed: 81 + i as u64,
        };
        let net: Network = generate(&spec).expect("feasible spec");
        let query = CoreQuery::new(3.0, 11.0, pf("mweight"), pf("deg"));
        let t = time_peel(&net, &query);
        assert!(t <= budget, "max-weight peel of m={m} took {t:?}");
        rescan_times.push((m, t));
    }

    for times in [&deg_times, &rescan_times] {
        for pair in times.windows(2) {
            let ratio = pair[1].1.as_secs_f64() / pair[0].1.as_secs_f64().max(1e-9);
            assert!(
                ratio <= 3.0,
                "doubling links from {} to {} scaled time by {ratio:.2} ({:?} to {:?})",
                pair[0].0, pair[1].0, pair[0].1, pair[1].1
            );
        }
    }
    println!(
        "[PASS] doubling the link count never tripled the peel time: deg {:?}, mweight {:?}",
        deg_times.iter().map(|(_, t)| *t).collect::<Vec<_>>(),
        rescan_times.iter().map(|(_, t)| *t).collect::<Vec<_>>()
    );
}

#[test]
fn maintained_values_never_drift_from_fresh_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8008);
    let exact = [
        "deg", "wdeg", "mweight", "pdeg", "density", "degrange", "tdegrange", "triangles",
        "sumt", "maxt", "square(wdeg)",
    ];
    let exact_directed = ["indeg", "outdeg", "inoutdeg"];
    let approximate = ["wdeg", "pweight", "mweight", "affine:3,1(wdeg)", "square(pweight)"];
    let mut audits = 0;

    for trial in 0..60 {
        let directed = trial % 2 == 1;
        let net = random_net(&mut rng, 12, 12, false, directed);
        let mut ids: Vec<&str> = exact.to_vec();
        if directed {
            ids.extend_from_slice(&exact_directed);
        }
        for id in ids {
            let f = pf(id);
            let p = sample_threshold(&mut rng, &net, &f, Mode::One);
            let q = sample_threshold(&mut rng, &net, &f, Mode::Two);
            let (_, drift) = compute_core_audited(&net, &CoreQuery::new(p, q, f, f));
            assert_eq!(drift, 0.0, "trial {trial} {id}: integer-exact function drifted");
            audits += 1;
        }
    }

    for trial in 0..40 {
        let net = random_net(&mut rng, 12, 12, true, false);
        for id in approximate {
            let f = pf(id);
            let p = sample_threshold(&mut rng, &net, &f, Mode::One);
            let q = sample_threshold(&mut rng, &net, &f, Mode::Two);
            let (_, drift) = compute_core_audited(&net, &CoreQuery::new(p, q, f, f));
            assert!(drift <= 1e-9, "trial {trial} {id}: drift {drift}");
            audits += 1;
        }
    }
    println!(
        "[PASS] {audits} audited peels stayed within 1e-9 of fresh evaluation, bit-exact for integer-valued functions"
    );
}
