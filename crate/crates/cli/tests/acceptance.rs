//! Acceptance suite: ten end-to-end checks over the engine, discovery, the
//! bundled instances, and the binary. Each test prints one
//! `acceptance NN <name>: PASS` line on success (visible with
//! `cargo test -p incex-cli --test acceptance -- --show-output`); a failure
//! panics with the mismatch.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use incex::discovery::{
    broken_cycles, broken_neighbourhoods, discovered_family, ordered_family_from_pairs,
};
use incex::polys::{
    chromatic_polynomial, domination_polynomial, independence_polynomial, term_for, universe_for,
    Method,
};
use incex::{
    oracle, CancellationFamily, Engine, Hypergraph, IndexUniverse, IntPolynomial, OrderedFamily,
    PolyKind, SubsetMask,
};
use incex_cli::instance::{builtin, InstanceFile};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn pass(number: u32, name: &str) {
    println!("acceptance {number:02} {name}: PASS");
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn hyper6() -> Hypergraph {
    builtin("hyper6").unwrap().resolve().unwrap().hypergraph
}

fn p(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_coeffs(coeffs.to_vec())
}

/// Label-set view of a subset family, for order-insensitive comparison.
fn label_sets(universe: &IndexUniverse, masks: &[SubsetMask]) -> BTreeSet<Vec<String>> {
    masks.iter().map(|m| universe.mask_labels(*m)).collect()
}

fn excluded_blocks(
    universe: &IndexUniverse,
    family: &CancellationFamily,
) -> Vec<Vec<SubsetMask>> {
    let mut blocks = vec![Vec::new(); family.len()];
    for subset in universe.all_subsets(24).unwrap() {
        if let Some(i) = family.classify(subset).unwrap() {
            blocks[i].push(subset);
        }
    }
    blocks
}

fn ideal_members(universe: &IndexUniverse, family: &OrderedFamily) -> Vec<SubsetMask> {
    universe
        .all_subsets(24)
        .unwrap()
        .filter(|s| family.ideal_contains(*s).unwrap())
        .collect()
}

fn set_of(labels: &[&[&str]]) -> BTreeSet<Vec<String>> {
    labels
        .iter()
        .map(|ls| ls.iter().map(|s| s.to_string()).collect())
        .collect()
}

// --- random corpus -------------------------------------------------------

fn random_hypergraph(rng: &mut ChaCha8Rng) -> Hypergraph {
    let n = rng.gen_range(2..=7usize);
    let target_edges = rng.gen_range(0..=8usize);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    while sets.len() < target_edges {
        let size = rng.gen_range(2..=3.min(n));
        let mut vertices: Vec<usize> = (0..n).collect();
        vertices.shuffle(rng);
        vertices.truncate(size);
        vertices.sort_unstable();
        if !sets.contains(&vertices) {
            sets.push(vertices);
        } else {
            break;
        }
    }
    let edges = sets
        .into_iter()
        .enumerate()
        .map(|(i, vs)| (format!("e{}", i + 1), vs))
        .collect();
    Hypergraph::new((1..=n).map(|i| format!("v{i}")).collect(), edges).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, forbid_isolated: bool) -> Hypergraph {
    'outer: loop {
        let n = rng.gen_range(2..=8usize);
        let target_edges = rng.gen_range(1..=8usize);
        let mut sets: Vec<Vec<usize>> = Vec::new();
        while sets.len() < target_edges {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b {
                continue;
            }
            let pair = vec![a.min(b), a.max(b)];
            if !sets.contains(&pair) {
                sets.push(pair);
            } else {
                break;
            }
        }
        if forbid_isolated {
            let mut degree = vec![0usize; n];
            for e in &sets {
                degree[e[0]] += 1;
                degree[e[1]] += 1;
            }
            if degree.iter().any(|&d| d == 0) {
                continue 'outer;
            }
        }
        let edges = sets
            .into_iter()
            .enumerate()
            .map(|(i, vs)| (format!("e{}", i + 1), vs))
            .collect();
        return Hypergraph::new((1..=n).map(|i| format!("v{i}")).collect(), edges).unwrap();
    }
}

/// The per-instance polynomials: chromatic always, the graph-only ones when
/// the instance is 2-uniform.
fn applicable(h: &Hypergraph) -> Vec<PolyKind> {
    if h.is_graph() {
        vec![PolyKind::Chromatic, PolyKind::Independence, PolyKind::Domination]
    } else {
        vec![PolyKind::Chromatic]
    }
}

/// Pair-block membership recomputed from the definition, independent of the
/// engine's early-exit scan.
fn blocks_claiming(family: &CancellationFamily, subset: SubsetMask) -> Vec<usize> {
    let pairs = family.pairs();
    let mut hits = Vec::new();
    for i in 0..pairs.len() {
        if !subset.is_superset(pairs[i].b_set()).unwrap() {
            continue;
        }
        let excluded_by_earlier = (0..i).any(|j| {
            let remnant = pairs[j].b_set().difference(pairs[i].b_star()).unwrap();
            subset.is_superset(remnant).unwrap()
        });
        if !excluded_by_earlier {
            hits.push(i);
        }
    }
    hits
}

// --- criteria -------------------------------------------------------------

#[test]
fn acceptance_01_chromatic_golden_polynomial() {
    let started = Instant::now();
    let engine = Engine::new();
    let h = hyper6();
    let expected = p(&[0, -1, 1, 3, -4, 0, 1]);

    let full = chromatic_polynomial::<i64>(&engine, &h, Method::Full).unwrap();
    assert_eq!(full.polynomial, expected);

    let family = discovered_family(&engine, &h, PolyKind::Chromatic).unwrap();
    let pairs = chromatic_polynomial::<i64>(&engine, &h, Method::Pairs(&family)).unwrap();
    assert_eq!(pairs.polynomial, expected);

    let order: Vec<usize> = (0..4).collect(); // 123 < 345 < 234 < 126
    let ordered = ordered_family_from_pairs(&order, family.pairs()).unwrap();
    let by_order = chromatic_polynomial::<i64>(&engine, &h, Method::Ordered(&ordered)).unwrap();
    assert_eq!(by_order.polynomial, expected);

    assert!(started.elapsed() < Duration::from_secs(1), "three methods must finish within 1 s");
    pass(1, "chromatic golden polynomial by all three methods");
}

#[test]
fn acceptance_02_compare_counts_16_12_10() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_incex"))
        .args([
            "compare",
            "--builtin",
            "hyper6",
            "--polynomial",
            "chromatic",
            "--order",
            "123<345<234<126",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let counts: Vec<u64> = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["terms_evaluated"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![16, 12, 10]);
    assert_eq!(report["agreement"], true);
    pass(2, "compare table shows 16 / 12 / 10 terms");
}

#[test]
fn acceptance_03_discovered_chromatic_family_verbatim() {
    let engine = Engine::new();
    let h = hyper6();
    let eu = h.edge_universe();

    let family = discovered_family(&engine, &h, PolyKind::Chromatic).unwrap();
    let listed: Vec<(Vec<String>, Vec<String>)> = family
        .pairs()
        .iter()
        .map(|pair| (eu.mask_labels(pair.b_set()), eu.mask_labels(pair.b_star())))
        .collect();
    assert_eq!(
        listed,
        vec![
            (vec!["123".into(), "345".into()], vec!["234".into()]),
            (vec!["126".into(), "234".into()], vec!["123".into()]),
        ]
    );

    let blocks = excluded_blocks(eu, &family);
    assert_eq!(
        label_sets(eu, &blocks[0]),
        set_of(&[
            &["123", "345"],
            &["123", "234", "345"],
            &["123", "126", "345"],
            &["123", "126", "234", "345"],
        ])
    );
    assert_eq!(
        label_sets(eu, &blocks[1]),
        set_of(&[&["126", "234"], &["123", "126", "234"]])
    );
    pass(3, "discovered chromatic pairs and blocks match the worked listings");
}

#[test]
fn acceptance_04_independence_family_and_ideal() {
    let engine = Engine::new();
    let g = Hypergraph::path(5).unwrap();
    let eu = g.edge_universe();

    let family = discovered_family(&engine, &g, PolyKind::Independence).unwrap();
    let blocks = excluded_blocks(eu, &family);
    assert_eq!(blocks.len(), 2);
    let block1 = set_of(&[
        &["e1", "e3"],
        &["e1", "e2", "e3"],
        &["e1", "e3", "e4"],
        &["e1", "e2", "e3", "e4"],
    ]);
    assert_eq!(label_sets(eu, &blocks[0]), block1);
    assert_eq!(
        label_sets(eu, &blocks[1]),
        set_of(&[&["e2", "e4"], &["e2", "e3", "e4"]])
    );

    // Edge order e1 < e3 < e2 < e4: the ideal is exactly the first block.
    let order = vec![0, 2, 1, 3];
    let ordered = ordered_family_from_pairs(&order, family.pairs()).unwrap();
    let ideal = ideal_members(eu, &ordered);
    assert_eq!(label_sets(eu, &ideal), block1);
    pass(4, "independence blocks match the listings and the ideal equals block 1");
}

#[test]
fn acceptance_05_domination_replay_and_ideal() {
    let engine = Engine::new();
    let text = std::fs::read_to_string(fixture("path4.toml")).unwrap();
    let resolved = InstanceFile::parse(&text).unwrap().resolve().unwrap();
    let g = &resolved.hypergraph;
    let vu = g.vertex_universe();

    // Replay the fixture's three pairs.
    let specs = resolved.pairs.as_ref().unwrap();
    let pairs: Vec<incex::BrokenPair> = specs
        .iter()
        .map(|s| {
            incex::BrokenPair::new(
                vu.mask_from_labels(&s.b).unwrap(),
                vu.mask_from_labels(&s.b_star).unwrap(),
            )
            .unwrap()
        })
        .collect();
    let family = CancellationFamily::new(4, pairs).unwrap();

    let blocks = excluded_blocks(vu, &family);
    let block1 = set_of(&[
        &["v1", "v3"],
        &["v1", "v2", "v3"],
        &["v1", "v3", "v4"],
        &["v1", "v2", "v3", "v4"],
    ]);
    let block2 = set_of(&[&["v1", "v4"], &["v1", "v2", "v4"]]);
    let block3 = set_of(&[&["v2", "v4"], &["v2", "v3", "v4"]]);
    assert_eq!(label_sets(vu, &blocks[0]), block1);
    assert_eq!(label_sets(vu, &blocks[1]), block2);
    assert_eq!(label_sets(vu, &blocks[2]), block3);

    // Vertex order v1 < v4 < v3 < v2: the ideal is block 1 ∪ block 2.
    let order = resolved.vertex_order.clone().unwrap();
    let ordered = ordered_family_from_pairs(&order, family.pairs()).unwrap();
    let ideal = label_sets(vu, &ideal_members(vu, &ordered));
    let mut expected = block1;
    expected.extend(block2);
    assert_eq!(ideal, expected);

    // The replayed family computes the same polynomial as the full sum.
    let full = domination_polynomial::<i64>(&engine, g, Method::Full).unwrap();
    let reduced = domination_polynomial::<i64>(&engine, g, Method::Pairs(&family)).unwrap();
    assert_eq!(reduced.polynomial, full.polynomial);
    assert_eq!(reduced.terms_evaluated, 8);
    pass(5, "replayed domination pairs reproduce the blocks and the ideal");
}

#[test]
fn acceptance_06_reduction_property_suite() {
    let started = Instant::now();
    let engine = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ec5);

    let mut instances: Vec<Hypergraph> = Vec::new();
    for _ in 0..120 {
        instances.push(random_hypergraph(&mut rng));
    }
    for _ in 0..120 {
        instances.push(random_graph(&mut rng, false));
    }
    assert!(instances.len() >= 200);

    let mut families_checked = 0usize;
    for h in &instances {
        for kind in applicable(h) {
            let universe = universe_for(h, kind);
            let term = term_for::<i64>(h, kind).unwrap();
            let family = discovered_family(&engine, h, kind).unwrap();

            // Reduction is exact.
            let full = engine.full_sum(universe, &term).unwrap();
            let reduced = engine.reduced_sum(universe, &term, &family).unwrap();
            assert_eq!(
                reduced.polynomial, full.polynomial,
                "reduced sum must equal the full sum ({kind})"
            );

            for subset in universe.all_subsets(24).unwrap() {
                // Blocks are pairwise disjoint, and classify agrees with the
                // independent membership predicate.
                let claims = blocks_claiming(&family, subset);
                assert!(claims.len() <= 1, "blocks must be pairwise disjoint");
                assert_eq!(family.classify(subset).unwrap(), claims.first().copied());

                // Every cancellation class sums, with signs, to zero.
                if !claims.is_empty() {
                    let mut alternating = IntPolynomial::zero();
                    for member in family.equivalence_class(subset).unwrap() {
                        alternating
                            .add_signed_assign(&term(member).unwrap(), member.sign())
                            .unwrap();
                    }
                    assert!(alternating.is_zero(), "class terms must cancel exactly");
                }
            }
            families_checked += 1;
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "suite took {elapsed:?}");
    println!(
        "acceptance 06 reduction properties: {} instances, {} families in {elapsed:?}",
        instances.len(),
        families_checked
    );
    pass(6, "reduced = full, disjoint blocks, zero-sum classes on the random corpus");
}

#[test]
fn acceptance_07_oracle_equivalence() {
    let engine = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ec5); // same corpus as criterion 6

    let mut instances: Vec<Hypergraph> = Vec::new();
    for _ in 0..120 {
        instances.push(random_hypergraph(&mut rng));
    }
    for _ in 0..120 {
        instances.push(random_graph(&mut rng, false));
    }

    for h in &instances {
        let chi = chromatic_polynomial::<i64>(&engine, h, Method::Full).unwrap().polynomial;
        for k in 0..=4u64 {
            let expected = oracle::count_proper_colorings(h, k).unwrap();
            assert_eq!(chi.eval_at(k as i64).unwrap(), expected as i64);
        }

        if !h.is_graph() {
            continue;
        }
        let ind = independence_polynomial::<i64>(&engine, h, Method::Full).unwrap().polynomial;
        for (size, &count) in oracle::independent_set_counts(h).unwrap().iter().enumerate() {
            assert_eq!(ind.coeff(size), count as i64);
        }
        let dom = domination_polynomial::<i64>(&engine, h, Method::Full).unwrap().polynomial;
        for (size, &count) in oracle::dominating_set_counts(h).unwrap().iter().enumerate() {
            assert_eq!(dom.coeff(size), count as i64);
        }
    }
    pass(7, "engine agrees with brute-force counts on the random corpus");
}

#[test]
fn acceptance_08_ordered_families_equal_their_pair_form() {
    let engine = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xcafe);
    let mut nonempty_families = 0usize;
    let mut cycle_families = 0usize;
    let mut neighbourhood_families = 0usize;

    while nonempty_families < 50 {
        // Alternate between the two ordered constructions.
        let use_cycles = nonempty_families % 2 == 0;
        let (h, family, kind) = if use_cycles {
            let h = random_hypergraph(&mut rng);
            let mut order: Vec<usize> = (0..h.edge_count()).collect();
            order.shuffle(&mut rng);
            let family = broken_cycles(&engine, &h, &order).unwrap();
            (h, family, PolyKind::Chromatic)
        } else {
            let g = random_graph(&mut rng, true);
            let mut order: Vec<usize> = (0..g.vertex_count()).collect();
            order.shuffle(&mut rng);
            let family = broken_neighbourhoods(&g, &order).unwrap();
            (g, family, PolyKind::Domination)
        };
        if family.x_class().is_empty() {
            continue;
        }
        nonempty_families += 1;
        if use_cycles {
            cycle_families += 1;
        } else {
            neighbourhood_families += 1;
        }

        let universe = universe_for(&h, kind);
        let term = term_for::<i64>(&h, kind).unwrap();
        let pairs = family.to_pairs().unwrap();

        // The pair form excludes exactly the ideal, subset for subset.
        for subset in universe.all_subsets(24).unwrap() {
            assert_eq!(
                family.ideal_contains(subset).unwrap(),
                pairs.classify(subset).unwrap().is_some(),
                "pair form must exclude exactly the ideal"
            );
        }

        let full = engine.full_sum(universe, &term).unwrap();
        let by_ideal = engine.ordered_reduced_sum(universe, &term, &family).unwrap();
        let by_pairs = engine.reduced_sum(universe, &term, &pairs).unwrap();
        assert_eq!(by_ideal.polynomial, full.polynomial);
        assert_eq!(by_pairs.polynomial, full.polynomial);
        assert_eq!(by_ideal.terms_evaluated, by_pairs.terms_evaluated);
    }
    assert!(cycle_families >= 20 && neighbourhood_families >= 20);
    println!(
        "acceptance 08 checked {nonempty_families} ordered families \
         ({cycle_families} broken-cycle, {neighbourhood_families} broken-neighbourhood)"
    );
    pass(8, "ordered families and their pair form exclude the same subsets");
}

#[test]
fn acceptance_09_pair_order_robustness() {
    let engine = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1ce);

    let mut checked = 0usize;
    while checked < 20 {
        let h = if checked % 2 == 0 {
            random_hypergraph(&mut rng)
        } else {
            random_graph(&mut rng, false)
        };
        for kind in applicable(&h) {
            let universe = universe_for(&h, kind);
            let term = term_for::<i64>(&h, kind).unwrap();
            let family = discovered_family(&engine, &h, kind).unwrap();
            if family.is_empty() {
                continue;
            }
            let reference = engine.reduced_sum(universe, &term, &family).unwrap().polynomial;
            for _ in 0..10 {
                let mut pairs = family.pairs().to_vec();
                pairs.shuffle(&mut rng);
                let shuffled = CancellationFamily::new(universe.size(), pairs).unwrap();
                let out = engine.reduced_sum(universe, &term, &shuffled).unwrap();
                assert_eq!(
                    out.polynomial, reference,
                    "permuting pairs must not change the polynomial"
                );
            }
            checked += 1;
        }
    }
    pass(9, "permuting discovered pair lists never changes the polynomial");
}

#[test]
fn acceptance_10_vacuous_pairs_are_harmless() {
    let engine = Engine::new();
    // On the triangle, discovery emits three pairs; for the second and third,
    // an earlier remnant B_j ∖ B*_i is contained in B_i, so their blocks are
    // empty by construction.
    let g = Hypergraph::cycle(3).unwrap();
    let eu = g.edge_universe();
    let family = discovered_family(&engine, &g, PolyKind::Chromatic).unwrap();
    assert_eq!(family.len(), 3);

    let remnant_in_b = |i: usize| {
        (0..i).any(|j| {
            let pair_i = &family.pairs()[i];
            let remnant = family.pairs()[j].b_set().difference(pair_i.b_star()).unwrap();
            pair_i.b_set().is_superset(remnant).unwrap()
        })
    };
    assert!(remnant_in_b(1) && remnant_in_b(2), "the construction must be degenerate");

    for subset in eu.all_subsets(24).unwrap() {
        let claimed = family.classify(subset).unwrap();
        assert_ne!(claimed, Some(1), "a vacuous pair must never classify");
        assert_ne!(claimed, Some(2), "a vacuous pair must never classify");
    }
    let counts = family.excluded_counts(eu, 24).unwrap();
    assert_eq!(counts[1], 0);
    assert_eq!(counts[2], 0);

    let full = chromatic_polynomial::<i64>(&engine, &g, Method::Full).unwrap();
    let reduced = chromatic_polynomial::<i64>(&engine, &g, Method::Pairs(&family)).unwrap();
    assert_eq!(reduced.polynomial, full.polynomial);
    assert_eq!(reduced.polynomial, p(&[0, 2, -3, 1]));
    pass(10, "empty blocks from absorbed remnants leave the sum correct");
}
