//! Acceptance suite: the release gate for the workbench. Every criterion
//! is exact (no tolerances) and prints one pass/fail line. Run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;


use siltlab_core::complexes::{iso_test, ProjComplex};
use siltlab_core::fixtures;
use siltlab_core::homspaces::{hom_complex, hom_dim, relation, Relation};
use siltlab_core::lifting::{lift_full, lift_step, LiftOutcome};
use siltlab_core::oracles::{oracle_hom_dim, oracle_two_term_silting_count};
use siltlab_core::reduction::{
    end_ring_comparison, kunneth_check, pretilting_tor_check, endo_free_test, reduce,
    QuotientTower,
};
use siltlab_core::sampling::random_bounded_complex;
use siltlab_core::silting::{
    explore, is_presilting, is_pretilting, mutate_node, poset_compare, ExploreOptions, Side,
};
use siltlab_core::Algebra;

const SEED: u64 = 0xC0FFEE;

fn pass(criterion: usize, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

fn bundled_algebras() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![
        ("kA2", Arc::new(fixtures::a2())),
        ("k[x]/x^2", Arc::new(fixtures::local_loop(2))),
        ("kA2⊗k[t]/t^2", Arc::new(fixtures::a2_tensor(2))),
        ("kA2⊗k[t]/t^3", Arc::new(fixtures::a2_tensor(3))),
        ("B(1,1)", Arc::new(fixtures::brauer(1, 1))),
        ("B(2,1)", Arc::new(fixtures::brauer(2, 1))),
    ]
}

/// Criterion 1: hom_dim agrees exactly with the raw-system oracle at every
/// degree of the support window, over the bundled algebras and 200 seeded
/// random bounded complexes.
#[test]
fn criterion_1_hom_complex_correctness() {
    let algebras = bundled_algebras();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked_pairs = 0usize;
    let mut checked_dims = 0usize;

    let mut check_pair = |l: &ProjComplex, m: &ProjComplex| {
        let k = hom_complex(l, m).unwrap();
        let (lo, hi) = match (k.min_degree(), k.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return,
        };
        for i in lo..=hi {
            let main = hom_dim(l, m, i).unwrap();
            let oracle = oracle_hom_dim(l, m, i).unwrap();
            assert_eq!(
                main, oracle,
                "hom_dim mismatch at degree {i} over {}",
                l.algebra
            );
            checked_dims += 1;
        }
        checked_pairs += 1;
    };

    // Stalks of every bundled algebra.
    for (_, a) in &algebras {
        let c = ProjComplex::stalk(a.clone());
        check_pair(&c, &c);
    }
    // 200 random complexes, self- and cross-paired per algebra.
    let mut made = 0usize;
    let mut previous: Option<ProjComplex> = None;
    'outer: loop {
        for (_, a) in &algebras {
            let c = random_bounded_complex(a, &mut rng).unwrap();
            check_pair(&c, &c);
            if let Some(p) = previous.take() {
                if *p.algebra == **a {
                    check_pair(&p, &c);
                }
            }
            previous = Some(c);
            made += 1;
            if made == 200 {
                break 'outer;
            }
        }
    }
    pass(1, &format!("{checked_pairs} pairs, {checked_dims} degreewise comparisons, all exact"));
}

fn explore_tower_graphs(
    m: usize,
) -> (QuotientTower, siltlab_core::MutationGraph, siltlab_core::MutationGraph) {
    let lam = Arc::new(fixtures::a2_tensor(m));
    let tower = QuotientTower::new(lam).unwrap();
    let opts = ExploreOptions { depth: 3, seed: SEED, ..Default::default() };
    let g_top = explore(tower.level(m), &opts).unwrap();
    let g_bottom = explore(tower.level(1), &opts).unwrap();
    (tower, g_top, g_bottom)
}

/// Criterion 2: the silting poset of kA₂ ⊗ k[t]/(t^m) matches the level-1
/// poset through reduction: complete node bijection, edge preservation,
/// and order agreement in both directions, for m ∈ {1, 2, 3} at depth 3.
#[test]
fn criterion_2_silting_bijection() {
    let mut counts = Vec::new();
    for m in [1usize, 2, 3] {
        let (tower, g_top, g_bottom) = explore_tower_graphs(m);
        let ctx = tower.context(m, 1).unwrap();
        let report = poset_compare(&g_top, &g_bottom, &ctx).unwrap();
        assert!(report.is_bijective(), "m = {m}: unmatched nodes remain");
        assert!(report.edges_preserved, "m = {m}: an edge is not preserved");
        assert!(
            report.order_preserved_and_reflected,
            "m = {m}: order relations disagree"
        );
        assert_eq!(g_top.nodes.len(), g_bottom.nodes.len());
        counts.push(g_top.nodes.len());
    }
    assert_eq!(counts[0], counts[1]);
    assert_eq!(counts[1], counts[2]);
    pass(
        2,
        &format!(
            "complete bijections for m = 1, 2, 3 at depth 3; {} nodes in every graph",
            counts[0]
        ),
    );
}

/// Criterion 3: every node of the depth-3 level-1 graph lifts to level 3;
/// each lift round-trips, is presilting, and matches the corresponding
/// explored silting node upstairs. Zero obstructed outcomes.
#[test]
fn criterion_3_lifting_surjectivity() {
    let (tower, g_top, g_bottom) = explore_tower_graphs(3);
    let ctx = tower.context(3, 1).unwrap();
    let matching = poset_compare(&g_top, &g_bottom, &ctx).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut lifted_count = 0usize;
    for (i, node) in g_bottom.nodes.iter().enumerate() {
        let report = lift_full(&node.complex, &tower, 3).unwrap();
        let lifted = match &report.outcome {
            LiftOutcome::Lifted(l) => l,
            LiftOutcome::Obstructed(_) => panic!("node {i} met an obstruction"),
        };
        // Round trip.
        let down = reduce(&ctx, lifted).unwrap();
        assert!(
            iso_test(&down, &node.complex, &mut rng).unwrap().is_some(),
            "round trip failed for node {i}"
        );
        // Presilting upstairs.
        assert!(is_presilting(lifted).unwrap(), "lift of node {i} is not presilting");
        // Certified silting: the lift is isomorphic to the explored silting
        // node that reduces onto this one.
        let j = matching
            .node_map
            .iter()
            .position(|&target| target == i)
            .expect("bijection covers every level-1 node");
        assert!(
            iso_test(lifted, &g_top.nodes[j].complex, &mut rng).unwrap().is_some(),
            "lift of node {i} does not match its silting counterpart"
        );
        lifted_count += 1;
    }
    pass(3, &format!("{lifted_count} nodes lifted to level 3, zero obstructions"));
}

/// Criterion 4: Künneth and End-ring identities over kA₂ ⊗ k[t]/t²: exact
/// dimension equalities and two-sided ≥/⊥ equivalences on all explored
/// nodes and 100 random pairs.
#[test]
fn criterion_4_kunneth_identities() {
    let lam = Arc::new(fixtures::a2_tensor(2));
    let tower = QuotientTower::new(lam.clone()).unwrap();
    let ctx = tower.context(2, 1).unwrap();
    let g = explore(
        tower.level(2),
        &ExploreOptions { depth: 3, seed: SEED, ..Default::default() },
    )
    .unwrap();
    for node in &g.nodes {
        kunneth_check(&ctx, &node.complex, &node.complex).unwrap();
        end_ring_comparison(&ctx, &node.complex).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    for _ in 0..100 {
        let l = random_bounded_complex(&tower.level(2), &mut rng).unwrap();
        let m = random_bounded_complex(&tower.level(2), &mut rng).unwrap();
        kunneth_check(&ctx, &l, &m).unwrap();
    }
    pass(
        4,
        &format!(
            "{} nodes and 100 random pairs: all dimension identities and ≥/⊥ equivalences hold",
            g.nodes.len()
        ),
    );
}

/// Criterion 5: the mutation axioms on every explored edge, and left
/// mutation inverting right mutation (both directions are re-verified at
/// edge creation; this re-checks them explicitly on the kA₂ ⊗ k[t]/t²
/// graph).
#[test]
fn criterion_5_mutation_axioms() {
    let lam = Arc::new(fixtures::a2_tensor(2));
    let g = explore(lam, &ExploreOptions { depth: 3, seed: SEED, ..Default::default() }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    for e in &g.edges {
        let c = &g.nodes[e.from];
        let mu = &g.nodes[e.to];
        assert_eq!(c.parts.len(), mu.parts.len(), "summand counts differ along an edge");
        assert!(
            iso_test(&c.complex, &mu.complex, &mut rng).unwrap().is_none(),
            "an edge connects isomorphic nodes"
        );
        let (first, second) = match e.side {
            Side::Right => (
                relation(&c.complex, &mu.complex, Relation::Geq).unwrap(),
                relation(&mu.complex, &c.complex.shift(1), Relation::Geq).unwrap(),
            ),
            Side::Left => (
                relation(&mu.complex, &c.complex, Relation::Geq).unwrap(),
                relation(&c.complex, &mu.complex.shift(1), Relation::Geq).unwrap(),
            ),
        };
        assert!(first && second, "order chain fails on an edge");
    }
    // Left-inverts-right on every right edge (and dually): recompute the
    // replaced summand and mutate back.
    let mut inverted = 0usize;
    for e in &g.edges {
        let from = &g.nodes[e.from];
        let to = &g.nodes[e.to];
        let complement: Vec<&ProjComplex> = from
            .parts
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != e.summand)
            .map(|(_, p)| p)
            .collect();
        let mut replaced = None;
        for (idx, part) in to.parts.iter().enumerate() {
            let mut found = false;
            for c in &complement {
                if iso_test(part, c, &mut rng).unwrap().is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                replaced = Some(idx);
                break;
            }
        }
        let back_side = match e.side {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        };
        let back = mutate_node(to, replaced.expect("new summand"), back_side, &mut rng)
            .unwrap()
            .complex;
        assert!(
            iso_test(&back, &from.complex, &mut rng).unwrap().is_some(),
            "inverse mutation does not return to the source"
        );
        inverted += 1;
    }
    pass(5, &format!("{} edges satisfy the axioms; {inverted} inversions verified", g.edges.len()));
}

/// Criterion 6: two-term counts from exploration match the independent
/// census: kA₂ → 5, k[x]/x² → 2, kA₂ ⊗ k[t]/t² → 5.
#[test]
fn criterion_6_two_term_counts() {
    let cases: Vec<(&str, Arc<Algebra>, usize)> = vec![
        ("kA2", Arc::new(fixtures::a2()), 5),
        ("k[x]/x^2", Arc::new(fixtures::local_loop(2)), 2),
        ("kA2⊗k[t]/t^2", Arc::new(fixtures::a2_tensor(2)), 5),
    ];
    for (name, a, frozen) in cases {
        let census = oracle_two_term_silting_count(&a, SEED).unwrap();
        assert_eq!(census.silting_count, frozen, "{name}: census disagrees with frozen count");
        let g =
            explore(a.clone(), &ExploreOptions { depth: 3, seed: SEED, ..Default::default() })
                .unwrap();
        assert_eq!(
            g.two_term_nodes().len(),
            frozen,
            "{name}: exploration finds a different two-term count"
        );
    }
    pass(6, "two-term counts 5 / 2 / 5 reproduced by census and exploration");
}

/// Criterion 7: multiplicity independence on the Brauer graph algebras:
/// the two-term census of B(1,1) equals that of B(2,1), and every node of
/// the B(1,1) depth-2 graph is pretilting.
#[test]
fn criterion_7_brauer_multiplicity_independence() {
    let b11 = Arc::new(fixtures::brauer(1, 1));
    let b21 = Arc::new(fixtures::brauer(2, 1));
    let census11 = oracle_two_term_silting_count(&b11, SEED).unwrap();
    let census21 = oracle_two_term_silting_count(&b21, SEED).unwrap();
    assert_eq!(
        census11.silting_count, census21.silting_count,
        "two-term counts differ across multiplicities"
    );
    assert_eq!(
        census11.indecomposables.len(),
        census21.indecomposables.len(),
        "indecomposable candidate counts differ across multiplicities"
    );
    let g = explore(
        b11.clone(),
        &ExploreOptions { depth: 2, seed: SEED, ..Default::default() },
    )
    .unwrap();
    for (i, node) in g.nodes.iter().enumerate() {
        assert!(
            is_pretilting(&node.complex).unwrap(),
            "node {i} of the B(1,1) graph is not pretilting"
        );
    }
    // The explored two-term slice embeds into the census: its size cannot
    // exceed the census count (a cap violation in the enumeration would
    // surface here).
    assert!(g.two_term_nodes().len() <= census11.silting_count);
    pass(
        7,
        &format!(
            "censuses agree at {} two-term complexes; all {} explored B(1,1) nodes pretilting",
            census11.silting_count,
            g.nodes.len()
        ),
    );
}

/// Criterion 8: the pretilting Tor identity and the endo-freeness test on
/// all pretilting nodes over kA₂ ⊗ k[t]/(t^m), m = 2, 3, with the two
/// freeness computations agreeing on every input.
#[test]
fn criterion_8_pretilting_tor_and_freeness() {
    let mut total = 0usize;
    for m in [2usize, 3] {
        let lam = Arc::new(fixtures::a2_tensor(m));
        let tower = QuotientTower::new(lam).unwrap();
        let ctx1 = tower.context(m, 1).unwrap();
        let g = explore(
            tower.level(m),
            &ExploreOptions { depth: 3, seed: SEED, ..Default::default() },
        )
        .unwrap();
        for node in &g.nodes {
            if !is_pretilting(&node.complex).unwrap() {
                continue;
            }
            for n in 1..m {
                let ctx = tower.context(m, n).unwrap();
                pretilting_tor_check(&ctx, &node.complex).unwrap();
            }
            // endo_free_test cross-checks the Hom vanishing against the
            // Jordan rank test internally; a disagreement is a hard error.
            endo_free_test(&ctx1, &node.complex).unwrap();
            total += 1;
        }
    }
    assert!(total > 0, "no pretilting nodes found");
    pass(8, &format!("{total} pretilting nodes pass the Tor identity and freeness cross-check"));
}

/// Criterion 9: over 100 seeded random non-presilting complexes, lift_step
/// returns either a verified lift or a verified obstruction — never a third
/// outcome — and both branches occur.
#[test]
fn criterion_9_obstruction_contract() {
    let towers = vec![
        QuotientTower::new(Arc::new(fixtures::a2_tensor(2))).unwrap(),
        QuotientTower::new(Arc::new(fixtures::local_loop_with_central(4, 2))).unwrap(),
        QuotientTower::new(Arc::new(fixtures::local_loop_with_central(6, 3))).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut lifted = 0usize;
    let mut obstructed = 0usize;
    let mut attempts = 0usize;
    while lifted + obstructed < 100 {
        attempts += 1;
        assert!(attempts < 3000, "random generator failed to produce enough inputs");
        let tower = &towers[attempts % towers.len()];
        let base = tower.level(1);
        let c = random_bounded_complex(&base, &mut rng).unwrap();
        if c.is_zero() || is_presilting(&c).unwrap() {
            continue;
        }
        let report = lift_step(&c, tower.step(1)).unwrap();
        match report.outcome {
            LiftOutcome::Lifted(l) => {
                // lift_step verified d² = 0 and the exact round trip; spot
                // re-verify the reduction here.
                let down = reduce(tower.step(1), &l).unwrap();
                let mut check_rng = ChaCha8Rng::seed_from_u64(SEED ^ 91);
                assert!(iso_test(&down, &c, &mut check_rng).unwrap().is_some());
                lifted += 1;
            }
            LiftOutcome::Obstructed(o) => {
                assert!(o.unsolvable_certified, "obstruction lacks the solver certificate");
                assert!(o.h2_dim > 0, "obstruction class lives in a zero H²");
                assert!(!o.cocycle.is_empty(), "empty obstruction cocycle");
                obstructed += 1;
            }
        }
    }
    assert!(lifted > 0, "lifted branch never exercised");
    assert!(obstructed > 0, "obstructed branch never exercised");
    pass(9, &format!("100 non-presilting inputs: {lifted} lifted, {obstructed} obstructed, no third outcome"));
}
