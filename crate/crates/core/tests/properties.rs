//! Property tests and independent oracles for the pipeline.

use proptest::prelude::*;

use knot_alt_core::gen::{random_diagram, seeded_rng};
use knot_alt_core::{analyze, corpus, parse_pd, Analysis};

/// Independent height oracle. A region lies inside a circle exactly when a
/// path from the outer region crosses that circle an odd number of times.
/// Paths move between adjacent regions: across an edge (crossing that edge's
/// circle once) or through the channel opened at a crossing (crossing
/// nothing). A circle's height is then the number of other circles
/// containing any region adjacent to it.
fn parity_heights(a: &Analysis) -> Vec<usize> {
    let n_circles = a.seifert.circle_count();
    assert!(n_circles <= 64, "bitmask oracle limited to 64 circles");
    let n_regions = a.diagram.region_count();

    let mut adjacency: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n_regions];
    for e in a.diagram.map.edge_labels() {
        let l = a.diagram.left_region(e);
        let r = a.diagram.right_region(e);
        let bit = 1u64 << a.seifert.circle_of_edge(e);
        adjacency[l].push((r, bit));
        adjacency[r].push((l, bit));
    }
    for c in 0..a.diagram.crossing_count() {
        let i = a.diagram.into_region(c);
        let o = a.diagram.outof_region(c);
        adjacency[i].push((o, 0));
        adjacency[o].push((i, 0));
    }

    let mut parity = vec![u64::MAX; n_regions];
    parity[a.diagram.outer_region] = 0;
    let mut queue = std::collections::VecDeque::from([a.diagram.outer_region]);
    while let Some(r) = queue.pop_front() {
        for &(other, bit) in &adjacency[r] {
            if parity[other] == u64::MAX {
                parity[other] = parity[r] ^ bit;
                queue.push_back(other);
            }
        }
    }
    assert!(parity.iter().all(|&p| p != u64::MAX), "region graph connected");

    a.seifert
        .circles
        .iter()
        .map(|circle| {
            let witness = a.diagram.left_region(circle.edges[0]);
            let inside = parity[witness] & !(1u64 << circle.id);
            inside.count_ones() as usize
        })
        .collect()
}

#[test]
fn tree_heights_match_parity_oracle_on_corpus() {
    for pd in corpus::parse_all() {
        if pd.crossing_count() == 0 {
            continue;
        }
        let a = analyze(&pd, None).unwrap();
        let tree: Vec<usize> = a.seifert.circles.iter().map(|c| c.height).collect();
        assert_eq!(tree, parity_heights(&a), "{:?}", pd.name);
    }
}

#[test]
fn tree_heights_match_parity_oracle_on_random_diagrams() {
    let mut rng = seeded_rng(3);
    for i in 0..300 {
        let pd = random_diagram(&mut rng, 8);
        let a = analyze(&pd, None).unwrap();
        let tree: Vec<usize> = a.seifert.circles.iter().map(|c| c.height).collect();
        assert_eq!(tree, parity_heights(&a), "seed 3 diagram {i}: {pd}");
    }
}

#[test]
fn tree_heights_match_parity_oracle_under_outer_overrides() {
    for name in ["3_1", "4_1", "8_19", "9_43_1", "10_138"] {
        let pd = corpus::by_name(name).unwrap().pd().unwrap();
        for dart in 0..4 * pd.crossing_count() {
            let a = analyze(&pd, Some(dart)).unwrap();
            let tree: Vec<usize> = a.seifert.circles.iter().map(|c| c.height).collect();
            assert_eq!(tree, parity_heights(&a), "{name} dart {dart}");
        }
    }
}

#[test]
fn random_verdicts_are_mirror_and_outer_invariant() {
    let mut rng = seeded_rng(5);
    for _ in 0..150 {
        let pd = random_diagram(&mut rng, 8);
        knot_alt_core::invariants::verdict_invariance(&pd)
            .unwrap()
            .unwrap_or_else(|e| panic!("{pd}: {e}"));
    }
}

#[test]
fn block_partition_is_independent_of_vertex_labels() {
    use knot_alt_core::graphs::block_edge_partition;
    let mut rng = seeded_rng(9);
    for _ in 0..100 {
        let pd = random_diagram(&mut rng, 8);
        let a = analyze(&pd, None).unwrap();
        let n = a.labeled.vertex_count();
        let pairs: Vec<(usize, usize)> = a.labeled.edges.iter().map(|e| (e.a, e.b)).collect();
        let base = normalize(block_edge_partition(n, &pairs));
        // Relabel the vertices by reversal; the edge partition must not move.
        let relabeled: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(u, v)| (n - 1 - u, n - 1 - v))
            .collect();
        let permuted = normalize(block_edge_partition(n, &relabeled));
        assert_eq!(base, permuted, "{pd}");
    }
}

fn normalize(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

#[test]
fn single_signed_blocks_of_either_sign_stay_homogeneous() {
    // Uniform bundles of opposite signs hanging off one circle: homogeneity
    // is per block, so the verdict must hold even though the signs differ
    // across blocks.
    let pd = knot_alt_core::gen::circle_tree(
        &[0, 0],
        &[vec![true, true, true], vec![false, false, false]],
    )
    .unwrap();
    let v = analyze(&pd, None).unwrap().verdict;
    assert!(v.homogeneous);
    assert!(!v.alternative);
}

proptest! {
    /// parse . serialize is the identity on parsed codes.
    #[test]
    fn parse_serialize_parse_identity(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let pd = random_diagram(&mut rng, 8);
        let text = pd.to_string();
        if let Ok(first) = parse_pd(&text) {
            prop_assert_eq!(first.crossings.clone(), pd.crossings.clone());
            let second = parse_pd(&first.to_string()).unwrap();
            prop_assert_eq!(first, second);
        }
    }

    /// Generated diagrams keep their crossing budget and analyze cleanly.
    #[test]
    fn generated_diagrams_analyze(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let pd = random_diagram(&mut rng, 8);
        prop_assert!(pd.crossing_count() >= 1 && pd.crossing_count() <= 8);
        let a = analyze(&pd, None).unwrap();
        prop_assert_eq!(a.diagram.region_count(), pd.crossing_count() + 2);
        knot_alt_core::invariants::assert_all(&a).unwrap();
    }

    /// The parser must reject or accept arbitrary text without panicking.
    #[test]
    fn parser_never_panics(text in "[ X\\[\\],0-9UNKOT#\n]{0,80}") {
        let _ = parse_pd(&text);
    }
}
