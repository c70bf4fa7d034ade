//! Acceptance suite: one test per criterion, over the built-in corpus plus
//! 500 seeded random diagrams of at most 8 crossings. Run with
//! `cargo test -p knot-alt-core --test acceptance`.

use std::time::Instant;

use knot_alt_core::classify::{alternative_by_spaces, alternative_by_spatial};
use knot_alt_core::gen::{random_diagram, seeded_rng};
use knot_alt_core::graphs::SpatialGraph;
use knot_alt_core::invariants;
use knot_alt_core::{analyze, corpus, Analysis, PDCode, Sign};

const RANDOM_COUNT: usize = 500;
const RANDOM_SEED: u64 = 20_240_817;
const MAX_CROSSINGS: usize = 8;

fn all_inputs() -> Vec<PDCode> {
    let mut inputs = corpus::parse_all();
    let mut rng = seeded_rng(RANDOM_SEED);
    for i in 0..RANDOM_COUNT {
        inputs.push(random_diagram(&mut rng, MAX_CROSSINGS).with_name(format!("random_{i}")));
    }
    inputs
}

fn analyses() -> Vec<Analysis> {
    all_inputs()
        .iter()
        .map(|pd| analyze(pd, None).unwrap_or_else(|e| panic!("{:?}: {e}", pd.name)))
        .collect()
}

fn name(a: &Analysis) -> &str {
    a.verdict.name.as_str()
}

#[test]
fn criterion_1_balance_everywhere() {
    let start = Instant::now();
    let analyses = analyses();
    for a in &analyses {
        for (v, (dp, dm)) in a.spatial.balance().into_iter().enumerate() {
            assert_eq!(dp, dm, "{}: vertex {v} unbalanced", name(a));
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "balance suite took {elapsed:?}, budget is 10 s"
    );
    println!(
        "criterion 1 PASS: degree balance on {} diagrams in {elapsed:?}",
        analyses.len()
    );
}

#[test]
fn criterion_2_component_partition_equals_space_partition() {
    let analyses = analyses();
    for a in &analyses {
        assert_eq!(
            a.spatial.components(),
            a.seifert.space_partition(),
            "{}: graph components differ from union-find spaces",
            name(a)
        );
    }
    println!(
        "criterion 2 PASS: partition equality on {} diagrams",
        analyses.len()
    );
}

#[test]
fn criterion_3_three_way_agreement_with_fault_injection() {
    let analyses = analyses();
    for a in &analyses {
        let m = a.verdict.methods;
        assert!(
            m.spaces == m.spatial && m.spaces == m.heights,
            "{}: {m:?}",
            name(a)
        );
    }

    // Fault injection: a sign-convention bug in the checkerboard-digraph
    // path collapses every edge sign to one value. The agreement suite must
    // notice on a diagram with a mixed space.
    let fixture = corpus::by_name("9_43_1").unwrap().pd().unwrap();
    let a = analyze(&fixture, None).unwrap();
    let mut corrupted = SpatialGraph::build(&a.diagram);
    for e in &mut corrupted.edges {
        e.sign = Sign::Negative;
    }
    let (by_spaces, _) = alternative_by_spaces(&a.seifert);
    let (faulty, _) = alternative_by_spatial(&corrupted);
    assert!(
        by_spaces != faulty,
        "sign-convention fault was not caught by the agreement suite"
    );
    println!(
        "criterion 3 PASS: agreement on {} diagrams; injected fault detected",
        analyses.len()
    );
}

#[test]
fn criterion_4_fixture_verdicts() {
    let expected = [
        ("9_43_1", true, Some(false)),
        ("9_43_2", true, Some(true)),
        ("10_161_a", true, None),
        ("10_161_b", false, None),
        ("8_19", true, None),
    ];
    for (name, homogeneous, alternative) in expected {
        let pd = corpus::by_name(name).unwrap().pd().unwrap();
        let a = analyze(&pd, None).unwrap();
        assert_eq!(
            a.verdict.homogeneous, homogeneous,
            "{name}: homogeneous mismatch"
        );
        if let Some(alt) = alternative {
            assert_eq!(a.verdict.alternative, alt, "{name}: alternative mismatch");
        }
    }
    println!("criterion 4 PASS: fixture verdicts match");
}

#[test]
fn criterion_5_minimal_alternating_diagrams() {
    for name in corpus::ALTERNATING {
        let pd = corpus::by_name(name).unwrap().pd().unwrap();
        let v = analyze(&pd, None).unwrap().verdict;
        assert!(v.alternative, "{name} must be alternative");
        assert!(v.homogeneous, "{name} must be homogeneous");
    }
    println!(
        "criterion 5 PASS: {} alternating diagrams are alternative and homogeneous",
        corpus::ALTERNATING.len()
    );
}

#[test]
fn criterion_6_structural_invariants() {
    let analyses = analyses();
    for a in &analyses {
        let n = a.diagram.crossing_count();
        assert_eq!(a.diagram.region_count(), n + 2, "{}", name(a));
        assert_eq!(
            a.seifert.spaces.len(),
            a.seifert.circle_count() + 1,
            "{}",
            name(a)
        );
        for r in 0..a.diagram.region_count() {
            let (arcs_in, arcs_out) = a.diagram.arc_balance(r);
            assert_eq!(arcs_in, arcs_out, "{}: region {r}", name(a));
        }
        for (check, result) in invariants::check_all(a) {
            result.unwrap_or_else(|e| panic!("{}: {check}: {e}", name(a)));
        }
    }
    println!(
        "criterion 6 PASS: structural invariants on {} diagrams",
        analyses.len()
    );
}

#[test]
fn criterion_7_mirror_and_outer_metamorphic() {
    for pd in corpus::parse_all() {
        invariants::verdict_invariance(&pd)
            .unwrap()
            .unwrap_or_else(|e| panic!("{e}"));
    }
    println!("criterion 7 PASS: verdicts invariant under mirror and outer choice");
}

#[test]
fn criterion_8_cycle_decomposition_covers_every_edge() {
    let analyses = analyses();
    for a in &analyses {
        let cycles = a.spatial.cycle_decomposition().unwrap();
        let mut covered = vec![0usize; a.spatial.edges.len()];
        for cycle in &cycles {
            for &e in cycle {
                covered[e] += 1;
            }
        }
        assert!(
            covered.iter().all(|&c| c == 1),
            "{}: coverage {covered:?}",
            name(a)
        );
    }
    println!(
        "criterion 8 PASS: cycle decompositions cover every edge once on {} diagrams",
        analyses.len()
    );
}
