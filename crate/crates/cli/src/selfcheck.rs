//! The selfcheck subcommand: run every structural invariant, the three-way
//! agreement, and the mirror/outer metamorphic checks over the built-in
//! corpus plus freshly generated random diagrams.

use std::process::ExitCode;

use knot_alt_core::gen::{random_diagram, seeded_rng};
use knot_alt_core::invariants;
use knot_alt_core::{analyze, corpus, Error, PDCode};

const DEFAULT_SEED: u64 = 1729;
const MAX_CROSSINGS: usize = 8;

pub fn run(seed: Option<u64>, count: usize) -> Result<ExitCode, Error> {
    let seed = seed
        .or_else(|| {
            std::env::var("KNOT_ALT_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_SEED);

    let mut diagrams: Vec<PDCode> = corpus::parse_all();
    let corpus_count = diagrams.len();
    let mut rng = seeded_rng(seed);
    for i in 0..count {
        diagrams.push(random_diagram(&mut rng, MAX_CROSSINGS).with_name(format!("random_{i}")));
    }

    let mut failures = 0usize;
    let mut per_check: Vec<(&'static str, usize, Option<String>)> = invariants::CHECKS
        .iter()
        .map(|&(name, _)| (name, 0usize, None))
        .collect();
    let mut metamorphic_ok = 0usize;
    let mut metamorphic_failure: Option<String> = None;

    for pd in &diagrams {
        let name = pd.name.clone().unwrap_or_default();
        let analysis = match analyze(pd, None) {
            Ok(a) => a,
            Err(e) => {
                println!("analysis of {name} failed: {e}");
                failures += 1;
                continue;
            }
        };
        for (slot, (check_name, result)) in invariants::check_all(&analysis).into_iter().enumerate()
        {
            match result {
                Ok(()) => per_check[slot].1 += 1,
                Err(msg) => {
                    failures += 1;
                    per_check[slot]
                        .2
                        .get_or_insert_with(|| format!("{name}: {msg}"));
                    let _ = check_name;
                }
            }
        }
        match invariants::verdict_invariance(pd) {
            Ok(Ok(())) => metamorphic_ok += 1,
            Ok(Err(msg)) => {
                failures += 1;
                metamorphic_failure.get_or_insert(msg);
            }
            Err(e) => {
                failures += 1;
                metamorphic_failure.get_or_insert_with(|| format!("{name}: {e}"));
            }
        }
    }

    for (check, ok, failure) in &per_check {
        match failure {
            None => println!("{check}: ok ({ok} diagrams)"),
            Some(msg) => println!("{check}: FAILED ({msg})"),
        }
    }
    match &metamorphic_failure {
        None => println!("mirror-and-outer-invariance: ok ({metamorphic_ok} diagrams)"),
        Some(msg) => println!("mirror-and-outer-invariance: FAILED ({msg})"),
    }

    if failures == 0 {
        println!(
            "all invariants hold ({count} random + {corpus_count} corpus, seed {seed})"
        );
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failures} invariant failure(s); reproduce with --seed {seed}");
        Ok(ExitCode::from(2))
    }
}
