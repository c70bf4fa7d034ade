//! Executable structural invariants. Each check takes a finished analysis
//! and reports the first violation it finds; together they are the
//! machine-checkable content of the theory behind the pipeline.

use crate::classify::{analyze, Analysis};
use crate::diagram::IncidenceKind;
use crate::error::Result;
use crate::pd::PDCode;

type Check = fn(&Analysis) -> std::result::Result<(), String>;

/// Every per-diagram invariant, by name. Order is stable for reporting.
pub const CHECKS: &[(&str, Check)] = &[
    ("region-count", region_count),
    ("arc-balance", arc_balance),
    ("incidence-shape", incidence_shape),
    ("spaces-count", spaces_count),
    ("nesting-shape", nesting_shape),
    ("degree-balance", degree_balance),
    ("components-match-spaces", components_match_spaces),
    ("cycle-cover", cycle_cover),
    ("three-way-agreement", three_way_agreement),
    ("alternative-implies-homogeneous", implication),
    ("block-partition", block_partition),
    ("block-heights", block_heights),
    ("block-in-one-subgraph", block_in_one_subgraph),
    ("subgraph-partition", subgraph_partition),
    ("seifert-bipartite", seifert_bipartite),
];

/// Run every invariant on one analysis.
pub fn check_all(analysis: &Analysis) -> Vec<(&'static str, std::result::Result<(), String>)> {
    CHECKS
        .iter()
        .map(|&(name, f)| (name, f(analysis)))
        .collect()
}

/// Run every invariant and fail on the first violation.
pub fn assert_all(analysis: &Analysis) -> std::result::Result<(), String> {
    for (name, res) in check_all(analysis) {
        res.map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

/// Verdicts must not change under mirroring or any outer-region choice.
pub fn verdict_invariance(pd: &PDCode) -> Result<std::result::Result<(), String>> {
    let base = analyze(pd, None)?.verdict;
    let mirrored = analyze(&pd.mirror(), None)?.verdict;
    if (base.homogeneous, base.alternative) != (mirrored.homogeneous, mirrored.alternative) {
        return Ok(Err(format!(
            "mirror changed the verdict of {}: ({}, {}) vs ({}, {})",
            base.name, base.homogeneous, base.alternative, mirrored.homogeneous,
            mirrored.alternative
        )));
    }
    // One representative dart per region covers every outer choice.
    let reference = analyze(pd, None)?;
    for region in &reference.diagram.regions {
        let Some(&dart) = region.boundary.first() else {
            continue;
        };
        let v = analyze(pd, Some(dart))?.verdict;
        if (v.homogeneous, v.alternative) != (base.homogeneous, base.alternative) {
            return Ok(Err(format!(
                "outer region {} changed the verdict of {}",
                region.id, base.name
            )));
        }
    }
    Ok(Ok(()))
}

fn region_count(a: &Analysis) -> std::result::Result<(), String> {
    let n = a.diagram.crossing_count();
    let got = a.diagram.region_count();
    if got == n + 2 {
        Ok(())
    } else {
        Err(format!("{got} regions for {n} crossings"))
    }
}

fn arc_balance(a: &Analysis) -> std::result::Result<(), String> {
    for r in 0..a.diagram.region_count() {
        let (arcs_in, arcs_out) = a.diagram.arc_balance(r);
        if arcs_in != arcs_out {
            return Err(format!("region {r}: {arcs_in} arcs in, {arcs_out} out"));
        }
    }
    Ok(())
}

fn incidence_shape(a: &Analysis) -> std::result::Result<(), String> {
    for c in 0..a.diagram.crossing_count() {
        let corners = &a.diagram.incidences[4 * c..4 * c + 4];
        let intos = corners.iter().filter(|i| i.kind == IncidenceKind::Into).count();
        let outs = corners.iter().filter(|i| i.kind == IncidenceKind::OutOf).count();
        if intos != 1 || outs != 1 {
            return Err(format!("crossing {c}: {intos} Into, {outs} OutOf corners"));
        }
        let into = corners.iter().find(|i| i.kind == IncidenceKind::Into).unwrap();
        let out = corners.iter().find(|i| i.kind == IncidenceKind::OutOf).unwrap();
        if a.diagram.regions[into.region].color != a.diagram.regions[out.region].color {
            return Err(format!("crossing {c}: Into and OutOf regions differ in color"));
        }
    }
    Ok(())
}

fn spaces_count(a: &Analysis) -> std::result::Result<(), String> {
    let spaces = a.seifert.spaces.len();
    let circles = a.seifert.circle_count();
    if spaces == circles + 1 {
        Ok(())
    } else {
        Err(format!("{spaces} spaces for {circles} circles"))
    }
}

/// A space of height k is bounded outside by a circle of height k and inside
/// by circles of height k + 1; the root is the unbounded space at height -1.
fn nesting_shape(a: &Analysis) -> std::result::Result<(), String> {
    let s = &a.seifert;
    let root = s.tree.root_space;
    if s.spaces[root].height != -1 || s.spaces[root].outer_circle.is_some() {
        return Err(format!("root space {root} is not the unbounded space"));
    }
    for sp in &s.spaces {
        match sp.outer_circle {
            None if sp.id != root => return Err(format!("space {} has no outer circle", sp.id)),
            None => {}
            Some(c) => {
                if s.circles[c].height as i64 != sp.height {
                    return Err(format!(
                        "space {} at height {} bounded by circle of height {}",
                        sp.id, sp.height, s.circles[c].height
                    ));
                }
            }
        }
        for &c in &sp.inner_circles {
            if s.circles[c].height as i64 != sp.height + 1 {
                return Err(format!(
                    "space {} at height {} contains circle of height {}",
                    sp.id, sp.height, s.circles[c].height
                ));
            }
        }
    }
    Ok(())
}

fn degree_balance(a: &Analysis) -> std::result::Result<(), String> {
    for (v, (dp, dm)) in a.spatial.balance().into_iter().enumerate() {
        if dp != dm {
            return Err(format!("vertex {v}: out-degree {dp}, in-degree {dm}"));
        }
    }
    Ok(())
}

fn components_match_spaces(a: &Analysis) -> std::result::Result<(), String> {
    let comps = a.spatial.components();
    let spaces = a.seifert.space_partition();
    if comps == spaces {
        Ok(())
    } else {
        Err(format!(
            "component partition {comps:?} differs from space partition {spaces:?}"
        ))
    }
}

fn cycle_cover(a: &Analysis) -> std::result::Result<(), String> {
    let cycles = a.spatial.cycle_decomposition().map_err(|e| e.to_string())?;
    let mut covered = vec![0usize; a.spatial.edges.len()];
    for cycle in &cycles {
        if cycle.is_empty() {
            return Err("empty cycle".into());
        }
        // Closed directed walk with distinct vertices.
        let mut verts = Vec::new();
        for window in 0..cycle.len() {
            let e = &a.spatial.edges[cycle[window]];
            let next = &a.spatial.edges[cycle[(window + 1) % cycle.len()]];
            if e.to != next.from {
                return Err(format!("cycle {cycle:?} is not a directed walk"));
            }
            verts.push(e.from);
            covered[cycle[window]] += 1;
        }
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != cycle.len() {
            return Err(format!("cycle {cycle:?} repeats a vertex"));
        }
    }
    if let Some(e) = covered.iter().position(|&c| c != 1) {
        return Err(format!("edge {e} covered {} times", covered[e]));
    }
    Ok(())
}

fn three_way_agreement(a: &Analysis) -> std::result::Result<(), String> {
    let m = a.verdict.methods;
    if m.spaces == m.spatial && m.spaces == m.heights {
        Ok(())
    } else {
        Err(format!(
            "spaces={} spatial={} heights={}",
            m.spaces, m.spatial, m.heights
        ))
    }
}

fn implication(a: &Analysis) -> std::result::Result<(), String> {
    if a.verdict.alternative && !a.verdict.homogeneous {
        Err("alternative diagram reported non-homogeneous".into())
    } else {
        Ok(())
    }
}

fn block_partition(a: &Analysis) -> std::result::Result<(), String> {
    let mut covered = vec![0usize; a.labeled.edges.len()];
    for b in &a.blocks {
        for &e in &b.edges {
            covered[e] += 1;
        }
    }
    if let Some(e) = covered.iter().position(|&c| c != 1) {
        return Err(format!("edge {e} lies in {} blocks", covered[e]));
    }
    Ok(())
}

fn block_heights(a: &Analysis) -> std::result::Result<(), String> {
    for b in &a.blocks {
        let hs: Vec<usize> = b.vertices.iter().map(|&v| a.labeled.heights[v]).collect();
        let max = *hs.iter().max().unwrap();
        let below = hs.iter().filter(|&&h| h + 1 == max).count();
        let at = hs.iter().filter(|&&h| h == max).count();
        if below > 1 || below + at != hs.len() {
            return Err(format!("block {} has heights {hs:?}", b.id));
        }
    }
    Ok(())
}

fn block_in_one_subgraph(a: &Analysis) -> std::result::Result<(), String> {
    for b in &a.blocks {
        let contained = a
            .subgraphs
            .iter()
            .any(|sub| b.edges.iter().all(|e| sub.edges.contains(e)));
        if !contained {
            return Err(format!("block {} fits in no single height subgraph", b.id));
        }
    }
    Ok(())
}

fn subgraph_partition(a: &Analysis) -> std::result::Result<(), String> {
    let mut covered = vec![0usize; a.labeled.edges.len()];
    for sub in &a.subgraphs {
        for &e in &sub.edges {
            covered[e] += 1;
        }
    }
    if let Some(e) = covered.iter().position(|&c| c != 1) {
        return Err(format!(
            "edge {e} lies in {} height subgraphs",
            covered[e]
        ));
    }
    Ok(())
}

fn seifert_bipartite(a: &Analysis) -> std::result::Result<(), String> {
    let n = a.labeled.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &a.labeled.edges {
        if e.a == e.b {
            return Err(format!("marker {} joins a circle to itself", e.crossing));
        }
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let mut side = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                match side[w] {
                    None => {
                        side[w] = Some(!side[v].unwrap());
                        stack.push(w);
                    }
                    Some(s) if s == side[v].unwrap() => {
                        return Err(format!("odd cycle through circles {v} and {w}"));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::analyze;
    use crate::corpus;
    use crate::gen::{random_diagram, seeded_rng};

    #[test]
    fn corpus_satisfies_all_invariants() {
        for pd in corpus::parse_all() {
            let a = analyze(&pd, None).unwrap();
            assert_all(&a).unwrap_or_else(|e| panic!("{}: {e}", pd.name.as_deref().unwrap()));
        }
    }

    #[test]
    fn random_diagrams_satisfy_all_invariants() {
        let mut rng = seeded_rng(11);
        for i in 0..200 {
            let pd = random_diagram(&mut rng, 8);
            let a = analyze(&pd, None).unwrap();
            assert_all(&a).unwrap_or_else(|e| panic!("seed 11 diagram {i} ({pd}): {e}"));
        }
    }

    #[test]
    fn corpus_verdicts_are_invariant() {
        for pd in corpus::parse_all() {
            verdict_invariance(&pd).unwrap().unwrap();
        }
    }
}
