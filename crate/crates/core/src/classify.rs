//! Homogeneity and alternativity verdicts.
//!
//! Alternativity is decided three independent ways: marker types per space,
//! edge signs per component of the checkerboard digraph, and edge signs per
//! component of each height subgraph. The three must agree on every diagram;
//! disagreement is an internal failure, never a reported verdict. A diagram
//! that is alternative is homogeneous, and that implication is also enforced.

use serde::Serialize;

use crate::diagram::{CrossingId, DartId, Diagram, RegionId, Sign};
use crate::error::{Error, Result};
use crate::graphs::{
    blocks, height_subgraphs, subgraph_components, Block, HeightSubgraph, LabeledSeifertGraph,
    SpatialGraph,
};
use crate::pd::PDCode;
use crate::seifert::{CircleId, SeifertDiagram, SpaceId};

/// The offending object behind a negative verdict, lexicographically least
/// by ids so output is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A block of the Seifert graph carrying both signs.
    MixedBlock {
        block: usize,
        crossing_a: CrossingId,
        crossing_b: CrossingId,
    },
    /// A space whose markers carry both signs.
    MixedSpace {
        space: SpaceId,
        crossing_a: CrossingId,
        crossing_b: CrossingId,
    },
    /// A component of the checkerboard digraph carrying both signs.
    MixedComponent {
        region: RegionId,
        crossing_a: CrossingId,
        crossing_b: CrossingId,
    },
    /// A component of a height subgraph carrying both signs.
    MixedHeightComponent {
        subgraph: usize,
        circle: CircleId,
        crossing_a: CrossingId,
        crossing_b: CrossingId,
    },
}

/// Per-characterization booleans for alternativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MethodResults {
    pub spaces: bool,
    pub spatial: bool,
    pub heights: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub homogeneous: bool,
    pub alternative: bool,
    pub methods: MethodResults,
    pub witness: Option<Witness>,
}

/// Find the least mixed-sign pair in a sign-carrying edge group: the lowest
/// crossing, and the lowest crossing of the other sign.
fn mixed_pair(group: &[(CrossingId, Sign)]) -> Option<(CrossingId, CrossingId)> {
    let mut sorted = group.to_vec();
    sorted.sort_by_key(|&(c, _)| c);
    let (first, sign) = *sorted.first()?;
    sorted
        .iter()
        .find(|&&(_, s)| s != sign)
        .map(|&(other, _)| (first, other))
}

/// Every block of the Seifert graph must carry a single sign.
pub fn is_homogeneous(
    graph: &LabeledSeifertGraph,
    blocks: &[Block],
) -> (bool, Option<Witness>) {
    for b in blocks {
        let group: Vec<(CrossingId, Sign)> = b
            .edges
            .iter()
            .map(|&e| (graph.edges[e].crossing, graph.edges[e].sign))
            .collect();
        if let Some((a, x)) = mixed_pair(&group) {
            return (
                false,
                Some(Witness::MixedBlock {
                    block: b.id,
                    crossing_a: a,
                    crossing_b: x,
                }),
            );
        }
    }
    (true, None)
}

/// No space of the Seifert diagram may contain markers of both types.
pub fn alternative_by_spaces(seifert: &SeifertDiagram) -> (bool, Option<Witness>) {
    for space in &seifert.spaces {
        let group: Vec<(CrossingId, Sign)> = seifert
            .markers
            .iter()
            .filter(|m| m.space == space.id)
            .map(|m| (m.crossing, m.sign))
            .collect();
        if let Some((a, b)) = mixed_pair(&group) {
            return (
                false,
                Some(Witness::MixedSpace {
                    space: space.id,
                    crossing_a: a,
                    crossing_b: b,
                }),
            );
        }
    }
    (true, None)
}

/// Every connected component of the checkerboard digraph must carry a single
/// sign. A walk mixing signs exists exactly when some component mixes signs,
/// since any two edges of a component are joined by a walk.
pub fn alternative_by_spatial(phi: &SpatialGraph) -> (bool, Option<Witness>) {
    let components = phi.components();
    let mut component_of = vec![usize::MAX; phi.vertex_count()];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = i;
        }
    }
    for (i, comp) in components.iter().enumerate() {
        let group: Vec<(CrossingId, Sign)> = phi
            .edges
            .iter()
            .filter(|e| component_of[e.from] == i)
            .map(|e| (e.crossing, e.sign))
            .collect();
        if let Some((a, b)) = mixed_pair(&group) {
            return (
                false,
                Some(Witness::MixedComponent {
                    region: comp[0],
                    crossing_a: a,
                    crossing_b: b,
                }),
            );
        }
    }
    (true, None)
}

/// Every connected component of every height subgraph must carry a single
/// sign.
pub fn alternative_by_heights(
    graph: &LabeledSeifertGraph,
    subgraphs: &[HeightSubgraph],
) -> (bool, Option<Witness>) {
    for sub in subgraphs {
        let pairs: Vec<(usize, usize)> = sub
            .edges
            .iter()
            .map(|&e| (graph.edges[e].a, graph.edges[e].b))
            .collect();
        let components = subgraph_components(&sub.vertices, &pairs);
        for comp in components {
            let group: Vec<(CrossingId, Sign)> = sub
                .edges
                .iter()
                .map(|&e| &graph.edges[e])
                .filter(|e| comp.binary_search(&e.a).is_ok())
                .map(|e| (e.crossing, e.sign))
                .collect();
            if let Some((a, b)) = mixed_pair(&group) {
                return (
                    false,
                    Some(Witness::MixedHeightComponent {
                        subgraph: sub.index,
                        circle: comp[0],
                        crossing_a: a,
                        crossing_b: b,
                    }),
                );
            }
        }
    }
    (true, None)
}

/// The full pipeline output for one diagram.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub pd: PDCode,
    pub diagram: Diagram,
    pub seifert: SeifertDiagram,
    pub spatial: SpatialGraph,
    pub labeled: LabeledSeifertGraph,
    pub blocks: Vec<Block>,
    pub subgraphs: Vec<HeightSubgraph>,
    pub verdict: Verdict,
}

/// Run everything on a parsed PD code. `outer_dart` overrides the
/// outer-region choice.
pub fn analyze(pd: &PDCode, outer_dart: Option<DartId>) -> Result<Analysis> {
    let diagram = Diagram::build_with_outer(pd, outer_dart)?;
    let seifert = SeifertDiagram::build(&diagram)?;
    let spatial = SpatialGraph::build(&diagram);
    let labeled = LabeledSeifertGraph::build(&seifert);
    let bs = blocks(&labeled);
    let subgraphs = height_subgraphs(&labeled);

    let (homogeneous, block_witness) = is_homogeneous(&labeled, &bs);
    let (alt_spaces, space_witness) = alternative_by_spaces(&seifert);
    let (alt_spatial, _) = alternative_by_spatial(&spatial);
    let (alt_heights, _) = alternative_by_heights(&labeled, &subgraphs);

    let methods = MethodResults {
        spaces: alt_spaces,
        spatial: alt_spatial,
        heights: alt_heights,
    };
    let name = pd.name.clone().unwrap_or_else(|| "unnamed".into());
    if alt_spaces != alt_spatial || alt_spaces != alt_heights {
        return Err(Error::Internal(format!(
            "alternativity characterizations disagree on {name}: \
             spaces={alt_spaces} spatial={alt_spatial} heights={alt_heights}; pd: {pd}"
        )));
    }
    let alternative = alt_spaces;
    if alternative && !homogeneous {
        return Err(Error::Internal(format!(
            "{name} is alternative but not homogeneous; pd: {pd}"
        )));
    }

    let witness = if !homogeneous {
        block_witness
    } else if !alternative {
        space_witness
    } else {
        None
    };

    let verdict = Verdict {
        name,
        homogeneous,
        alternative,
        methods,
        witness,
    };
    Ok(Analysis {
        pd: pd.clone(),
        diagram,
        seifert,
        spatial,
        labeled,
        blocks: bs,
        subgraphs,
        verdict,
    })
}

/// Classify a diagram with the default outer-region choice.
pub fn classify(pd: &PDCode) -> Result<Verdict> {
    analyze(pd, None).map(|a| a.verdict)
}
