//! Graphs derived from a diagram: the enhanced checkerboard digraph, the
//! (labeled) Seifert graph, block decompositions, height subgraphs, and the
//! cycle decomposition of the checkerboard digraph.

use crate::diagram::{Color, CrossingId, Diagram, RegionId, Sign};
use crate::error::{Error, Result};
use crate::seifert::{CircleId, SeifertDiagram};

/// Signed planar digraph on the checkerboard-colored regions: one vertex per
/// region, one edge per crossing directed from the crossing's OutOf region to
/// its Into region. Loops occur when the two coincide.
#[derive(Debug, Clone)]
pub struct SpatialGraph {
    pub vertices: Vec<SpatialVertex>,
    pub edges: Vec<SpatialEdge>,
}

#[derive(Debug, Clone, Copy)]
pub struct SpatialVertex {
    pub region: RegionId,
    pub color: Color,
}

#[derive(Debug, Clone, Copy)]
pub struct SpatialEdge {
    pub crossing: CrossingId,
    pub from: RegionId,
    pub to: RegionId,
    pub sign: Sign,
}

impl SpatialGraph {
    pub fn build(diagram: &Diagram) -> SpatialGraph {
        let vertices = diagram
            .regions
            .iter()
            .map(|r| SpatialVertex {
                region: r.id,
                color: r.color,
            })
            .collect();
        let edges = (0..diagram.crossing_count())
            .map(|c| SpatialEdge {
                crossing: c,
                from: diagram.outof_region(c),
                to: diagram.into_region(c),
                sign: diagram.signs[c],
            })
            .collect();
        SpatialGraph { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// (out-degree, in-degree) per vertex; a loop counts once toward each.
    pub fn balance(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.vertices.len()];
        for e in &self.edges {
            deg[e.from].0 += 1;
            deg[e.to].1 += 1;
        }
        deg
    }

    /// Connected components ignoring direction, including isolated vertices.
    /// Classes are sorted and ordered by least member.
    pub fn components(&self) -> Vec<Vec<RegionId>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut comp = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Partition the edges into directed simple cycles (loops are 1-cycles).
    /// Exists whenever every vertex is balanced; failure means the balance
    /// theorem was violated upstream.
    pub fn cycle_decomposition(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.vertices.len();
        let m = self.edges.len();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.from].push(i);
        }
        // Pop from the back; reverse so lower edge ids are taken first.
        for o in &mut out {
            o.reverse();
        }
        let mut used = vec![false; m];
        let mut circuits: Vec<(usize, Vec<usize>)> = Vec::new();
        for v0 in 0..n {
            while !out[v0].is_empty() {
                // Iterative Hierholzer: closed walk from v0 using each edge once.
                let mut stack: Vec<(usize, Option<usize>)> = vec![(v0, None)];
                let mut walk = Vec::new();
                while let Some(&(v, via)) = stack.last() {
                    match out[v].pop() {
                        Some(e) => {
                            used[e] = true;
                            stack.push((self.edges[e].to, Some(e)));
                        }
                        None => {
                            stack.pop();
                            if let Some(e) = via {
                                walk.push(e);
                            }
                        }
                    }
                }
                walk.reverse();
                if walk.is_empty() {
                    break;
                }
                circuits.push((v0, walk));
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(Error::Internal(
                "cycle decomposition left edges uncovered; graph is not balanced".into(),
            ));
        }

        // Split each closed walk into vertex-simple cycles with a stack.
        let mut cycles = Vec::new();
        let mut pos: Vec<Option<usize>> = vec![None; n];
        for (v0, walk) in circuits {
            let mut vstack = vec![v0];
            let mut estack: Vec<usize> = Vec::new();
            pos[v0] = Some(0);
            for e in walk {
                let w = self.edges[e].to;
                estack.push(e);
                match pos[w] {
                    Some(p) => {
                        let cycle = estack.split_off(p);
                        for v in vstack.drain(p + 1..) {
                            pos[v] = None;
                        }
                        cycles.push(cycle);
                    }
                    None => {
                        pos[w] = Some(vstack.len());
                        vstack.push(w);
                    }
                }
            }
            if !estack.is_empty() || vstack != [v0] {
                return Err(Error::Internal("closed walk did not peel into cycles".into()));
            }
            pos[v0] = None;
        }
        Ok(cycles)
    }
}

/// Seifert graph with height labels: one vertex per circle, one signed edge
/// per site marker. Parallel edges are common; loops cannot occur.
#[derive(Debug, Clone)]
pub struct LabeledSeifertGraph {
    /// Height label of each circle-vertex.
    pub heights: Vec<usize>,
    pub edges: Vec<LsgEdge>,
}

#[derive(Debug, Clone, Copy)]
pub struct LsgEdge {
    /// Also this edge's index: markers come one per crossing.
    pub crossing: CrossingId,
    pub a: CircleId,
    pub b: CircleId,
    pub sign: Sign,
}

impl LabeledSeifertGraph {
    pub fn build(seifert: &SeifertDiagram) -> LabeledSeifertGraph {
        LabeledSeifertGraph {
            heights: seifert.circles.iter().map(|c| c.height).collect(),
            edges: seifert
                .markers
                .iter()
                .map(|m| LsgEdge {
                    crossing: m.crossing,
                    a: m.joins.0,
                    b: m.joins.1,
                    sign: m.sign,
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.heights.len()
    }

    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }
}

/// A maximal nonseparable subgraph, as a set of edges plus its vertex set.
#[derive(Debug, Clone)]
pub struct Block {
    pub id: usize,
    /// Edge indices into the graph's edge list, ascending.
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    /// True when every edge in the block carries one sign.
    pub homogeneous: bool,
}

/// Biconnected components of an undirected multigraph, as an edge partition.
/// Parallel edges form 2-connected blocks: only the tree-edge instance is
/// skipped during the descent, so a second copy counts as a cycle. Isolated
/// vertices yield no block; a bridge with its endpoints is a block.
pub fn block_edge_partition(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: Vec<Vec<(usize, usize)>>,
        edges: &'a [(usize, usize)],
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        estack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
    }

    fn dfs(st: &mut State, u: usize, parent_edge: Option<usize>) {
        st.timer += 1;
        st.disc[u] = st.timer;
        st.low[u] = st.timer;
        for i in 0..st.adj[u].len() {
            let (w, eid) = st.adj[u][i];
            if Some(eid) == parent_edge {
                continue;
            }
            if st.disc[w] == 0 {
                st.estack.push(eid);
                dfs(st, w, Some(eid));
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.estack.pop() {
                        block.push(e);
                        if e == eid {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.blocks.push(block);
                }
            } else if st.disc[w] < st.disc[u] {
                st.estack.push(eid);
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }

    let mut st = State {
        adj: vec![Vec::new(); n],
        edges,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        estack: Vec::new(),
        blocks: Vec::new(),
    };
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            // A loop is nonseparable on its own.
            st.blocks.push(vec![i]);
            continue;
        }
        st.adj[u].push((v, i));
        st.adj[v].push((u, i));
    }
    for u in 0..n {
        if st.disc[u] == 0 {
            dfs(&mut st, u, None);
        }
    }
    let _ = st.edges;
    st.blocks.sort_by_key(|b| b[0]);
    st.blocks
}

/// Blocks of the Seifert graph, with the per-block sign check filled in.
pub fn blocks(graph: &LabeledSeifertGraph) -> Vec<Block> {
    let pairs: Vec<(usize, usize)> = graph.edges.iter().map(|e| (e.a, e.b)).collect();
    block_edge_partition(graph.vertex_count(), &pairs)
        .into_iter()
        .enumerate()
        .map(|(id, edge_ids)| {
            let mut vertices: Vec<usize> = edge_ids
                .iter()
                .flat_map(|&e| [graph.edges[e].a, graph.edges[e].b])
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            let first = graph.edges[edge_ids[0]].sign;
            let homogeneous = edge_ids.iter().all(|&e| graph.edges[e].sign == first);
            Block {
                id,
                edges: edge_ids,
                vertices,
                homogeneous,
            }
        })
        .collect()
}

/// The subgraph on heights i-1 and i with the edges internal to height i-1
/// removed.
#[derive(Debug, Clone)]
pub struct HeightSubgraph {
    pub index: usize,
    pub vertices: Vec<CircleId>,
    /// Edge indices into the labeled Seifert graph.
    pub edges: Vec<usize>,
}

/// All height subgraphs G_0 ..= G_max. Their edge sets partition the edges
/// of the labeled Seifert graph.
pub fn height_subgraphs(graph: &LabeledSeifertGraph) -> Vec<HeightSubgraph> {
    let max = graph.max_height();
    (0..=max)
        .map(|i| {
            let keep = |v: usize| graph.heights[v] + 1 == i || graph.heights[v] == i;
            let vertices: Vec<usize> = (0..graph.vertex_count()).filter(|&v| keep(v)).collect();
            let edges: Vec<usize> = graph
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| {
                    keep(e.a)
                        && keep(e.b)
                        && !(graph.heights[e.a] + 1 == i && graph.heights[e.b] + 1 == i)
                })
                .map(|(idx, _)| idx)
                .collect();
            HeightSubgraph {
                index: i,
                vertices,
                edges,
            }
        })
        .collect()
}

/// Connected components of a vertex/edge-listed multigraph; used for the
/// height subgraphs. Classes sorted, ordered by least member.
pub fn subgraph_components(vertices: &[usize], edge_pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut index = std::collections::BTreeMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        index.insert(v, i);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &(a, b) in edge_pairs {
        let (ia, ib) = (index[&a], index[&b]);
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    let mut comp = vec![usize::MAX; vertices.len()];
    let mut classes = Vec::new();
    for s in 0..vertices.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = classes.len();
        comp[s] = id;
        let mut members = vec![vertices[s]];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(vertices[w]);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIG8: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    fn setup(text: &str) -> (Diagram, SeifertDiagram, SpatialGraph, LabeledSeifertGraph) {
        let d = Diagram::build(&parse_pd(text).unwrap()).unwrap();
        let s = SeifertDiagram::build(&d).unwrap();
        let phi = SpatialGraph::build(&d);
        let lsg = LabeledSeifertGraph::build(&s);
        (d, s, phi, lsg)
    }

    #[test]
    fn trefoil_spatial_graph() {
        let (_, _, phi, _) = setup(TREFOIL);
        assert_eq!(phi.vertex_count(), 5);
        assert_eq!(phi.edges.len(), 3);
        // Same-signed directed 3-cycle on the petals; two isolated vertices.
        let comps = phi.components();
        assert_eq!(comps.len(), 3);
        let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 3]);
        for (dp, dm) in phi.balance() {
            assert_eq!(dp, dm);
        }
        let cycles = phi.cycle_decomposition().unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 3);
    }

    #[test]
    fn kink_spatial_loop() {
        let (_, _, phi, _) = setup("X[1,2,2,1]");
        assert_eq!(phi.vertex_count(), 3);
        assert_eq!(phi.edges.len(), 1);
        assert_eq!(phi.edges[0].from, phi.edges[0].to);
        let (dp, dm) = phi.balance()[phi.edges[0].from];
        assert_eq!((dp, dm), (1, 1));
        let cycles = phi.cycle_decomposition().unwrap();
        assert_eq!(cycles, vec![vec![0]]);
    }

    #[test]
    fn unknot_spatial_graph() {
        let (_, _, phi, lsg) = setup("UNKNOT");
        assert_eq!(phi.vertex_count(), 2);
        assert!(phi.edges.is_empty());
        assert_eq!(phi.components().len(), 2);
        assert_eq!(lsg.vertex_count(), 1);
        assert!(lsg.edges.is_empty());
        assert!(phi.cycle_decomposition().unwrap().is_empty());
    }

    #[test]
    fn figure_eight_cycles_cover_edges() {
        let (_, _, phi, _) = setup(FIG8);
        assert_eq!(phi.components().len(), 4);
        let cycles = phi.cycle_decomposition().unwrap();
        let mut covered: Vec<usize> = cycles.into_iter().flatten().collect();
        covered.sort_unstable();
        assert_eq!(covered, vec![0, 1, 2, 3]);
    }

    #[test]
    fn phi_edges_join_same_color() {
        for text in [TREFOIL, FIG8, "X[1,2,2,1]", "X[1,3,2,4] X[3,1,4,2]"] {
            let (d, _, phi, _) = setup(text);
            for e in &phi.edges {
                assert_eq!(d.regions[e.from].color, d.regions[e.to].color);
            }
        }
    }

    #[test]
    fn trefoil_labeled_graph() {
        let (_, _, _, lsg) = setup(TREFOIL);
        assert_eq!(lsg.vertex_count(), 2);
        assert_eq!(lsg.edges.len(), 3);
        let mut hs = lsg.heights.clone();
        hs.sort();
        assert_eq!(hs, vec![0, 1]);
        let sign = lsg.edges[0].sign;
        assert!(lsg.edges.iter().all(|e| e.sign == sign));
        let bs = blocks(&lsg);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].edges, vec![0, 1, 2]);
        assert!(bs[0].homogeneous);
    }

    #[test]
    fn figure_eight_blocks() {
        let (_, _, _, lsg) = setup(FIG8);
        assert_eq!(lsg.vertex_count(), 3);
        let bs = blocks(&lsg);
        assert_eq!(bs.len(), 2, "middle vertex separates two parallel pairs");
        for b in &bs {
            assert_eq!(b.edges.len(), 2);
            assert!(b.homogeneous);
        }
    }

    #[test]
    fn single_edge_block() {
        let parts = block_edge_partition(2, &[(0, 1)]);
        assert_eq!(parts, vec![vec![0]]);
    }

    #[test]
    fn parallel_pair_is_one_block() {
        let parts = block_edge_partition(2, &[(0, 1), (0, 1)]);
        assert_eq!(parts, vec![vec![0, 1]]);
    }

    #[test]
    fn bridge_between_cycles() {
        // Two triangles joined by a bridge: three blocks.
        let edges = [
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 3),
        ];
        let parts = block_edge_partition(6, &edges);
        assert_eq!(parts.len(), 3);
        let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        assert_eq!(sizes, vec![3, 1, 3]);
    }

    #[test]
    fn isolated_vertex_is_not_a_block() {
        let parts = block_edge_partition(3, &[(0, 1)]);
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn trefoil_height_subgraphs() {
        let (_, _, _, lsg) = setup(TREFOIL);
        let subs = height_subgraphs(&lsg);
        assert_eq!(subs.len(), 2);
        // G_0: the height-0 vertex alone; G_1: everything.
        assert_eq!(subs[0].vertices.len(), 1);
        assert!(subs[0].edges.is_empty());
        assert_eq!(subs[1].vertices.len(), 2);
        assert_eq!(subs[1].edges.len(), 3);
    }

    #[test]
    fn height_subgraphs_partition_edges() {
        for text in [TREFOIL, FIG8, "X[1,2,2,1]"] {
            let (_, _, _, lsg) = setup(text);
            let subs = height_subgraphs(&lsg);
            let mut all: Vec<usize> = subs.iter().flat_map(|s| s.edges.clone()).collect();
            all.sort_unstable();
            let expect: Vec<usize> = (0..lsg.edges.len()).collect();
            assert_eq!(all, expect, "{text}");
        }
    }

    #[test]
    fn block_heights_follow_nesting() {
        // All vertices of a block share one height except possibly one,
        // one level down.
        for text in [TREFOIL, FIG8, "X[1,2,2,1]"] {
            let (_, _, _, lsg) = setup(text);
            for b in blocks(&lsg) {
                let hs: Vec<usize> = b.vertices.iter().map(|&v| lsg.heights[v]).collect();
                let max = *hs.iter().max().unwrap();
                let below = hs.iter().filter(|&&h| h + 1 == max).count();
                let at = hs.iter().filter(|&&h| h == max).count();
                assert!(below <= 1 && below + at == hs.len(), "{text}: {hs:?}");
            }
        }
    }
}
