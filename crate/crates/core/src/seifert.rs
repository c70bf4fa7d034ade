//! Seifert smoothing: circles, site markers, spaces, and the nesting tree
//! that assigns heights.
//!
//! Smoothing reconnects the strands at every crossing so orientation is
//! preserved and nothing crosses. The channel opened at each crossing merges
//! the crossing's Into and OutOf regions, which is exactly the spatial
//! connectivity relation; its classes are the spaces of the Seifert diagram.

use std::collections::BTreeMap;

use crate::diagram::{CrossingId, Diagram, EdgeLabel, RegionId, Sign};
use crate::error::{Error, Result};
use crate::pd::OverDir;

pub type CircleId = usize;
pub type SpaceId = usize;

#[derive(Debug, Clone)]
pub struct SeifertCircle {
    pub id: CircleId,
    /// Edges traversed in strand order; empty only for the 0-crossing unknot.
    pub edges: Vec<EdgeLabel>,
    /// Number of circles properly containing this one.
    pub height: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SiteMarker {
    pub crossing: CrossingId,
    pub sign: Sign,
    /// The two distinct circles the marker sits between.
    pub joins: (CircleId, CircleId),
    pub space: SpaceId,
}

#[derive(Debug, Clone)]
pub struct Space {
    pub id: SpaceId,
    /// Member regions, ascending.
    pub regions: Vec<RegionId>,
    /// -1 for the unbounded space.
    pub height: i64,
    /// The circle bounding this space from outside; None for the unbounded
    /// space.
    pub outer_circle: Option<CircleId>,
    /// Circles bounding the space from inside, one nesting level down.
    pub inner_circles: Vec<CircleId>,
}

/// Alternating space/circle tree rooted at the unbounded space.
#[derive(Debug, Clone)]
pub struct NestingTree {
    pub root_space: SpaceId,
    /// Circle each space hangs below; None for the root.
    pub space_parent: Vec<Option<CircleId>>,
    /// Space each circle hangs below.
    pub circle_parent: Vec<SpaceId>,
    /// Interior space of each circle (its unique child space node).
    pub circle_interior: Vec<SpaceId>,
}

#[derive(Debug, Clone)]
pub struct SeifertDiagram {
    pub circles: Vec<SeifertCircle>,
    /// One marker per crossing, indexed by crossing id.
    pub markers: Vec<SiteMarker>,
    pub spaces: Vec<Space>,
    pub tree: NestingTree,
    space_of_region: Vec<SpaceId>,
    circle_of_edge: BTreeMap<EdgeLabel, CircleId>,
    /// (left space, right space) of each circle along its orientation.
    pub circle_sides: Vec<(SpaceId, SpaceId)>,
}

impl SeifertDiagram {
    pub fn build(diagram: &Diagram) -> Result<SeifertDiagram> {
        let (circle_edges, circle_of_edge) = smooth_circles(diagram);
        let (space_regions, space_of_region) = compute_spaces(diagram)?;
        if space_regions.len() != circle_edges.len() + 1 {
            return Err(Error::Internal(format!(
                "{} spaces for {} circles; expected circles + 1",
                space_regions.len(),
                circle_edges.len()
            )));
        }
        let circle_sides = circle_side_spaces(diagram, &circle_edges, &space_of_region)?;
        // For the 0-crossing unknot the region ids are the space ids.
        let root_space = space_of_region
            .get(diagram.outer_region)
            .copied()
            .unwrap_or(diagram.outer_region);
        let (tree, circle_heights, space_heights) =
            build_nesting(circle_edges.len(), &circle_sides, space_regions.len(), root_space)?;

        let circles = circle_edges
            .into_iter()
            .enumerate()
            .map(|(id, edges)| SeifertCircle {
                id,
                edges,
                height: circle_heights[id],
            })
            .collect::<Vec<_>>();

        let mut spaces: Vec<Space> = space_regions
            .into_iter()
            .enumerate()
            .map(|(id, regions)| Space {
                id,
                regions,
                height: space_heights[id],
                outer_circle: tree.space_parent[id],
                inner_circles: Vec::new(),
            })
            .collect();
        for (c, &space) in tree.circle_parent.iter().enumerate() {
            spaces[space].inner_circles.push(c);
        }

        let markers = place_markers(diagram, &circle_of_edge, &space_of_region)?;

        Ok(SeifertDiagram {
            circles,
            markers,
            spaces,
            tree,
            space_of_region,
            circle_of_edge,
            circle_sides,
        })
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn space_of_region(&self, r: RegionId) -> SpaceId {
        self.space_of_region[r]
    }

    pub fn circle_of_edge(&self, label: EdgeLabel) -> CircleId {
        self.circle_of_edge[&label]
    }

    /// Region partition induced by the spaces, as sorted region lists.
    pub fn space_partition(&self) -> Vec<Vec<RegionId>> {
        self.spaces.iter().map(|s| s.regions.clone()).collect()
    }

    pub fn max_height(&self) -> usize {
        self.circles.iter().map(|c| c.height).max().unwrap_or(0)
    }
}

/// Follow the smoothed strands. At a positive crossing the incoming edges at
/// slots 0 and 3 continue to slots 1 and 2; at a negative crossing slots 0
/// and 1 continue to slots 3 and 2.
fn smooth_circles(
    diagram: &Diagram,
) -> (Vec<Vec<EdgeLabel>>, BTreeMap<EdgeLabel, CircleId>) {
    let map = &diagram.map;
    if map.crossing_count() == 0 {
        return (vec![Vec::new()], BTreeMap::new());
    }
    let mut succ: BTreeMap<EdgeLabel, EdgeLabel> = BTreeMap::new();
    for c in 0..map.crossing_count() {
        let t = map.pd.crossings[c];
        match map.pd.over_dirs[c] {
            // Positive crossing: over runs d -> b.
            OverDir::DToB => {
                succ.insert(t[0], t[1]);
                succ.insert(t[3], t[2]);
            }
            OverDir::BToD => {
                succ.insert(t[0], t[3]);
                succ.insert(t[1], t[2]);
            }
        }
    }
    let mut circle_of_edge = BTreeMap::new();
    let mut circles = Vec::new();
    for &start in succ.keys() {
        if circle_of_edge.contains_key(&start) {
            continue;
        }
        let id = circles.len();
        let mut edges = Vec::new();
        let mut cur = start;
        loop {
            circle_of_edge.insert(cur, id);
            edges.push(cur);
            cur = succ[&cur];
            if cur == start {
                break;
            }
        }
        circles.push(edges);
    }
    (circles, circle_of_edge)
}

/// Spatial connectivity: union regions across the channel opened at every
/// crossing. Returns the classes (sorted, ordered by least region) and the
/// class of each region.
pub fn compute_spaces(diagram: &Diagram) -> Result<(Vec<Vec<RegionId>>, Vec<SpaceId>)> {
    let n_regions = diagram.region_count();
    let mut dsu = Dsu::new(n_regions);
    for c in 0..diagram.crossing_count() {
        dsu.union(diagram.into_region(c), diagram.outof_region(c));
    }
    let mut classes: BTreeMap<usize, Vec<RegionId>> = BTreeMap::new();
    for r in 0..n_regions {
        classes.entry(dsu.find(r)).or_default().push(r);
    }
    let mut space_of_region = vec![0; n_regions];
    let mut spaces = Vec::new();
    for (_, members) in classes {
        let id = spaces.len();
        for &r in &members {
            space_of_region[r] = id;
        }
        // All member regions carry one checkerboard color.
        let color = diagram.regions[members[0]].color;
        if members.iter().any(|&r| diagram.regions[r].color != color) {
            return Err(Error::Internal(format!(
                "space {id} mixes checkerboard colors"
            )));
        }
        spaces.push(members);
    }
    Ok((spaces, space_of_region))
}

/// Left and right space of every circle, from the side regions of its edges.
/// Every edge of the circle must agree on both sides.
fn circle_side_spaces(
    diagram: &Diagram,
    circle_edges: &[Vec<EdgeLabel>],
    space_of_region: &[SpaceId],
) -> Result<Vec<(SpaceId, SpaceId)>> {
    if diagram.crossing_count() == 0 {
        // The lone circle separates the outer region from the inner one.
        return Ok(vec![(0, 1)]);
    }
    let mut sides = Vec::with_capacity(circle_edges.len());
    for (id, edges) in circle_edges.iter().enumerate() {
        let left = space_of_region[diagram.left_region(edges[0])];
        let right = space_of_region[diagram.right_region(edges[0])];
        for &e in edges {
            if space_of_region[diagram.left_region(e)] != left
                || space_of_region[diagram.right_region(e)] != right
            {
                return Err(Error::Internal(format!(
                    "circle {id} does not see a single space per side"
                )));
            }
        }
        if left == right {
            return Err(Error::Internal(format!(
                "circle {id} has the same space on both sides"
            )));
        }
        sides.push((left, right));
    }
    Ok(sides)
}

/// Root the space/circle incidence structure at the unbounded space and
/// assign heights by depth. The incidences must form a tree.
fn build_nesting(
    n_circles: usize,
    circle_sides: &[(SpaceId, SpaceId)],
    n_spaces: usize,
    root_space: SpaceId,
) -> Result<(NestingTree, Vec<usize>, Vec<i64>)> {
    let mut incident: Vec<Vec<CircleId>> = vec![Vec::new(); n_spaces];
    for (c, &(l, r)) in circle_sides.iter().enumerate() {
        incident[l].push(c);
        incident[r].push(c);
    }
    let mut space_parent: Vec<Option<CircleId>> = vec![None; n_spaces];
    let mut circle_parent = vec![usize::MAX; n_circles];
    let mut circle_interior = vec![usize::MAX; n_circles];
    let mut space_heights = vec![i64::MIN; n_spaces];
    let mut circle_heights = vec![0usize; n_circles];
    let mut seen_space = vec![false; n_spaces];
    let mut seen_circle = vec![false; n_circles];

    space_heights[root_space] = -1;
    seen_space[root_space] = true;
    let mut queue = std::collections::VecDeque::from([root_space]);
    while let Some(s) = queue.pop_front() {
        for &c in &incident[s] {
            if seen_circle[c] {
                continue;
            }
            seen_circle[c] = true;
            let (l, r) = circle_sides[c];
            let child = if l == s { r } else { l };
            if seen_space[child] {
                return Err(Error::Internal(format!(
                    "space {child} reached twice; circle/space incidences are not a tree"
                )));
            }
            seen_space[child] = true;
            circle_parent[c] = s;
            circle_interior[c] = child;
            circle_heights[c] = (space_heights[s] + 1) as usize;
            space_parent[child] = Some(c);
            space_heights[child] = circle_heights[c] as i64;
            queue.push_back(child);
        }
    }
    if seen_space.iter().any(|&b| !b) || seen_circle.iter().any(|&b| !b) {
        return Err(Error::Internal(
            "circle/space incidence structure is disconnected".into(),
        ));
    }
    Ok((
        NestingTree {
            root_space,
            space_parent,
            circle_parent,
            circle_interior,
        },
        circle_heights,
        space_heights,
    ))
}

/// One marker per crossing: its sign, the two circles it joins, and the
/// space it lies in (the merged Into/OutOf class).
fn place_markers(
    diagram: &Diagram,
    circle_of_edge: &BTreeMap<EdgeLabel, CircleId>,
    space_of_region: &[SpaceId],
) -> Result<Vec<SiteMarker>> {
    let mut markers = Vec::with_capacity(diagram.crossing_count());
    for c in 0..diagram.crossing_count() {
        let t = diagram.map.pd.crossings[c];
        // The two smoothed arcs start at the two incoming slots.
        let (a, b) = match diagram.map.pd.over_dirs[c] {
            OverDir::DToB => (t[0], t[3]),
            OverDir::BToD => (t[0], t[1]),
        };
        let ca = circle_of_edge[&a];
        let cb = circle_of_edge[&b];
        if ca == cb {
            return Err(Error::Internal(format!(
                "crossing {c}: both smoothed arcs lie on circle {ca}"
            )));
        }
        let space = space_of_region[diagram.into_region(c)];
        if space != space_of_region[diagram.outof_region(c)] {
            return Err(Error::Internal(format!(
                "crossing {c}: Into and OutOf regions not merged into one space"
            )));
        }
        markers.push(SiteMarker {
            crossing: c,
            sign: diagram.signs[c],
            joins: (ca.min(cb), ca.max(cb)),
            space,
        });
    }
    Ok(markers)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Keep the smaller root so class ids are stable.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIG8: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    fn seifert(text: &str) -> (Diagram, SeifertDiagram) {
        let d = Diagram::build(&parse_pd(text).unwrap()).unwrap();
        let s = SeifertDiagram::build(&d).unwrap();
        (d, s)
    }

    #[test]
    fn trefoil_smoothing() {
        let (_, s) = seifert(TREFOIL);
        assert_eq!(s.circle_count(), 2);
        assert_eq!(s.markers.len(), 3);
        let sign = s.markers[0].sign;
        assert!(s.markers.iter().all(|m| m.sign == sign));
        // Hand-traced smoothing: odd edges form one circle, even the other.
        let c0 = s.circle_of_edge(1);
        assert_eq!(s.circle_of_edge(3), c0);
        assert_eq!(s.circle_of_edge(5), c0);
        let c1 = s.circle_of_edge(2);
        assert_eq!(s.circle_of_edge(4), c1);
        assert_eq!(s.circle_of_edge(6), c1);
        assert_ne!(c0, c1);
    }

    #[test]
    fn trefoil_spaces_and_heights() {
        let (_, s) = seifert(TREFOIL);
        assert_eq!(s.spaces.len(), 3);
        let mut sizes: Vec<usize> = s.spaces.iter().map(|sp| sp.regions.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 3]);
        // All markers live in the petal space, the 3-region class.
        let petal_space = s.spaces.iter().find(|sp| sp.regions.len() == 3).unwrap().id;
        assert!(s.markers.iter().all(|m| m.space == petal_space));
        // Nested circles at heights 0 and 1.
        let mut hs: Vec<usize> = s.circles.iter().map(|c| c.height).collect();
        hs.sort();
        assert_eq!(hs, vec![0, 1]);
    }

    #[test]
    fn figure_eight_structure() {
        let (_, s) = seifert(FIG8);
        assert_eq!(s.circle_count(), 3);
        assert_eq!(s.spaces.len(), 4);
        let pos = s.markers.iter().filter(|m| m.sign == Sign::Positive).count();
        assert_eq!(pos, 2);
        // Two markers in one space, two in another.
        let mut by_space: BTreeMap<SpaceId, usize> = BTreeMap::new();
        for m in &s.markers {
            *by_space.entry(m.space).or_default() += 1;
        }
        let mut counts: Vec<usize> = by_space.values().copied().collect();
        counts.sort();
        assert_eq!(counts, vec![2, 2]);
        // The three circles are nested in a chain, so rooting at an end
        // space gives 0,1,2 and rooting at a middle space gives 0,0,1.
        let mut hs: Vec<usize> = s.circles.iter().map(|c| c.height).collect();
        hs.sort();
        assert!(hs == vec![0, 1, 2] || hs == vec![0, 0, 1], "got {hs:?}");
    }

    #[test]
    fn crossingless_unknot() {
        let (_, s) = seifert("UNKNOT");
        assert_eq!(s.circle_count(), 1);
        assert!(s.markers.is_empty());
        assert_eq!(s.spaces.len(), 2);
        assert_eq!(s.circles[0].height, 0);
    }

    #[test]
    fn kink_structure() {
        let (_, s) = seifert("X[1,2,2,1]");
        assert_eq!(s.circle_count(), 2);
        assert_eq!(s.spaces.len(), 3);
        assert_eq!(s.markers.len(), 1);
        let (a, b) = s.markers[0].joins;
        assert_ne!(a, b);
    }

    #[test]
    fn hopf_markers_share_space() {
        let (_, s) = seifert(HOPF);
        assert_eq!(s.circle_count(), 2);
        assert_eq!(s.spaces.len(), 3);
        assert_eq!(s.markers[0].space, s.markers[1].space);
        assert_eq!(s.markers[0].sign, s.markers[1].sign);
    }

    #[test]
    fn nesting_tree_shape() {
        for text in [TREFOIL, FIG8, HOPF, "X[1,2,2,1]", "UNKNOT"] {
            let (_, s) = seifert(text);
            assert_eq!(s.spaces.len(), s.circle_count() + 1, "{text}");
            let root = s.tree.root_space;
            assert_eq!(s.spaces[root].height, -1);
            assert!(s.spaces[root].outer_circle.is_none());
            for sp in &s.spaces {
                if sp.id != root {
                    let outer = sp.outer_circle.expect("bounded space has outer circle");
                    assert_eq!(s.circles[outer].height as i64, sp.height);
                }
                for &c in &sp.inner_circles {
                    assert_eq!(s.circles[c].height as i64, sp.height + 1);
                }
            }
        }
    }

    #[test]
    fn heights_depend_on_outer_but_structure_does_not() {
        let pd = parse_pd(FIG8).unwrap();
        for dart in 0..16 {
            let d = Diagram::build_with_outer(&pd, Some(dart)).unwrap();
            let s = SeifertDiagram::build(&d).unwrap();
            assert_eq!(s.circle_count(), 3);
            assert_eq!(s.spaces.len(), 4);
        }
    }
}
