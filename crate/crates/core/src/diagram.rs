//! The underlying 4-valent plane map of a diagram: darts, face tracing,
//! checkerboard coloring, and the orientation data attached to crossings.
//!
//! Darts are numbered `4 * crossing + slot`. Slot order is the PD tuple
//! order, which is the counterclockwise rotation around the crossing, so the
//! face walk "keeping the region on the left" is `d -> sigma^-1(alpha(d))`.
//! The region reached from a departing dart `d` by that walk occupies the
//! corner between slot(d) and slot(d) + 1 of its crossing.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pd::{OverDir, PDCode};

pub type DartId = usize;
pub type RegionId = usize;
pub type CrossingId = usize;
pub type EdgeLabel = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Crossing handedness. `Positive` is the right-handed crossing: the over
/// strand runs `d -> b` in the tuple's counterclockwise frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// Whether the strand flows toward or away from the crossing at a given dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DartDir {
    Toward,
    Away,
}

/// How a crossing meets one of its four corner regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IncidenceKind {
    /// Two arcs begin bordering the region here.
    Into,
    /// Two arcs stop bordering the region here.
    OutOf,
    /// One arc begins and one stops.
    Sideswipe,
}

/// One corner record; a region may appear at two corners of one crossing, so
/// incidences are kept per corner rather than per region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossingIncidence {
    pub crossing: CrossingId,
    /// Corner index 0..4: corner k lies between slot k and slot k + 1.
    pub corner: usize,
    pub region: RegionId,
    pub kind: IncidenceKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct Region {
    pub id: RegionId,
    /// Face walk: the darts departing along this region's boundary, in walk
    /// order starting from the smallest dart id. Empty for the two regions of
    /// the 0-crossing unknot.
    pub boundary: Vec<DartId>,
    pub color: Color,
    pub is_outer: bool,
}

/// Darts with rotation and edge involution, plus per-dart strand direction.
#[derive(Debug, Clone)]
pub struct CombinatorialMap {
    pub pd: PDCode,
    alpha: Vec<DartId>,
    dir: Vec<DartDir>,
    /// Edge label -> (tail dart, head dart).
    edge_darts: BTreeMap<EdgeLabel, (DartId, DartId)>,
}

impl CombinatorialMap {
    /// Build the map and reject disconnected (split link) diagrams.
    pub fn build(pd: &PDCode) -> Result<CombinatorialMap> {
        let n = pd.crossing_count();
        let mut occurrences: BTreeMap<EdgeLabel, Vec<DartId>> = BTreeMap::new();
        let mut dir = vec![DartDir::Toward; 4 * n];
        for c in 0..n {
            for s in 0..4 {
                occurrences.entry(pd.crossings[c][s]).or_default().push(4 * c + s);
            }
            dir[4 * c] = DartDir::Toward;
            dir[4 * c + 2] = DartDir::Away;
            let (d1, d3) = match pd.over_dirs[c] {
                OverDir::BToD => (DartDir::Toward, DartDir::Away),
                OverDir::DToB => (DartDir::Away, DartDir::Toward),
            };
            dir[4 * c + 1] = d1;
            dir[4 * c + 3] = d3;
        }

        let mut alpha = vec![0; 4 * n];
        let mut edge_darts = BTreeMap::new();
        for (&label, darts) in &occurrences {
            debug_assert_eq!(darts.len(), 2, "validated by PDCode");
            alpha[darts[0]] = darts[1];
            alpha[darts[1]] = darts[0];
            let (tail, head) = if dir[darts[0]] == DartDir::Away {
                (darts[0], darts[1])
            } else {
                (darts[1], darts[0])
            };
            edge_darts.insert(label, (tail, head));
        }

        let map = CombinatorialMap {
            pd: pd.clone(),
            alpha,
            dir,
            edge_darts,
        };
        if n > 0 && !map.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(map)
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.crossing_count()
    }

    pub fn crossing_of(&self, d: DartId) -> CrossingId {
        d / 4
    }

    pub fn slot_of(&self, d: DartId) -> usize {
        d % 4
    }

    /// The other end of the dart's edge.
    pub fn alpha(&self, d: DartId) -> DartId {
        self.alpha[d]
    }

    /// Counterclockwise-next dart around the crossing.
    pub fn sigma(&self, d: DartId) -> DartId {
        4 * (d / 4) + (d + 1) % 4
    }

    pub fn sigma_inv(&self, d: DartId) -> DartId {
        4 * (d / 4) + (d + 3) % 4
    }

    /// Next dart of the face walk that keeps the region on the left.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.sigma_inv(self.alpha(d))
    }

    pub fn dart_dir(&self, d: DartId) -> DartDir {
        self.dir[d]
    }

    pub fn edge_label(&self, d: DartId) -> EdgeLabel {
        self.pd.crossings[d / 4][d % 4]
    }

    /// Edge labels in ascending order.
    pub fn edge_labels(&self) -> impl Iterator<Item = EdgeLabel> + '_ {
        self.edge_darts.keys().copied()
    }

    /// (tail, head) darts of an edge: the strand leaves via the tail dart's
    /// crossing and arrives at the head dart's crossing.
    pub fn edge_darts(&self, label: EdgeLabel) -> (DartId, DartId) {
        self.edge_darts[&label]
    }

    fn is_connected(&self) -> bool {
        let n = self.crossing_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for s in 0..4 {
                let o = self.crossing_of(self.alpha(4 * c + s));
                if !seen[o] {
                    seen[o] = true;
                    count += 1;
                    stack.push(o);
                }
            }
        }
        count == n
    }
}

/// Trace the face walks. Regions are numbered by their smallest dart.
/// The count must come out to n + 2 on a connected diagram; anything else
/// means the PD code has no plane realization.
pub fn trace_regions(map: &CombinatorialMap) -> Result<(Vec<Vec<DartId>>, Vec<RegionId>)> {
    let nd = map.dart_count();
    let mut region_of = vec![usize::MAX; nd];
    let mut boundaries = Vec::new();
    for start in 0..nd {
        if region_of[start] != usize::MAX {
            continue;
        }
        let id = boundaries.len();
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            debug_assert_eq!(region_of[d], usize::MAX);
            region_of[d] = id;
            walk.push(d);
            d = map.face_next(d);
            if d == start {
                break;
            }
        }
        boundaries.push(walk);
    }
    let n = map.crossing_count();
    if n > 0 && boundaries.len() != n + 2 {
        return Err(Error::NonPlanar {
            crossings: n,
            regions: boundaries.len(),
        });
    }
    Ok((boundaries, region_of))
}

/// Proper 2-coloring with the outer region white.
pub fn checkerboard(
    map: &CombinatorialMap,
    boundaries: &[Vec<DartId>],
    region_of: &[RegionId],
    outer: RegionId,
) -> Result<Vec<Color>> {
    let mut colors: Vec<Option<Color>> = vec![None; boundaries.len()];
    colors[outer] = Some(Color::White);
    let mut queue = vec![outer];
    while let Some(r) = queue.pop() {
        let c = colors[r].unwrap();
        for &d in &boundaries[r] {
            let other = region_of[map.alpha(d)];
            match colors[other] {
                None => {
                    colors[other] = Some(c.flip());
                    queue.push(other);
                }
                Some(oc) if oc == c => {
                    return Err(Error::Internal(format!(
                        "checkerboard conflict between regions {r} and {other}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(r, c)| c.ok_or_else(|| Error::Internal(format!("region {r} unreachable in coloring"))))
        .collect()
}

/// Classify every corner of every crossing (Into / OutOf / Sideswipe).
pub fn classify_incidences(
    map: &CombinatorialMap,
    region_of: &[RegionId],
) -> Vec<CrossingIncidence> {
    let mut out = Vec::with_capacity(map.dart_count());
    for c in 0..map.crossing_count() {
        for corner in 0..4 {
            let d_here = 4 * c + corner;
            let d_next = map.sigma(d_here);
            let kind = match (map.dart_dir(d_here), map.dart_dir(d_next)) {
                (DartDir::Away, DartDir::Away) => IncidenceKind::Into,
                (DartDir::Toward, DartDir::Toward) => IncidenceKind::OutOf,
                _ => IncidenceKind::Sideswipe,
            };
            out.push(CrossingIncidence {
                crossing: c,
                corner,
                region: region_of[d_here],
                kind,
            });
        }
    }
    out
}

/// Sign of a single crossing, straight from the resolved over direction.
pub fn crossing_sign(over: OverDir) -> Sign {
    match over {
        OverDir::DToB => Sign::Positive,
        OverDir::BToD => Sign::Negative,
    }
}

/// A fully assembled diagram: map, regions, coloring, incidences, signs.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub map: CombinatorialMap,
    pub regions: Vec<Region>,
    region_of: Vec<RegionId>,
    /// Four records per crossing, in corner order.
    pub incidences: Vec<CrossingIncidence>,
    pub signs: Vec<Sign>,
    pub outer_region: RegionId,
}

impl Diagram {
    pub fn build(pd: &PDCode) -> Result<Diagram> {
        Diagram::build_with_outer(pd, None)
    }

    /// `outer_dart` overrides the outer-region choice; it falls back to the
    /// PD code's own `outer_dart` field and then to the default rule: the
    /// region on the left of the lowest-numbered edge's first (tail) dart.
    pub fn build_with_outer(pd: &PDCode, outer_dart: Option<DartId>) -> Result<Diagram> {
        if pd.crossing_count() == 0 {
            return Diagram::crossingless_unknot(pd);
        }
        let map = CombinatorialMap::build(pd)?;
        let (boundaries, region_of) = trace_regions(&map)?;
        let chosen = outer_dart.or(pd.outer_dart);
        if let Some(d) = chosen {
            if d >= map.dart_count() {
                return Err(Error::Input(format!(
                    "outer dart {d} out of range (diagram has {} darts)",
                    map.dart_count()
                )));
            }
        }
        let outer = match chosen {
            Some(d) => region_of[d],
            None => {
                let min_label = map.edge_labels().next().expect("n > 0 has edges");
                let (tail, _) = map.edge_darts(min_label);
                region_of[tail]
            }
        };
        let colors = checkerboard(&map, &boundaries, &region_of, outer)?;
        let incidences = classify_incidences(&map, &region_of);
        let signs = map.pd.over_dirs.iter().map(|&o| crossing_sign(o)).collect();
        let regions = boundaries
            .into_iter()
            .enumerate()
            .map(|(id, boundary)| Region {
                id,
                boundary,
                color: colors[id],
                is_outer: id == outer,
            })
            .collect();
        Ok(Diagram {
            map,
            regions,
            region_of,
            incidences,
            signs,
            outer_region: outer,
        })
    }

    /// The 0-crossing unknot: one closed curve, two regions, no darts.
    fn crossingless_unknot(pd: &PDCode) -> Result<Diagram> {
        let map = CombinatorialMap::build(pd)?;
        let regions = vec![
            Region {
                id: 0,
                boundary: Vec::new(),
                color: Color::White,
                is_outer: true,
            },
            Region {
                id: 1,
                boundary: Vec::new(),
                color: Color::Black,
                is_outer: false,
            },
        ];
        Ok(Diagram {
            map,
            regions,
            region_of: Vec::new(),
            incidences: Vec::new(),
            signs: Vec::new(),
            outer_region: 0,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.map.crossing_count()
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn region_of_dart(&self, d: DartId) -> RegionId {
        self.region_of[d]
    }

    /// Region on the left of the strand along an edge.
    pub fn left_region(&self, label: EdgeLabel) -> RegionId {
        let (tail, _) = self.map.edge_darts(label);
        self.region_of[tail]
    }

    /// Region on the right of the strand along an edge.
    pub fn right_region(&self, label: EdgeLabel) -> RegionId {
        let (_, head) = self.map.edge_darts(label);
        self.region_of[head]
    }

    /// The region two arcs enter at this crossing.
    pub fn into_region(&self, c: CrossingId) -> RegionId {
        self.incidence(c, IncidenceKind::Into).region
    }

    /// The region two arcs leave at this crossing.
    pub fn outof_region(&self, c: CrossingId) -> RegionId {
        self.incidence(c, IncidenceKind::OutOf).region
    }

    fn incidence(&self, c: CrossingId, kind: IncidenceKind) -> &CrossingIncidence {
        self.incidences[4 * c..4 * c + 4]
            .iter()
            .find(|i| i.kind == kind)
            .expect("each crossing has exactly one Into and one OutOf corner")
    }

    /// Arcs beginning / ceasing to border the region over all its corners.
    pub fn arc_balance(&self, region: RegionId) -> (usize, usize) {
        let mut arcs_in = 0;
        let mut arcs_out = 0;
        for inc in &self.incidences {
            if inc.region != region {
                continue;
            }
            match inc.kind {
                IncidenceKind::Into => arcs_in += 2,
                IncidenceKind::OutOf => arcs_out += 2,
                IncidenceKind::Sideswipe => {
                    arcs_in += 1;
                    arcs_out += 1;
                }
            }
        }
        (arcs_in, arcs_out)
    }
}
