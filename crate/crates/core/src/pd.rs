//! PD (planar diagram) codes and their text / JSON front ends.
//!
//! A PD code lists one 4-tuple of edge labels per crossing, read
//! counterclockwise starting at the incoming understrand. Edge labels are
//! positive integers and each label occurs exactly twice across the code.
//! Orientation is recovered from the labels: along every link component the
//! labels form one consecutive cyclic run (the de-facto convention of the
//! public knot tables). Inputs that break the convention must carry explicit
//! per-crossing orientation flags (JSON only).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Direction of the over strand within a tuple `X[a,b,c,d]`: either it runs
/// `b -> d` (entering the crossing on the slot-1 side) or `d -> b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverDir {
    BToD,
    DToB,
}

/// A validated PD code with every edge orientation resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    pub name: Option<String>,
    /// One tuple per crossing, counterclockwise from the incoming understrand.
    pub crossings: Vec<[u32; 4]>,
    /// Resolved over-strand direction per crossing.
    pub over_dirs: Vec<OverDir>,
    /// Number of link components (1 for the 0-crossing unknot).
    pub components: usize,
    /// Optional outer-region override carried by JSON inputs: a dart id
    /// (`4 * crossing + slot`) whose face walk is declared the outer region.
    pub outer_dart: Option<usize>,
}

impl PDCode {
    /// Validate a crossing list and resolve every edge orientation.
    ///
    /// With `orientations` given, the over direction of every crossing is
    /// taken as stated and only checked for global consistency. Otherwise
    /// directions are derived: understrand slots force their edges, forcing
    /// propagates between the two occurrences of each label, and any still
    /// undecided over pair falls back to label arithmetic under the
    /// consecutive-run convention.
    pub fn new(crossings: Vec<[u32; 4]>, orientations: Option<Vec<OverDir>>) -> Result<PDCode> {
        let occurrences = check_labels(&crossings)?;
        let (over_dirs, components) = resolve_orientation(&crossings, &occurrences, orientations)?;
        Ok(PDCode {
            name: None,
            crossings,
            over_dirs,
            components,
            outer_dart: None,
        })
    }

    pub fn unknot() -> PDCode {
        PDCode {
            name: None,
            crossings: Vec::new(),
            over_dirs: Vec::new(),
            components: 1,
            outer_dart: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PDCode {
        self.name = Some(name.into());
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.crossings.len() * 2
    }

    /// The mirror image: every tuple read clockwise instead of counter-
    /// clockwise, which flips every crossing sign and nothing else.
    pub fn mirror(&self) -> PDCode {
        let crossings = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [a, d, c, b])
            .collect();
        let over_dirs = self
            .over_dirs
            .iter()
            .map(|dir| match dir {
                OverDir::BToD => OverDir::DToB,
                OverDir::DToB => OverDir::BToD,
            })
            .collect();
        PDCode {
            name: self.name.as_ref().map(|n| format!("{n} (mirror)")),
            crossings,
            over_dirs,
            components: self.components,
            outer_dart: None,
        }
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            return write!(f, "UNKNOT");
        }
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X[{a},{b},{c},{d}]")?;
        }
        Ok(())
    }
}

/// Map from edge label to its two (crossing, slot) occurrences.
type Occurrences = BTreeMap<u32, Vec<(usize, usize)>>;

fn check_labels(crossings: &[[u32; 4]]) -> Result<Occurrences> {
    let mut occ: Occurrences = BTreeMap::new();
    for (c, tuple) in crossings.iter().enumerate() {
        for (s, &label) in tuple.iter().enumerate() {
            if label == 0 {
                return Err(Error::Labels(format!(
                    "label 0 at crossing {c} (labels are positive integers)"
                )));
            }
            occ.entry(label).or_default().push((c, s));
        }
    }
    let bad: Vec<String> = occ
        .iter()
        .filter(|(_, v)| v.len() != 2)
        .map(|(l, v)| format!("{} appears {} time(s)", l, v.len()))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Labels(format!(
            "every label must appear exactly twice: {}",
            bad.join(", ")
        )));
    }
    Ok(occ)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlotDir {
    Unknown,
    /// Edge head at this crossing (strand flows in).
    Toward,
    /// Edge tail at this crossing (strand flows out).
    Away,
}

fn resolve_orientation(
    crossings: &[[u32; 4]],
    occurrences: &Occurrences,
    explicit: Option<Vec<OverDir>>,
) -> Result<(Vec<OverDir>, usize)> {
    let n = crossings.len();
    if n == 0 {
        return Ok((Vec::new(), 1));
    }
    if let Some(dirs) = &explicit {
        if dirs.len() != n {
            return Err(Error::Input(format!(
                "orientations has {} entries for {} crossings",
                dirs.len(),
                n
            )));
        }
    }

    // dir[c][s]: resolved strand direction of the edge occurrence at slot s.
    let mut dir = vec![[SlotDir::Unknown; 4]; n];
    let mut over: Vec<Option<OverDir>> = vec![None; n];
    for c in 0..n {
        dir[c][0] = SlotDir::Toward;
        dir[c][2] = SlotDir::Away;
        if let Some(dirs) = &explicit {
            apply_over(&mut dir[c], &mut over[c], dirs[c]);
        }
    }

    let other_occurrence = |label: u32, c: usize, s: usize| -> (usize, usize) {
        let occ = &occurrences[&label];
        if occ[0] == (c, s) {
            occ[1]
        } else {
            occ[0]
        }
    };

    // An over slot is forced once the other occurrence of its edge is known:
    // each edge has exactly one head and one tail.
    let force_from_slot = |dir: &[[SlotDir; 4]], c: usize, slot: usize, label: u32| -> Option<OverDir> {
        let (oc, os) = other_occurrence(label, c, slot);
        let needed = match dir[oc][os] {
            SlotDir::Toward => SlotDir::Away,
            SlotDir::Away => SlotDir::Toward,
            SlotDir::Unknown => return None,
        };
        Some(match (slot, needed) {
            (1, SlotDir::Toward) | (3, SlotDir::Away) => OverDir::BToD,
            (1, SlotDir::Away) | (3, SlotDir::Toward) => OverDir::DToB,
            _ => unreachable!(),
        })
    };

    let mut arithmetic: Vec<u32> = Vec::new();
    if explicit.is_none() {
        loop {
            let mut progress = false;
            for c in 0..n {
                if over[c].is_some() {
                    continue;
                }
                let b = crossings[c][1];
                let d = crossings[c][3];
                let from_b = force_from_slot(&dir, c, 1, b);
                let from_d = force_from_slot(&dir, c, 3, d);
                let decided = match (from_b, from_d) {
                    (Some(x), Some(y)) if x != y => {
                        return Err(Error::Orientation(format!(
                            "crossing {c}: over edges {b} and {d} demand opposite directions"
                        )));
                    }
                    (Some(x), _) | (_, Some(x)) => Some(x),
                    (None, None) => None,
                };
                if let Some(x) = decided {
                    apply_over(&mut dir[c], &mut over[c], x);
                    progress = true;
                }
            }
            if progress {
                continue;
            }
            // Fixpoint reached; decide the first still-open crossing by label
            // arithmetic and propagate again.
            let open = (0..n).find(|&c| over[c].is_none());
            let Some(c) = open else { break };
            let b = crossings[c][1];
            let d = crossings[c][3];
            // Consecutive labels step upward; a larger-to-smaller over pair
            // is the single wrap of its component run.
            let decided = if d == b + 1 || (b > d && b != d + 1) {
                OverDir::BToD
            } else {
                OverDir::DToB
            };
            apply_over(&mut dir[c], &mut over[c], decided);
            arithmetic.push(b);
            arithmetic.push(d);
        }
    }

    // Every edge must now have one head and one tail.
    for (&label, occ) in occurrences {
        let a = dir[occ[0].0][occ[0].1];
        let b = dir[occ[1].0][occ[1].1];
        let ok = matches!(
            (a, b),
            (SlotDir::Toward, SlotDir::Away) | (SlotDir::Away, SlotDir::Toward)
        );
        if !ok {
            return Err(Error::Orientation(format!(
                "edge {label} is not traversed head-to-tail; supply explicit orientations"
            )));
        }
    }

    let over_dirs: Vec<OverDir> = over.into_iter().map(|o| o.unwrap()).collect();

    // Strand successor: incoming edge -> outgoing edge on the same strand.
    let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
    for c in 0..n {
        let [a, b, cc, d] = crossings[c];
        succ.insert(a, cc);
        match over_dirs[c] {
            OverDir::BToD => succ.insert(b, d),
            OverDir::DToB => succ.insert(d, b),
        };
    }

    let mut components = Vec::new();
    let mut seen: BTreeMap<u32, bool> = succ.keys().map(|&l| (l, false)).collect();
    for &start in succ.keys() {
        if seen[&start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            cycle.push(cur);
            *seen.get_mut(&cur).unwrap() = true;
            cur = succ[&cur];
            if cur == start {
                break;
            }
        }
        components.push(cycle);
    }

    // Label arithmetic assumed the consecutive-run convention; verify it on
    // every component it touched.
    if !arithmetic.is_empty() {
        for cycle in &components {
            if !cycle.iter().any(|l| arithmetic.contains(l)) {
                continue;
            }
            let max = *cycle.iter().max().unwrap();
            let min = *cycle.iter().min().unwrap();
            let wraps = cycle
                .iter()
                .zip(cycle.iter().cycle().skip(1))
                .filter(|&(&x, &y)| y != x + 1)
                .collect::<Vec<_>>();
            let run_ok = cycle.len() == 1
                || (wraps.len() == 1 && *wraps[0].0 == max && *wraps[0].1 == min);
            if !run_ok {
                return Err(Error::Orientation(format!(
                    "component containing edge {} does not follow the consecutive-label \
                     convention; supply explicit orientations",
                    cycle[0]
                )));
            }
        }
    }

    Ok((over_dirs, components.len()))
}

fn apply_over(dir: &mut [SlotDir; 4], over: &mut Option<OverDir>, decided: OverDir) {
    *over = Some(decided);
    match decided {
        OverDir::BToD => {
            dir[1] = SlotDir::Toward;
            dir[3] = SlotDir::Away;
        }
        OverDir::DToB => {
            dir[1] = SlotDir::Away;
            dir[3] = SlotDir::Toward;
        }
    }
}

/// Parse the PD text format: whitespace-separated `X[a,b,c,d]` terms, the
/// literal `UNKNOT` for the 0-crossing diagram, `#` line comments.
pub fn parse_pd(text: &str) -> Result<PDCode> {
    let mut tuples: Vec<[u32; 4]> = Vec::new();
    let mut saw_unknot = false;
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let mut chars = line.char_indices().peekable();
        while let Some(&(col, ch)) = chars.peek() {
            if ch.is_whitespace() {
                chars.next();
                continue;
            }
            let err = |message: String| Error::Syntax {
                line: lineno + 1,
                column: col + 1,
                message,
            };
            if ch == 'U' {
                let rest = &line[col..];
                if let Some(stripped) = rest.strip_prefix("UNKNOT") {
                    if stripped.chars().next().is_none_or(|c| c.is_whitespace()) {
                        saw_unknot = true;
                        for _ in 0.."UNKNOT".len() {
                            chars.next();
                        }
                        continue;
                    }
                }
                return Err(err(format!("unexpected token starting with {ch:?}")));
            }
            if ch != 'X' {
                return Err(err(format!(
                    "expected 'X[a,b,c,d]' or 'UNKNOT', found {ch:?}"
                )));
            }
            chars.next();
            match chars.next() {
                Some((_, '[')) => {}
                _ => return Err(err("expected '[' after 'X'".into())),
            }
            let mut fields = [0u32; 4];
            for (i, field) in fields.iter_mut().enumerate() {
                let mut digits = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(err(format!("expected integer in field {} of X[...]", i + 1)));
                }
                *field = digits
                    .parse::<u32>()
                    .map_err(|_| err(format!("label {digits} out of range")))?;
                let want = if i < 3 { ',' } else { ']' };
                match chars.next() {
                    Some((_, c)) if c == want => {}
                    _ => return Err(err(format!("expected {want:?} in X[...]"))),
                }
            }
            tuples.push(fields);
        }
    }
    if saw_unknot {
        if !tuples.is_empty() {
            return Err(Error::Input(
                "UNKNOT cannot be combined with X[...] terms".into(),
            ));
        }
        return Ok(PDCode::unknot());
    }
    if tuples.is_empty() {
        return Err(Error::Input("empty input: no crossings and no UNKNOT".into()));
    }
    PDCode::new(tuples, None)
}

/// JSON input form: `{"name": ..., "crossings": [[a,b,c,d],...],
/// "orientations": ["bd"|"db",...], "outer_dart": n}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct JsonDiagram {
    #[serde(default)]
    pub name: Option<String>,
    pub crossings: Vec<[u32; 4]>,
    #[serde(default)]
    pub orientations: Option<Vec<String>>,
    #[serde(default)]
    pub outer_dart: Option<usize>,
}

pub fn parse_json(text: &str) -> Result<PDCode> {
    let raw: JsonDiagram =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let orientations = match raw.orientations {
        None => None,
        Some(flags) => {
            let mut dirs = Vec::with_capacity(flags.len());
            for (i, f) in flags.iter().enumerate() {
                dirs.push(match f.as_str() {
                    "bd" => OverDir::BToD,
                    "db" => OverDir::DToB,
                    other => {
                        return Err(Error::Input(format!(
                            "orientations[{i}] must be \"bd\" or \"db\", got {other:?}"
                        )))
                    }
                });
            }
            Some(dirs)
        }
    };
    let mut pd = if raw.crossings.is_empty() {
        PDCode::unknot()
    } else {
        PDCode::new(raw.crossings, orientations)?
    };
    pd.name = raw.name;
    pd.outer_dart = raw.outer_dart;
    Ok(pd)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parse_trefoil() {
        let pd = parse_pd(TREFOIL).unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.components, 1);
        assert_eq!(pd.edge_count(), 6);
        // Over strand of each crossing runs b -> d here (d = b + 1).
        assert!(pd.over_dirs.iter().all(|&d| d == OverDir::BToD));
    }

    #[test]
    fn parse_unknot() {
        let pd = parse_pd("UNKNOT").unwrap();
        assert_eq!(pd.crossing_count(), 0);
        assert_eq!(pd.components, 1);
    }

    #[test]
    fn comments_and_whitespace() {
        let pd = parse_pd("# trefoil\nX[1,4,2,5]\n  X[3,6,4,1] # mid\nX[5,2,6,3]\n").unwrap();
        assert_eq!(pd.crossing_count(), 3);
    }

    #[test]
    fn label_multiset_violation() {
        let err = parse_pd("X[1,4,2,5] X[3,6,4,1]").unwrap_err();
        match err {
            Error::Labels(msg) => {
                for l in ["2", "3", "5", "6"] {
                    assert!(msg.contains(l), "missing {l} in {msg}");
                }
            }
            other => panic!("expected Labels error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_pd("X[1,4,2,5] Y[3,6,4,1]").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 12);
            }
            other => panic!("expected Syntax error, got {other:?}"),
        }
    }

    #[test]
    fn hopf_link_two_components() {
        let pd = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(pd.components, 2);
        assert_eq!(pd.edge_count(), 4);
    }

    #[test]
    fn one_crossing_kink() {
        let pd = parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(pd.components, 1);
        // The over strand must take the wrap 2 -> 1; b -> d here.
        assert_eq!(pd.over_dirs, vec![OverDir::BToD]);
    }

    #[test]
    fn figure_eight_orientation() {
        let pd = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert_eq!(pd.components, 1);
        assert_eq!(pd.crossing_count(), 4);
    }

    #[test]
    fn mirror_involution() {
        let pd = parse_pd(TREFOIL).unwrap();
        let back = pd.mirror().mirror();
        assert_eq!(back.crossings, pd.crossings);
        assert_eq!(back.over_dirs, pd.over_dirs);
    }

    #[test]
    fn display_round_trip() {
        let pd = parse_pd(TREFOIL).unwrap();
        let again = parse_pd(&pd.to_string()).unwrap();
        assert_eq!(again, pd);
        assert_eq!(parse_pd("UNKNOT").unwrap().to_string(), "UNKNOT");
    }

    #[test]
    fn json_round_trip() {
        let pd = parse_json(
            r#"{"name": "hopf", "crossings": [[1,3,2,4],[3,1,4,2]], "outer_dart": 2}"#,
        )
        .unwrap();
        assert_eq!(pd.name.as_deref(), Some("hopf"));
        assert_eq!(pd.outer_dart, Some(2));
        assert_eq!(pd.components, 2);
    }

    #[test]
    fn json_explicit_orientations() {
        // Same Hopf link with the over directions stated outright.
        let pd = parse_json(r#"{"crossings": [[1,3,2,4],[3,1,4,2]], "orientations": ["db","db"]}"#)
            .unwrap();
        assert_eq!(pd.over_dirs, vec![OverDir::DToB, OverDir::DToB]);
        // Contradictory flags are rejected.
        let err = parse_json(r#"{"crossings": [[1,3,2,4],[3,1,4,2]], "orientations": ["bd","db"]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Orientation(_)));
    }
}
