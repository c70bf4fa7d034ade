//! Per-diagram records and the corpus summary, in text and JSON form.
//! Output is fully deterministic unless timings are requested.

use serde::Serialize;

use knot_alt_core::{Analysis, MethodResults, Witness};

#[derive(Debug, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Debug, Serialize)]
pub struct Record {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossings: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spaces: Option<usize>,
    /// Circle heights by circle id.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<usize>>,
    /// A dart whose face walk is the outer region; rerunning with
    /// `--outer-dart` on it reproduces the heights. Absent for the
    /// 0-crossing unknot.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer_dart: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<MethodResults>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub diagrams: usize,
    pub errors: usize,
    pub alternative: usize,
    pub homogeneous: usize,
    /// Diagrams that are neither alternative nor homogeneous.
    pub neither: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    All,
    Alternative,
    Homogeneous,
}

impl Record {
    pub fn from_analysis(
        name: String,
        file: Option<String>,
        a: &Analysis,
        timing_ms: Option<f64>,
    ) -> Record {
        Record {
            name,
            file,
            error: None,
            crossings: Some(a.diagram.crossing_count()),
            components: Some(a.pd.components),
            circles: Some(a.seifert.circle_count()),
            spaces: Some(a.seifert.spaces.len()),
            heights: Some(a.seifert.circles.iter().map(|c| c.height).collect()),
            outer_dart: a.diagram.regions[a.diagram.outer_region]
                .boundary
                .first()
                .copied(),
            homogeneous: Some(a.verdict.homogeneous),
            alternative: Some(a.verdict.alternative),
            methods: Some(a.verdict.methods),
            witness: a.verdict.witness,
            timing_ms,
        }
    }

    pub fn from_error(name: String, file: Option<String>, error: String) -> Record {
        Record {
            name,
            file,
            error: Some(error),
            crossings: None,
            components: None,
            circles: None,
            spaces: None,
            heights: None,
            outer_dart: None,
            homogeneous: None,
            alternative: None,
            methods: None,
            witness: None,
            timing_ms: None,
        }
    }
}

impl Report {
    pub fn new(records: Vec<Record>) -> Report {
        let errors = records.iter().filter(|r| r.error.is_some()).count();
        let alternative = records.iter().filter(|r| r.alternative == Some(true)).count();
        let homogeneous = records.iter().filter(|r| r.homogeneous == Some(true)).count();
        let neither = records.iter().filter(|r| r.homogeneous == Some(false)).count();
        let summary = Summary {
            diagrams: records.len(),
            errors,
            alternative,
            homogeneous,
            neither,
        };
        Report { records, summary }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, check: CheckKind) -> String {
        let mut out = String::new();
        for r in &self.records {
            if let Some(err) = &r.error {
                out.push_str(&format!("{}: error: {err}\n", r.name));
                continue;
            }
            let verdicts = match check {
                CheckKind::All => format!(
                    "alternative: {}, homogeneous: {}",
                    yesno(r.alternative),
                    yesno(r.homogeneous)
                ),
                CheckKind::Alternative => format!("alternative: {}", yesno(r.alternative)),
                CheckKind::Homogeneous => format!("homogeneous: {}", yesno(r.homogeneous)),
            };
            out.push_str(&format!("{}: {verdicts}\n", r.name));
            out.push_str(&format!(
                "  crossings {}, components {}, circles {}, spaces {}, heights {:?}{}\n",
                r.crossings.unwrap(),
                r.components.unwrap(),
                r.circles.unwrap(),
                r.spaces.unwrap(),
                r.heights.as_deref().unwrap(),
                match r.outer_dart {
                    Some(d) => format!(", outer dart {d}"),
                    None => String::new(),
                }
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!("  witness: {}\n", witness_text(w)));
            }
            if let Some(ms) = r.timing_ms {
                out.push_str(&format!("  time: {ms:.3} ms\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} diagrams, {} alternative, {} homogeneous, {} neither, {} errors\n",
            s.diagrams, s.alternative, s.homogeneous, s.neither, s.errors
        ));
        out
    }
}

fn yesno(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::MixedBlock {
            block,
            crossing_a,
            crossing_b,
        } => format!("block {block} mixes crossings {crossing_a} and {crossing_b}"),
        Witness::MixedSpace {
            space,
            crossing_a,
            crossing_b,
        } => format!("space {space} mixes crossings {crossing_a} and {crossing_b}"),
        Witness::MixedComponent {
            region,
            crossing_a,
            crossing_b,
        } => format!(
            "component of region {region} mixes crossings {crossing_a} and {crossing_b}"
        ),
        Witness::MixedHeightComponent {
            subgraph,
            circle,
            crossing_a,
            crossing_b,
        } => format!(
            "subgraph g{subgraph} component of circle {circle} mixes crossings {crossing_a} and {crossing_b}"
        ),
    }
}
