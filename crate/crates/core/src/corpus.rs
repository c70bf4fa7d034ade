//! The built-in diagram corpus: the small alternating table knots, the
//! standard positive 8_19 and 10_138 diagrams, the Hopf link, degenerate
//! unknots, and the fixture pairs whose verdicts differ within a pair.

use crate::error::Result;
use crate::pd::{parse_pd, PDCode};

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn pd(&self) -> Result<PDCode> {
        Ok(parse_pd(self.source)?.with_name(self.name))
    }
}

macro_rules! entry {
    ($name:literal, $file:literal) => {
        CorpusEntry {
            name: $name,
            source: include_str!(concat!("../corpus/", $file)),
        }
    };
}

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("unknot_0", "unknot_0.pd"),
    entry!("unknot_1", "unknot_1.pd"),
    entry!("hopf", "hopf.pd"),
    entry!("3_1", "3_1.pd"),
    entry!("4_1", "4_1.pd"),
    entry!("5_1", "5_1.pd"),
    entry!("5_2", "5_2.pd"),
    entry!("6_1", "6_1.pd"),
    entry!("6_2", "6_2.pd"),
    entry!("6_3", "6_3.pd"),
    entry!("8_19", "8_19.pd"),
    entry!("9_43_1", "9_43_1.pd"),
    entry!("9_43_2", "9_43_2.pd"),
    entry!("10_138", "10_138.pd"),
    entry!("10_161_a", "10_161_a.pd"),
    entry!("10_161_b", "10_161_b.pd"),
];

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

pub fn by_name(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Parse every corpus entry; the corpus must always be fully valid.
pub fn parse_all() -> Vec<PDCode> {
    ENTRIES
        .iter()
        .map(|e| e.pd().unwrap_or_else(|err| panic!("corpus {}: {err}", e.name)))
        .collect()
}

/// The minimal alternating table diagrams, 3_1 through 6_3.
pub const ALTERNATING: &[&str] = &["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"];
