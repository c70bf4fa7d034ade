//! Oriented link-diagram analysis.
//!
//! From a PD code this crate reconstructs the plane map, runs Seifert
//! smoothing, builds the enhanced checkerboard digraph and the labeled
//! Seifert graph, and decides whether the diagram is homogeneous and whether
//! it is alternative, checking the latter three independent ways.

pub mod classify;
pub mod corpus;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod gen;
pub mod graphs;
pub mod invariants;
pub mod pd;
pub mod seifert;

pub use classify::{analyze, classify, Analysis, MethodResults, Verdict, Witness};
pub use diagram::{Color, CrossingIncidence, Diagram, IncidenceKind, Region, Sign};
pub use dot::GraphKind;
pub use error::{Error, Result};
pub use graphs::{Block, HeightSubgraph, LabeledSeifertGraph, SpatialGraph};
pub use pd::{parse_json, parse_pd, PDCode};
pub use seifert::{SeifertCircle, SeifertDiagram, SiteMarker, Space};

#[cfg(test)]
mod tests {
    #[test]
    fn shared_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::PDCode>();
        check::<crate::Diagram>();
        check::<crate::SeifertDiagram>();
        check::<crate::SpatialGraph>();
        check::<crate::LabeledSeifertGraph>();
        check::<crate::Analysis>();
        check::<crate::Verdict>();
    }
}
