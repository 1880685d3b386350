//! Theorem checks over corpora of quasi-median graphs, and homology verdicts
//! for pairs of graphs.

pub mod corpus;
pub mod raag;
pub mod report;
pub mod verify;

pub use corpus::{expand, run_corpus, CorpusEntry, CorpusReport, CorpusSpec, EntryOutcome};
pub use raag::{flag_obstruction, raag_verdict, HarnessError, Invariant, RaagVerdict};
pub use report::{CheckResult, Status, TheoremReport};
pub use verify::{homology_mismatch, verify_graph, FamilyChoice};
