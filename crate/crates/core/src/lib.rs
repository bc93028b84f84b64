//! Variable-length motif discovery in univariate time series.
//!
//! The pipeline differences and z-normalizes the input, compresses it into a
//! symbol stream (window means discretized against equiprobable Gaussian
//! regions), then evolves a population of trackers that grow one symbol per
//! generation toward the repeating patterns. Symbol-level matches are
//! confirmed numerically with a per-point Euclidean-distance threshold, and
//! the confirmed motif pool is streamlined into a report. A brute-force
//! oracle provides independent ground truth for validating such reports.

pub mod candidates;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod memory;
pub mod oracle;
pub mod preprocess;
pub mod symbol;
pub mod tracker;

pub use candidates::{CandidateMatrix, CandidateWord, SymbolMatrix};
pub use dataset::{load_dataset, Preset, SubsetOverrides, SubsetSpec};
pub use error::{Error, Result};
pub use memory::{euclidean_distance, threshold_for, MemoryMotif, MemoryPool, MotifReport};
pub use oracle::{
    brute_force_motifs, coverable_pairs, validate_report, OracleEntry, OracleMotifSet, Verdict,
};
pub use preprocess::{symbolize_window, Alphabet, Params, TimeSeries};
pub use symbol::{Symbol, SymbolString};
pub use tracker::{run, run_observed, GenerationEvent, MutationTemplate, Tracker};
