//! Dictionary-based text similarity.
//!
//! A text is summarized by the set of word patterns an incremental
//! dictionary coder registers while scanning it once; two texts are then
//! compared by how much of one dictionary the other covers. Building a
//! dictionary is a one-time cost per document, so comparing every pair in a
//! corpus stays cheap, where classic compression distances re-compress both
//! documents for every single pair.
//!
//! The crate is organized around runnable examples; each major capability
//! has one under `examples/`:
//!
//! - `dictionary_extraction`: tokenize a text and inspect its dictionary.
//! - `text_similarity`: the dictionary distance (asymmetric, in `[0, 1]`)
//!   next to the byte-level compression distance.
//! - `distance_matrix`: a manifest-described corpus to a pairwise CSV.
//! - `hierarchical_clustering`: average-linkage trees, Newick and DOT.
//! - `authorship_attribution`: nearest-dictionary author prediction.
//! - `author_verification`: same-author or different-author decisions.
//! - `fcd_vs_ncd_speed`: why amortizing the per-document work matters.
//!
//! The same workflows ship as the `fcd` binary: `build`, `matrix`,
//! `attribute`, `verify`, and `cluster` subcommands over on-disk corpora.

pub mod classify;
pub mod cli;
pub mod cluster;
pub mod corpus;
pub mod dictionary;
pub mod error;
pub mod matrix;
pub mod normalize;
pub mod similarity;

pub use classify::{
    attribute, verify, Attribution, TrainingDoc, Verdict, Verification, VerificationProblem,
};
pub use cluster::{cluster, Dendrogram, Merge};
pub use corpus::{CorpusIndex, DocumentRecord};
pub use dictionary::{extract_dictionary, Dictionary, LengthDiagnostic, Pattern};
pub use error::{Error, Result};
pub use matrix::{build_matrix, fcd_matrix, ncd_matrix, DistanceMatrix, Measure};
pub use normalize::{apply_rule, normalize, LanguageRule, TokenSequence};
pub use similarity::{compress_size, fcd, intersection_count, joint_compress_size, ncd};
