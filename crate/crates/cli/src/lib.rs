//! Command-line surface for block segmentation of aligned categorical
//! sequences: alignment ingestion (FASTA and delimited matrices), design
//! files for the Markov-chain generator, structured run reports, and the
//! replicate evaluation harness.
//!
//! The binary exposes three subcommands — `segment`, `simulate`, and
//! `evaluate` — each printing one JSON object on stdout with logs on
//! stderr. TSV exports are opt-in per flag. Exit codes are stable: 0 on
//! success, 2 for usage errors (flag parsing), 1 for data errors.

pub mod design;
pub mod evaluate;
pub mod io;
pub mod report;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by loaders, design resolution, and the evaluation
/// harness. All of them exit the binary with code 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Filesystem failure, annotated with the path.
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// An aligned FASTA record disagrees with the first record's length.
    #[error("{path}: record `{record}` has length {found}, expected {expected}")]
    RaggedRecord {
        path: String,
        record: String,
        expected: usize,
        found: usize,
    },
    /// Structurally malformed FASTA (e.g. sequence data before a header).
    #[error("{path}: {detail}")]
    Fasta { path: String, detail: String },
    /// A library-level error, annotated with the originating file.
    #[error("{path}: {source}")]
    Data {
        path: String,
        source: seqseg_core::Error,
    },
    /// A design file failed to parse or describe a usable generator.
    #[error("{path}: invalid design file: {detail}")]
    DesignFile { path: String, detail: String },
    /// A `--design` argument matched neither a built-in name nor a file.
    #[error("unknown design `{name}`: not a built-in design and not a readable file")]
    UnknownDesign { name: String },
    /// A truth file line is not a cut position.
    #[error("{path}:{line}: cannot parse `{text}` as a cut position")]
    TruthParse {
        path: String,
        line: usize,
        text: String,
    },
    /// A library-level error with no file context.
    #[error(transparent)]
    Core(#[from] seqseg_core::Error),
}
