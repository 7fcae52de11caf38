//! Crate-wide error type and result alias.

use alloc::string::String;
use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by alignment construction, scoring, solving, and
/// simulation.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// An input row disagrees with the first row on length.
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    /// The alignment has no rows or no columns.
    EmptyAlignment,
    /// A column holds more distinct symbols than the symbol-code type can
    /// address.
    AlphabetOverflow { col: usize, distinct: usize },
    /// A column alphabet is empty or repeats a label.
    InvalidAlphabet { col: usize },
    /// A stored symbol code falls outside its column's declared alphabet.
    CodeOutOfRange { row: usize, col: usize },
    /// Column index outside `0..cols`.
    ColumnOutOfRange { col: usize, cols: usize },
    /// Interval endpoints violate `1 <= lo <= hi <= cols`.
    IntervalOutOfRange { lo: usize, hi: usize, cols: usize },
    /// A cut list is not strictly increasing inside `1..cols`.
    InvalidCut { cut: usize, cols: usize },
    /// Penalty scale `c` must be a finite, strictly positive number.
    InvalidPenaltyScale(f64),
    /// Brute force refused to enumerate: too many columns.
    TooManyColumns { cols: usize, max: usize },
    /// A transition-matrix row or initial distribution is not a probability
    /// vector (nonnegative entries summing to 1 within 1e-12).
    NotStochastic {
        what: &'static str,
        block: usize,
        index: usize,
    },
    /// A block model or simulation design is structurally invalid.
    InvalidDesign(&'static str),
    /// No built-in design is registered under this name.
    UnknownDesign(String),
    /// KL divergence: the two tables differ in length.
    SupportMismatch { left: usize, right: usize },
    /// KL divergence: the second table vanishes where the first has mass.
    DivergenceUndefined { index: usize },
    /// An argument is not a probability table (negative mass, non-finite
    /// entries, or total far from 1).
    NotADistribution { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RaggedRow {
                row,
                expected,
                found,
            } => write!(
                f,
                "row {row} has {found} columns, expected {expected} (ragged input)"
            ),
            Error::EmptyAlignment => write!(f, "alignment has no rows or no columns"),
            Error::AlphabetOverflow { col, distinct } => write!(
                f,
                "column {col} has {distinct} distinct symbols, more than the supported maximum"
            ),
            Error::InvalidAlphabet { col } => {
                write!(f, "column {col} alphabet is empty or repeats a label")
            }
            Error::CodeOutOfRange { row, col } => write!(
                f,
                "symbol code at row {row}, column {col} is outside the declared alphabet"
            ),
            Error::ColumnOutOfRange { col, cols } => {
                write!(f, "column {col} out of range for {cols} columns")
            }
            Error::IntervalOutOfRange { lo, hi, cols } => {
                write!(f, "interval {lo}:{hi} out of range for {cols} columns")
            }
            Error::InvalidCut { cut, cols } => write!(
                f,
                "cut {cut} invalid: cuts must be strictly increasing within 1..{cols}"
            ),
            Error::InvalidPenaltyScale(c) => {
                write!(f, "penalty scale c = {c} must be finite and > 0")
            }
            Error::TooManyColumns { cols, max } => write!(
                f,
                "brute force supports at most {max} columns, got {cols}"
            ),
            Error::NotStochastic { what, block, index } => {
                if *block > 0 {
                    write!(f, "block {block}: ")?;
                }
                write!(f, "{what} {index} is not a probability vector")
            }
            Error::InvalidDesign(reason) => write!(f, "invalid simulation design: {reason}"),
            Error::UnknownDesign(name) => write!(f, "unknown built-in design `{name}`"),
            Error::SupportMismatch { left, right } => write!(
                f,
                "probability tables differ in length: {left} vs {right}"
            ),
            Error::DivergenceUndefined { index } => write!(
                f,
                "KL divergence undefined: second table is zero at index {index} where the first is positive"
            ),
            Error::NotADistribution { what } => {
                write!(f, "{what} is not a probability table")
            }
        }
    }
}

impl core::error::Error for Error {}
