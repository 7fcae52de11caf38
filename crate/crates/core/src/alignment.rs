//! Alignment data model: an immutable `n x m` matrix of small integer symbol
//! codes plus one declared alphabet per column.
//!
//! Codes are column-local: code `k` in column `j` means label
//! `alphabet(j)[k]`, and the same label may map to different codes in
//! different columns. Gaps and other special characters are ordinary
//! symbols. Once constructed, an alignment never changes.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest number of distinct symbols a single column may hold.
pub const MAX_ALPHABET: usize = u16::MAX as usize;

/// A 1-based, inclusive column interval `lo:hi`.
///
/// Solvers and scores use 1-based column positions throughout, matching the
/// cut-position convention (a cut at `t` separates columns `t` and `t + 1`).
/// The empty interval is represented as `None` at the API boundary, never as
/// a stored `IntervalRef` with `hi < lo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalRef {
    /// First column of the block (1-based).
    pub lo: usize,
    /// Last column of the block (1-based, inclusive).
    pub hi: usize,
}

impl IntervalRef {
    /// Builds an interval, rejecting `lo == 0` and `hi < lo`.
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || hi < lo {
            return Err(Error::IntervalOutOfRange { lo, hi, cols: 0 });
        }
        Ok(IntervalRef { lo, hi })
    }

    /// Number of columns covered.
    #[inline]
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// Always false: empty intervals are `None`, never an `IntervalRef`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }
}

impl core::fmt::Display for IntervalRef {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// An immutable aligned set of categorical sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    rows: usize,
    cols: usize,
    /// Row-major symbol codes; entry `(r, c)` lives at `r * cols + c`.
    data: Vec<u16>,
    /// Declared alphabet per column; `data` codes index into these.
    alphabets: Vec<Vec<String>>,
}

impl Alignment {
    /// Builds an alignment from rows of symbol labels.
    ///
    /// Each column's alphabet is the sorted (lexicographic) list of distinct
    /// labels observed in that column; codes are positions in that order.
    ///
    /// # Errors
    ///
    /// `RaggedRow` if rows disagree on length, `EmptyAlignment` if there are
    /// no rows or no columns, `AlphabetOverflow` if a column exceeds
    /// [`MAX_ALPHABET`] distinct symbols.
    pub fn from_label_rows(rows: &[Vec<String>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyAlignment);
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        let n = rows.len();
        let mut alphabets = Vec::with_capacity(cols);
        let mut data = alloc::vec![0u16; n * cols];
        for c in 0..cols {
            // BTreeMap gives the sorted distinct labels and the label->code
            // map in one pass.
            let mut codes: BTreeMap<&str, u16> = BTreeMap::new();
            for row in rows {
                codes.entry(row[c].as_str()).or_insert(0);
            }
            if codes.len() > MAX_ALPHABET {
                return Err(Error::AlphabetOverflow {
                    col: c,
                    distinct: codes.len(),
                });
            }
            for (next, (_, code)) in codes.iter_mut().enumerate() {
                *code = next as u16;
            }
            for (r, row) in rows.iter().enumerate() {
                data[r * cols + c] = codes[row[c].as_str()];
            }
            alphabets.push(codes.keys().map(|s| s.to_string()).collect());
        }
        Ok(Alignment {
            rows: n,
            cols,
            data,
            alphabets,
        })
    }

    /// Builds an alignment from pre-encoded codes and declared alphabets.
    ///
    /// Unlike [`from_label_rows`](Self::from_label_rows), the alphabets are
    /// taken as given (they may be larger than what the data realizes, and
    /// need not be sorted). Used by the simulator, where the design declares
    /// the full alphabet regardless of which symbols a finite sample happens
    /// to produce.
    ///
    /// # Errors
    ///
    /// `EmptyAlignment`, `RaggedRow` (when `data` length is not
    /// `rows * alphabets.len()`), `InvalidAlphabet` for an empty or
    /// duplicated alphabet, and `CodeOutOfRange` for codes outside their
    /// column's alphabet.
    pub fn from_codes(rows: usize, data: Vec<u16>, alphabets: Vec<Vec<String>>) -> Result<Self> {
        let cols = alphabets.len();
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyAlignment);
        }
        if data.len() != rows * cols {
            return Err(Error::RaggedRow {
                row: data.len() / cols,
                expected: cols,
                found: data.len() - (data.len() / cols) * cols,
            });
        }
        for (c, alphabet) in alphabets.iter().enumerate() {
            if alphabet.is_empty() || alphabet.len() > MAX_ALPHABET {
                return Err(Error::InvalidAlphabet { col: c });
            }
            for (i, a) in alphabet.iter().enumerate() {
                if alphabet[..i].contains(a) {
                    return Err(Error::InvalidAlphabet { col: c });
                }
            }
        }
        for r in 0..rows {
            for c in 0..cols {
                if usize::from(data[r * cols + c]) >= alphabets[c].len() {
                    return Err(Error::CodeOutOfRange { row: r, col: c });
                }
            }
        }
        Ok(Alignment {
            rows,
            cols,
            data,
            alphabets,
        })
    }

    /// Number of sequences (rows).
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Symbol code at `(row, col)`, both 0-based. Panics if out of range.
    #[inline]
    pub fn code(&self, row: usize, col: usize) -> u16 {
        assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    /// Symbol label at `(row, col)`, both 0-based. Panics if out of range.
    #[inline]
    pub fn label(&self, row: usize, col: usize) -> &str {
        &self.alphabets[col][usize::from(self.code(row, col))]
    }

    /// Declared alphabet of a 0-based column. Panics if out of range.
    #[inline]
    pub fn alphabet(&self, col: usize) -> &[String] {
        &self.alphabets[col]
    }

    /// Declared alphabet size of a 0-based column. Panics if out of range.
    #[inline]
    pub fn alphabet_size(&self, col: usize) -> usize {
        self.alphabets[col].len()
    }

    /// Number of distinct symbols actually observed in a 0-based column,
    /// recomputed from the data.
    ///
    /// # Errors
    ///
    /// `ColumnOutOfRange` if `col >= cols`.
    pub fn observed_alphabet_size(&self, col: usize) -> Result<usize> {
        if col >= self.cols {
            return Err(Error::ColumnOutOfRange {
                col,
                cols: self.cols,
            });
        }
        let mut seen = alloc::vec![false; self.alphabets[col].len()];
        let mut distinct = 0usize;
        for r in 0..self.rows {
            let code = usize::from(self.data[r * self.cols + col]);
            if !seen[code] {
                seen[code] = true;
                distinct += 1;
            }
        }
        Ok(distinct)
    }

    /// Raw row-major code storage, for the scoring hot loops.
    #[inline]
    pub(crate) fn raw(&self) -> &[u16] {
        &self.data
    }
}
