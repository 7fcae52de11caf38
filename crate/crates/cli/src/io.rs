//! Alignment file formats: aligned FASTA and delimited matrices, plus the
//! one-cut-per-line truth files written by the simulator.
//!
//! Both loaders build per-column alphabets from the observed data (sorted
//! distinct labels, codes in sorted order), so equivalent content produces
//! identical [`Alignment`]s regardless of format. Gaps (`-`) are ordinary
//! symbols, and FASTA letters are upper-cased before alphabet construction.

use std::fs;
use std::path::Path;

use seqseg_core::Alignment;

use crate::{Error, Result};

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

// -------------------------------------------------------------------- FASTA

/// Parses aligned FASTA text: `>` header lines start records, subsequent
/// non-empty lines are concatenated as the record's sequence, letters are
/// upper-cased, and every character (including `-`) is one symbol.
/// `origin` names the source in error messages.
///
/// # Errors
///
/// `RaggedRecord` (naming the record) when lengths differ, `Fasta` for
/// sequence data before the first header, and `Data` wrapping the
/// empty-input case.
pub fn parse_fasta(text: &str, origin: &str) -> Result<Alignment> {
    let mut records: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if let Some(header) = line.strip_prefix('>') {
            records.push((header.trim().to_string(), String::new()));
        } else {
            let chunk = line.trim();
            if chunk.is_empty() {
                continue;
            }
            match records.last_mut() {
                Some((_, seq)) => seq.push_str(chunk),
                None => {
                    return Err(Error::Fasta {
                        path: origin.to_string(),
                        detail: "sequence data before the first `>` header".to_string(),
                    })
                }
            }
        }
    }
    if records.is_empty() {
        return Err(Error::Data {
            path: origin.to_string(),
            source: seqseg_core::Error::EmptyAlignment,
        });
    }
    let expected = records[0].1.chars().count();
    for (name, seq) in &records {
        let found = seq.chars().count();
        if found != expected {
            return Err(Error::RaggedRecord {
                path: origin.to_string(),
                record: name.clone(),
                expected,
                found,
            });
        }
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|(_, seq)| {
            seq.to_uppercase()
                .chars()
                .map(|ch| ch.to_string())
                .collect()
        })
        .collect();
    Alignment::from_label_rows(&rows).map_err(|source| Error::Data {
        path: origin.to_string(),
        source,
    })
}

/// Loads an aligned FASTA file. See [`parse_fasta`].
pub fn load_fasta(path: &Path) -> Result<Alignment> {
    let text = read_file(path)?;
    parse_fasta(&text, &path.display().to_string())
}

// ------------------------------------------------------------------- matrix

/// Parses delimited matrix text: one sequence per line, cells split on
/// `delimiter` verbatim (no trimming, no header row); empty lines are
/// skipped. `origin` names the source in error messages.
///
/// # Errors
///
/// `Data` wrapping ragged-row (with the 0-based row index) and empty-input
/// errors.
pub fn parse_matrix(text: &str, delimiter: char, origin: &str) -> Result<Alignment> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        rows.push(line.split(delimiter).map(str::to_string).collect());
    }
    Alignment::from_label_rows(&rows).map_err(|source| Error::Data {
        path: origin.to_string(),
        source,
    })
}

/// Loads a delimited matrix file. See [`parse_matrix`].
pub fn load_matrix(path: &Path, delimiter: char) -> Result<Alignment> {
    let text = read_file(path)?;
    parse_matrix(&text, delimiter, &path.display().to_string())
}

/// Renders an alignment as delimited matrix text: one row per line, labels
/// joined by `delimiter`, trailing newline. Reloading the result with
/// [`parse_matrix`] reproduces the alignment exactly.
pub fn matrix_to_string(alignment: &Alignment, delimiter: char) -> String {
    let mut out = String::new();
    for r in 0..alignment.rows() {
        for c in 0..alignment.cols() {
            if c > 0 {
                out.push(delimiter);
            }
            out.push_str(alignment.label(r, c));
        }
        out.push('\n');
    }
    out
}

/// Writes an alignment as a delimited matrix file.
pub fn write_matrix(path: &Path, alignment: &Alignment, delimiter: char) -> Result<()> {
    write_file(path, &matrix_to_string(alignment, delimiter))
}

// -------------------------------------------------------------------- truth

/// Writes ground-truth cuts, one integer per line (empty file for no cuts).
pub fn write_truth(path: &Path, cuts: &[usize]) -> Result<()> {
    let mut out = String::new();
    for c in cuts {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    write_file(path, &out)
}

/// Reads a truth file written by [`write_truth`]: one integer cut per
/// non-empty line.
///
/// # Errors
///
/// `TruthParse` with the 1-based line number on non-integer content.
pub fn read_truth(path: &Path) -> Result<Vec<usize>> {
    let text = read_file(path)?;
    let mut cuts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cut: usize = line.parse().map_err(|_| Error::TruthParse {
            path: path.display().to_string(),
            line: i + 1,
            text: line.to_string(),
        })?;
        cuts.push(cut);
    }
    Ok(cuts)
}

// ------------------------------------------------------------------- tests


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_label() -> impl Strategy<Value = String> {
        // Tokens over a small safe alphabet, never containing the delimiter
        // or line breaks, possibly multi-character.
        proptest::string::string_regex("[A-Za-z0-9_.-]{1,3}").unwrap()
    }

    proptest! {
        #[test]
        fn matrix_text_round_trips_any_label_grid(
            rows in 1usize..6,
            cols in 1usize..6,
            seed_labels in proptest::collection::vec(arb_label(), 1..8),
        ) {
            let label = |r: usize, c: usize| {
                seed_labels[(r * 31 + c * 7) % seed_labels.len()].clone()
            };
            let mut text = String::new();
            for r in 0..rows {
                let row: Vec<String> = (0..cols).map(|c| label(r, c)).collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            let a = parse_matrix(&text, ',', "prop").unwrap();
            prop_assert_eq!(a.rows(), rows);
            prop_assert_eq!(a.cols(), cols);
            let rendered = matrix_to_string(&a, ',');
            prop_assert_eq!(&rendered, &text);
            let b = parse_matrix(&rendered, ',', "prop").unwrap();
            for c in 0..a.cols() {
                prop_assert_eq!(a.alphabet(c), b.alphabet(c));
                for r in 0..a.rows() {
                    prop_assert_eq!(a.code(r, c), b.code(r, c));
                }
            }
        }
    }
}
