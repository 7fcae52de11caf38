//! Generator designs for the `simulate` and `evaluate` subcommands: either
//! a built-in preset name or a small TOML file.
//!
//! A design file lists blocks in order; matrix entries are numbers or
//! fraction strings:
//!
//! ```toml
//! [[block]]
//! length = 5
//! transition = [["1/6", "5/6"], ["5/6", "1/6"]]
//! # optional; defaults to the uniform distribution
//! initial = [0.5, 0.5]
//!
//! [[block]]
//! length = 5
//! transition = [[0.8333333333333334, "1/6"], ["1/6", 0.8333333333333334]]
//! ```

use std::path::Path;

use serde::Deserialize;

use seqseg_core::{builtin_design, BlockModel};

use crate::{Error, Result};

/// One matrix or distribution entry: a plain number, or a string holding
/// either a decimal or a fraction `a/b`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Num(f64),
    Text(String),
}

impl Entry {
    fn value(&self) -> std::result::Result<f64, String> {
        match self {
            Entry::Num(v) => Ok(*v),
            Entry::Text(s) => {
                let s = s.trim();
                if let Some((num, den)) = s.split_once('/') {
                    let n: f64 = num
                        .trim()
                        .parse()
                        .map_err(|_| format!("cannot parse `{s}` as a fraction"))?;
                    let d: f64 = den
                        .trim()
                        .parse()
                        .map_err(|_| format!("cannot parse `{s}` as a fraction"))?;
                    if d == 0.0 {
                        return Err(format!("zero denominator in `{s}`"));
                    }
                    Ok(n / d)
                } else {
                    s.parse()
                        .map_err(|_| format!("cannot parse `{s}` as a number"))
                }
            }
        }
    }
}

#[derive(Debug, Deserialize)]
struct BlockSpec {
    length: usize,
    transition: Vec<Vec<Entry>>,
    #[serde(default)]
    initial: Option<Vec<Entry>>,
}

#[derive(Debug, Deserialize)]
struct DesignSpec {
    #[serde(rename = "block")]
    blocks: Vec<BlockSpec>,
}

fn entries_to_values(entries: &[Entry], what: &str, block: usize) -> Result<Vec<f64>> {
    entries
        .iter()
        .map(|e| {
            e.value().map_err(|detail| Error::DesignFile {
                path: String::new(),
                detail: format!("block {block}: {what}: {detail}"),
            })
        })
        .collect()
}

/// Stamps the path into errors produced while the path was unknown.
fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::DesignFile { detail, .. } => Error::DesignFile {
            path: path.display().to_string(),
            detail,
        },
        Error::Core(source) => Error::Data {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

/// Loads the block list of a TOML design file.
///
/// # Errors
///
/// `Io` for unreadable files, `DesignFile` for TOML or entry problems, and
/// `Data` wrapping model validation errors (re-numbered with the 1-based
/// block index).
pub fn load_design_file(path: &Path) -> Result<Vec<BlockModel>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec: DesignSpec = toml::from_str(&text).map_err(|e| Error::DesignFile {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    if spec.blocks.is_empty() {
        return Err(Error::DesignFile {
            path: path.display().to_string(),
            detail: "no [[block]] entries".to_string(),
        });
    }
    let mut models = Vec::with_capacity(spec.blocks.len());
    for (i, b) in spec.blocks.iter().enumerate() {
        let block_no = i + 1;
        let transition: Vec<Vec<f64>> = b
            .transition
            .iter()
            .map(|row| with_path(path, entries_to_values(row, "transition", block_no)))
            .collect::<Result<_>>()?;
        let built = match &b.initial {
            Some(init) => {
                let initial =
                    with_path(path, entries_to_values(init, "initial", block_no))?;
                BlockModel::with_initial(b.length, transition, initial)
            }
            None => BlockModel::new(b.length, transition),
        };
        let model = built.map_err(|e| {
            // Attribute validation failures to this block, 1-based.
            let renumbered = match e {
                seqseg_core::Error::NotStochastic { what, index, .. } => {
                    seqseg_core::Error::NotStochastic {
                        what,
                        block: block_no,
                        index,
                    }
                }
                other => other,
            };
            Error::Data {
                path: path.display().to_string(),
                source: renumbered,
            }
        })?;
        models.push(model);
    }
    Ok(models)
}

/// Resolves a `--design` argument: a built-in preset name first
/// (`paper-binary`, `paper-ternary`), then a design file path.
///
/// # Errors
///
/// `UnknownDesign` when the argument is neither; file errors as in
/// [`load_design_file`].
pub fn resolve_blocks(spec: &str) -> Result<Vec<BlockModel>> {
    if let Ok(blocks) = builtin_design(spec) {
        return Ok(blocks);
    }
    let path = Path::new(spec);
    if path.is_file() {
        load_design_file(path)
    } else {
        Err(Error::UnknownDesign {
            name: spec.to_string(),
        })
    }
}

// ------------------------------------------------------------------- tests

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn fractions_and_decimals_parse_identically() {
        let f = write_temp(
            r#"
[[block]]
length = 5
transition = [["1/6", "5/6"], ["5/6", "1/6"]]

[[block]]
length = 2
transition = [[0.5, "0.5"], ["2/4", 0.5]]
initial = ["1/4", "3/4"]
"#,
        );
        let blocks = load_design_file(f.path()).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].len(), 5);
        assert_eq!(blocks[0].transition()[0][0], 1.0 / 6.0);
        assert_eq!(blocks[0].transition()[0][1], 5.0 / 6.0);
        assert_eq!(blocks[0].initial(), &[0.5, 0.5]);
        assert_eq!(blocks[1].transition()[1][0], 0.5);
        assert_eq!(blocks[1].initial(), &[0.25, 0.75]);
    }

    #[test]
    fn file_designs_can_reproduce_the_builtin() {
        let f = write_temp(
            r#"
[[block]]
length = 5
transition = [["1/6", "5/6"], ["5/6", "1/6"]]
[[block]]
length = 5
transition = [["5/6", "1/6"], ["1/6", "5/6"]]
[[block]]
length = 5
transition = [["1/6", "5/6"], ["5/6", "1/6"]]
"#,
        );
        let from_file = load_design_file(f.path()).unwrap();
        let builtin = builtin_design("paper-binary").unwrap();
        assert_eq!(from_file, builtin);
    }

    #[test]
    fn bad_entries_are_reported_with_block_numbers() {
        let f = write_temp(
            "[[block]]\nlength = 1\ntransition = [[\"1/6\", \"x/6\"], [\"5/6\", \"1/6\"]]\n",
        );
        let err = load_design_file(f.path()).unwrap_err();
        assert!(err.to_string().contains("block 1"), "{err}");

        let f = write_temp(
            "[[block]]\nlength = 1\ntransition = [[0.5, 0.5], [0.5, 0.5]]\n\n[[block]]\nlength = 1\ntransition = [[0.9, 0.2], [0.5, 0.5]]\n",
        );
        let err = load_design_file(f.path()).unwrap_err();
        assert!(err.to_string().contains("block 2"), "{err}");
        assert!(err.to_string().contains("transition row 0"), "{err}");
    }

    #[test]
    fn structural_problems_are_design_file_errors() {
        let err = load_design_file(write_temp("not toml at all [").path()).unwrap_err();
        assert!(matches!(err, Error::DesignFile { .. }));
        let err = load_design_file(write_temp("x = 1\n").path()).unwrap_err();
        assert!(matches!(err, Error::DesignFile { .. }));
        let f = write_temp("[[block]]\nlength = 0\ntransition = [[0.5, 0.5], [0.5, 0.5]]\n");
        let err = load_design_file(f.path()).unwrap_err();
        assert!(matches!(err, Error::Data { .. }));
        let f = write_temp("[[block]]\nlength = 1\ntransition = [[\"1/0\", \"5/6\"], [\"5/6\", \"1/6\"]]\n");
        let err = load_design_file(f.path()).unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
    }

    #[test]
    fn resolve_prefers_builtins_then_files() {
        assert_eq!(
            resolve_blocks("paper-ternary").unwrap(),
            builtin_design("paper-ternary").unwrap()
        );
        let f = write_temp("[[block]]\nlength = 3\ntransition = [[0.5, 0.5], [0.5, 0.5]]\n");
        let blocks = resolve_blocks(&f.path().display().to_string()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].len(), 3);
        assert!(matches!(
            resolve_blocks("nosuch"),
            Err(Error::UnknownDesign { .. })
        ));
    }
}
