//! Serializable run reports for the `segment` subcommand.
//!
//! A report records the input, the solver configuration, the objective,
//! and the chosen segmentation — cuts, midpoints, and per-block scores —
//! so a run can be archived or diffed byte-for-byte.

use serde::Serialize;

use seqseg_core::{IntervalScorer, Segmentation};

/// Scores for one block `lo:hi` of the chosen segmentation.
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub lo: usize,
    pub hi: usize,
    /// Log-likelihood gain `Q` of the block.
    pub q: f64,
    /// Penalty weight `p` of the block (before the `log n` factor).
    pub p: f64,
    /// Penalized block score `Q - p log n`.
    pub score: f64,
}

/// Everything the `segment` subcommand knows about one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub solver: String,
    pub penalty: String,
    pub c: f64,
    /// Total penalized score of the chosen segmentation.
    pub objective: f64,
    /// Cut positions `t`: a boundary between columns `t` and `t+1`.
    pub cuts: Vec<usize>,
    /// The same boundaries as midpoint positions `t + 0.5`.
    pub points: Vec<f64>,
    pub blocks: Vec<BlockReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// Assembles a [`RunReport`] from a solved segmentation.
pub fn build_report(
    input: &str,
    solver: &str,
    scorer: &IntervalScorer<'_>,
    seg: &Segmentation,
    wall_ms: Option<u64>,
) -> RunReport {
    let align = scorer.alignment();
    let config = scorer.config();
    let blocks = seg
        .blocks()
        .iter()
        .map(|&iv| {
            let q = scorer.block_loglik(iv).expect("solved interval");
            let p = scorer.penalty(iv).expect("solved interval");
            BlockReport {
                lo: iv.lo,
                hi: iv.hi,
                q,
                p,
                score: scorer.penalized_score(Some(iv)).expect("solved interval"),
            }
        })
        .collect();
    RunReport {
        input: input.to_string(),
        n: align.rows(),
        m: align.cols(),
        solver: solver.to_string(),
        penalty: config.family().name().to_string(),
        c: config.c(),
        objective: seg.score(),
        cuts: seg.cuts().to_vec(),
        points: seg.cuts().iter().map(|&t| t as f64 + 0.5).collect(),
        blocks,
        wall_ms,
    }
}

impl RunReport {
    /// Pretty JSON with a trailing newline — one object per run.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Tab-separated block table for spreadsheet work.
    pub fn blocks_tsv(&self) -> String {
        let mut out = String::from("lo\thi\tq\tp\tscore\n");
        for b in &self.blocks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                b.lo, b.hi, b.q, b.p, b.score
            ));
        }
        out
    }
}

// ------------------------------------------------------------------- tests
