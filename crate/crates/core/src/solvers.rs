//! Solvers for the penalized segmentation criterion.
//!
//! Three solvers share one objective — maximize the sum of penalized block
//! scores over all ways to cut `1..=m` into contiguous blocks:
//!
//! * [`solve_dp`]: exact dynamic program over suffixes, `O(m^2)` score
//!   lookups on top of the `O(m^2 n)` score table.
//! * [`solve_hierarchical`]: greedy recursive bisection; not exact in
//!   general but `O(d m n)` for `d` levels of splitting and far cheaper on
//!   long alignments.
//! * [`solve_bruteforce`]: exhaustive enumeration of all `2^(m-1)` cut
//!   sets, gated on a column budget. The reference oracle for tests.
//!
//! All three resolve ties identically: fewer cuts win, then the
//! lexicographically smallest cut vector. "Tied" means equal within
//! [`SCORE_REL_TOL`] relative tolerance (see [`scores_tied`]), which keeps
//! solver agreement stable under the reordering of floating-point sums.

use alloc::vec;
use alloc::vec::Vec;

use crate::alignment::IntervalRef;
use crate::error::{Error, Result};
use crate::math;
use crate::scoring::IntervalScorer;

/// Relative tolerance under which two objective values count as tied.
pub const SCORE_REL_TOL: f64 = 1e-9;

/// Columns the brute-force solver accepts by default (`2^19` cut sets).
pub const DEFAULT_BRUTE_MAX_COLS: usize = 20;

// ------------------------------------------------------------ segmentation

/// A segmentation of `1..=m` into contiguous blocks, with its objective
/// value.
///
/// `cuts` lists the estimated independence points: column `t` in `cuts`
/// means positions `t` and `t + 1` fall in different blocks. No cuts means
/// the whole range is one block.
#[derive(Debug, Clone, PartialEq)]
pub struct Segmentation {
    cuts: Vec<usize>,
    blocks: Vec<IntervalRef>,
    score: f64,
}

impl Segmentation {
    fn from_cuts(cols: usize, cuts: Vec<usize>, score: f64) -> Self {
        let mut blocks = Vec::with_capacity(cuts.len() + 1);
        let mut lo = 1;
        for &c in &cuts {
            blocks.push(IntervalRef { lo, hi: c });
            lo = c + 1;
        }
        blocks.push(IntervalRef { lo, hi: cols });
        Segmentation {
            cuts,
            blocks,
            score,
        }
    }

    /// The cut columns, strictly increasing, each in `1..cols`.
    #[inline]
    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    /// The blocks induced by the cuts, left to right.
    #[inline]
    pub fn blocks(&self) -> &[IntervalRef] {
        &self.blocks
    }

    /// The maximized objective: sum of penalized block scores.
    #[inline]
    pub fn score(&self) -> f64 {
        self.score
    }
}

// ------------------------------------------------------------- tie breaking

/// Whether two objective values are tied within [`SCORE_REL_TOL`] relative
/// tolerance: `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn scores_tied(a: f64, b: f64) -> bool {
    let scale = {
        let s = if math::abs(a) > math::abs(b) {
            math::abs(a)
        } else {
            math::abs(b)
        };
        if s > 1.0 {
            s
        } else {
            1.0
        }
    };
    math::abs(a - b) <= SCORE_REL_TOL * scale
}

/// Whether `cand` beats `incumbent` by more than the tie tolerance.
#[inline]
fn improves(cand: f64, incumbent: f64) -> bool {
    cand > incumbent && !scores_tied(cand, incumbent)
}

// ---------------------------------------------------------------- objective

/// Objective value of the segmentation given by `cuts`: the sum of
/// penalized block scores, accumulated right to left (the same association
/// the solvers use, so values compare bit-for-bit).
///
/// # Errors
///
/// `InvalidCut` unless the cuts are strictly increasing and each within
/// `1..cols`.
pub fn segmentation_score(scorer: &IntervalScorer<'_>, cuts: &[usize]) -> Result<f64> {
    let cols = scorer.alignment().cols();
    let mut prev = 0usize;
    for &c in cuts {
        if c == 0 || c >= cols || c <= prev {
            return Err(Error::InvalidCut { cut: c, cols });
        }
        prev = c;
    }
    let mut bounds = Vec::with_capacity(cuts.len() + 1);
    let mut lo = 1;
    for &c in cuts {
        bounds.push(IntervalRef { lo, hi: c });
        lo = c + 1;
    }
    bounds.push(IntervalRef { lo, hi: cols });
    let mut acc = 0.0;
    for &iv in bounds.iter().rev() {
        acc += scorer.penalized_score(Some(iv))?;
    }
    Ok(acc)
}

// ----------------------------------------------------------------- exact DP

/// Tuning knobs for [`solve_dp_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpOptions {
    /// Stop filling block-count layers after the best full-range objective
    /// has failed to improve for this many consecutive layers. `None` (the
    /// default) fills all `m` layers and is the exact, recommended setting;
    /// a finite patience is a heuristic shortcut that can miss optima whose
    /// objective is not unimodal in the block count.
    pub early_stop_patience: Option<usize>,
}

/// DP tables over suffixes. `g[k0][i0]` is the best objective for
/// segmenting columns `i0 + 1 ..= m` into exactly `k0 + 1` blocks;
/// `pen[i0][k]` is the penalized score of the interval
/// `(i0 + 1) : (i0 + 1 + k)`. Unreachable states stay at `-inf`.
struct DpTable {
    g: Vec<Vec<f64>>,
    pen: Vec<Vec<f64>>,
    /// Number of filled layers (equals `m` unless early stopping fired).
    layers: usize,
}

impl DpTable {
    #[inline]
    fn score_iv(&self, lo: usize, hi: usize) -> f64 {
        self.pen[lo - 1][hi - lo]
    }
}

fn dp_table(scorer: &IntervalScorer<'_>, options: DpOptions) -> DpTable {
    let m = scorer.alignment().cols();
    let pen: Vec<Vec<f64>> = (1..=m)
        .map(|i| {
            scorer
                .prefix_scores(i)
                .expect("left end within bounds")
                .into_iter()
                .map(|(q, p)| scorer.penalized_value(q, p))
                .collect()
        })
        .collect();
    let score_iv = |lo: usize, hi: usize| pen[lo - 1][hi - lo];

    let mut g = vec![vec![f64::NEG_INFINITY; m]; m];
    for i in 1..=m {
        g[0][i - 1] = score_iv(i, m);
    }
    let mut layers = 1;
    let mut stale = 0usize;
    let mut best_full = g[0][0];
    for k0 in 1..m {
        // k0 + 1 blocks starting at column i: the first block ends at some
        // j in i..=(m - k0), leaving k0 columns for the rest.
        for i in 1..=(m - k0) {
            let firsts = &pen[i - 1][..=(m - k0) - i];
            let rests = &g[k0 - 1][i..=(m - k0)];
            let mut best = f64::NEG_INFINITY;
            for (&block, &rest) in firsts.iter().zip(rests) {
                let cand = block + rest;
                if cand > best {
                    best = cand;
                }
            }
            g[k0][i - 1] = best;
        }
        layers = k0 + 1;
        if let Some(patience) = options.early_stop_patience {
            if improves(g[k0][0], best_full) {
                best_full = g[k0][0];
                stale = 0;
            } else {
                stale += 1;
                if stale >= patience {
                    break;
                }
            }
        }
    }
    DpTable { g, pen, layers }
}

/// Exact solver: maximizes the penalized objective over all segmentations
/// by dynamic programming over suffixes. Equivalent to
/// [`solve_dp_with`] under default [`DpOptions`].
///
/// Among segmentations tied with the optimum (within [`SCORE_REL_TOL`]
/// relative), the one with fewer cuts wins, then the lexicographically
/// smallest cut vector — the same selection [`solve_bruteforce`] makes.
pub fn solve_dp(scorer: &IntervalScorer<'_>) -> Segmentation {
    solve_dp_with(scorer, DpOptions::default())
}

/// [`solve_dp`] with explicit [`DpOptions`].
pub fn solve_dp_with(scorer: &IntervalScorer<'_>, options: DpOptions) -> Segmentation {
    let m = scorer.alignment().cols();
    let table = dp_table(scorer, options);

    // The optimum, then the smallest block count tied with it. Because all
    // penalized scores are <= 0, "not improved upon by the optimum" is
    // monotone in the candidate score, so per-count maxima decide
    // attainability for their whole layer.
    let mut top = f64::NEG_INFINITY;
    for k0 in 0..table.layers {
        if table.g[k0][0] > top {
            top = table.g[k0][0];
        }
    }
    let mut best_k0 = 0usize;
    for k0 in 0..table.layers {
        if !improves(top, table.g[k0][0]) {
            best_k0 = k0;
            break;
        }
    }

    // Lexicographically smallest cut vector among the tied segmentations
    // with that block count: extend the prefix with the smallest next cut
    // that still admits a completion tied with the optimum. `acc` carries
    // the prefix sum; its grouping noise is orders below the tie tolerance.
    let mut cuts = Vec::with_capacity(best_k0);
    let mut acc = 0.0f64;
    let mut i = 1usize;
    let mut k0 = best_k0;
    while k0 > 0 {
        let mut pick = None;
        let mut exact_best = f64::NEG_INFINITY;
        let mut exact_arg = i;
        for j in i..=(m - k0) {
            let cand = acc + table.score_iv(i, j) + table.g[k0 - 1][j];
            if pick.is_none() && !improves(top, cand) {
                pick = Some(j);
            }
            if cand > exact_best {
                exact_best = cand;
                exact_arg = j;
            }
        }
        // A tied completion always exists up to rounding; fall back to the
        // exact per-cell maximizer if rounding ever hides it.
        let j = pick.unwrap_or(exact_arg);
        cuts.push(j);
        acc += table.score_iv(i, j);
        i = j + 1;
        k0 -= 1;
    }
    let score = segmentation_score(scorer, &cuts).expect("backtracked cuts are valid");
    Segmentation::from_cuts(m, cuts, score)
}

// ------------------------------------------------------------- hierarchical

/// Greedy approximation: recursively bisect, placing at most one cut per
/// level at the position that most improves the two-block objective, and
/// stopping where no single cut improves on leaving the block whole.
///
/// Each level costs two partition-refinement sweeps of the block (`O(len *
/// n)`), and nothing quadratic in `m` is ever materialized, so this scales
/// to alignments where the exact DP's score table would not. The returned
/// objective can be below [`solve_dp`]'s, never meaningfully above it.
pub fn solve_hierarchical(scorer: &IntervalScorer<'_>) -> Segmentation {
    let m = scorer.alignment().cols();
    let mut cuts: Vec<usize> = Vec::new();
    let mut stack = vec![(1usize, m)];
    let mut fwd: Vec<f64> = Vec::new();
    let mut bwd: Vec<f64> = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        if lo == hi {
            continue;
        }
        // fwd[k] = score(lo : lo + k), bwd[k] = score(lo + k : hi).
        scorer.penalized_forward(lo, hi, &mut fwd);
        scorer.penalized_backward(lo, hi, &mut bwd);
        let whole = fwd[hi - lo];
        let mut best = whole;
        let mut arg: Option<usize> = None;
        for s in lo..hi {
            let cand = fwd[s - lo] + bwd[s + 1 - lo];
            if improves(cand, best) {
                best = cand;
                arg = Some(s);
            }
        }
        if let Some(s) = arg {
            cuts.push(s);
            stack.push((s + 1, hi));
            stack.push((lo, s));
        }
    }
    cuts.sort_unstable();
    let score = segmentation_score(scorer, &cuts).expect("cuts valid by construction");
    Segmentation::from_cuts(m, cuts, score)
}

// -------------------------------------------------------------- brute force

/// Reference solver: enumerates every cut set, in order of cut count and
/// lexicographically within a count, replacing the incumbent only on an
/// improvement beyond the tie tolerance. This realizes the same tie
/// semantics as [`solve_dp`] by construction.
///
/// # Errors
///
/// `TooManyColumns` when the alignment is wider than `max_cols`
/// (enumeration is `O(2^(m-1))`; see [`DEFAULT_BRUTE_MAX_COLS`]).
pub fn solve_bruteforce(scorer: &IntervalScorer<'_>, max_cols: usize) -> Result<Segmentation> {
    let m = scorer.alignment().cols();
    if m > max_cols {
        return Err(Error::TooManyColumns {
            cols: m,
            max: max_cols,
        });
    }
    let mut best_cuts: Vec<usize> = Vec::new();
    let mut best = segmentation_score(scorer, &[])?;
    let mut comb: Vec<usize> = Vec::new();
    for k in 1..m {
        // k-combinations of {1, ..., m - 1} in lexicographic order.
        comb.clear();
        comb.extend(1..=k);
        loop {
            let score = segmentation_score(scorer, &comb)?;
            if improves(score, best) {
                best = score;
                best_cuts.clear();
                best_cuts.extend_from_slice(&comb);
            }
            // Advance to the successor combination, if any.
            let mut i = k;
            while i > 0 && comb[i - 1] == (m - 1) - (k - i) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            comb[i - 1] += 1;
            for j in i..k {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    Ok(Segmentation::from_cuts(m, best_cuts, best))
}

// ------------------------------------------------------------------- tests
