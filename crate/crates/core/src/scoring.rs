//! Block scores: empirical log-likelihood, complexity penalties, and the
//! penalized criterion.
//!
//! For a block `I = lo:hi` the log-likelihood is
//! `Q(I) = sum over observed row patterns g of n_g * (log n_g - log n)`,
//! always `<= 0`. The penalized score subtracts `p(X_I) * log n`, where the
//! penalty weight `p` comes from one of three families (see
//! [`PenaltyFamily`]). The convention for the empty block is a score of `0`.
//!
//! All interval scores over a fixed left end are computed in one sweep by
//! partition refinement — per added column every row-pattern group splits by
//! the new column's symbol in `O(n)` — so the full score table costs
//! `O(m^2 n)` instead of the naive `O(m^3 n)`. Only observed patterns are
//! materialized (at most `n` groups), never the full product alphabet.

use alloc::vec::Vec;
use core::cell::RefCell;

use crate::alignment::{Alignment, IntervalRef};
use crate::error::{Error, Result};
use crate::math;

// ---------------------------------------------------------------- penalties

/// The three penalty families for a block `I`.
///
/// Writing `W` for the family's product term below, the penalty weight is
/// `p(X_I) = c * (W - 1)` (with the floored variant clamping `W` first), and
/// the penalized score charges `p(X_I) * log n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PenaltyFamily {
    /// `W = prod over i in I of |alphabet(i)|` — declared alphabet sizes;
    /// the saturated-model parameter count `|A^I| - 1`.
    Theoretical,
    /// `W = prod over i in I of (distinct symbols observed in column i)`.
    /// Vanishes on fully conserved blocks.
    Empirical,
    /// `W = max(2, prod of observed distinct counts)` — the empirical family
    /// with a floor that keeps the penalty strictly positive on conserved
    /// blocks.
    EmpiricalFloored,
}

impl PenaltyFamily {
    /// Stable lowercase name used by reports and the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            PenaltyFamily::Theoretical => "theoretical",
            PenaltyFamily::Empirical => "empirical",
            PenaltyFamily::EmpiricalFloored => "empirical-floored",
        }
    }
}

/// A penalty family together with its positive scale constant `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyConfig {
    family: PenaltyFamily,
    c: f64,
}

impl PenaltyConfig {
    /// Builds a configuration; `c` must be finite and strictly positive.
    pub fn new(family: PenaltyFamily, c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidPenaltyScale(c));
        }
        Ok(PenaltyConfig { family, c })
    }

    /// Theoretical family with scale `c`.
    pub fn theoretical(c: f64) -> Result<Self> {
        Self::new(PenaltyFamily::Theoretical, c)
    }

    /// Empirical family with scale `c`.
    pub fn empirical(c: f64) -> Result<Self> {
        Self::new(PenaltyFamily::Empirical, c)
    }

    /// Empirical-floored family with scale `c`.
    pub fn empirical_floored(c: f64) -> Result<Self> {
        Self::new(PenaltyFamily::EmpiricalFloored, c)
    }

    /// The penalty family.
    #[inline]
    pub fn family(&self) -> PenaltyFamily {
        self.family
    }

    /// The scale constant `c`.
    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Penalty weight for a block whose accumulated product term is `w`.
    /// Overflowed products (`w = +inf`) saturate the weight to `+inf`.
    #[inline]
    fn weight(&self, w: f64) -> f64 {
        match self.family {
            PenaltyFamily::Theoretical | PenaltyFamily::Empirical => self.c * (w - 1.0),
            PenaltyFamily::EmpiricalFloored => self.c * (if w < 2.0 { 2.0 } else { w } - 1.0),
        }
    }
}

impl Default for PenaltyConfig {
    /// The empirical-floored family with `c = 1`.
    fn default() -> Self {
        PenaltyConfig {
            family: PenaltyFamily::EmpiricalFloored,
            c: 1.0,
        }
    }
}

// ------------------------------------------------------ partition refinement

/// Row partition by pattern equality, refined one column at a time.
///
/// `labels[r]` is the group of row `r`, assigned in first-occurrence order,
/// so the labeling is a deterministic function of the column sequence fed to
/// [`refine`](Self::refine). Scratch tables are stamped rather than cleared;
/// memory is `O(n + groups * alphabet)` for the most recent refinement.
struct RowPartition {
    labels: Vec<u32>,
    sizes: Vec<u32>,
    groups: usize,
    slot_label: Vec<u32>,
    slot_stamp: Vec<u32>,
    stamp: u32,
}

impl RowPartition {
    fn new() -> Self {
        RowPartition {
            labels: Vec::new(),
            sizes: Vec::new(),
            groups: 0,
            slot_label: Vec::new(),
            slot_stamp: Vec::new(),
            stamp: 0,
        }
    }

    /// Starts a fresh sweep: every row in one group.
    fn reset(&mut self, n: usize) {
        self.labels.clear();
        self.labels.resize(n, 0);
        if self.sizes.len() < n {
            self.sizes.resize(n, 0);
        }
        self.groups = 1;
    }

    /// Splits every group by the symbols of column `col0` (0-based).
    fn refine(&mut self, align: &Alignment, col0: usize) {
        let n = align.rows();
        let m = align.cols();
        let raw = align.raw();
        let asize = align.alphabet_size(col0);
        let need = self.groups * asize;
        if self.slot_label.len() < need {
            self.slot_label.resize(need, 0);
            self.slot_stamp.resize(need, 0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            // Stamp counter wrapped; invalidate all slots once.
            for s in self.slot_stamp.iter_mut() {
                *s = 0;
            }
            self.stamp = 1;
        }
        let mut next: u32 = 0;
        for row in 0..n {
            let key =
                self.labels[row] as usize * asize + usize::from(raw[row * m + col0]);
            let g = if self.slot_stamp[key] == self.stamp {
                self.slot_label[key]
            } else {
                self.slot_stamp[key] = self.stamp;
                self.slot_label[key] = next;
                self.sizes[next as usize] = 0;
                next += 1;
                next - 1
            };
            self.labels[row] = g;
            self.sizes[g as usize] += 1;
        }
        self.groups = next as usize;
    }

    /// `Q = sum over groups of n_g * (log n_g - log n)` for the current
    /// partition, summed in group-label order.
    fn loglik(&self, ln_table: &[f64], ln_n: f64) -> f64 {
        let mut q = 0.0;
        for &sz in &self.sizes[..self.groups] {
            q += f64::from(sz) * (ln_table[sz as usize] - ln_n);
        }
        q
    }
}

// --------------------------------------------------------------- the scorer

/// Per-row cache entry: `(Q, p)` pairs for intervals sharing a left end.
struct CacheRow {
    /// 1-based right end up to which `qp` is valid; 0 when untouched.
    filled_to: usize,
    /// `qp[k] = (Q, p)` for the interval `lo : lo + k`.
    qp: Vec<(f64, f64)>,
}

/// Computes and caches block scores for one alignment under one penalty
/// configuration.
///
/// The scorer is used single-threaded per solver run (interior mutability
/// backs the cache); independent scorers over the same alignment may run
/// concurrently. Scores served from the cache are bit-identical to freshly
/// computed ones — both go through the same sweep.
pub struct IntervalScorer<'a> {
    align: &'a Alignment,
    config: PenaltyConfig,
    ln_n: f64,
    /// `ln_table[k] = ln(k)`; index 0 unused.
    ln_table: Vec<f64>,
    /// Per-column product factor of the penalty family (declared or observed
    /// alphabet size as f64).
    col_weight: Vec<f64>,
    cache: RefCell<Vec<CacheRow>>,
    part: RefCell<RowPartition>,
}

impl<'a> IntervalScorer<'a> {
    /// Builds a scorer over `align` with penalty `config`.
    pub fn new(align: &'a Alignment, config: PenaltyConfig) -> Self {
        let n = align.rows();
        let m = align.cols();
        let mut ln_table = Vec::with_capacity(n + 1);
        ln_table.push(0.0);
        for k in 1..=n {
            ln_table.push(math::ln(k as f64));
        }
        let ln_n = ln_table[n];
        let col_weight = (0..m)
            .map(|c| match config.family() {
                PenaltyFamily::Theoretical => align.alphabet_size(c) as f64,
                PenaltyFamily::Empirical | PenaltyFamily::EmpiricalFloored => {
                    // Unwrap is fine: c < cols by construction.
                    align.observed_alphabet_size(c).unwrap() as f64
                }
            })
            .collect();
        let cache = (0..m)
            .map(|_| CacheRow {
                filled_to: 0,
                qp: Vec::new(),
            })
            .collect();
        IntervalScorer {
            align,
            config,
            ln_n,
            ln_table,
            col_weight,
            cache: RefCell::new(cache),
            part: RefCell::new(RowPartition::new()),
        }
    }

    /// The alignment being scored.
    #[inline]
    pub fn alignment(&self) -> &Alignment {
        self.align
    }

    /// The penalty configuration in force.
    #[inline]
    pub fn config(&self) -> PenaltyConfig {
        self.config
    }

    /// `log n` for the alignment's row count.
    #[inline]
    pub fn ln_n(&self) -> f64 {
        self.ln_n
    }

    fn validate(&self, iv: IntervalRef) -> Result<()> {
        let cols = self.align.cols();
        if iv.lo == 0 || iv.hi < iv.lo || iv.hi > cols {
            return Err(Error::IntervalOutOfRange {
                lo: iv.lo,
                hi: iv.hi,
                cols,
            });
        }
        Ok(())
    }

    /// Block log-likelihood `Q(I)`; always `<= 0`.
    ///
    /// # Errors
    ///
    /// `IntervalOutOfRange` if `I` is not within `1..=cols`.
    pub fn block_loglik(&self, iv: IntervalRef) -> Result<f64> {
        self.validate(iv)?;
        Ok(self.cached(iv).0)
    }

    /// Penalty weight `p(X_I) >= 0`; `+inf` when the family's product term
    /// overflows f64, which forces the penalized score to `-inf`.
    ///
    /// # Errors
    ///
    /// `IntervalOutOfRange` if `I` is not within `1..=cols`.
    pub fn penalty(&self, iv: IntervalRef) -> Result<f64> {
        self.validate(iv)?;
        Ok(self.cached(iv).1)
    }

    /// Penalized score `Q(I) - p(X_I) * log n`, with the empty block
    /// (`None`) scoring exactly `0`.
    ///
    /// For `n = 1`, `log n = 0` and the penalty term vanishes (even for an
    /// infinite weight), so every block scores `0`.
    ///
    /// # Errors
    ///
    /// `IntervalOutOfRange` if `I` is not within `1..=cols`.
    pub fn penalized_score(&self, iv: Option<IntervalRef>) -> Result<f64> {
        match iv {
            None => Ok(0.0),
            Some(iv) => {
                self.validate(iv)?;
                let (q, p) = self.cached(iv);
                Ok(self.penalize(q, p))
            }
        }
    }

    /// `(Q, p)` for every interval with left end `r` (1-based): entry `k`
    /// corresponds to `I = r : r + k`. One partition-refinement sweep,
    /// `O((m - r) n)`; results are cached and bit-identical to per-interval
    /// evaluation.
    ///
    /// # Errors
    ///
    /// `IntervalOutOfRange` if `r` is not within `1..=cols`.
    pub fn prefix_scores(&self, r: usize) -> Result<Vec<(f64, f64)>> {
        let cols = self.align.cols();
        if r == 0 || r > cols {
            return Err(Error::IntervalOutOfRange {
                lo: r,
                hi: cols,
                cols,
            });
        }
        self.ensure(r, cols);
        Ok(self.cache.borrow()[r - 1].qp.clone())
    }

    #[inline]
    fn penalize(&self, q: f64, p: f64) -> f64 {
        if self.ln_n == 0.0 {
            q
        } else {
            q - p * self.ln_n
        }
    }

    /// Cached `(Q, p)` for a validated interval.
    fn cached(&self, iv: IntervalRef) -> (f64, f64) {
        self.ensure(iv.lo, iv.hi);
        self.cache.borrow()[iv.lo - 1].qp[iv.hi - iv.lo]
    }

    /// Fills cache row `lo` (1-based) if any interval past `hi` is missing.
    /// A miss sweeps the whole row once, so repeated queries with growing
    /// right ends never trigger quadratic re-sweeps.
    fn ensure(&self, lo: usize, hi: usize) {
        let m = self.align.cols();
        let mut cache = self.cache.borrow_mut();
        let row = &mut cache[lo - 1];
        if row.filled_to >= hi {
            return;
        }
        if row.qp.is_empty() {
            row.qp.resize(m - lo + 1, (0.0, 0.0));
        }
        let mut part = self.part.borrow_mut();
        part.reset(self.align.rows());
        let mut w = 1.0f64;
        for col0 in (lo - 1)..m {
            part.refine(self.align, col0);
            w *= self.col_weight[col0];
            row.qp[col0 + 1 - lo] = (
                part.loglik(&self.ln_table, self.ln_n),
                self.config.weight(w),
            );
        }
        row.filled_to = m;
    }

    /// Applies the penalty term to a cached `(Q, p)` pair.
    #[inline]
    pub(crate) fn penalized_value(&self, q: f64, p: f64) -> f64 {
        self.penalize(q, p)
    }

    /// Penalized scores of all prefixes of `lo:hi`:
    /// `out[k] = score(lo : lo + k)`. Uncached — used by the hierarchical
    /// solver, whose intervals would otherwise fill a quadratic cache.
    pub(crate) fn penalized_forward(&self, lo: usize, hi: usize, out: &mut Vec<f64>) {
        out.clear();
        let mut part = self.part.borrow_mut();
        part.reset(self.align.rows());
        let mut w = 1.0f64;
        for col0 in (lo - 1)..hi {
            part.refine(self.align, col0);
            w *= self.col_weight[col0];
            out.push(self.penalize(
                part.loglik(&self.ln_table, self.ln_n),
                self.config.weight(w),
            ));
        }
    }

    /// Penalized scores of all suffixes of `lo:hi`: `out[k] = score(lo + k :
    /// hi)`. Uncached; sweeps the columns right to left.
    pub(crate) fn penalized_backward(&self, lo: usize, hi: usize, out: &mut Vec<f64>) {
        out.clear();
        out.resize(hi - lo + 1, 0.0);
        let mut part = self.part.borrow_mut();
        part.reset(self.align.rows());
        let mut w = 1.0f64;
        for col0 in ((lo - 1)..hi).rev() {
            part.refine(self.align, col0);
            w *= self.col_weight[col0];
            out[col0 + 1 - lo] = self.penalize(
                part.loglik(&self.ln_table, self.ln_n),
                self.config.weight(w),
            );
        }
    }
}

// ------------------------------------------------------------ KL divergence

/// Kullback–Leibler divergence `D(p1 || p2) = sum over p1(a) > 0 of
/// p1(a) * log(p1(a) / p2(a))` between two probability tables over the same
/// finite support.
///
/// Nonnegative, and zero exactly when the tables agree on the support of
/// `p1`.
///
/// # Errors
///
/// `SupportMismatch` for tables of different lengths, `NotADistribution`
/// when either table has negative/non-finite entries or mass not within
/// `1e-9` of 1, and `DivergenceUndefined` where `p2` vanishes but `p1` does
/// not.
pub fn kl_divergence(p1: &[f64], p2: &[f64]) -> Result<f64> {
    if p1.len() != p2.len() {
        return Err(Error::SupportMismatch {
            left: p1.len(),
            right: p2.len(),
        });
    }
    for (what, p) in [("first argument", p1), ("second argument", p2)] {
        let mut total = 0.0;
        for &x in p {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::NotADistribution { what });
            }
            total += x;
        }
        if math::abs(total - 1.0) > 1e-9 {
            return Err(Error::NotADistribution { what });
        }
    }
    let mut d = 0.0;
    for (i, (&a, &b)) in p1.iter().zip(p2.iter()).enumerate() {
        if a > 0.0 {
            if b == 0.0 {
                return Err(Error::DivergenceUndefined { index: i });
            }
            d += a * math::ln(a / b);
        }
    }
    Ok(d)
}

// ------------------------------------------------------------------- tests
