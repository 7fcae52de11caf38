//! Synthetic alignment generator: independent blocks of order-1 Markov
//! chains.
//!
//! A [`SimulationDesign`] is an ordered list of [`BlockModel`]s. Each row of
//! the generated alignment is drawn independently; within a row, each block
//! draws its first column from the block's initial distribution and each
//! later column from the transition row of the previous symbol. Blocks are
//! mutually independent, so the cumulative block boundaries are the true
//! independence points the estimators are supposed to recover.
//!
//! Reproducibility contract: the generator is ChaCha8 seeded via
//! `seed_from_u64`, draws are consumed in row-major order (row by row, and
//! left to right across blocks within a row), and each uniform variate is
//! built from the top 53 bits of one `u64` draw. Identical seeds therefore
//! yield bit-identical alignments on every platform. Parallel replication
//! derives stream seeds with [`replicate_seed`].

use alloc::string::ToString;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::alignment::Alignment;
use crate::error::{Error, Result};
use crate::math;

/// Tolerance for "sums to one" checks on probability vectors.
const STOCHASTIC_TOL: f64 = 1e-12;

// -------------------------------------------------------------- block model

/// One block: a Markov chain over `states` symbols, run for `len` columns.
///
/// Symbol labels are `"1"`, `"2"`, ... in the generated alignment.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockModel {
    len: usize,
    transition: Vec<Vec<f64>>,
    initial: Vec<f64>,
}

fn check_probability_vector(
    v: &[f64],
    what: &'static str,
    index: usize,
) -> Result<()> {
    let mut total = 0.0;
    for &x in v {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::NotStochastic {
                what,
                block: 0,
                index,
            });
        }
        total += x;
    }
    if math::abs(total - 1.0) > STOCHASTIC_TOL {
        return Err(Error::NotStochastic {
            what,
            block: 0,
            index,
        });
    }
    Ok(())
}

impl BlockModel {
    /// A block of `len` columns driven by `transition`, starting from the
    /// uniform distribution over the states.
    ///
    /// # Errors
    ///
    /// `InvalidDesign` for structural problems (empty or non-square matrix,
    /// fewer than two states, zero length); `NotStochastic` when a
    /// transition row is not a probability vector within `1e-12`.
    pub fn new(len: usize, transition: Vec<Vec<f64>>) -> Result<Self> {
        let k = transition.len();
        let uniform = alloc::vec![1.0 / k as f64; k];
        Self::with_initial(len, transition, uniform)
    }

    /// As [`new`](Self::new) with an explicit initial distribution.
    pub fn with_initial(
        len: usize,
        transition: Vec<Vec<f64>>,
        initial: Vec<f64>,
    ) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidDesign("block length must be positive"));
        }
        let k = transition.len();
        if k < 2 {
            return Err(Error::InvalidDesign("a block needs at least two states"));
        }
        if transition.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidDesign("transition matrix is not square"));
        }
        for (i, row) in transition.iter().enumerate() {
            check_probability_vector(row, "transition row", i)?;
        }
        if initial.len() != k {
            return Err(Error::InvalidDesign(
                "initial distribution length differs from the state count",
            ));
        }
        check_probability_vector(&initial, "initial distribution", 0)?;
        Ok(BlockModel {
            len,
            transition,
            initial,
        })
    }

    /// Block width in columns.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: zero-length blocks cannot be constructed.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of chain states (the block's alphabet size).
    #[inline]
    pub fn states(&self) -> usize {
        self.transition.len()
    }

    /// Row-stochastic transition matrix.
    #[inline]
    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    /// Distribution of the block's first column.
    #[inline]
    pub fn initial(&self) -> &[f64] {
        &self.initial
    }
}

// ------------------------------------------------------------------- design

/// A full generator: how many rows to draw, from which blocks, and with
/// which seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationDesign {
    rows: usize,
    blocks: Vec<BlockModel>,
    seed: u64,
}

impl SimulationDesign {
    /// Builds a design over the given blocks.
    ///
    /// # Errors
    ///
    /// `InvalidDesign` when `rows` is zero or `blocks` is empty.
    pub fn new(rows: usize, blocks: Vec<BlockModel>, seed: u64) -> Result<Self> {
        if rows == 0 {
            return Err(Error::InvalidDesign("sample size must be positive"));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidDesign("design has no blocks"));
        }
        Ok(SimulationDesign { rows, blocks, seed })
    }

    /// Number of rows (sample size n).
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// The block models, left to right.
    #[inline]
    pub fn blocks(&self) -> &[BlockModel] {
        &self.blocks
    }

    /// The RNG seed.
    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same design with a different seed (used for replicate streams).
    pub fn with_seed(&self, seed: u64) -> Self {
        SimulationDesign {
            rows: self.rows,
            blocks: self.blocks.clone(),
            seed,
        }
    }

    /// Total columns m = sum of block lengths.
    pub fn cols(&self) -> usize {
        self.blocks.iter().map(BlockModel::len).sum()
    }

    /// Ground-truth independence points: the cumulative block boundaries
    /// (e.g. `[5, 10]` for three blocks of length 5).
    pub fn true_cuts(&self) -> Vec<usize> {
        let mut cuts = Vec::with_capacity(self.blocks.len().saturating_sub(1));
        let mut pos = 0;
        for b in &self.blocks[..self.blocks.len() - 1] {
            pos += b.len();
            cuts.push(pos);
        }
        cuts
    }
}

/// Seed for replicate `rep` of a base stream: `base + rep` (wrapping).
/// Distinct replicate indices give distinct, decorrelated ChaCha8 streams
/// because `seed_from_u64` expands the value through SplitMix64.
#[inline]
pub fn replicate_seed(base: u64, rep: u64) -> u64 {
    base.wrapping_add(rep)
}

// ---------------------------------------------------------------- sampling

/// Uniform variate in [0, 1) from the top 53 bits of one u64 draw.
#[inline]
fn next_unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Index of the category containing `u` under the cumulative distribution,
/// falling back to the last category if rounding pushes the cumulative sum
/// slightly below 1.
#[inline]
fn sample(dist: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, &p) in dist.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    dist.len() - 1
}

/// Draws the alignment described by `design` and returns it with the
/// ground-truth cut list.
///
/// Rows are i.i.d.; blocks within a row are mutually independent; within a
/// block, the first column follows the initial distribution and each later
/// column the transition row of its predecessor. Column labels are `"1"`
/// ... `"k"` with the block's full state set declared as the column
/// alphabet, whether or not every state is observed.
pub fn simulate(design: &SimulationDesign) -> (Alignment, Vec<usize>) {
    let n = design.rows();
    let m = design.cols();
    let mut rng = ChaCha8Rng::seed_from_u64(design.seed());
    let mut data = alloc::vec![0u16; n * m];
    for r in 0..n {
        let mut c = 0;
        for block in design.blocks() {
            let mut state = sample(block.initial(), next_unit(&mut rng));
            data[r * m + c] = state as u16;
            c += 1;
            for _ in 1..block.len() {
                state = sample(&block.transition()[state], next_unit(&mut rng));
                data[r * m + c] = state as u16;
                c += 1;
            }
        }
    }
    let mut alphabets = Vec::with_capacity(m);
    for block in design.blocks() {
        let labels: Vec<_> = (1..=block.states()).map(|s| s.to_string()).collect();
        for _ in 0..block.len() {
            alphabets.push(labels.clone());
        }
    }
    let align = Alignment::from_codes(n, data, alphabets)
        .expect("design invariants guarantee a valid alignment");
    (align, design.true_cuts())
}

// --------------------------------------------------------------- built-ins

/// The two bundled reference designs.
///
/// * `"paper-binary"`: three length-5 blocks over `{1, 2}` with transition
///   matrices `P1, P2, P1`, where `P1 = [[1/6, 5/6], [5/6, 1/6]]` and
///   `P2 = [[5/6, 1/6], [1/6, 5/6]]`; true cuts `[5, 10]`.
/// * `"paper-ternary"`: three length-5 blocks over `{1, 2, 3}` with
///   matrices `P'1, P'2, P'1`, where `P'1 = [[1/3, 1/3, 1/3], [0, 2/3,
///   1/3], [2/3, 0, 1/3]]` and `P'2 = [[1/2, 1/2, 0], [1/3, 1/3, 1/3],
///   [1/6, 5/6, 0]]`; true cuts `[5, 10]`.
///
/// Both start every block from the uniform distribution. Sample size and
/// seed are the caller's to choose.
///
/// # Errors
///
/// `UnknownDesign` for any other name.
pub fn builtin_design(name: &str) -> Result<Vec<BlockModel>> {
    match name {
        "paper-binary" => {
            let p1 = alloc::vec![
                alloc::vec![1.0 / 6.0, 5.0 / 6.0],
                alloc::vec![5.0 / 6.0, 1.0 / 6.0],
            ];
            let p2 = alloc::vec![
                alloc::vec![5.0 / 6.0, 1.0 / 6.0],
                alloc::vec![1.0 / 6.0, 5.0 / 6.0],
            ];
            Ok(alloc::vec![
                BlockModel::new(5, p1.clone())?,
                BlockModel::new(5, p2)?,
                BlockModel::new(5, p1)?,
            ])
        }
        "paper-ternary" => {
            let p1 = alloc::vec![
                alloc::vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                alloc::vec![0.0, 2.0 / 3.0, 1.0 / 3.0],
                alloc::vec![2.0 / 3.0, 0.0, 1.0 / 3.0],
            ];
            let p2 = alloc::vec![
                alloc::vec![1.0 / 2.0, 1.0 / 2.0, 0.0],
                alloc::vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                alloc::vec![1.0 / 6.0, 5.0 / 6.0, 0.0],
            ];
            Ok(alloc::vec![
                BlockModel::new(5, p1.clone())?,
                BlockModel::new(5, p2)?,
                BlockModel::new(5, p1)?,
            ])
        }
        other => Err(Error::UnknownDesign(other.to_string())),
    }
}

// ------------------------------------------------------------------- tests
