//! Segmentation of aligned categorical sequences into independent blocks by
//! penalized maximum likelihood.
//!
//! Given `n` aligned rows over `m` columns, every candidate block `I = lo:hi`
//! is scored by the log-likelihood of its empirical joint symbol distribution
//! minus a complexity penalty scaled by `log n`. The estimated independence
//! points are the cuts of the segmentation maximizing the total penalized
//! score. Three solvers are provided: an exact dynamic program
//! ([`solve_dp`]), a fast hierarchical approximation
//! ([`solve_hierarchical`]), and a brute-force reference for small inputs
//! ([`solve_bruteforce`]). A seedable Markov-chain generator
//! ([`simulate::simulate`]) produces alignments with known ground-truth cuts
//! for calibration studies.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable the default
//! `std` feature and enable `libm` instead.
//!
//! # Quick start
//!
//! ```
//! use seqseg_core::{simulate, solve_dp, IntervalScorer, PenaltyConfig};
//!
//! // Three blocks of five columns each, cut truth at {5, 10}.
//! let blocks = simulate::builtin_design("paper-binary").unwrap();
//! let design = simulate::SimulationDesign::new(2000, blocks, 7).unwrap();
//! let (alignment, truth) = simulate::simulate(&design);
//!
//! let scorer = IntervalScorer::new(&alignment, PenaltyConfig::theoretical(0.1).unwrap());
//! let estimate = solve_dp(&scorer);
//! assert_eq!(estimate.cuts(), truth);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("seqseg-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod alignment;
pub mod error;
pub mod scoring;
pub mod simulate;
pub mod solvers;

mod math;

pub use alignment::{Alignment, IntervalRef};
pub use error::{Error, Result};
pub use scoring::{kl_divergence, IntervalScorer, PenaltyConfig, PenaltyFamily};
pub use simulate::{builtin_design, replicate_seed, BlockModel, SimulationDesign};
pub use solvers::{
    scores_tied, segmentation_score, solve_bruteforce, solve_dp, solve_dp_with,
    solve_hierarchical, DpOptions, Segmentation, DEFAULT_BRUTE_MAX_COLS, SCORE_REL_TOL,
};
