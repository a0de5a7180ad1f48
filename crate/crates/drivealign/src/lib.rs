//! Desk-scale visual-prefix language planner with reasoning-decision
//! alignment training and open-loop planning evaluation.
//!
//! The crate builds a complete miniature pipeline on a synthetic driving
//! micro-world:
//!
//! * [`autodiff`] — reverse-mode differentiation with a stop-gradient op,
//!   the substrate for every loss.
//! * [`tokenizer`] — fixed-vocabulary tokenization of multi-turn
//!   conversations and trajectory text serialization.
//! * [`bev`] — rule-based bird's-eye-view rasterization of scenes and the
//!   grid partition-and-flatten visual token scheme.
//! * [`model`] — a miniature decoder-only causal LM with a visual-token
//!   prefix: log-probabilities, token-average candidate scoring, sampling.
//! * [`losses`] — the supervised cross-entropy objective plus ranking and
//!   binary alignment losses, and the training loop (AdamW, cosine decay).
//! * [`cot`] — the four-stage chain-of-thought conversation templates
//!   (perception, prediction, decision, planning) and ego-status text.
//! * [`datagen`] — synthetic world generation and the two alignment
//!   dataset constructions (model-ranked candidates, permuted negatives).
//! * [`planeval`] — open-loop planning metrics: L2 and collision rate at
//!   1/2/3 s under two metric conventions, with an exact oriented-box
//!   intersection test and a brute-force oracle.
//! * [`diagnostics`] — reasoning-vs-decision misalignment reports and a
//!   judge-scored response quality metric with a deterministic mock judge.
//! * [`config`] / [`pipeline`] — one TOML run configuration and the
//!   subcommand implementations behind the `drivealign` binary.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and `README.md` for the end-to-end command sequence.

pub mod autodiff;
pub mod bev;
// pub mod config;
// pub mod cot;
// pub mod datagen;
// pub mod diagnostics;
// pub mod losses;
// pub mod model;
// pub mod pipeline;
pub mod planeval;
pub mod tokenizer;
pub mod traj;
