//! Minimal reverse-mode automatic differentiation over dense `f64` arrays.
//!
//! The op set is deliberately small — add, mul, matmul, gather-rows,
//! log-softmax, exp, log1p, sum, mean, reshape, concat, mask-fill and an
//! explicit [`Graph::detach`] stop-gradient — which is enough for the
//! training losses and the decoder model built on top. Everything is double
//! precision and single-threaded per graph; parameter snapshots are plain
//! data and can be shared read-only across threads.

mod graph;
mod params;
mod tensor;

pub use graph::{Gradients, Graph, Node};
pub use params::{
    finite_diff_grad, finite_diff_grad_coords, max_rel_err, BoundParams, GradStore, ParamStore,
};
pub use tensor::{log_softmax, matmul, Tensor};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AutodiffError {
    #[error("{op}: {detail}")]
    ShapeMismatch { op: &'static str, detail: String },
    #[error("non-finite value produced by {op}")]
    NonFinite { op: &'static str },
    #[error("backward requires a scalar loss, got shape {shape:?}")]
    NonScalarLoss { shape: Vec<usize> },
    #[error("{op}: empty input")]
    Empty { op: &'static str },
    #[error("{op}: index {index} out of range for {len}")]
    IndexOutOfRange { op: &'static str, index: usize, len: usize },
    #[error("duplicate parameter name {0:?}")]
    DuplicateParam(String),
    #[error("unknown parameter {0:?}")]
    UnknownParam(String),
    #[error("finite-difference probe went non-finite at {param}[{index}]")]
    NonFiniteProbe { param: String, index: usize },
}
