//! Networks with analytically derived weights that solve insideness exactly.

mod boolean;
mod coloring;
mod conv;
mod convlstm;
mod ray;
mod tensor;
mod text;

use thiserror::Error;

pub use boolean::{and_layer, boolean_and_net, boolean_not_net, not_layer};
pub use coloring::{
    coloring_step_rnn, coloring_truth_table, outside_map_to_mask, rnn_on_truth_row, run_coloring,
    ColoringOutcome, ColoringState, TruthRow, DEFAULT_Q,
};
pub use conv::{conv2d, sigmoid, ConvLayerSpec, Nonlinearity};
pub use convlstm::{
    build_coloring_convlstm, build_identity_convlstm, run_convlstm_stack, stack_convlstms,
    ConvLstmSpec, Gate, Kernel3, LstmState, StackOutcome, StateInit, HIDDEN_ON,
};
pub use ray::{
    build_dilated_ray_net, build_parity_head, build_ray_net, dilated_pair_layer, eval_net,
    eval_parity_head, ray_sum_layer, RayNetKind, RayNetSpec,
};
pub use tensor::FeatureTensor;
pub use text::{parse_netspec, write_netspec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{height}x{width} image does not fit a network built for N = {n}")]
    SizeOverflow {
        height: usize,
        width: usize,
        n: usize,
    },
    #[error("value {value} at index {index} is not binary")]
    NonBinary { index: usize, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no fixpoint within {steps} steps")]
    NoConvergence { steps: usize },
    #[error("netspec line {line}: {message}")]
    Parse { line: usize, message: String },
}
