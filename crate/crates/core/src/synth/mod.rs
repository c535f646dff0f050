//! Automatic construction of certified barriers from numeric solutions.

pub mod build;
pub mod config;

pub use build::{
    improve_bound, numeric_c23, side_violation, synthesize, synthesize_with_target,
    tail_coefficients, tail_piece, with_tail_c23,
};
pub use config::{SynthConfig, TailSeed};
