//! Case files, regression harness and rendering for the `ewmtool` binary.
#![warn(missing_docs)]

pub mod case;
pub mod regress;
pub mod render;

pub use ewm_core;
