//! Input parsing, pipeline orchestration, and report rendering.

pub mod input;
pub mod pipeline;
pub mod render;

pub use input::{parse_input, resolve, ProblemSpec, ResolvedProblem};
pub use pipeline::{example_document, run_classification, run_pipeline, Report, EXAMPLE_NAMES};
pub use render::{parse_report, render_report, OutputFormat};
