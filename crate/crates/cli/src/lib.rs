//! Batch runner for orbifold scenarios.

pub mod runner;
pub mod scenario;

pub use runner::{render_summary, render_text, run_scenario, RunOptions, ScenarioReport, Status};
pub use scenario::{scenario_paths, LoadError, Model, ScenarioFile};
