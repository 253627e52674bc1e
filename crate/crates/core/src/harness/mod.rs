//! Experiment runner, scene files, reports and the CLI.

pub mod cli;
pub mod experiment;
pub mod plot;
pub mod report;
pub mod scene;
