//! Fixture I/O, instance generation, the suite runner and the command line.

pub mod cli;
pub mod commands;
pub mod error;
pub mod fixture;
pub mod generate;
pub mod oracle;
pub mod report;
pub mod suite;

pub use error::{HarnessError, Result};
pub use generate::{
    candidate_hom, generate_instances, generate_one, integral_mono_where, rng_for, GenBounds, Instance, Kind,
};
pub use report::{Check, Counterexample, Report, Status};
pub use suite::{instance_checks, run_suite, SuiteConfig};
