//! Approximation schemes for all three variants: for a makespan guess the
//! instance is rounded, machine configurations are enumerated, an N-fold
//! program decides whether the guess is achievable, and a schedule is read
//! off its solution. A binary search over guesses drives the pipeline.

pub mod build;
pub mod construct;
pub mod enumerate;
pub mod extension;
pub mod params;
pub mod preprocess;
pub mod search;

use ccs_core::CoreError;
use ccs_nfold::{NFoldError, SolveOptions};
use thiserror::Error;

pub use build::{build_nfold, expected_dimensions, Dimensions, Layout, Model};
pub use construct::construct_schedule;
pub use enumerate::{enumerate, Configuration, Enumeration, Module, ModuleContent, DEFAULT_ENUM_CAP};
pub use extension::exponential_m_extension;
pub use params::{derive_delta, error_factor, PtasParams};
pub use preprocess::{preprocess, ClassKind, RoundedInstance, RoundedJob};
pub use search::{ptas_solve, ptas_solve_with, try_guess, GuessResult, PtasOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PtasError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    Epsilon(String),
    #[error("a rounded quantity does not fit a machine integer")]
    Overflow,
    #[error("accuracy too fine for desk scale: more than {cap} {what}")]
    EnumerationCap { what: &'static str, cap: usize },
    #[error("{classes} classes cannot fit on {machines} machines with {slots} slots each")]
    Structural { classes: usize, machines: u64, slots: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("no guess up to the upper bound was accepted")]
    NoAcceptedGuess,
    #[error(transparent)]
    NFold(#[from] NFoldError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// How machines of a splittable schedule are written out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MachineMode {
    /// Compact whenever there are more machines than jobs.
    #[default]
    Auto,
    Explicit,
    Compact,
}

#[derive(Debug, Clone)]
pub struct PtasOptions {
    pub enum_cap: usize,
    pub machine_mode: MachineMode,
    pub solver: SolveOptions,
    /// Fixes `1/delta` instead of deriving it from epsilon.
    pub inverse_delta: Option<u64>,
}

impl Default for PtasOptions {
    fn default() -> Self {
        PtasOptions {
            enum_cap: DEFAULT_ENUM_CAP,
            machine_mode: MachineMode::Auto,
            solver: SolveOptions::default(),
            inverse_delta: None,
        }
    }
}
