//! N-fold integer programs: a representation, a text dump, and feasibility
//! solvers.

pub mod dump;
pub mod exhaustive;
pub mod program;

mod dp;
mod mip;
mod solve;

pub use dp::{solve_dp, DpBudget};
pub use dump::{parse_program, program_to_string, write_program};
pub use exhaustive::{solve_exhaustive, solve_exhaustive_with_cap, EXHAUSTIVE_CAP};
pub use mip::solve_mip;
pub use program::{validate_structure, Block, NFoldProgram, StructureReport, UNBOUNDED_ABOVE, UNBOUNDED_BELOW};
pub use solve::{solve_feasible, solve_feasible_with, Backend, SolveOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NFoldError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("variable {variable} has an infinite bound")]
    InfiniteBound { variable: usize },
    #[error("search space exceeds {cap} points")]
    SearchSpaceTooLarge { cap: u128 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dynamic program exceeded its budget")]
    Budget,
    #[error("solver backend failed: {0}")]
    Backend(String),
    #[error("solver stopped at its limit without an answer")]
    LimitReached,
    #[error("solver returned a point that fails the exact check")]
    Unverified,
}

/// A feasible point, cut into bricks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFoldSolution {
    values: Vec<i64>,
    width: usize,
}

impl NFoldSolution {
    pub fn new(values: Vec<i64>, width: usize) -> Self {
        NFoldSolution { values, width }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn brick(&self, index: usize) -> &[i64] {
        &self.values[index * self.width..(index + 1) * self.width]
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(NFoldSolution),
    Infeasible,
}
