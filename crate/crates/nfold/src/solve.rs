use std::time::Duration;

use crate::dp::{solve_dp, DpBudget};
use crate::mip::solve_mip;
use crate::program::NFoldProgram;
use crate::{NFoldError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Dynamic program first, mixed-integer solver when it runs out of budget.
    #[default]
    Auto,
    DynamicProgram,
    Mip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub backend: Backend,
    pub budget: DpBudget,
    pub time_limit: Duration,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            backend: Backend::Auto,
            budget: DpBudget::default(),
            time_limit: Duration::from_secs(60),
        }
    }
}

/// Decides feasibility of the program and returns a verified point if one exists.
pub fn solve_feasible(program: &NFoldProgram) -> Result<Outcome, NFoldError> {
    solve_feasible_with(program, &SolveOptions::default())
}

pub fn solve_feasible_with(program: &NFoldProgram, options: &SolveOptions) -> Result<Outcome, NFoldError> {
    let outcome = match options.backend {
        Backend::DynamicProgram => solve_dp(program, &options.budget)?.ok_or(NFoldError::Budget)?,
        Backend::Mip => solve_mip(program, options.time_limit)?,
        Backend::Auto => match solve_dp(program, &options.budget)? {
            Some(outcome) => outcome,
            None => solve_mip(program, options.time_limit)?,
        },
    };
    if let Outcome::Feasible(solution) = &outcome {
        if !program.is_solution(solution.values()) {
            return Err(NFoldError::Unverified);
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::Block;

    fn wide() -> NFoldProgram {
        let top = Block::from_dense(1, 1, &[1]);
        NFoldProgram::new(
            1,
            0,
            1,
            vec![top],
            vec![Block::zeros(0, 1)],
            vec![123_456],
            vec![0],
            vec![1_000_000],
            vec![0],
        )
        .unwrap()
    }

    #[test]
    fn auto_falls_back_when_the_program_is_too_wide() {
        let p = wide();
        let only_dp = SolveOptions {
            backend: Backend::DynamicProgram,
            ..SolveOptions::default()
        };
        assert_eq!(solve_feasible_with(&p, &only_dp), Err(NFoldError::Budget));
        let Outcome::Feasible(s) = solve_feasible(&p).unwrap() else {
            panic!("feasible program")
        };
        assert_eq!(s.values(), &[123_456]);
    }
}
