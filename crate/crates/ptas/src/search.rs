//! Binary search over makespan guesses.

use ccs_core::rational::{big, ceil_to_int, common_denominator, int};
use ccs_core::{lower_bound, Instance, Rational, Schedule, Variant};
use ccs_nfold::{solve_feasible_with, NFoldProgram, NFoldSolution, Outcome};
use num_bigint::BigInt;
use num_traits::One;

use crate::build::{build_nfold, Model};
use crate::construct::construct_schedule;
use crate::enumerate::enumerate;
use crate::extension::exponential_m_extension;
use crate::params::{derive_delta, PtasParams};
use crate::preprocess::preprocess;
use crate::{MachineMode, PtasError, PtasOptions};

#[derive(Debug, Clone)]
pub enum GuessResult {
    Accepted(Model, NFoldSolution),
    Rejected(Model),
}

impl GuessResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, GuessResult::Accepted(..))
    }

    pub fn model(&self) -> &Model {
        match self {
            GuessResult::Accepted(m, _) | GuessResult::Rejected(m) => m,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PtasOutcome {
    pub schedule: Schedule,
    pub makespan: Rational,
    /// Smallest accepted guess.
    pub guess: Rational,
    pub inverse_delta: u64,
    pub lower: Rational,
    pub guesses_tried: usize,
    /// Program of the accepted guess.
    pub program: NFoldProgram,
}

fn uses_compact(instance: &Instance, variant: Variant, mode: MachineMode) -> bool {
    variant == Variant::Splittable
        && match mode {
            MachineMode::Auto => instance.machines() > instance.job_count() as u64,
            MachineMode::Explicit => false,
            MachineMode::Compact => true,
        }
}

/// Builds and solves the program for one guess.
pub fn try_guess(
    instance: &Instance,
    variant: Variant,
    inverse_delta: u64,
    guess: Rational,
    options: &PtasOptions,
) -> Result<GuessResult, PtasError> {
    let params = PtasParams::new(variant, inverse_delta, guess, instance.slots() as u64);
    let rounded = preprocess(instance, &params)?;
    let enumeration = enumerate(&params, &rounded, options.enum_cap)?;
    let (mut program, mut layout) = build_nfold(&params, &rounded, &enumeration, instance.machines())?;
    if uses_compact(instance, variant, options.machine_mode) {
        let nontrivial: Vec<usize> = (0..enumeration.configurations.len())
            .filter(|&k| !enumeration.is_trivial(k))
            .map(|k| layout.x(k))
            .collect();
        program = exponential_m_extension(&program, &nontrivial, instance.class_count())?;
        layout.extension = true;
    }
    let outcome = solve_feasible_with(&program, &options.solver)?;
    let model = Model {
        params,
        rounded,
        enumeration,
        layout,
        program,
    };
    Ok(match outcome {
        Outcome::Feasible(solution) => GuessResult::Accepted(model, solution),
        Outcome::Infeasible => GuessResult::Rejected(model),
    })
}

pub fn ptas_solve(instance: &Instance, epsilon: &Rational, variant: Variant) -> Result<PtasOutcome, PtasError> {
    ptas_solve_with(instance, epsilon, variant, &PtasOptions::default())
}

/// Finds the smallest accepted guess and returns the schedule built for it.
///
/// Splittable guesses grow geometrically by `1 + delta` from the lower
/// bound. The other variants search a grid fine enough to contain the
/// optimum, so their search is over integers.
pub fn ptas_solve_with(
    instance: &Instance,
    epsilon: &Rational,
    variant: Variant,
    options: &PtasOptions,
) -> Result<PtasOutcome, PtasError> {
    let inverse_delta = match options.inverse_delta {
        Some(k) => k,
        None => derive_delta(epsilon, variant)?,
    };
    let capacity = instance.machines() as u128 * instance.slots() as u128;
    if instance.class_count() as u128 > capacity {
        return Err(PtasError::Structural {
            classes: instance.class_count(),
            machines: instance.machines(),
            slots: instance.slots(),
        });
    }
    let bounds = lower_bound(instance, variant);

    let step = int(1) + Rational::new(BigInt::one(), inverse_delta.into());
    let mut grid = common_denominator(instance.times());
    if variant == Variant::Preemptive {
        grid *= BigInt::from(instance.machines());
    }
    let guess_at = |index: &BigInt| -> Rational {
        match variant {
            Variant::Splittable => {
                let exponent = i32::try_from(index).expect("geometric index stays small");
                &bounds.lower * step.pow(exponent)
            }
            _ => Rational::new(index.clone(), grid.clone()),
        }
    };
    let (mut low, mut high) = match variant {
        Variant::Splittable => {
            let mut top = 0u32;
            let mut value = bounds.lower.clone();
            while value < bounds.upper {
                value *= &step;
                top += 1;
            }
            (BigInt::from(0), BigInt::from(top))
        }
        _ => {
            let scale = big(grid.clone());
            (ceil_to_int(&(&bounds.lower * &scale)), ceil_to_int(&(&bounds.upper * &scale)))
        }
    };

    // The lower end is tried first: it is often accepted outright.
    let mut tried = 1usize;
    let mut best = match try_guess(instance, variant, inverse_delta, guess_at(&low), options)? {
        GuessResult::Accepted(model, solution) => Some((model, solution)),
        GuessResult::Rejected(_) => None,
    };
    if best.is_none() {
        low += 1;
        let mut probe = high.clone();
        while low <= high {
            tried += 1;
            match try_guess(instance, variant, inverse_delta, guess_at(&probe), options)? {
                GuessResult::Accepted(model, solution) => {
                    best = Some((model, solution));
                    high = &probe - 1;
                }
                GuessResult::Rejected(_) => low = &probe + 1,
            }
            probe = (&low + &high) / 2;
        }
    }

    let (model, solution) = best.ok_or(PtasError::NoAcceptedGuess)?;
    let compact = uses_compact(instance, variant, options.machine_mode);
    let schedule = construct_schedule(instance, &model, &solution, compact)?;
    let verdict = schedule.validate(instance, variant);
    if !verdict.is_feasible() {
        return Err(PtasError::Internal(format!("reconstructed schedule is invalid: {verdict:?}")));
    }
    let makespan = schedule.makespan(instance)?;
    if makespan > model.params.makespan_bound_units() * model.params.unit() {
        return Err(PtasError::Internal("makespan exceeds the bound of the accepted guess".into()));
    }
    Ok(PtasOutcome {
        schedule,
        makespan,
        guess: model.params.guess.clone(),
        inverse_delta,
        lower: bounds.lower,
        guesses_tried: tried,
        program: model.program,
    })
}
