use std::time::Duration;

use ccs_nfold::{
    parse_program, program_to_string, solve_dp, solve_exhaustive, solve_feasible_with, solve_mip,
    Backend, Block, DpBudget, NFoldProgram, Outcome, SolveOptions,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random small program whose right-hand side comes from a random point in
/// the box, so that roughly half are feasible after an optional nudge.
fn random_program(seed: u64) -> NFoldProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bricks = rng.gen_range(1..=3);
    let top_rows = rng.gen_range(0..=2);
    let local_rows = rng.gen_range(0..=2);
    let width = rng.gen_range(1..=3);
    let mut block = |rows: usize| {
        let entries: Vec<i64> = (0..rows * width).map(|_| rng.gen_range(-3..=3)).collect();
        Block::from_dense(rows, width, &entries)
    };
    let top: Vec<Block> = (0..bricks).map(|_| block(top_rows)).collect();
    let local: Vec<Block> = (0..bricks).map(|_| block(local_rows)).collect();
    let lower: Vec<i64> = (0..bricks * width).map(|_| rng.gen_range(-1..=1)).collect();
    let upper: Vec<i64> = lower.iter().map(|&l| l + rng.gen_range(0..=3)).collect();
    let point: Vec<i64> = lower
        .iter()
        .zip(&upper)
        .map(|(&l, &u)| rng.gen_range(l..=u))
        .collect();
    let probe = NFoldProgram::new(
        top_rows,
        local_rows,
        width,
        top.clone(),
        local.clone(),
        vec![0; top_rows + bricks * local_rows],
        lower.clone(),
        upper.clone(),
        vec![0; bricks * width],
    )
    .unwrap();
    let mut rhs: Vec<i64> = probe.residual(&point).iter().map(|&r| r as i64).collect();
    if !rhs.is_empty() && rng.gen_bool(0.5) {
        let at = rng.gen_range(0..rhs.len());
        rhs[at] += rng.gen_range(-2..=2);
    }
    NFoldProgram::new(
        top_rows,
        local_rows,
        width,
        top,
        local,
        rhs,
        lower,
        upper,
        vec![0; bricks * width],
    )
    .unwrap()
}

fn feasible(outcome: &Outcome) -> bool {
    matches!(outcome, Outcome::Feasible(_))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn backends_agree_with_enumeration(seed in any::<u64>()) {
        let program = random_program(seed);
        let reference = solve_exhaustive(&program).unwrap();
        let dp = solve_dp(&program, &DpBudget::default()).unwrap().expect("within budget");
        let mip = solve_mip(&program, Duration::from_secs(10)).unwrap();
        prop_assert_eq!(feasible(&reference), feasible(&dp));
        prop_assert_eq!(feasible(&reference), feasible(&mip));
        for outcome in [&reference, &dp, &mip] {
            if let Outcome::Feasible(s) = outcome {
                prop_assert!(program.is_solution(s.values()));
            }
        }
    }

    #[test]
    fn dump_round_trips(seed in any::<u64>()) {
        let program = random_program(seed);
        prop_assert_eq!(parse_program(&program_to_string(&program)).unwrap(), program);
    }
}

#[test]
fn auto_backend_matches_forced_backends() {
    for seed in 0..50 {
        let program = random_program(seed);
        let verdicts: Vec<bool> = [Backend::Auto, Backend::DynamicProgram, Backend::Mip]
            .into_iter()
            .map(|backend| {
                let options = SolveOptions {
                    backend,
                    ..SolveOptions::default()
                };
                feasible(&solve_feasible_with(&program, &options).unwrap())
            })
            .collect();
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "seed {seed}");
    }
}
