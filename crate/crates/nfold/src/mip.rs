//! Mixed-integer fallback through HiGHS. The returned point is rounded and
//! checked exactly before it is trusted.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::time::Duration;

use highs::{ColProblem, HighsModelStatus, HighsSolutionStatus, Sense};

use crate::program::{validate_structure, NFoldProgram};
use crate::{NFoldError, NFoldSolution, Outcome};

pub fn solve_mip(program: &NFoldProgram, time_limit: Duration) -> Result<Outcome, NFoldError> {
    validate_structure(program)?;
    if program.lower().iter().zip(program.upper()).any(|(l, u)| l > u) {
        return Ok(Outcome::Infeasible);
    }
    if program.variables() == 0 {
        return Ok(if program.rhs().iter().all(|&b| b == 0) {
            Outcome::Feasible(NFoldSolution::new(Vec::new(), program.width()))
        } else {
            Outcome::Infeasible
        });
    }

    // Columns without local entries that agree on their top column and cost
    // are interchangeable across bricks and go into one pooled column.
    let width = program.width();
    let mut columns: Vec<Vec<usize>> = Vec::new();
    let mut pooled: HashMap<(Vec<(usize, i64)>, i64), usize> = HashMap::new();
    for brick in 0..program.bricks() {
        for col in 0..width {
            let var = brick * width + col;
            if program.local_block(brick).column(col).is_empty() {
                let key = (program.top_block(brick).column(col).to_vec(), program.objective()[var]);
                match pooled.entry(key) {
                    Entry::Occupied(e) => columns[*e.get()].push(var),
                    Entry::Vacant(e) => {
                        e.insert(columns.len());
                        columns.push(vec![var]);
                    }
                }
            } else {
                columns.push(vec![var]);
            }
        }
    }

    let mut problem = ColProblem::new();
    let rows: Vec<_> = program
        .rhs()
        .iter()
        .map(|&b| problem.add_row(b as f64..=b as f64))
        .collect();
    for members in &columns {
        let var = members[0];
        let (brick, col) = (var / width, var % width);
        let offset = program.top_rows() + brick * program.local_rows();
        let entries: Vec<_> = program
            .top_block(brick)
            .column(col)
            .iter()
            .map(|&(r, a)| (rows[r], a as f64))
            .chain(
                program
                    .local_block(brick)
                    .column(col)
                    .iter()
                    .map(|&(r, a)| (rows[offset + r], a as f64)),
            )
            .collect();
        let low: i64 = members.iter().map(|&v| program.lower()[v]).sum();
        let high: i64 = members.iter().map(|&v| program.upper()[v]).sum();
        problem.add_integer_column(
            program.objective()[var] as f64,
            low as f64..=high as f64,
            entries,
        );
    }

    let mut model = problem.optimise(Sense::Minimise);
    model.make_quiet();
    model.set_option("output_flag", false);
    model.set_option("threads", 1);
    model.set_option("time_limit", time_limit.as_secs_f64());
    // Presolve costs more than it saves on these feasibility programs.
    model.set_option("presolve", "off");
    let solved = model
        .try_solve()
        .map_err(|status| NFoldError::Backend(format!("{status:?}")))?;

    match solved.status() {
        HighsModelStatus::Optimal => {}
        HighsModelStatus::Infeasible => return Ok(Outcome::Infeasible),
        HighsModelStatus::ReachedTimeLimit
        | HighsModelStatus::ReachedIterationLimit
        | HighsModelStatus::ReachedSolutionLimit => {
            if solved.primal_solution_status() != HighsSolutionStatus::Feasible {
                return Err(NFoldError::LimitReached);
            }
        }
        other => return Err(NFoldError::Backend(format!("{other:?}"))),
    }
    let mut x = vec![0i64; program.variables()];
    for (members, value) in columns.iter().zip(solved.get_solution().columns()) {
        let mut extra = value.round() as i64 - members.iter().map(|&v| program.lower()[v]).sum::<i64>();
        for &v in members {
            let take = extra.clamp(0, program.upper()[v] - program.lower()[v]);
            x[v] = program.lower()[v] + take;
            extra -= take;
        }
    }
    if program.is_solution(&x) {
        Ok(Outcome::Feasible(NFoldSolution::new(x, width)))
    } else {
        Err(NFoldError::Unverified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::Block;

    #[test]
    fn solves_and_verifies() {
        let top = Block::from_dense(1, 2, &[1, 1]);
        let local = Block::from_dense(1, 2, &[1, -1]);
        let p = NFoldProgram::new(
            1,
            1,
            2,
            vec![top.clone(), top],
            vec![local.clone(), local],
            vec![4, 0, 0],
            vec![0; 4],
            vec![3; 4],
            vec![0; 4],
        )
        .unwrap();
        let Outcome::Feasible(s) = solve_mip(&p, Duration::from_secs(10)).unwrap() else {
            panic!("feasible program")
        };
        assert!(p.is_solution(s.values()));
    }

    #[test]
    fn proves_infeasibility() {
        let p = NFoldProgram::new(
            1,
            0,
            1,
            vec![Block::from_dense(1, 1, &[2])],
            vec![Block::zeros(0, 1)],
            vec![3],
            vec![0],
            vec![5],
            vec![0],
        )
        .unwrap();
        assert_eq!(
            solve_mip(&p, Duration::from_secs(10)).unwrap(),
            Outcome::Infeasible
        );
    }
}
