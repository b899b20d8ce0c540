use crate::program::{validate_structure, NFoldProgram};
use crate::{NFoldError, NFoldSolution, Outcome};

/// Default limit on the number of points in the bounding box.
pub const EXHAUSTIVE_CAP: u128 = 10_000_000;

/// Tries every integer point of the bounding box in lexicographic order and
/// returns the first one satisfying all equations.
pub fn solve_exhaustive(program: &NFoldProgram) -> Result<Outcome, NFoldError> {
    solve_exhaustive_with_cap(program, EXHAUSTIVE_CAP)
}

pub fn solve_exhaustive_with_cap(program: &NFoldProgram, cap: u128) -> Result<Outcome, NFoldError> {
    validate_structure(program)?;
    let lower = program.lower();
    let upper = program.upper();
    if lower.iter().zip(upper).any(|(l, u)| l > u) {
        return Ok(Outcome::Infeasible);
    }
    let mut size: u128 = 1;
    for (l, u) in lower.iter().zip(upper) {
        size = size
            .checked_mul((*u as i128 - *l as i128 + 1) as u128)
            .filter(|&s| s <= cap)
            .ok_or(NFoldError::SearchSpaceTooLarge { cap })?;
    }

    // Dense columns of the whole matrix.
    let width = program.width();
    let rows = program.rows();
    let columns: Vec<Vec<(usize, i128)>> = (0..program.variables())
        .map(|var| {
            let (brick, col) = (var / width, var % width);
            let offset = program.top_rows() + brick * program.local_rows();
            program
                .top_block(brick)
                .column(col)
                .iter()
                .map(|&(r, a)| (r, a as i128))
                .chain(
                    program
                        .local_block(brick)
                        .column(col)
                        .iter()
                        .map(|&(r, a)| (offset + r, a as i128)),
                )
                .collect()
        })
        .collect();

    let mut x = lower.to_vec();
    let mut residual = program.residual(&x);
    debug_assert_eq!(residual.len(), rows);
    loop {
        if residual.iter().all(|&r| r == 0) {
            return Ok(Outcome::Feasible(NFoldSolution::new(x, width)));
        }
        // Advance the last variable first, so the order is lexicographic.
        let mut var = x.len();
        loop {
            if var == 0 {
                return Ok(Outcome::Infeasible);
            }
            var -= 1;
            if x[var] < upper[var] {
                x[var] += 1;
                for &(r, a) in &columns[var] {
                    residual[r] += a;
                }
                break;
            }
            let span = (x[var] - lower[var]) as i128;
            x[var] = lower[var];
            for &(r, a) in &columns[var] {
                residual[r] -= a * span;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::Block;

    #[test]
    fn finds_lexicographically_first_point() {
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
        match solve_exhaustive(&p).unwrap() {
            Outcome::Feasible(s) => assert_eq!(s.values(), &[0, 0, 2, 2]),
            Outcome::Infeasible => panic!("feasible program"),
        }
    }

    #[test]
    fn reports_infeasibility_and_size() {
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
        assert_eq!(solve_exhaustive(&p).unwrap(), Outcome::Infeasible);
        assert_eq!(
            solve_exhaustive_with_cap(&p, 3),
            Err(NFoldError::SearchSpaceTooLarge { cap: 3 })
        );
    }
}
