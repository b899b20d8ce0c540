//! Exact brick-by-brick dynamic program.
//!
//! Every brick is solved locally by enumerating the integer points of its
//! local system; only the distinct contributions to the top rows are kept.
//! Columns that appear in no local row are pooled across bricks whenever
//! their top columns agree, since only their sum matters. A forward pass
//! over the bricks and pools then tracks the reachable partial top-row sums,
//! pruned by the smallest and largest sums the remaining units can add.

use std::collections::HashMap;

use crate::program::{validate_structure, NFoldProgram};
use crate::{NFoldError, NFoldSolution, Outcome};

/// Work limits beyond which the dynamic program gives up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpBudget {
    /// Search nodes when enumerating the local points of one brick.
    pub brick_nodes: usize,
    /// Largest value range of a pooled column.
    pub pool_range: i64,
    /// Stored numbers over the whole forward pass: alternatives and partial
    /// sums, each counted once per top row.
    pub cells: usize,
}

impl Default for DpBudget {
    fn default() -> Self {
        DpBudget {
            brick_nodes: 200_000,
            pool_range: 10_000,
            cells: 4_000_000,
        }
    }
}

struct OverBudget;

/// One step of the forward pass: a set of alternatives, each with its
/// contribution to the top rows.
struct Unit {
    contributions: Vec<Vec<i128>>,
    kind: UnitKind,
}

enum UnitKind {
    /// Local points of a brick: `points[k]` are the values of `columns`.
    Brick {
        brick: usize,
        columns: Vec<usize>,
        points: Vec<Vec<i64>>,
    },
    /// Pooled columns; alternative `k` puts `first + k` on the pool.
    Pool { members: Vec<usize>, first: i64 },
}

fn brick_points(
    program: &NFoldProgram,
    brick: usize,
    columns: &[usize],
    budget: &DpBudget,
) -> Result<(Vec<Vec<i128>>, Vec<Vec<i64>>), OverBudget> {
    let width = program.width();
    let rows = program.local_rows();
    let top_rows = program.top_rows();
    let local = program.local_block(brick);
    let top = program.top_block(brick);
    let target: Vec<i128> = program.local_rhs(brick).iter().map(|&b| b as i128).collect();
    let bounds: Vec<(i64, i64)> = columns
        .iter()
        .map(|&c| (program.lower()[brick * width + c], program.upper()[brick * width + c]))
        .collect();

    // Smallest and largest sums per local row of the columns from `k` on.
    let mut reach_min = vec![vec![0i128; rows]; columns.len() + 1];
    let mut reach_max = vec![vec![0i128; rows]; columns.len() + 1];
    for k in (0..columns.len()).rev() {
        reach_min[k] = reach_min[k + 1].clone();
        reach_max[k] = reach_max[k + 1].clone();
        let (l, u) = bounds[k];
        for &(r, a) in local.column(columns[k]) {
            let (x, y) = (a as i128 * l as i128, a as i128 * u as i128);
            reach_min[k][r] += x.min(y);
            reach_max[k][r] += x.max(y);
        }
    }

    let mut seen: HashMap<Vec<i128>, usize> = HashMap::new();
    let mut contributions = Vec::new();
    let mut points = Vec::new();
    let mut nodes = 0usize;
    let max_points = budget.cells / top_rows.max(1);
    let mut partial = vec![0i128; rows];
    let mut values = Vec::with_capacity(columns.len());

    #[allow(clippy::too_many_arguments)]
    fn walk(
        k: usize,
        columns: &[usize],
        bounds: &[(i64, i64)],
        local: &crate::program::Block,
        target: &[i128],
        reach_min: &[Vec<i128>],
        reach_max: &[Vec<i128>],
        partial: &mut Vec<i128>,
        values: &mut Vec<i64>,
        nodes: &mut usize,
        limit: usize,
        found: &mut dyn FnMut(&[i64]) -> bool,
    ) -> Result<(), OverBudget> {
        *nodes += 1;
        if *nodes > limit {
            return Err(OverBudget);
        }
        for r in 0..target.len() {
            let need = target[r] - partial[r];
            if need < reach_min[k][r] || need > reach_max[k][r] {
                return Ok(());
            }
        }
        if k == columns.len() {
            return if found(values) { Ok(()) } else { Err(OverBudget) };
        }
        let (l, u) = bounds[k];
        let column = local.column(columns[k]);
        for &(r, a) in column {
            partial[r] += a as i128 * l as i128;
        }
        for v in l..=u {
            values.push(v);
            walk(
                k + 1,
                columns,
                bounds,
                local,
                target,
                reach_min,
                reach_max,
                partial,
                values,
                nodes,
                limit,
                found,
            )?;
            values.pop();
            for &(r, a) in column {
                partial[r] += a as i128;
            }
        }
        let span = u as i128 - l as i128 + 1;
        for &(r, a) in column {
            partial[r] -= a as i128 * (l as i128 + span);
        }
        Ok(())
    }

    walk(
        0,
        columns,
        &bounds,
        local,
        &target,
        &reach_min,
        &reach_max,
        &mut partial,
        &mut values,
        &mut nodes,
        budget.brick_nodes,
        &mut |vals: &[i64]| {
            let mut contribution = vec![0i128; top_rows];
            for (&c, &v) in columns.iter().zip(vals) {
                for &(r, a) in top.column(c) {
                    contribution[r] += a as i128 * v as i128;
                }
            }
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(contribution.clone()) {
                e.insert(points.len());
                contributions.push(contribution);
                points.push(vals.to_vec());
            }
            contributions.len() <= max_points
        },
    )?;
    Ok((contributions, points))
}

/// Key identifying bricks whose local enumeration is identical.
fn brick_signature(program: &NFoldProgram, brick: usize, columns: &[usize]) -> Vec<i64> {
    let width = program.width();
    let mut key: Vec<i64> = program.local_rhs(brick).to_vec();
    for &c in columns {
        key.push(i64::MIN);
        key.push(c as i64);
        key.push(program.lower()[brick * width + c]);
        key.push(program.upper()[brick * width + c]);
        for block in [program.top_block(brick), program.local_block(brick)] {
            key.push(i64::MAX);
            for &(r, a) in block.column(c) {
                key.push(r as i64);
                key.push(a);
            }
        }
    }
    key
}

/// Solves with the dynamic program; `Ok(None)` when the budget runs out.
pub fn solve_dp(program: &NFoldProgram, budget: &DpBudget) -> Result<Option<Outcome>, NFoldError> {
    validate_structure(program)?;
    if program.lower().iter().zip(program.upper()).any(|(l, u)| l > u) {
        return Ok(Some(Outcome::Infeasible));
    }
    // The brick search recurses once per column, and wide bricks need more
    // than the default stack.
    let result = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(SEARCH_STACK)
            .spawn_scoped(scope, || forward(program, budget))
            .map(|handle| handle.join())
    });
    match result {
        Ok(Ok(Ok(outcome))) => Ok(Some(outcome)),
        Ok(Ok(Err(OverBudget))) => Ok(None),
        Ok(Err(panic)) => std::panic::resume_unwind(panic),
        Err(e) => Err(NFoldError::Backend(format!("cannot start search thread: {e}"))),
    }
}

const SEARCH_STACK: usize = 256 << 20;

fn forward(program: &NFoldProgram, budget: &DpBudget) -> Result<Outcome, OverBudget> {
    let width = program.width();
    let top_rows = program.top_rows();
    let mut x: Vec<i64> = program
        .lower()
        .iter()
        .zip(program.upper())
        .map(|(&l, &u)| 0.clamp(l, u))
        .collect();

    let mut units: Vec<Unit> = Vec::new();
    let mut memo: HashMap<Vec<i64>, (Vec<Vec<i128>>, Vec<Vec<i64>>)> = HashMap::new();
    let mut pools: Vec<(Vec<(usize, i64)>, Vec<usize>)> = Vec::new();
    let mut pool_index: HashMap<Vec<(usize, i64)>, usize> = HashMap::new();
    for brick in 0..program.bricks() {
        let local = program.local_block(brick);
        let top = program.top_block(brick);
        let mut columns = Vec::new();
        for c in 0..width {
            if !local.column(c).is_empty() {
                columns.push(c);
            } else if !top.column(c).is_empty() {
                let key = top.column(c).to_vec();
                let at = *pool_index.entry(key.clone()).or_insert_with(|| {
                    pools.push((key, Vec::new()));
                    pools.len() - 1
                });
                pools[at].1.push(brick * width + c);
            }
        }
        let signature = brick_signature(program, brick, &columns);
        let (contributions, points) = match memo.get(&signature) {
            Some(found) => found.clone(),
            None => {
                let found = brick_points(program, brick, &columns, budget)?;
                memo.insert(signature, found.clone());
                found
            }
        };
        if contributions.is_empty() {
            return Ok(Outcome::Infeasible);
        }
        units.push(Unit {
            contributions,
            kind: UnitKind::Brick {
                brick,
                columns,
                points,
            },
        });
    }
    let row_cost = top_rows.max(1);
    let mut cells: usize = units.iter().map(|u| u.contributions.len() * row_cost).sum();
    for (_, members) in &pools {
        let low: i64 = members.iter().map(|&v| program.lower()[v]).sum();
        let high: i64 = members.iter().map(|&v| program.upper()[v]).sum();
        if high - low >= budget.pool_range {
            return Err(OverBudget);
        }
        cells += (high - low + 1) as usize * row_cost;
        if cells > budget.cells {
            return Err(OverBudget);
        }
    }
    for (column, members) in pools {
        let low: i64 = members.iter().map(|&v| program.lower()[v]).sum();
        let high: i64 = members.iter().map(|&v| program.upper()[v]).sum();
        let contributions = (low..=high)
            .map(|v| {
                let mut c = vec![0i128; top_rows];
                for &(r, a) in &column {
                    c[r] = a as i128 * v as i128;
                }
                c
            })
            .collect();
        units.push(Unit {
            contributions,
            kind: UnitKind::Pool {
                members,
                first: low,
            },
        });
    }

    // Reachable range of the units from `k` on, per top row.
    let mut reach_min = vec![vec![0i128; top_rows]; units.len() + 1];
    let mut reach_max = vec![vec![0i128; top_rows]; units.len() + 1];
    for k in (0..units.len()).rev() {
        for r in 0..top_rows {
            let column = units[k].contributions.iter().map(|c| c[r]);
            reach_min[k][r] = reach_min[k + 1][r] + column.clone().min().unwrap_or(0);
            reach_max[k][r] = reach_max[k + 1][r] + column.max().unwrap_or(0);
        }
    }
    let target: Vec<i128> = program.top_rhs().iter().map(|&b| b as i128).collect();
    let admissible = |sum: &[i128], k: usize| {
        (0..top_rows).all(|r| {
            let need = target[r] - sum[r];
            reach_min[k][r] <= need && need <= reach_max[k][r]
        })
    };

    // layers[k] holds (sum, parent index in layers[k-1], alternative).
    let mut layers: Vec<Vec<(Vec<i128>, usize, usize)>> = vec![vec![(vec![0; top_rows], 0, 0)]];
    if !admissible(&layers[0][0].0, 0) {
        return Ok(Outcome::Infeasible);
    }
    cells += row_cost;
    for (k, unit) in units.iter().enumerate() {
        let mut next: Vec<(Vec<i128>, usize, usize)> = Vec::new();
        let mut seen: HashMap<Vec<i128>, ()> = HashMap::new();
        for (parent, (sum, _, _)) in layers[k].iter().enumerate() {
            for (alt, contribution) in unit.contributions.iter().enumerate() {
                let candidate: Vec<i128> = sum.iter().zip(contribution).map(|(a, b)| a + b).collect();
                if !admissible(&candidate, k + 1) || seen.contains_key(&candidate) {
                    continue;
                }
                seen.insert(candidate.clone(), ());
                next.push((candidate, parent, alt));
                cells += row_cost;
                if cells > budget.cells {
                    return Err(OverBudget);
                }
            }
        }
        if next.is_empty() {
            return Ok(Outcome::Infeasible);
        }
        layers.push(next);
    }

    // Every surviving final state equals the target.
    let mut index = 0;
    for k in (0..units.len()).rev() {
        let (_, parent, alt) = &layers[k + 1][index];
        match &units[k].kind {
            UnitKind::Brick {
                brick,
                columns,
                points,
            } => {
                for (&c, &v) in columns.iter().zip(&points[*alt]) {
                    x[brick * width + c] = v;
                }
            }
            UnitKind::Pool { members, first } => {
                let mut extra = first + *alt as i64
                    - members.iter().map(|&v| program.lower()[v]).sum::<i64>();
                for &v in members {
                    let take = extra.min(program.upper()[v] - program.lower()[v]);
                    x[v] = program.lower()[v] + take;
                    extra -= take;
                }
            }
        }
        index = *parent;
    }
    debug_assert!(program.is_solution(&x));
    Ok(Outcome::Feasible(NFoldSolution::new(x, width)))
}
