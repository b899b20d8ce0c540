//! Extra row for instances with far more machines than jobs.
//!
//! Every pair of classes shares at most one machine in a suitable optimal
//! schedule, so apart from empty machines and machines holding one largest
//! module, at most `C (C + 1) / 2` machines are needed. The row caps that
//! count, which keeps the interesting part of the solution small however
//! large `m` is.

use ccs_nfold::{Block, NFoldProgram};

use crate::PtasError;

/// `C (C + 1) / 2`, the cap on machines with a non-trivial configuration.
pub fn nontrivial_machine_cap(classes: usize) -> Result<i64, PtasError> {
    let c = classes as u128;
    i64::try_from(c * (c + 1) / 2).map_err(|_| PtasError::Overflow)
}

/// Appends one top row and one slack column per brick so that the columns
/// listed in `nontrivial` sum to at most the cap over all bricks.
pub fn exponential_m_extension(
    program: &NFoldProgram,
    nontrivial: &[usize],
    classes: usize,
) -> Result<NFoldProgram, PtasError> {
    let cap = nontrivial_machine_cap(classes)?;
    let rows = program.top_rows();
    let width = program.width();
    let widen = |block: &Block, rows: usize| {
        let mut out = Block::zeros(rows, width + 1);
        for col in 0..width {
            for &(r, v) in block.column(col) {
                out.set(r, col, v);
            }
        }
        out
    };
    let mut top = Vec::with_capacity(program.bricks());
    let mut local = Vec::with_capacity(program.bricks());
    let mut lower = Vec::with_capacity(program.variables() + program.bricks());
    let mut upper = Vec::with_capacity(lower.capacity());
    let mut objective = Vec::with_capacity(lower.capacity());
    for brick in 0..program.bricks() {
        let mut t = widen(program.top_block(brick), rows + 1);
        for &col in nontrivial {
            t.set(rows, col, 1);
        }
        t.set(rows, width, 1);
        top.push(t);
        local.push(widen(program.local_block(brick), program.local_rows()));
        let span = brick * width..(brick + 1) * width;
        lower.extend_from_slice(&program.lower()[span.clone()]);
        lower.push(0);
        upper.extend_from_slice(&program.upper()[span.clone()]);
        upper.push(cap);
        objective.extend_from_slice(&program.objective()[span]);
        objective.push(0);
    }
    let mut rhs = program.top_rhs().to_vec();
    rhs.push(cap);
    rhs.extend_from_slice(&program.rhs()[rows..]);
    Ok(NFoldProgram::new(
        rows + 1,
        program.local_rows(),
        width + 1,
        top,
        local,
        rhs,
        lower,
        upper,
        objective,
    )?)
}
