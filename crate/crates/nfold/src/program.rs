use crate::NFoldError;

/// Marks a variable without a lower bound. Programs using it are rejected.
pub const UNBOUNDED_BELOW: i64 = i64::MIN;
/// Marks a variable without an upper bound. Programs using it are rejected.
pub const UNBOUNDED_ABOVE: i64 = i64::MAX;

/// A sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl Block {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Block {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a block from row-major entries.
    pub fn from_dense(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "dense block has wrong size");
        let mut block = Block::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                block.set(r, c, entries[r * cols + c]);
            }
        }
        block
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows, "row {row} out of range");
        let column = &mut self.columns[col];
        match column.binary_search_by_key(&row, |e| e.0) {
            Ok(i) if value == 0 => {
                column.remove(i);
            }
            Ok(i) => column[i].1 = value,
            Err(_) if value == 0 => {}
            Err(i) => column.insert(i, (row, value)),
        }
    }

    pub fn add(&mut self, row: usize, col: usize, value: i64) {
        let current = self.get(row, col);
        self.set(row, col, current + value);
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        let column = &self.columns[col];
        column
            .binary_search_by_key(&row, |e| e.0)
            .map(|i| column[i].1)
            .unwrap_or(0)
    }

    /// Non-zero entries of a column as `(row, value)`, ordered by row.
    pub fn column(&self, col: usize) -> &[(usize, i64)] {
        &self.columns[col]
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.columns
            .iter()
            .flatten()
            .map(|e| e.1.saturating_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.rows * self.cols()];
        for (c, column) in self.columns.iter().enumerate() {
            for &(r, v) in column {
                out[r * self.cols() + c] = v;
            }
        }
        out
    }
}

/// An N-fold integer program
///
/// ```text
/// sum_i top[i] x_i = rhs[0..r]
/// local[i] x_i     = rhs[r + i*s .. r + (i+1)*s]   for every brick i
/// lower <= x <= upper,  x integral
/// ```
///
/// where `x = (x_1, ..., x_N)` is cut into bricks of `width` variables.
/// The objective is carried along but feasibility is all that is solved for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFoldProgram {
    top_rows: usize,
    local_rows: usize,
    width: usize,
    top: Vec<Block>,
    local: Vec<Block>,
    rhs: Vec<i64>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    objective: Vec<i64>,
}

fn check(what: &'static str, expected: usize, found: usize) -> Result<(), NFoldError> {
    if expected == found {
        Ok(())
    } else {
        Err(NFoldError::DimensionMismatch {
            what,
            expected,
            found,
        })
    }
}

impl NFoldProgram {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        top_rows: usize,
        local_rows: usize,
        width: usize,
        top: Vec<Block>,
        local: Vec<Block>,
        rhs: Vec<i64>,
        lower: Vec<i64>,
        upper: Vec<i64>,
        objective: Vec<i64>,
    ) -> Result<Self, NFoldError> {
        let bricks = top.len();
        check("local blocks", bricks, local.len())?;
        for block in &top {
            check("top block rows", top_rows, block.rows())?;
            check("top block columns", width, block.cols())?;
        }
        for block in &local {
            check("local block rows", local_rows, block.rows())?;
            check("local block columns", width, block.cols())?;
        }
        check("right-hand side", top_rows + bricks * local_rows, rhs.len())?;
        check("lower bounds", bricks * width, lower.len())?;
        check("upper bounds", bricks * width, upper.len())?;
        check("objective", bricks * width, objective.len())?;
        Ok(NFoldProgram {
            top_rows,
            local_rows,
            width,
            top,
            local,
            rhs,
            lower,
            upper,
            objective,
        })
    }

    pub fn bricks(&self) -> usize {
        self.top.len()
    }

    pub fn top_rows(&self) -> usize {
        self.top_rows
    }

    pub fn local_rows(&self) -> usize {
        self.local_rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn variables(&self) -> usize {
        self.bricks() * self.width
    }

    pub fn rows(&self) -> usize {
        self.top_rows + self.bricks() * self.local_rows
    }

    pub fn top_block(&self, brick: usize) -> &Block {
        &self.top[brick]
    }

    pub fn local_block(&self, brick: usize) -> &Block {
        &self.local[brick]
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    pub fn top_rhs(&self) -> &[i64] {
        &self.rhs[..self.top_rows]
    }

    pub fn local_rhs(&self, brick: usize) -> &[i64] {
        let start = self.top_rows + brick * self.local_rows;
        &self.rhs[start..start + self.local_rows]
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn objective(&self) -> &[i64] {
        &self.objective
    }

    /// `A x - b` for the whole constraint matrix, in row order.
    pub fn residual(&self, x: &[i64]) -> Vec<i128> {
        let mut out: Vec<i128> = self.rhs.iter().map(|&b| -(b as i128)).collect();
        for brick in 0..self.bricks() {
            let offset = self.top_rows + brick * self.local_rows;
            for col in 0..self.width {
                let value = x[brick * self.width + col] as i128;
                if value == 0 {
                    continue;
                }
                for &(r, a) in self.top[brick].column(col) {
                    out[r] += a as i128 * value;
                }
                for &(r, a) in self.local[brick].column(col) {
                    out[offset + r] += a as i128 * value;
                }
            }
        }
        out
    }

    /// Exact check of bounds and equations.
    pub fn is_solution(&self, x: &[i64]) -> bool {
        x.len() == self.variables()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
            && self.residual(x).iter().all(|&r| r == 0)
    }
}

/// Shape and size parameters of a valid program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub bricks: usize,
    pub top_rows: usize,
    pub local_rows: usize,
    pub width: usize,
    /// Largest absolute constraint matrix entry.
    pub max_abs_entry: i64,
    /// Bits needed for the largest absolute number in the program.
    pub encoding_bits: u32,
}

pub fn validate_structure(program: &NFoldProgram) -> Result<StructureReport, NFoldError> {
    for (variable, (&l, &u)) in program.lower.iter().zip(&program.upper).enumerate() {
        if l == UNBOUNDED_BELOW || u == UNBOUNDED_ABOVE {
            return Err(NFoldError::InfiniteBound { variable });
        }
    }
    let max_abs_entry = program
        .top
        .iter()
        .chain(&program.local)
        .map(Block::max_abs)
        .max()
        .unwrap_or(0);
    let largest = program
        .rhs
        .iter()
        .chain(&program.lower)
        .chain(&program.upper)
        .chain(&program.objective)
        .map(|v| v.unsigned_abs())
        .chain(std::iter::once(max_abs_entry.unsigned_abs()))
        .max()
        .unwrap_or(0);
    Ok(StructureReport {
        bricks: program.bricks(),
        top_rows: program.top_rows,
        local_rows: program.local_rows,
        width: program.width,
        max_abs_entry,
        encoding_bits: u64::BITS - largest.leading_zeros(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_brick_program() -> NFoldProgram {
        // x1 + x2 + y1 + y2 = 3, x_i - y_i = 0 per brick... with x_i,y_i in [0,3]
        let top = Block::from_dense(1, 2, &[1, 1]);
        let local = Block::from_dense(1, 2, &[1, -1]);
        NFoldProgram::new(
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
        .unwrap()
    }

    #[test]
    fn block_set_get_and_dense() {
        let mut b = Block::zeros(2, 3);
        b.set(1, 2, 5);
        b.set(0, 2, -1);
        b.add(1, 2, -5);
        assert_eq!(b.get(1, 2), 0);
        assert_eq!(b.column(2), &[(0, -1)]);
        assert_eq!(b.to_dense(), vec![0, 0, -1, 0, 0, 0]);
        assert_eq!(Block::from_dense(2, 3, &b.to_dense()), b);
    }

    #[test]
    fn residual_and_solution_check() {
        let p = two_brick_program();
        assert!(p.is_solution(&[1, 1, 1, 1]));
        assert!(p.is_solution(&[2, 2, 0, 0]));
        assert!(!p.is_solution(&[2, 1, 0, 0]));
        assert_eq!(p.residual(&[0, 0, 0, 0]), vec![-4, 0, 0]);
    }

    #[test]
    fn dimension_errors() {
        let top = Block::from_dense(1, 2, &[1, 1]);
        let err = NFoldProgram::new(
            1,
            1,
            2,
            vec![top.clone()],
            vec![Block::zeros(1, 3)],
            vec![0, 0],
            vec![0; 2],
            vec![1; 2],
            vec![0; 2],
        )
        .unwrap_err();
        assert!(matches!(err, NFoldError::DimensionMismatch { .. }));
    }

    #[test]
    fn structure_report() {
        let p = two_brick_program();
        let report = validate_structure(&p).unwrap();
        assert_eq!(report.max_abs_entry, 1);
        assert_eq!(report.encoding_bits, 3);
        let mut upper = p.upper().to_vec();
        upper[2] = UNBOUNDED_ABOVE;
        let q = NFoldProgram::new(
            1,
            1,
            2,
            (0..2).map(|i| p.top_block(i).clone()).collect(),
            (0..2).map(|i| p.local_block(i).clone()).collect(),
            p.rhs().to_vec(),
            p.lower().to_vec(),
            upper,
            p.objective().to_vec(),
        )
        .unwrap();
        assert_eq!(
            validate_structure(&q),
            Err(NFoldError::InfiniteBound { variable: 2 })
        );
    }
}
