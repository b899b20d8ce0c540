//! Plain-text dump of a program: a header `N r s t`, then for every brick
//! its top block and its local block row by row, then the right-hand side,
//! the lower bounds, the upper bounds and the objective, one line each.

use std::io::{self, Write};

use crate::program::{Block, NFoldProgram, UNBOUNDED_ABOVE, UNBOUNDED_BELOW};
use crate::NFoldError;

fn write_number(out: &mut impl Write, value: i64) -> io::Result<()> {
    match value {
        UNBOUNDED_BELOW => write!(out, "-inf"),
        UNBOUNDED_ABOVE => write!(out, "inf"),
        v => write!(out, "{v}"),
    }
}

fn write_line(out: &mut impl Write, values: impl IntoIterator<Item = i64>) -> io::Result<()> {
    for (i, v) in values.into_iter().enumerate() {
        if i > 0 {
            write!(out, " ")?;
        }
        write_number(out, v)?;
    }
    writeln!(out)
}

pub fn write_program(program: &NFoldProgram, out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "{} {} {} {}",
        program.bricks(),
        program.top_rows(),
        program.local_rows(),
        program.width()
    )?;
    for brick in 0..program.bricks() {
        for block in [program.top_block(brick), program.local_block(brick)] {
            let dense = block.to_dense();
            for row in dense.chunks(program.width().max(1)).take(block.rows()) {
                write_line(out, row.iter().copied())?;
            }
        }
    }
    write_line(out, program.rhs().iter().copied())?;
    write_line(out, program.lower().iter().copied())?;
    write_line(out, program.upper().iter().copied())?;
    write_line(out, program.objective().iter().copied())
}

pub fn program_to_string(program: &NFoldProgram) -> String {
    let mut buf = Vec::new();
    write_program(program, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn parse_program(text: &str) -> Result<NFoldProgram, NFoldError> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, line)| line.split_whitespace().map(move |t| (i + 1, t)));
    let mut next = |what: &str| -> Result<i64, NFoldError> {
        let (line, token) = tokens.next().ok_or_else(|| NFoldError::Parse {
            line: 0,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        match token {
            "inf" => Ok(UNBOUNDED_ABOVE),
            "-inf" => Ok(UNBOUNDED_BELOW),
            t => t.parse().map_err(|_| NFoldError::Parse {
                line,
                message: format!("bad {what}: {t:?}"),
            }),
        }
    };
    let mut size = |what: &str| -> Result<usize, NFoldError> {
        usize::try_from(next(what)?).map_err(|_| NFoldError::Parse {
            line: 1,
            message: format!("{what} must be non-negative"),
        })
    };
    let bricks = size("brick count")?;
    let top_rows = size("top row count")?;
    let local_rows = size("local row count")?;
    let width = size("brick width")?;
    let read_block = |rows: usize, next: &mut dyn FnMut(&str) -> Result<i64, NFoldError>| {
        let entries = (0..rows * width)
            .map(|_| next("matrix entry"))
            .collect::<Result<Vec<i64>, _>>()?;
        Ok::<Block, NFoldError>(Block::from_dense(rows, width, &entries))
    };
    let mut top = Vec::with_capacity(bricks);
    let mut local = Vec::with_capacity(bricks);
    for _ in 0..bricks {
        top.push(read_block(top_rows, &mut next)?);
        local.push(read_block(local_rows, &mut next)?);
    }
    let mut vector = |len: usize, what: &str| (0..len).map(|_| next(what)).collect::<Result<Vec<_>, _>>();
    let rhs = vector(top_rows + bricks * local_rows, "right-hand side")?;
    let lower = vector(bricks * width, "lower bound")?;
    let upper = vector(bricks * width, "upper bound")?;
    let objective = vector(bricks * width, "objective")?;
    NFoldProgram::new(
        top_rows, local_rows, width, top, local, rhs, lower, upper, objective,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let top = Block::from_dense(1, 2, &[1, -2]);
        let local = Block::from_dense(2, 2, &[0, 1, 3, 0]);
        let p = NFoldProgram::new(
            1,
            2,
            2,
            vec![top.clone(), top],
            vec![local.clone(), local],
            vec![1, 2, 3, 4, 5],
            vec![0, -1, 0, 0],
            vec![5, 5, 5, 5],
            vec![1, 0, 0, 1],
        )
        .unwrap();
        let text = program_to_string(&p);
        assert!(text.starts_with("2 1 2 2\n1 -2\n0 1\n3 0\n"));
        assert_eq!(parse_program(&text).unwrap(), p);
    }

    #[test]
    fn truncated_input_is_rejected() {
        assert!(matches!(
            parse_program("1 1 1 2\n1 2\n"),
            Err(NFoldError::Parse { .. })
        ));
    }
}
