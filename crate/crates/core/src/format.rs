//! Plain-text instance format.
//!
//! ```text
//! # comment
//! n m c
//! p_1 class_1
//! ...
//! p_n class_n
//! ```
//!
//! Processing times are integers or `a/b`. Everything after `#` is ignored.

use std::fmt::Write as _;

use num_traits::Signed;

use crate::error::CoreError;
use crate::instance::Instance;
use crate::rational::{format_rational, parse_rational};

pub fn parse_instance(text: &str) -> Result<Instance, CoreError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());

    let (line_no, header) = lines.next().ok_or(CoreError::Parse {
        line: 0,
        message: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_error(line_no, "header must be `n m c`"));
    }
    let n: usize = positive(fields[0], line_no, "n")?;
    let m: u64 = positive(fields[1], line_no, "m")?;
    let c: usize = positive(fields[2], line_no, "c")?;

    let mut times = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if times.len() == n {
            return Err(parse_error(line_no, "more job lines than announced"));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_error(line_no, "job line must be `p class`"));
        }
        let p = parse_rational(fields[0])
            .map_err(|_| parse_error(line_no, "bad processing time"))?;
        if !p.is_positive() {
            return Err(parse_error(line_no, "processing time must be positive"));
        }
        let label: u64 = fields[1]
            .parse()
            .map_err(|_| parse_error(line_no, "bad class label"))?;
        times.push(p);
        labels.push(label);
    }
    if times.len() != n {
        return Err(CoreError::Parse {
            line: text.lines().count(),
            message: format!("expected {n} jobs, found {}", times.len()),
        });
    }
    Instance::new(times, labels, m, c)
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = format!(
        "{} {} {}\n",
        instance.job_count(),
        instance.machines(),
        instance.requested_slots()
    );
    for (job, p) in instance.times().iter().enumerate() {
        let label = instance.class_label(instance.class_of(job));
        let _ = writeln!(out, "{} {}", format_rational(p), label);
    }
    out
}

fn positive<T: std::str::FromStr + PartialEq + Default>(
    field: &str,
    line: usize,
    name: &str,
) -> Result<T, CoreError> {
    match field.parse::<T>() {
        Ok(v) if v != T::default() => Ok(v),
        _ => Err(parse_error(line, &format!("{name} must be a positive integer"))),
    }
}

fn parse_error(line: usize, message: &str) -> CoreError {
    CoreError::Parse {
        line,
        message: message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn parses_comments_and_fractions() {
        let text = "# demo\n3 2 1  # header\n\n5 1\n7/2 2\n1 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.job_count(), 3);
        assert_eq!(inst.machines(), 2);
        assert_eq!(inst.time(1), &ratio(7, 2));
        assert_eq!(inst.class_count(), 2);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_instance("2 1 1\n3 1\nx 1\n").unwrap_err();
        assert!(matches!(err, CoreError::Parse { line: 3, .. }));
        let err = parse_instance("0 1 1\n").unwrap_err();
        assert!(matches!(err, CoreError::Parse { line: 1, .. }));
        let err = parse_instance("2 1 1\n3 1\n").unwrap_err();
        assert!(matches!(err, CoreError::Parse { .. }));
    }

    #[test]
    fn round_trips() {
        let inst = parse_instance("3 4 2\n1/3 10\n2 20\n5 10\n").unwrap();
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }
}
