//! Running one algorithm on one instance and reporting the result.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use ccs_approx::approximate;
use ccs_core::rational::{format_rational, parse_rational};
use ccs_core::{lower_bound, Instance, Rational, Schedule, Variant};
use ccs_nfold::NFoldProgram;
use ccs_oracle::{opt_nonpreemptive_with, optimum_with, OracleError, OracleLimits};
use ccs_ptas::{ptas_solve_with, PtasError, PtasOptions, DEFAULT_ENUM_CAP};

use crate::BenchError;

pub const CSV_HEADER: [&str; 11] = [
    "instance",
    "variant",
    "algo",
    "epsilon",
    "makespan",
    "lb",
    "opt",
    "ratio_lb",
    "ratio_opt",
    "ms",
    "feasible",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algo {
    Approx,
    Ptas(Rational),
    Exact,
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Approx => "approx",
            Algo::Ptas(_) => "ptas",
            Algo::Exact => "exact",
        }
    }

    /// Parses an algorithm name; `epsilon` is required for the scheme only.
    pub fn parse(name: &str, epsilon: Option<&str>) -> Result<Algo, String> {
        match name {
            "approx" => Ok(Algo::Approx),
            "exact" => Ok(Algo::Exact),
            "ptas" => {
                let eps = parse_rational(epsilon.unwrap_or("1")).map_err(|e| e.to_string())?;
                Ok(Algo::Ptas(eps))
            }
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::parse(s, None)
    }
}

/// What came out of a run besides the numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// A schedule was produced and checked.
    Checked { feasible: bool },
    /// Only the optimal value is known, without a schedule.
    ValueOnly,
    /// The instance has more classes than slots.
    Infeasible,
    /// The exact search would exceed its size caps.
    OracleCap,
    /// The scheme's enumeration would exceed its cap.
    EnumCap,
    /// The integer program solver gave up.
    SolverLimit,
}

impl Status {
    /// Text of the `feasible` column.
    pub fn as_csv(&self) -> &'static str {
        match self {
            Status::Checked { feasible: true } => "true",
            Status::Checked { feasible: false } => "false",
            Status::ValueOnly => "value-only",
            Status::Infeasible => "infeasible",
            Status::OracleCap => "oracle-cap",
            Status::EnumCap => "enum-cap",
            Status::SolverLimit => "solver-limit",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub enum_cap: usize,
    pub oracle: OracleLimits,
    /// Also compute the optimum for the ratio column.
    pub with_opt: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enum_cap: DEFAULT_ENUM_CAP,
            oracle: OracleLimits::default(),
            with_opt: true,
        }
    }
}

impl RunConfig {
    /// Reads the enumeration cap from `CCS_ENUM_CAP` when it is set.
    pub fn from_env() -> Result<Self, BenchError> {
        let mut config = RunConfig::default();
        if let Ok(text) = std::env::var("CCS_ENUM_CAP") {
            config.enum_cap = text
                .trim()
                .parse()
                .map_err(|_| BenchError::Argument(format!("CCS_ENUM_CAP is not a count: {text:?}")))?;
        }
        Ok(config)
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub instance: String,
    pub variant: Variant,
    pub algo: Algo,
    pub status: Status,
    pub makespan: Option<Rational>,
    pub lower: Rational,
    pub opt: Option<Rational>,
    pub elapsed: Duration,
    pub schedule: Option<Schedule>,
    /// Program of the accepted guess, for the scheme.
    pub program: Option<NFoldProgram>,
}

impl RunReport {
    pub fn ratio_lb(&self) -> Option<Rational> {
        self.makespan.as_ref().map(|m| m / &self.lower)
    }

    pub fn ratio_opt(&self) -> Option<Rational> {
        Some(self.makespan.as_ref()? / self.opt.as_ref()?)
    }

    /// The CSV fields in header order.
    pub fn csv_fields(&self) -> [String; 11] {
        let text = |v: Option<Rational>| v.map(|r| format_rational(&r)).unwrap_or_default();
        let epsilon = match &self.algo {
            Algo::Ptas(eps) => format_rational(eps),
            _ => String::new(),
        };
        [
            self.instance.clone(),
            self.variant.name().to_string(),
            self.algo.name().to_string(),
            epsilon,
            text(self.makespan.clone()),
            format_rational(&self.lower),
            text(self.opt.clone()),
            text(self.ratio_lb()),
            text(self.ratio_opt()),
            self.elapsed.as_millis().to_string(),
            self.status.as_csv().to_string(),
        ]
    }
}

/// Writes the header and the rows as CSV.
pub fn write_csv<'a>(out: impl Write, reports: impl IntoIterator<Item = &'a RunReport>) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for report in reports {
        writer.write_record(report.csv_fields())?;
    }
    writer.flush().map_err(|e| BenchError::Io {
        path: "csv output".into(),
        source: e,
    })
}

fn check(instance: &Instance, variant: Variant, schedule: &Schedule) -> Status {
    Status::Checked {
        feasible: schedule.validate(instance, variant).is_feasible(),
    }
}

/// Runs `algo` on the instance. Only internal failures are errors; caps and
/// infeasibility become statuses.
pub fn run(
    name: &str,
    instance: &Instance,
    variant: Variant,
    algo: &Algo,
    config: &RunConfig,
) -> Result<RunReport, BenchError> {
    let lower = lower_bound(instance, variant).lower;
    let mut report = RunReport {
        instance: name.to_string(),
        variant,
        algo: algo.clone(),
        status: Status::ValueOnly,
        makespan: None,
        lower,
        opt: None,
        elapsed: Duration::ZERO,
        schedule: None,
        program: None,
    };
    let start = Instant::now();
    match algo {
        Algo::Approx => {
            let out = approximate(instance, variant);
            report.elapsed = start.elapsed();
            report.makespan = Some(out.makespan(instance));
            report.status = check(instance, variant, &out.schedule);
            report.schedule = Some(out.schedule);
        }
        Algo::Ptas(eps) => {
            let options = PtasOptions {
                enum_cap: config.enum_cap,
                ..PtasOptions::default()
            };
            let out = ptas_solve_with(instance, eps, variant, &options);
            report.elapsed = start.elapsed();
            match out {
                Ok(out) => {
                    report.makespan = Some(out.makespan);
                    report.status = check(instance, variant, &out.schedule);
                    report.schedule = Some(out.schedule);
                    report.program = Some(out.program);
                }
                Err(PtasError::EnumerationCap { .. }) => report.status = Status::EnumCap,
                Err(PtasError::Structural { .. }) => report.status = Status::Infeasible,
                Err(PtasError::NFold(_)) => report.status = Status::SolverLimit,
                Err(PtasError::Epsilon(text)) => {
                    return Err(BenchError::Argument(format!("epsilon must lie in (0, 1], got {text}")))
                }
                Err(e) => return Err(BenchError::Internal(e.to_string())),
            }
        }
        Algo::Exact => {
            let out = match variant {
                Variant::NonPreemptive => opt_nonpreemptive_with(instance, &config.oracle).map(|o| {
                    let status = check(instance, variant, &Schedule::NonPreemptive(o.schedule.clone()));
                    (o.makespan, status, Some(Schedule::NonPreemptive(o.schedule)))
                }),
                _ => optimum_with(instance, variant, &config.oracle).map(|v| (v, Status::ValueOnly, None)),
            };
            report.elapsed = start.elapsed();
            match out {
                Ok((value, status, schedule)) => {
                    report.opt = Some(value.clone());
                    report.makespan = Some(value);
                    report.status = status;
                    report.schedule = schedule;
                }
                Err(OracleError::TooLarge { .. }) => report.status = Status::OracleCap,
            }
            return Ok(report);
        }
    }
    if config.with_opt && report.makespan.is_some() {
        report.opt = optimum_with(instance, variant, &config.oracle).ok();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::int;

    #[test]
    fn approx_on_a_single_job() {
        let inst = Instance::from_integers(&[6], &[1], 3, 1).unwrap();
        let r = run("one", &inst, Variant::Splittable, &Algo::Approx, &RunConfig::default()).unwrap();
        assert_eq!(r.makespan, Some(int(2)));
        assert_eq!(r.ratio_opt(), Some(int(1)));
        assert_eq!(r.status, Status::Checked { feasible: true });
    }

    #[test]
    fn oversized_exact_run_reports_the_cap() {
        let times: Vec<i64> = (1..=30).collect();
        let labels: Vec<u64> = (0..30).map(|j| j % 5).collect();
        let inst = Instance::from_integers(&times, &labels, 6, 2).unwrap();
        let r = run("big", &inst, Variant::NonPreemptive, &Algo::Exact, &RunConfig::default()).unwrap();
        assert_eq!(r.status.as_csv(), "oracle-cap");
        assert_eq!(r.makespan, None);
    }

    #[test]
    fn rows_follow_the_header() {
        let inst = Instance::from_integers(&[3, 4], &[1, 2], 2, 1).unwrap();
        let r = run("x", &inst, Variant::NonPreemptive, &Algo::Approx, &RunConfig::default()).unwrap();
        let fields = r.csv_fields();
        assert_eq!(fields.len(), CSV_HEADER.len());
        assert_eq!(&fields[..3], &["x", "nonpreempt", "approx"]);
        assert_eq!(fields[10], "true");
    }

    #[test]
    fn algorithm_names() {
        assert_eq!(Algo::parse("ptas", Some("1/2")), Ok(Algo::Ptas(Rational::new(1.into(), 2.into()))));
        assert!(Algo::parse("magic", None).is_err());
    }
}
