use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ccs_bench::{
    generate, parse_manifest, read_instance, run, sweep, write_csv, Algo, BenchError, Family, GenParams,
    RunConfig, Status,
};
use ccs_core::{write_instance, CoreError, Variant};
use clap::{Parser, Subcommand};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_INTERNAL: u8 = 10;
const EXIT_INVALID_SCHEDULE: u8 = 11;

#[derive(Parser)]
#[command(name = "ccs", version, about = "Class constrained scheduling: solve, generate and benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a CSV row.
    Solve {
        #[arg(long)]
        variant: Variant,
        #[arg(long, value_parser = ["approx", "ptas", "exact"])]
        algo: String,
        /// Accuracy of the approximation scheme, as a fraction like 1/2.
        #[arg(long)]
        epsilon: Option<String>,
        /// Write the accepted N-fold program here (scheme only).
        #[arg(long, value_name = "PATH")]
        dump_nfold: Option<PathBuf>,
        /// Also print the schedule.
        #[arg(long)]
        show_schedule: bool,
        instance: PathBuf,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        pmax: i64,
        out: PathBuf,
    },
    /// Run every entry of a manifest and write a CSV report.
    Sweep {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(error: &BenchError) -> u8 {
    match error {
        BenchError::Instance {
            source: CoreError::NotEnoughSlots { .. },
            ..
        }
        | BenchError::Core(CoreError::NotEnoughSlots { .. }) => EXIT_INFEASIBLE,
        BenchError::Internal(_) | BenchError::Csv(_) => EXIT_INTERNAL,
        _ => EXIT_PARSE,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, BenchError> {
    File::create(path).map(BufWriter::new).map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn solve(
    variant: Variant,
    algo: &str,
    epsilon: Option<&str>,
    dump: Option<&Path>,
    show_schedule: bool,
    path: &Path,
) -> Result<u8, BenchError> {
    let algo = Algo::parse(algo, epsilon).map_err(BenchError::Argument)?;
    let config = RunConfig::from_env()?;
    let instance = read_instance(path)?;
    let report = run(&path.display().to_string(), &instance, variant, &algo, &config)?;
    write_csv(io::stdout().lock(), [&report])?;
    if let (Some(dump), Some(program)) = (dump, &report.program) {
        let mut out = create(dump)?;
        ccs_nfold::write_program(program, &mut out)
            .and_then(|()| out.flush())
            .map_err(|source| BenchError::Io {
                path: dump.to_path_buf(),
                source,
            })?;
    }
    if show_schedule {
        if let Some(schedule) = &report.schedule {
            println!("{schedule:#?}");
        }
    }
    Ok(match report.status {
        Status::Checked { feasible: true } | Status::ValueOnly => 0,
        Status::Checked { feasible: false } => EXIT_INVALID_SCHEDULE,
        Status::Infeasible => EXIT_INFEASIBLE,
        Status::OracleCap | Status::EnumCap => EXIT_CAP,
        Status::SolverLimit => EXIT_INTERNAL,
    })
}

fn execute(cli: Cli) -> Result<u8, BenchError> {
    match cli.command {
        Command::Solve {
            variant,
            algo,
            epsilon,
            dump_nfold,
            show_schedule,
            instance,
        } => solve(
            variant,
            &algo,
            epsilon.as_deref(),
            dump_nfold.as_deref(),
            show_schedule,
            &instance,
        ),
        Command::Gen {
            family,
            seed,
            n,
            m,
            c,
            pmax,
            out,
        } => {
            if n == 0 || m == 0 || c == 0 || pmax <= 0 {
                return Err(BenchError::Argument("n, m, c and pmax must be positive".into()));
            }
            let params = GenParams {
                family,
                seed,
                jobs: n,
                machines: m,
                slots: c,
                max_time: pmax,
            };
            let instance = generate(&params)?;
            std::fs::write(&out, write_instance(&instance)).map_err(|source| BenchError::Io { path: out, source })?;
            Ok(0)
        }
        Command::Sweep { manifest, out } => {
            let text = std::fs::read_to_string(&manifest).map_err(|source| BenchError::Io {
                path: manifest.clone(),
                source,
            })?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let entries = parse_manifest(&text, base)?;
            let reports = sweep(&entries, &RunConfig::from_env()?)?;
            write_csv(create(&out)?, &reports)?;
            let invalid = reports
                .iter()
                .any(|r| r.status == Status::Checked { feasible: false });
            Ok(if invalid { EXIT_INVALID_SCHEDULE } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
