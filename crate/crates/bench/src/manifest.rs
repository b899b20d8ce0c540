//! Sweep manifests.
//!
//! A manifest is a list of blocks separated by blank lines. Each block holds
//! `key=value` lines and expands into one run per seed, variant and
//! algorithm:
//!
//! ```text
//! # forty uniform instances, two algorithms
//! family=uniform
//! seeds=0..40
//! n=6
//! m=3
//! c=2
//! pmax=10
//! variant=split,nonpreempt
//! algo=approx,ptas
//! epsilon=1
//! ```
//!
//! A block may name a file with `instance=PATH` instead of a generator.
//! Relative paths resolve against the manifest's directory.

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::{Path, PathBuf};

use ccs_core::{CoreError, Variant};

use crate::generate::{generate, Family, GenParams};
use crate::run::{run, Algo, RunConfig, RunReport, Status};
use crate::{read_instance, BenchError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Generated { params: GenParams, seeds: Range<u64> },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub source: Source,
    pub variants: Vec<Variant>,
    pub algos: Vec<Algo>,
}

impl Entry {
    pub fn run_count(&self) -> usize {
        let instances = match &self.source {
            Source::Generated { seeds, .. } => (seeds.end - seeds.start) as usize,
            Source::File(_) => 1,
        };
        instances * self.variants.len() * self.algos.len()
    }
}

const KEYS: [&str; 11] = [
    "family", "seed", "seeds", "n", "m", "c", "pmax", "instance", "variant", "algo", "epsilon",
];

fn parse_block(block: &[(usize, &str)], base: &Path) -> Result<Entry, BenchError> {
    let first = block[0].0;
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for &(line, text) in block {
        let (key, value) = text.split_once('=').ok_or_else(|| BenchError::Manifest {
            line,
            message: format!("expected key=value, found {text:?}"),
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(BenchError::Manifest {
                line,
                message: format!("unknown key {key:?}"),
            });
        }
        if fields.insert(key, (line, value.trim())).is_some() {
            return Err(BenchError::Manifest {
                line,
                message: format!("{key} given twice"),
            });
        }
    }
    let bad = |line: usize, message: String| BenchError::Manifest { line, message };
    let required = |key: &str| {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| bad(first, format!("missing {key}")))
    };
    fn number<T: std::str::FromStr>(key: &str, (line, value): (usize, &str)) -> Result<T, BenchError> {
        value.parse().map_err(|_| BenchError::Manifest {
            line,
            message: format!("{key} is not a number: {value:?}"),
        })
    }

    let source = if let Some(&(line, path)) = fields.get("instance") {
        if let Some(key) = ["family", "seed", "seeds", "n", "m", "c", "pmax"]
            .into_iter()
            .find(|k| fields.contains_key(k))
        {
            return Err(bad(line, format!("instance cannot be combined with {key}")));
        }
        Source::File(base.join(path))
    } else {
        let (line, family) = required("family")?;
        let family: Family = family.parse().map_err(|e| bad(line, e))?;
        let seeds = match (fields.get("seed"), fields.get("seeds")) {
            (Some(_), Some(&(line, _))) => return Err(bad(line, "give seed or seeds, not both".into())),
            (Some(&seed), None) => {
                let seed: u64 = number("seed", seed)?;
                seed..seed + 1
            }
            (None, Some(&(line, range))) => {
                let (from, to) = range
                    .split_once("..")
                    .ok_or_else(|| bad(line, format!("seeds must look like A..B, found {range:?}")))?;
                let from: u64 = number("seeds", (line, from.trim()))?;
                let to: u64 = number("seeds", (line, to.trim()))?;
                if from >= to {
                    return Err(bad(line, format!("empty seed range {range}")));
                }
                from..to
            }
            (None, None) => return Err(bad(first, "missing seed or seeds".into())),
        };
        let params = GenParams {
            family,
            seed: seeds.start,
            jobs: number("n", required("n")?)?,
            machines: number("m", required("m")?)?,
            slots: number("c", required("c")?)?,
            max_time: number("pmax", required("pmax")?)?,
        };
        if params.jobs == 0 || params.machines == 0 || params.slots == 0 || params.max_time <= 0 {
            return Err(bad(first, "n, m, c and pmax must be positive".into()));
        }
        Source::Generated { params, seeds }
    };

    let (line, variants) = required("variant")?;
    let variants = variants
        .split(',')
        .map(|v| v.trim().parse::<Variant>().map_err(|e| bad(line, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let epsilon = fields.get("epsilon").map(|&(_, e)| e);
    let (line, algos) = required("algo")?;
    let algos = algos
        .split(',')
        .map(|a| Algo::parse(a.trim(), epsilon).map_err(|e| bad(line, e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Entry {
        source,
        variants,
        algos,
    })
}

/// Parses manifest text; `base` is the directory relative paths resolve in.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<Entry>, BenchError> {
    let mut entries = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines = text.lines().map(Some).chain(std::iter::once(None));
    for (index, line) in lines.enumerate() {
        let content = line.map(|l| l.split('#').next().unwrap_or("").trim());
        match content {
            Some("") if line.is_some_and(|l| l.trim_start().starts_with('#')) => continue,
            Some(text) if !text.is_empty() => block.push((index + 1, text)),
            _ => {
                if !block.is_empty() {
                    entries.push(parse_block(&block, base)?);
                    block.clear();
                }
            }
        }
    }
    if entries.is_empty() {
        return Err(BenchError::Manifest {
            line: 1,
            message: "manifest describes no runs".into(),
        });
    }
    Ok(entries)
}

fn status_only(name: &str, variant: Variant, algo: &Algo, status: Status) -> RunReport {
    RunReport {
        instance: name.to_string(),
        variant,
        algo: algo.clone(),
        status,
        makespan: None,
        lower: ccs_core::rational::int(0),
        opt: None,
        elapsed: std::time::Duration::ZERO,
        schedule: None,
        program: None,
    }
}

/// Runs every entry in order. Instances that cannot be built because they
/// have too many classes become `infeasible` rows; other failures abort.
pub fn sweep(entries: &[Entry], config: &RunConfig) -> Result<Vec<RunReport>, BenchError> {
    let mut reports = Vec::with_capacity(entries.iter().map(Entry::run_count).sum());
    for entry in entries {
        let instances: Vec<(String, Result<ccs_core::Instance, BenchError>)> = match &entry.source {
            Source::Generated { params, seeds } => seeds
                .clone()
                .map(|seed| {
                    let params = GenParams { seed, ..params.clone() };
                    (params.label(), generate(&params).map_err(BenchError::from))
                })
                .collect(),
            Source::File(path) => vec![(path.display().to_string(), read_instance(path.clone()))],
        };
        for (name, instance) in instances {
            for &variant in &entry.variants {
                for algo in &entry.algos {
                    let report = match &instance {
                        Ok(inst) => run(&name, inst, variant, algo, config)?,
                        Err(BenchError::Core(CoreError::NotEnoughSlots { .. }))
                        | Err(BenchError::Instance {
                            source: CoreError::NotEnoughSlots { .. },
                            ..
                        }) => status_only(&name, variant, algo, Status::Infeasible),
                        Err(e) => return Err(BenchError::Argument(e.to_string())),
                    };
                    reports.push(report);
                }
            }
        }
    }
    Ok(reports)
}
