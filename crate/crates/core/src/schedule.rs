//! Schedule representations and their feasibility checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::CoreError;
use crate::instance::{Instance, Variant};
use crate::rational::{format_rational, Rational};
use crate::stream::JobStream;

/// Part of a job placed on a machine, as a fraction of the job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub job: usize,
    pub machine: u64,
    pub fraction: Rational,
}

/// A piece with a start time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedPiece {
    pub job: usize,
    pub machine: u64,
    pub fraction: Rational,
    pub start: Rational,
}

impl TimedPiece {
    pub fn length(&self, instance: &Instance) -> Rational {
        instance.time(self.job) * &self.fraction
    }

    pub fn end(&self, instance: &Instance) -> Rational {
        &self.start + self.length(instance)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplittableSchedule {
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreemptiveSchedule {
    pub pieces: Vec<TimedPiece>,
}

/// Machine of every job.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NonPreemptiveSchedule {
    pub assignment: Vec<u64>,
}

/// A splittable schedule in which most machines are described by counts.
///
/// Machines `0..explicit_machines` carry the pieces in `explicit`. After
/// them come, class by class in ascending order, `trivial[class]` machines
/// that each hold exactly `trivial_piece` of that class and nothing else.
/// Trivial machines consume each class's jobs from the front, in ascending
/// job id order; the explicit pieces cover whatever is left. Remaining
/// machines are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactSchedule {
    pub explicit: SplittableSchedule,
    pub explicit_machines: u64,
    pub trivial_piece: Rational,
    pub trivial: BTreeMap<usize, u64>,
}

impl CompactSchedule {
    pub fn trivial_machine_count(&self) -> u64 {
        self.trivial.values().sum()
    }

    /// Materializes the trivial machines as pieces.
    pub fn expand(&self, instance: &Instance) -> SplittableSchedule {
        let mut amounts = Vec::new();
        let mut next_machine = self.explicit_machines;
        for (&class, &count) in &self.trivial {
            let mut stream = JobStream::new(instance, instance.jobs_of_class(class));
            for _ in 0..count {
                for (job, amount) in stream.take(&self.trivial_piece) {
                    amounts.push((job, next_machine, amount));
                }
                next_machine += 1;
            }
        }
        let mut pieces = self.explicit.pieces.clone();
        pieces.extend(SplittableSchedule::from_amounts(instance, amounts).pieces);
        SplittableSchedule { pieces }
    }
}

impl SplittableSchedule {
    /// Builds a schedule from `(job, machine, processing time)` triples,
    /// merging triples that share a job and a machine.
    pub fn from_amounts(
        instance: &Instance,
        amounts: impl IntoIterator<Item = (usize, u64, Rational)>,
    ) -> Self {
        let mut merged: BTreeMap<(u64, usize), Rational> = BTreeMap::new();
        for (job, machine, amount) in amounts {
            *merged.entry((machine, job)).or_insert_with(Rational::zero) += amount;
        }
        SplittableSchedule {
            pieces: merged
                .into_iter()
                .map(|((machine, job), amount)| Piece {
                    job,
                    machine,
                    fraction: amount / instance.time(job),
                })
                .collect(),
        }
    }
}

/// A reason a schedule is not feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DanglingJob { job: usize },
    DanglingMachine { machine: u64 },
    BadFraction { job: usize, machine: u64 },
    NegativeStart { job: usize, machine: u64 },
    Coverage { job: usize, covered: Rational },
    SlotBudgetExceeded { machine: u64, classes: usize, slots: usize },
    MachineOverlap { machine: u64, first: usize, second: usize },
    ParallelExecution { job: usize, first: u64, second: u64 },
    AssignmentLength { expected: usize, found: usize },
    JobSplit { job: usize },
    TooManyMachines { used: u64, available: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingJob { job } => write!(f, "job {job} does not exist"),
            Violation::DanglingMachine { machine } => write!(f, "machine {machine} does not exist"),
            Violation::BadFraction { job, machine } => {
                write!(f, "job {job} has a piece outside (0,1] on machine {machine}")
            }
            Violation::NegativeStart { job, machine } => {
                write!(f, "job {job} starts before time 0 on machine {machine}")
            }
            Violation::Coverage { job, covered } => {
                write!(f, "job {job} covered {} times", format_rational(covered))
            }
            Violation::SlotBudgetExceeded {
                machine,
                classes,
                slots,
            } => write!(
                f,
                "slot budget exceeded: machine {machine} hosts {classes} classes, only {slots} slots"
            ),
            Violation::MachineOverlap {
                machine,
                first,
                second,
            } => write!(f, "jobs {first} and {second} overlap on machine {machine}"),
            Violation::ParallelExecution { job, first, second } => write!(
                f,
                "parallel execution: job {job} runs on machines {first} and {second} at once"
            ),
            Violation::AssignmentLength { expected, found } => {
                write!(f, "assignment lists {found} jobs, expected {expected}")
            }
            Violation::JobSplit { job } => write!(f, "job {job} is split"),
            Violation::TooManyMachines { used, available } => {
                write!(f, "uses {used} machines, only {available} available")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible(Vec<Violation>),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }

    fn from_violations(violations: Vec<Violation>) -> Self {
        if violations.is_empty() {
            Verdict::Feasible
        } else {
            Verdict::Infeasible(violations)
        }
    }
}

/// Any of the schedule representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    Splittable(SplittableSchedule),
    Compact(CompactSchedule),
    Preemptive(PreemptiveSchedule),
    NonPreemptive(NonPreemptiveSchedule),
}

impl Schedule {
    pub fn makespan(&self, instance: &Instance) -> Result<Rational, CoreError> {
        match self {
            Schedule::Splittable(s) => splittable_makespan(s, instance),
            Schedule::Compact(s) => compact_makespan(s, instance),
            Schedule::Preemptive(s) => preemptive_makespan(s, instance),
            Schedule::NonPreemptive(s) => nonpreemptive_makespan(s, instance),
        }
    }

    /// Checks the schedule against the rules of `variant`.
    ///
    /// A schedule of a stricter kind is accepted for a looser variant. A
    /// splittable schedule checked as preemptive is accepted only if its
    /// pieces can run back to back without any job running in parallel,
    /// which is never assumed, so it is reported as a parallel execution of
    /// every job that has more than one piece.
    pub fn validate(&self, instance: &Instance, variant: Variant) -> Verdict {
        match self {
            Schedule::Splittable(s) => {
                let mut violations = check_pieces(
                    instance,
                    s.pieces.iter().map(|p| (p.job, p.machine, &p.fraction)),
                );
                if variant != Variant::Splittable {
                    violations.extend(multi_piece_jobs(instance, s, variant));
                }
                Verdict::from_violations(violations)
            }
            Schedule::Compact(s) => {
                let mut violations = check_compact(s, instance);
                if violations.is_empty() {
                    let (covered, trivial_hosts) = trivial_coverage(s, instance);
                    violations = check_pieces_from(
                        instance,
                        s.explicit.pieces.iter().map(|p| (p.job, p.machine, &p.fraction)),
                        covered,
                    );
                    if variant != Variant::Splittable {
                        let mut machines: Vec<Vec<u64>> = trivial_hosts;
                        for p in &s.explicit.pieces {
                            if !machines[p.job].contains(&p.machine) {
                                machines[p.job].push(p.machine);
                            }
                        }
                        violations.extend(spread_jobs(machines, variant));
                    }
                }
                Verdict::from_violations(violations)
            }
            Schedule::Preemptive(s) => {
                let mut violations = check_pieces(
                    instance,
                    s.pieces.iter().map(|p| (p.job, p.machine, &p.fraction)),
                );
                if violations.is_empty() {
                    violations.extend(check_timing(s, instance));
                }
                if variant == Variant::NonPreemptive {
                    let mut count = vec![0usize; instance.job_count()];
                    for p in &s.pieces {
                        count[p.job] += 1;
                    }
                    violations.extend(
                        (0..instance.job_count())
                            .filter(|&j| count[j] > 1)
                            .map(|job| Violation::JobSplit { job }),
                    );
                }
                Verdict::from_violations(violations)
            }
            Schedule::NonPreemptive(s) => Verdict::from_violations(check_assignment(s, instance)),
        }
    }
}

fn multi_piece_jobs(
    instance: &Instance,
    schedule: &SplittableSchedule,
    variant: Variant,
) -> Vec<Violation> {
    let mut machines: Vec<Vec<u64>> = vec![Vec::new(); instance.job_count()];
    for p in &schedule.pieces {
        if p.job < instance.job_count() && !machines[p.job].contains(&p.machine) {
            machines[p.job].push(p.machine);
        }
    }
    spread_jobs(machines, variant)
}

fn spread_jobs(machines: Vec<Vec<u64>>, variant: Variant) -> Vec<Violation> {
    machines
        .iter()
        .enumerate()
        .filter(|(_, ms)| ms.len() > 1)
        .map(|(job, ms)| match variant {
            Variant::NonPreemptive => Violation::JobSplit { job },
            _ => Violation::ParallelExecution {
                job,
                first: ms[0],
                second: ms[1],
            },
        })
        .collect()
}

/// Shared checks for piece lists: ids in range, fractions in (0,1], every
/// job covered exactly once and the slot budget on every machine.
fn check_pieces<'a>(
    instance: &Instance,
    pieces: impl Iterator<Item = (usize, u64, &'a Rational)>,
) -> Vec<Violation> {
    check_pieces_from(instance, pieces, vec![Rational::zero(); instance.job_count()])
}

fn check_pieces_from<'a>(
    instance: &Instance,
    pieces: impl Iterator<Item = (usize, u64, &'a Rational)>,
    mut covered: Vec<Rational>,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut hosted: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    for (job, machine, fraction) in pieces {
        if job >= instance.job_count() {
            violations.push(Violation::DanglingJob { job });
            continue;
        }
        if machine >= instance.machines() {
            violations.push(Violation::DanglingMachine { machine });
            continue;
        }
        if !fraction.is_positive() || fraction > &Rational::one() {
            violations.push(Violation::BadFraction { job, machine });
        }
        covered[job] += fraction;
        hosted
            .entry(machine)
            .or_default()
            .insert(instance.class_of(job));
    }
    for (job, total) in covered.into_iter().enumerate() {
        if !total.is_one() {
            violations.push(Violation::Coverage {
                job,
                covered: total,
            });
        }
    }
    for (machine, classes) in hosted {
        if classes.len() > instance.slots() {
            violations.push(Violation::SlotBudgetExceeded {
                machine,
                classes: classes.len(),
                slots: instance.slots(),
            });
        }
    }
    violations
}

fn check_timing(schedule: &PreemptiveSchedule, instance: &Instance) -> Vec<Violation> {
    let mut violations = Vec::new();
    let intervals: Vec<(Rational, Rational, usize, u64)> = schedule
        .pieces
        .iter()
        .map(|p| (p.start.clone(), p.end(instance), p.job, p.machine))
        .collect();
    for &(ref start, _, job, machine) in &intervals {
        if start.is_negative() {
            violations.push(Violation::NegativeStart { job, machine });
        }
    }
    let mut by_machine: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut by_job: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, iv) in intervals.iter().enumerate() {
        by_machine.entry(iv.3).or_default().push(i);
        by_job.entry(iv.2).or_default().push(i);
    }
    for (machine, mut list) in by_machine {
        list.sort_by(|&a, &b| intervals[a].0.cmp(&intervals[b].0));
        for pair in list.windows(2) {
            let (a, b) = (&intervals[pair[0]], &intervals[pair[1]]);
            if a.1 > b.0 {
                violations.push(Violation::MachineOverlap {
                    machine,
                    first: a.2,
                    second: b.2,
                });
            }
        }
    }
    for (job, mut list) in by_job {
        list.sort_by(|&a, &b| intervals[a].0.cmp(&intervals[b].0));
        for pair in list.windows(2) {
            let (a, b) = (&intervals[pair[0]], &intervals[pair[1]]);
            if a.1 > b.0 && a.3 != b.3 {
                violations.push(Violation::ParallelExecution {
                    job,
                    first: a.3,
                    second: b.3,
                });
            }
        }
    }
    violations
}

fn check_assignment(schedule: &NonPreemptiveSchedule, instance: &Instance) -> Vec<Violation> {
    if schedule.assignment.len() != instance.job_count() {
        return vec![Violation::AssignmentLength {
            expected: instance.job_count(),
            found: schedule.assignment.len(),
        }];
    }
    let one = Rational::one();
    check_pieces(
        instance,
        schedule
            .assignment
            .iter()
            .enumerate()
            .map(|(job, &machine)| (job, machine, &one)),
    )
}

fn check_compact(schedule: &CompactSchedule, instance: &Instance) -> Vec<Violation> {
    let used = schedule.explicit_machines + schedule.trivial_machine_count();
    let mut violations = Vec::new();
    if used > instance.machines() {
        violations.push(Violation::TooManyMachines {
            used,
            available: instance.machines(),
        });
    }
    for p in &schedule.explicit.pieces {
        if p.machine >= schedule.explicit_machines {
            violations.push(Violation::DanglingMachine { machine: p.machine });
        }
    }
    for (&class, &count) in &schedule.trivial {
        if class >= instance.class_count() {
            violations.push(Violation::DanglingJob { job: class });
        } else if count > 0 {
            let total: Rational = instance
                .jobs_of_class(class)
                .iter()
                .map(|&j| instance.time(j))
                .sum();
            let used = &schedule.trivial_piece * Rational::from_integer(count.into());
            if !schedule.trivial_piece.is_positive() || used > total {
                violations.push(Violation::Coverage {
                    job: instance.jobs_of_class(class)[0],
                    covered: used / total,
                });
            }
        }
    }
    violations
}

/// Coverage of every job by the trivial machines of a compact schedule,
/// and up to two of the trivial machines that hold a part of it.
fn trivial_coverage(schedule: &CompactSchedule, instance: &Instance) -> (Vec<Rational>, Vec<Vec<u64>>) {
    let mut covered = vec![Rational::zero(); instance.job_count()];
    let mut hosts = vec![Vec::new(); instance.job_count()];
    let piece = &schedule.trivial_piece;
    let mut first_machine = schedule.explicit_machines;
    for (&class, &count) in &schedule.trivial {
        let prefix = piece * Rational::from_integer(count.into());
        let mut start = Rational::zero();
        for job in instance.jobs_of_class(class) {
            let end = &start + instance.time(job);
            if start >= prefix {
                break;
            }
            let cut = if end < prefix { end.clone() } else { prefix.clone() };
            covered[job] = (&cut - &start) / instance.time(job);
            let first = (&start / piece).floor().to_integer();
            let last = (&cut / piece).ceil().to_integer() - 1u32;
            for k in [first.clone(), last].into_iter().take(2) {
                let machine = first_machine + u64::try_from(k).unwrap_or(u64::MAX);
                if !hosts[job].contains(&machine) {
                    hosts[job].push(machine);
                }
            }
            start = end;
        }
        first_machine += count;
    }
    (covered, hosts)
}

fn machine_loads<'a>(
    instance: &Instance,
    pieces: impl Iterator<Item = (usize, u64, &'a Rational)>,
) -> Result<BTreeMap<u64, Rational>, CoreError> {
    let mut loads: BTreeMap<u64, Rational> = BTreeMap::new();
    for (job, machine, fraction) in pieces {
        if job >= instance.job_count() {
            return Err(CoreError::DanglingJob { job });
        }
        *loads.entry(machine).or_insert_with(Rational::zero) += instance.time(job) * fraction;
    }
    Ok(loads)
}

pub fn splittable_makespan(
    schedule: &SplittableSchedule,
    instance: &Instance,
) -> Result<Rational, CoreError> {
    let loads = machine_loads(
        instance,
        schedule.pieces.iter().map(|p| (p.job, p.machine, &p.fraction)),
    )?;
    Ok(loads.into_values().max().unwrap_or_else(Rational::zero))
}

pub fn compact_makespan(
    schedule: &CompactSchedule,
    instance: &Instance,
) -> Result<Rational, CoreError> {
    let explicit = splittable_makespan(&schedule.explicit, instance)?;
    if schedule.trivial_machine_count() > 0 && schedule.trivial_piece > explicit {
        Ok(schedule.trivial_piece.clone())
    } else {
        Ok(explicit)
    }
}

pub fn preemptive_makespan(
    schedule: &PreemptiveSchedule,
    instance: &Instance,
) -> Result<Rational, CoreError> {
    let mut best = Rational::zero();
    for p in &schedule.pieces {
        if p.job >= instance.job_count() {
            return Err(CoreError::DanglingJob { job: p.job });
        }
        let end = p.end(instance);
        if end > best {
            best = end;
        }
    }
    Ok(best)
}

pub fn nonpreemptive_makespan(
    schedule: &NonPreemptiveSchedule,
    instance: &Instance,
) -> Result<Rational, CoreError> {
    let one = Rational::one();
    let loads = machine_loads(
        instance,
        schedule
            .assignment
            .iter()
            .enumerate()
            .map(|(job, &machine)| (job, machine, &one)),
    )?;
    Ok(loads.into_values().max().unwrap_or_else(Rational::zero))
}

impl From<SplittableSchedule> for Schedule {
    fn from(s: SplittableSchedule) -> Self {
        Schedule::Splittable(s)
    }
}

impl From<CompactSchedule> for Schedule {
    fn from(s: CompactSchedule) -> Self {
        Schedule::Compact(s)
    }
}

impl From<PreemptiveSchedule> for Schedule {
    fn from(s: PreemptiveSchedule) -> Self {
        Schedule::Preemptive(s)
    }
}

impl From<NonPreemptiveSchedule> for Schedule {
    fn from(s: NonPreemptiveSchedule) -> Self {
        Schedule::NonPreemptive(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn piece(job: usize, machine: u64, fraction: Rational) -> Piece {
        Piece {
            job,
            machine,
            fraction,
        }
    }

    fn timed(job: usize, machine: u64, fraction: Rational, start: i64) -> TimedPiece {
        TimedPiece {
            job,
            machine,
            fraction,
            start: int(start),
        }
    }

    #[test]
    fn splitting_one_job_evenly() {
        let inst = Instance::from_integers(&[6], &[1], 3, 1).unwrap();
        let s = Schedule::Splittable(SplittableSchedule {
            pieces: (0..3).map(|i| piece(0, i, ratio(1, 3))).collect(),
        });
        assert!(s.validate(&inst, Variant::Splittable).is_feasible());
        assert_eq!(s.makespan(&inst).unwrap(), int(2));
    }

    #[test]
    fn slot_budget_is_enforced() {
        let inst = Instance::from_integers(&[1, 1, 1], &[1, 2, 3], 3, 2).unwrap();
        let s = Schedule::NonPreemptive(NonPreemptiveSchedule {
            assignment: vec![0, 0, 0],
        });
        match s.validate(&inst, Variant::NonPreemptive) {
            Verdict::Infeasible(v) => {
                assert!(v[0].to_string().contains("slot budget exceeded"));
            }
            Verdict::Feasible => panic!("expected violation"),
        }
    }

    #[test]
    fn overlapping_pieces_of_one_job_are_parallel() {
        let inst = Instance::from_integers(&[4], &[1], 2, 1).unwrap();
        let s = Schedule::Preemptive(PreemptiveSchedule {
            pieces: vec![timed(0, 0, ratio(1, 2), 0), timed(0, 1, ratio(1, 2), 1)],
        });
        match s.validate(&inst, Variant::Preemptive) {
            Verdict::Infeasible(v) => {
                assert!(v.iter().any(|x| x.to_string().contains("parallel execution")))
            }
            Verdict::Feasible => panic!("expected violation"),
        }
    }

    #[test]
    fn touching_pieces_are_fine() {
        let inst = Instance::from_integers(&[4], &[1], 2, 1).unwrap();
        let s = Schedule::Preemptive(PreemptiveSchedule {
            pieces: vec![timed(0, 0, ratio(1, 2), 0), timed(0, 1, ratio(1, 2), 2)],
        });
        assert!(s.validate(&inst, Variant::Preemptive).is_feasible());
        assert_eq!(s.makespan(&inst).unwrap(), int(4));
    }

    #[test]
    fn machine_overlap_is_reported() {
        let inst = Instance::from_integers(&[2, 2], &[1, 1], 1, 1).unwrap();
        let s = Schedule::Preemptive(PreemptiveSchedule {
            pieces: vec![timed(0, 0, int(1), 0), timed(1, 0, int(1), 1)],
        });
        let Verdict::Infeasible(v) = s.validate(&inst, Variant::Preemptive) else {
            panic!("expected violation")
        };
        assert!(matches!(v[0], Violation::MachineOverlap { machine: 0, .. }));
    }

    #[test]
    fn coverage_and_dangling_ids_are_all_reported() {
        let inst = Instance::from_integers(&[2, 2], &[1, 1], 1, 1).unwrap();
        let s = Schedule::Splittable(SplittableSchedule {
            pieces: vec![piece(0, 0, ratio(1, 2)), piece(5, 0, int(1)), piece(1, 4, int(1))],
        });
        let Verdict::Infeasible(v) = s.validate(&inst, Variant::Splittable) else {
            panic!("expected violations")
        };
        assert!(v.contains(&Violation::DanglingJob { job: 5 }));
        assert!(v.contains(&Violation::DanglingMachine { machine: 4 }));
        assert!(v.contains(&Violation::Coverage {
            job: 0,
            covered: ratio(1, 2)
        }));
    }

    #[test]
    fn split_schedule_is_not_preemptive() {
        let inst = Instance::from_integers(&[2], &[1], 2, 1).unwrap();
        let s = Schedule::Splittable(SplittableSchedule {
            pieces: vec![piece(0, 0, ratio(1, 2)), piece(0, 1, ratio(1, 2))],
        });
        assert!(!s.validate(&inst, Variant::Preemptive).is_feasible());
        assert!(!s.validate(&inst, Variant::NonPreemptive).is_feasible());
    }

    #[test]
    fn compact_expansion_matches_description() {
        // class 0: jobs 0 (5) and 1 (3); class 1: job 2 (2)
        let inst = Instance::from_integers(&[5, 3, 2], &[1, 1, 2], 10, 2).unwrap();
        let compact = CompactSchedule {
            explicit: SplittableSchedule {
                pieces: vec![piece(1, 0, ratio(2, 3)), piece(2, 0, int(1))],
            },
            explicit_machines: 1,
            trivial_piece: int(3),
            trivial: BTreeMap::from([(0, 2)]),
        };
        let expanded = compact.expand(&inst);
        let s = Schedule::Compact(compact.clone());
        assert!(s.validate(&inst, Variant::Splittable).is_feasible());
        assert_eq!(s.makespan(&inst).unwrap(), int(4));
        assert_eq!(
            splittable_makespan(&expanded, &inst).unwrap(),
            s.makespan(&inst).unwrap()
        );
        assert_eq!(
            expanded.pieces[2..],
            [
                piece(0, 1, ratio(3, 5)),
                piece(0, 2, ratio(2, 5)),
                piece(1, 2, ratio(1, 3))
            ]
        );
    }

    #[test]
    fn compact_machine_count_is_checked() {
        let inst = Instance::from_integers(&[4], &[1], 2, 1).unwrap();
        let compact = CompactSchedule {
            explicit: SplittableSchedule::default(),
            explicit_machines: 0,
            trivial_piece: int(1),
            trivial: BTreeMap::from([(0, 4)]),
        };
        assert!(!Schedule::Compact(compact)
            .validate(&inst, Variant::Splittable)
            .is_feasible());
    }
}
