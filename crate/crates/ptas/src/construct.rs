//! Turning a solution of the guess program back into a schedule.
//!
//! Machines are opened per configuration count, modules are dealt into the
//! matching slots (classes ascending, larger modules first, lower machines
//! first), small classes are dealt round robin per group, and finally the
//! original jobs are poured into the space reserved for their rounded
//! counterparts.

use std::collections::{BTreeMap, VecDeque};

use ccs_core::rational::{big, int};
use ccs_core::{
    round_robin, CompactSchedule, Instance, JobStream, NonPreemptiveSchedule, PreemptiveSchedule, Rational,
    Schedule, SplittableSchedule, TimedPiece, Variant,
};
use ccs_nfold::NFoldSolution;

use crate::build::Model;
use crate::enumerate::ModuleContent;
use crate::PtasError;

fn internal(message: impl Into<String>) -> PtasError {
    PtasError::Internal(message.into())
}

/// Machines per configuration, summed over all bricks.
fn configuration_totals(model: &Model, solution: &NFoldSolution) -> Vec<u64> {
    (0..model.layout.configurations)
        .map(|k| {
            (0..model.program.bricks())
                .map(|u| solution.brick(u)[model.layout.x(k)] as u64)
                .sum()
        })
        .collect()
}

fn module_counts(model: &Model, solution: &NFoldSolution, class: usize) -> Vec<u64> {
    let brick = solution.brick(class);
    (0..model.layout.modules)
        .map(|i| brick[model.layout.y(i)] as u64)
        .collect()
}

/// Opens one machine per unit of every non-empty configuration count,
/// skipping the configuration `skip`, and lists the free slots per kind.
fn open_machines(model: &Model, totals: &[u64], skip: Option<usize>) -> (Vec<usize>, Vec<VecDeque<u64>>) {
    let e = &model.enumeration;
    let mut machines = Vec::new();
    for (k, &count) in totals.iter().enumerate() {
        if !e.configurations[k].kinds.is_empty() && Some(k) != skip {
            machines.extend(std::iter::repeat(k).take(count as usize));
        }
    }
    let mut free = vec![VecDeque::new(); e.kinds.len()];
    for (machine, &k) in machines.iter().enumerate() {
        for &(kind, mult) in &e.configurations[k].kinds {
            for _ in 0..mult {
                free[kind].push_back(machine as u64);
            }
        }
    }
    (machines, free)
}

/// Modules of a class in filling order: larger first, then by index.
fn filling_order(model: &Model, counts: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..counts.len()).filter(|&i| counts[i] > 0).collect();
    order.sort_by(|&a, &b| {
        model.enumeration.modules[b]
            .size
            .cmp(&model.enumeration.modules[a].size)
            .then(a.cmp(&b))
    });
    order
}

/// Deals the small classes round robin over the machines of the group they
/// were placed in. Machines with the empty configuration are opened only
/// as needed, numbered from `next_machine` on.
fn place_small_classes(
    model: &Model,
    solution: &NFoldSolution,
    machines: &[usize],
    totals: &[u64],
    next_machine: &mut u64,
) -> Result<Vec<(usize, u64)>, PtasError> {
    let e = &model.enumeration;
    let rounded = &model.rounded;
    let mut members: Vec<Vec<u64>> = vec![Vec::new(); e.group_count()];
    for (machine, &k) in machines.iter().enumerate() {
        members[e.group_of_configuration(k)].push(machine as u64);
    }
    let empty = e.configurations.iter().position(|c| c.kinds.is_empty());
    let mut placed = Vec::new();
    for g in 0..e.group_count() {
        let items: Vec<(usize, Rational)> = (0..rounded.class_count())
            .filter(|&u| rounded.is_small(u) && solution.brick(u)[model.layout.z(g)] == 1)
            .map(|u| (u, int(rounded.class_size(u))))
            .collect();
        if items.is_empty() {
            continue;
        }
        let bins: Vec<u64> = match empty {
            Some(k) if e.group_of_configuration(k) == g => {
                let count = totals[k].min(items.len() as u64);
                let start = *next_machine;
                *next_machine += count;
                (start..start + count).collect()
            }
            _ => members[g].clone(),
        };
        let dealt = round_robin(&items, bins.len()).map_err(|_| internal("small classes placed in an unused group"))?;
        for (bin, classes) in dealt.into_iter().enumerate() {
            placed.extend(classes.into_iter().map(|u| (u, bins[bin])));
        }
    }
    Ok(placed)
}

/// Builds the schedule for an accepted guess. `compact` asks for the
/// count-based form of a splittable schedule.
pub fn construct_schedule(
    instance: &Instance,
    model: &Model,
    solution: &NFoldSolution,
    compact: bool,
) -> Result<Schedule, PtasError> {
    match model.params.variant {
        Variant::Splittable => splittable(instance, model, solution, compact),
        Variant::NonPreemptive => nonpreemptive(instance, model, solution),
        Variant::Preemptive => preemptive(instance, model, solution),
    }
}

fn splittable(
    instance: &Instance,
    model: &Model,
    solution: &NFoldSolution,
    compact: bool,
) -> Result<Schedule, PtasError> {
    let e = &model.enumeration;
    let rounded = &model.rounded;
    let unit = model.params.unit();
    let largest = e.kinds.len() - 1;
    let totals = configuration_totals(model, solution);
    let single_largest = e
        .configurations
        .iter()
        .position(|c| c.kinds == [(largest, 1)]);
    let skip = if compact { single_largest } else { None };
    let (machines, mut free) = open_machines(model, &totals, skip);

    let mut pieces: Vec<Vec<(u64, i64)>> = vec![Vec::new(); rounded.class_count()];
    let mut trivial: BTreeMap<usize, u64> = BTreeMap::new();
    for u in (0..rounded.class_count()).filter(|&u| !rounded.is_small(u)) {
        let counts = module_counts(model, solution, u);
        for kind in filling_order(model, &counts) {
            if compact && kind == largest {
                trivial.insert(u, counts[kind]);
                continue;
            }
            for _ in 0..counts[kind] {
                let machine = free[kind].pop_front().ok_or_else(|| internal("module without a slot"))?;
                pieces[u].push((machine, e.kinds[kind]));
            }
        }
    }

    let mut next_machine = machines.len() as u64;
    let trivial_piece = model.params.inflated_bound();
    for (&u, count) in trivial.iter_mut() {
        let total: Rational = instance.jobs_of_class(u).iter().map(|&j| instance.time(j)).sum();
        if total < &trivial_piece * big(*count) {
            *count -= 1;
            pieces[u].push((next_machine, e.kinds[largest]));
            next_machine += 1;
        }
    }
    trivial.retain(|_, count| *count > 0);

    let small = place_small_classes(model, solution, &machines, &totals, &mut next_machine)?;

    let mut amounts = Vec::new();
    for (u, class_pieces) in pieces.iter().enumerate() {
        let mut stream = JobStream::new(instance, instance.jobs_of_class(u));
        if let Some(&count) = trivial.get(&u) {
            stream.take(&(&trivial_piece * big(count)));
        }
        for &(machine, units) in class_pieces {
            for (job, amount) in stream.take(&(&unit * big(units))) {
                amounts.push((job, machine, amount));
            }
        }
    }
    for (u, machine) in small {
        amounts.extend(
            instance
                .jobs_of_class(u)
                .into_iter()
                .map(|j| (j, machine, instance.time(j).clone())),
        );
    }
    let explicit = SplittableSchedule::from_amounts(instance, amounts);
    Ok(if compact {
        Schedule::Compact(CompactSchedule {
            explicit,
            explicit_machines: next_machine,
            trivial_piece,
            trivial,
        })
    } else {
        Schedule::Splittable(explicit)
    })
}

fn nonpreemptive(instance: &Instance, model: &Model, solution: &NFoldSolution) -> Result<Schedule, PtasError> {
    let e = &model.enumeration;
    let rounded = &model.rounded;
    let totals = configuration_totals(model, solution);
    let (machines, mut free) = open_machines(model, &totals, None);

    let mut assignment = vec![u64::MAX; instance.job_count()];
    for u in (0..rounded.class_count()).filter(|&u| !rounded.is_small(u)) {
        let counts = module_counts(model, solution, u);
        // Machines that expect a job of each size, one entry per job.
        let mut demand: Vec<Vec<u64>> = vec![Vec::new(); rounded.sizes.len()];
        for i in filling_order(model, &counts) {
            let ModuleContent::Jobs(mult) = &e.modules[i].content else {
                return Err(internal("job module expected"));
            };
            for _ in 0..counts[i] {
                let machine = free[e.modules[i].kind]
                    .pop_front()
                    .ok_or_else(|| internal("module without a slot"))?;
                for (p, &n) in mult.iter().enumerate() {
                    demand[p].extend(std::iter::repeat(machine).take(n as usize));
                }
            }
        }
        for (p, targets) in demand.into_iter().enumerate() {
            let jobs: Vec<usize> = rounded
                .jobs_of_class(u)
                .filter(|&j| rounded.jobs[j].size == rounded.sizes[p])
                .collect();
            if jobs.len() != targets.len() {
                return Err(internal("modules do not match the rounded jobs"));
            }
            for (j, machine) in jobs.into_iter().zip(targets) {
                for &member in &rounded.jobs[j].members {
                    assignment[member] = machine;
                }
            }
        }
    }

    let mut next_machine = machines.len() as u64;
    for (u, machine) in place_small_classes(model, solution, &machines, &totals, &mut next_machine)? {
        for j in rounded.jobs_of_class(u) {
            for &member in &rounded.jobs[j].members {
                assignment[member] = machine;
            }
        }
    }
    if assignment.contains(&u64::MAX) {
        return Err(internal("job left unassigned"));
    }
    Ok(Schedule::NonPreemptive(NonPreemptiveSchedule { assignment }))
}

fn preemptive(instance: &Instance, model: &Model, solution: &NFoldSolution) -> Result<Schedule, PtasError> {
    let e = &model.enumeration;
    let layout = &model.layout;
    let rounded = &model.rounded;
    let layers = e.layers;
    let layer_length = model.params.unit() * big(model.params.layer_units());
    let totals = configuration_totals(model, solution);
    let (machines, mut free) = open_machines(model, &totals, None);

    let mut busy = vec![0u64; machines.len()];
    // Machines reserved per class and layer.
    let mut reserved: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); layers]; rounded.class_count()];
    for u in (0..rounded.class_count()).filter(|&u| !rounded.is_small(u)) {
        let counts = module_counts(model, solution, u);
        for i in filling_order(model, &counts) {
            let ModuleContent::Layers(mask) = e.modules[i].content else {
                return Err(internal("layer module expected"));
            };
            for _ in 0..counts[i] {
                let machine = free[i].pop_front().ok_or_else(|| internal("module without a slot"))?;
                busy[machine as usize] |= mask;
                for (l, slots) in reserved[u].iter_mut().enumerate() {
                    if mask >> l & 1 == 1 {
                        slots.push(machine);
                    }
                }
            }
        }
    }

    let mut pieces = Vec::new();
    for u in (0..rounded.class_count()).filter(|&u| !rounded.is_small(u)) {
        let brick = solution.brick(u);
        let jobs: Vec<usize> = rounded.jobs_of_class(u).collect();
        let mut remaining: Vec<i64> = jobs
            .iter()
            .map(|&j| rounded.jobs[j].size / model.params.layer_units())
            .collect();
        // (machine, layer) of every piece per job, in layer order.
        let mut placed: Vec<Vec<(u64, usize)>> = vec![Vec::new(); jobs.len()];
        for l in 0..layers {
            let mut slots = reserved[u][l].iter().copied();
            for p in (0..rounded.sizes.len()).rev() {
                let wanted = brick[layout.slot(p, l)] as usize;
                let mut candidates: Vec<usize> = (0..jobs.len())
                    .filter(|&i| rounded.jobs[jobs[i]].size == rounded.sizes[p] && remaining[i] > 0)
                    .collect();
                candidates.sort_by(|&a, &b| remaining[b].cmp(&remaining[a]).then(jobs[a].cmp(&jobs[b])));
                if candidates.len() < wanted {
                    return Err(internal("not enough distinct jobs for a layer"));
                }
                for &i in &candidates[..wanted] {
                    let machine = slots.next().ok_or_else(|| internal("piece without a slot"))?;
                    remaining[i] -= 1;
                    placed[i].push((machine, l));
                }
            }
            if slots.next().is_some() {
                return Err(internal("reserved slot left empty"));
            }
        }
        if remaining.iter().any(|&r| r != 0) {
            return Err(internal("job pieces left over"));
        }
        for (i, job_pieces) in placed.into_iter().enumerate() {
            let mut stream = JobStream::new(instance, rounded.jobs[jobs[i]].members.clone());
            for (machine, l) in job_pieces {
                let start = &layer_length * big(l as u64);
                pour(instance, &mut stream, &layer_length, machine, start, &mut pieces);
            }
            if !stream.is_exhausted() {
                return Err(internal("rounded job shorter than its members"));
            }
        }
    }

    let mut next_machine = machines.len() as u64;
    let small = place_small_classes(model, solution, &machines, &totals, &mut next_machine)?;
    busy.resize(next_machine as usize, 0);
    let mut per_machine: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (u, machine) in small {
        let entry = per_machine.entry(machine).or_default();
        for j in rounded.jobs_of_class(u) {
            entry.extend(rounded.jobs[j].members.iter().copied());
        }
    }
    for (machine, jobs) in per_machine {
        let mut stream = JobStream::new(instance, jobs);
        let mut l = 0usize;
        while !stream.is_exhausted() {
            if l >= 64 || busy[machine as usize] >> l & 1 == 0 {
                let start = &layer_length * big(l as u64);
                pour(instance, &mut stream, &layer_length, machine, start, &mut pieces);
            }
            l += 1;
        }
    }
    Ok(Schedule::Preemptive(PreemptiveSchedule { pieces }))
}

/// Fills the interval `[start, start + length)` of a machine from a stream.
fn pour(
    instance: &Instance,
    stream: &mut JobStream<'_>,
    length: &Rational,
    machine: u64,
    start: Rational,
    out: &mut Vec<TimedPiece>,
) {
    let mut at = start;
    for (job, amount) in stream.take(length) {
        let next = &at + &amount;
        out.push(TimedPiece {
            job,
            machine,
            fraction: amount / instance.time(job),
            start: at,
        });
        at = next;
    }
}
