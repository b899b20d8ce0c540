//! Optimal makespans when jobs may be divided among machines.

use std::cmp::Ordering;

use ccs_core::rational::common_denominator;
use ccs_core::{Instance, Rational};
use num_traits::ToPrimitive;

use crate::flow::FlowNetwork;
use crate::patterns::for_each_pattern;
use crate::{OracleError, OracleLimits};

/// A candidate makespan `sum / machines` in scaled units.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    sum: i128,
    machines: i128,
}

impl Candidate {
    fn cmp(&self, other: &Candidate) -> Ordering {
        (self.sum * other.machines).cmp(&(other.sum * self.machines))
    }
}

struct Scaled {
    scale: Rational,
    times: Vec<i128>,
    classes: Vec<usize>,
    class_totals: Vec<i128>,
    machines: u64,
}

fn scale(instance: &Instance) -> Result<Scaled, OracleError> {
    let scale = Rational::from_integer(common_denominator(instance.times()));
    let times = instance
        .times()
        .iter()
        .map(|p| (p * &scale).to_integer().to_i128())
        .collect::<Option<Vec<i128>>>()
        .ok_or(OracleError::TooLarge {
            what: "processing times",
            cap: 0,
        })?;
    let mut class_totals = vec![0i128; instance.class_count()];
    for (j, &p) in times.iter().enumerate() {
        class_totals[instance.class_of(j)] += p;
    }
    Ok(Scaled {
        scale,
        times,
        classes: instance.classes().to_vec(),
        class_totals,
        machines: instance.machines(),
    })
}

/// All values `P(X) / k` for non-empty class sets `X` and `1 <= k <= m`,
/// at least `floor`, sorted and without duplicates.
fn candidates(scaled: &Scaled, floor: Option<i128>) -> Result<Vec<Candidate>, OracleError> {
    let classes = scaled.class_totals.len();
    if classes > 16 {
        return Err(OracleError::TooLarge {
            what: "class subsets",
            cap: 1 << 16,
        });
    }
    let mut out = Vec::new();
    for set in 1u32..(1u32 << classes) {
        let sum: i128 = (0..classes)
            .filter(|u| set & (1 << u) != 0)
            .map(|u| scaled.class_totals[u])
            .sum();
        for k in 1..=scaled.machines as i128 {
            out.push(Candidate { sum, machines: k });
        }
    }
    if let Some(p) = floor {
        out.push(Candidate { sum: p, machines: 1 });
        out.retain(|c| c.sum >= p * c.machines);
    }
    out.sort_by(|a, b| a.cmp(b));
    out.dedup_by(|a, b| a.cmp(b) == Ordering::Equal);
    Ok(out)
}

/// Class-level flow: every class sends its load to the machines that allow
/// it, every machine takes at most `T`.
fn splittable_feasible(scaled: &Scaled, pattern: &[u32], t: Candidate) -> bool {
    let classes = scaled.class_totals.len();
    let machines = pattern.len();
    let (source, sink) = (classes + machines, classes + machines + 1);
    let mut g = FlowNetwork::new(classes + machines + 2);
    let mut demand = 0;
    for (u, &load) in scaled.class_totals.iter().enumerate() {
        g.add_edge(source, u, load * t.machines);
        demand += load * t.machines;
        for (i, &allowed) in pattern.iter().enumerate() {
            if allowed & (1 << u) != 0 {
                g.add_edge(u, classes + i, i128::MAX / 4);
            }
        }
    }
    for i in 0..machines {
        g.add_edge(classes + i, sink, t.sum);
    }
    g.max_flow(source, sink) == demand
}

/// Job-level flow where a job may use each machine for at most `T`.
fn preemptive_feasible(scaled: &Scaled, pattern: &[u32], t: Candidate) -> bool {
    let jobs = scaled.times.len();
    let machines = pattern.len();
    let (source, sink) = (jobs + machines, jobs + machines + 1);
    let mut g = FlowNetwork::new(jobs + machines + 2);
    let mut demand = 0;
    for (j, &p) in scaled.times.iter().enumerate() {
        g.add_edge(source, j, p * t.machines);
        demand += p * t.machines;
        for (i, &allowed) in pattern.iter().enumerate() {
            if allowed & (1 << scaled.classes[j]) != 0 {
                g.add_edge(j, jobs + i, t.sum);
            }
        }
    }
    for i in 0..machines {
        g.add_edge(jobs + i, sink, t.sum);
    }
    g.max_flow(source, sink) == demand
}

fn search(
    instance: &Instance,
    limits: &OracleLimits,
    floor: Option<i128>,
    scaled: &Scaled,
    feasible: impl Fn(&Scaled, &[u32], Candidate) -> bool,
) -> Result<Rational, OracleError> {
    let cands = candidates(scaled, floor)?;
    let mut best = cands.len();
    for_each_pattern(
        instance.class_count(),
        instance.slots(),
        instance.machines(),
        limits.patterns,
        |pattern| {
            if best == 0 || !feasible(scaled, pattern, cands[best - 1]) {
                return;
            }
            let (mut lo, mut hi) = (0, best - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if feasible(scaled, pattern, cands[mid]) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            best = lo;
        },
    )?;
    let c = cands
        .get(best)
        .expect("covering patterns exist for valid instances");
    Ok(Rational::new(c.sum.into(), c.machines.into()) / &scaled.scale)
}

/// Optimal splittable makespan.
pub fn opt_splittable_with(instance: &Instance, limits: &OracleLimits) -> Result<Rational, OracleError> {
    let scaled = scale(instance)?;
    search(instance, limits, None, &scaled, splittable_feasible)
}

/// Optimal preemptive makespan.
pub fn opt_preemptive_with(instance: &Instance, limits: &OracleLimits) -> Result<Rational, OracleError> {
    let scaled = scale(instance)?;
    let longest = scaled.times.iter().copied().max().unwrap_or(0);
    search(instance, limits, Some(longest), &scaled, preemptive_feasible)
}

pub fn opt_splittable(instance: &Instance) -> Result<Rational, OracleError> {
    opt_splittable_with(instance, &OracleLimits::default())
}

pub fn opt_preemptive(instance: &Instance) -> Result<Rational, OracleError> {
    opt_preemptive_with(instance, &OracleLimits::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::{int, ratio};

    #[test]
    fn even_split_of_one_job() {
        let inst = Instance::from_integers(&[6], &[1], 3, 1).unwrap();
        assert_eq!(opt_splittable(&inst).unwrap(), int(2));
        assert_eq!(opt_preemptive(&inst).unwrap(), int(6));
    }

    #[test]
    fn area_bound_met() {
        let inst = Instance::from_integers(&[4, 4], &[1, 2], 2, 2).unwrap();
        assert_eq!(opt_splittable(&inst).unwrap(), int(4));
        assert_eq!(opt_preemptive(&inst).unwrap(), int(4));
    }

    #[test]
    fn slots_force_imbalance() {
        // One slot each: class {5} alone, class {1,1,1} shares nothing.
        let inst = Instance::from_integers(&[5, 1, 1, 1], &[1, 2, 2, 2], 3, 1).unwrap();
        // Class 1 gets two machines (5/2), class 2 one machine (3).
        assert_eq!(opt_splittable(&inst).unwrap(), int(3));
        let inst = Instance::from_integers(&[6, 1], &[1, 2], 3, 1).unwrap();
        assert_eq!(opt_splittable(&inst).unwrap(), int(3));
        assert_eq!(opt_preemptive(&inst).unwrap(), int(6));
    }

    #[test]
    fn fractional_times() {
        let inst = Instance::new(vec![ratio(1, 2), ratio(1, 3)], vec![1, 1], 2, 1).unwrap();
        assert_eq!(opt_splittable(&inst).unwrap(), ratio(5, 12));
        assert_eq!(opt_preemptive(&inst).unwrap(), ratio(1, 2));
    }
}
