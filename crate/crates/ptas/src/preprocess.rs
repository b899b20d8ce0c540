//! Grouping, rounding and scaling of an instance for one makespan guess.

use ccs_core::rational::{big, ceil_to_int};
use ccs_core::{Instance, Rational, Variant};
use num_traits::{ToPrimitive, Zero};

use crate::params::PtasParams;
use crate::PtasError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    /// A single job below the small threshold.
    Small,
    /// Only jobs at or above the small threshold.
    Large,
}

/// A job of the rounded instance, standing for one or more original jobs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedJob {
    pub class: usize,
    /// Rounded size in units.
    pub size: i64,
    /// Original jobs, in the order they are laid out inside this job.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedInstance {
    pub kinds: Vec<ClassKind>,
    pub jobs: Vec<RoundedJob>,
    /// Distinct rounded sizes of jobs in large classes, ascending.
    pub sizes: Vec<i64>,
    /// `counts[class][i]` jobs of size `sizes[i]` in each class.
    pub counts: Vec<Vec<u64>>,
}

impl RoundedInstance {
    pub fn class_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_small(&self, class: usize) -> bool {
        self.kinds[class] == ClassKind::Small
    }

    /// Indices into `jobs` for one class.
    pub fn jobs_of_class(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.jobs
            .iter()
            .enumerate()
            .filter(move |(_, j)| j.class == class)
            .map(|(i, _)| i)
    }

    /// Rounded size of the single job of a small class, or the rounded
    /// total of a class in the splittable case.
    pub fn class_size(&self, class: usize) -> i64 {
        self.jobs_of_class(class).map(|j| self.jobs[j].size).sum()
    }
}

fn to_units(value: Rational) -> Result<i64, PtasError> {
    ceil_to_int(&value).to_i64().ok_or(PtasError::Overflow)
}

/// Large jobs round up to whole layers, small ones to whole units.
fn round(params: &PtasParams, time: &Rational, large: bool) -> Result<i64, PtasError> {
    let unit = params.unit();
    if large {
        let layer = &unit * big(params.layer_units() as u64);
        Ok(to_units(time / layer)? * params.layer_units())
    } else {
        to_units(time / unit)
    }
}

pub fn preprocess(instance: &Instance, params: &PtasParams) -> Result<RoundedInstance, PtasError> {
    let threshold = params.delta() * &params.guess;
    let mut kinds = Vec::with_capacity(instance.class_count());
    let mut jobs = Vec::new();
    for (class, members) in instance.jobs_by_class().into_iter().enumerate() {
        match params.variant {
            Variant::Splittable => {
                let total: Rational = members.iter().map(|&j| instance.time(j)).sum();
                let large = total > threshold;
                kinds.push(if large { ClassKind::Large } else { ClassKind::Small });
                jobs.push(RoundedJob {
                    class,
                    size: round(params, &total, large)?,
                    members,
                });
            }
            Variant::NonPreemptive | Variant::Preemptive => {
                let grouped = group_class(instance, &members, &threshold);
                let large = grouped.len() > 1 || grouped[0].1 >= threshold;
                kinds.push(if large { ClassKind::Large } else { ClassKind::Small });
                for (members, total) in grouped {
                    jobs.push(RoundedJob {
                        class,
                        size: round(params, &total, large)?,
                        members,
                    });
                }
            }
        }
    }

    let mut sizes: Vec<i64> = jobs
        .iter()
        .filter(|j| kinds[j.class] == ClassKind::Large)
        .map(|j| j.size)
        .collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut counts = vec![vec![0u64; sizes.len()]; kinds.len()];
    if params.variant != Variant::Splittable {
        for job in jobs.iter().filter(|j| kinds[j.class] == ClassKind::Large) {
            let at = sizes.binary_search(&job.size).expect("collected above");
            counts[job.class][at] += 1;
        }
    }
    Ok(RoundedInstance {
        kinds,
        jobs,
        sizes,
        counts,
    })
}

/// Batches the jobs of one class that are shorter than `threshold` into
/// chunks of at least `threshold`; a leftover batch joins the smallest
/// other job of the class, or becomes the only job of a small class.
fn group_class(instance: &Instance, members: &[usize], threshold: &Rational) -> Vec<(Vec<usize>, Rational)> {
    let (mut short, long): (Vec<usize>, Vec<usize>) =
        members.iter().partition(|&&j| instance.time(j) < threshold);
    short.sort_by(|&a, &b| instance.time(b).cmp(instance.time(a)).then(a.cmp(&b)));

    let mut out: Vec<(Vec<usize>, Rational)> =
        long.into_iter().map(|j| (vec![j], instance.time(j).clone())).collect();
    let mut batch = Vec::new();
    let mut load = Rational::zero();
    for j in short {
        batch.push(j);
        load += instance.time(j);
        if load >= *threshold {
            out.push((std::mem::take(&mut batch), std::mem::replace(&mut load, Rational::zero())));
        }
    }
    if !batch.is_empty() {
        let host = out
            .iter_mut()
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0[0].cmp(&b.0[0])));
        match host {
            Some(host) => {
                host.0.extend(batch);
                host.1 += load;
            }
            None => out.push((batch, load)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::int;

    #[test]
    fn splittable_classes_merge_and_round() {
        let inst = Instance::from_integers(&[3, 4, 1], &[1, 1, 2], 2, 2).unwrap();
        let params = PtasParams::new(Variant::Splittable, 2, int(10), 2);
        let r = preprocess(&inst, &params).unwrap();
        assert_eq!(r.kinds, vec![ClassKind::Large, ClassKind::Small]);
        // 7 rounds to 7.5, which is 6 units of 5/4.
        assert_eq!(r.jobs[0].size, 6);
        assert_eq!(r.jobs[0].members, vec![0, 1]);
        assert_eq!(r.jobs[1].size, 1);
        assert_eq!(r.sizes, vec![6]);
    }

    #[test]
    fn short_jobs_below_threshold_form_a_small_class() {
        let inst = Instance::from_integers(&[1, 1, 1], &[1, 1, 1], 1, 1).unwrap();
        let params = PtasParams::new(Variant::NonPreemptive, 2, int(10), 1);
        let r = preprocess(&inst, &params).unwrap();
        assert_eq!(r.kinds, vec![ClassKind::Small]);
        assert_eq!(r.jobs.len(), 1);
        assert_eq!(r.jobs[0].members.len(), 3);
        // 3 in units of 10/4.
        assert_eq!(r.jobs[0].size, 2);
    }

    #[test]
    fn long_job_is_kept_and_leftovers_merge_onto_the_smallest_host() {
        // Threshold 5: chunk {4,3}, leftover {2} joins the chunk of 7
        // rather than the job of 9.
        let inst = Instance::from_integers(&[9, 4, 3, 2], &[1, 1, 1, 1], 2, 1).unwrap();
        let params = PtasParams::new(Variant::Preemptive, 2, int(10), 1);
        let r = preprocess(&inst, &params).unwrap();
        assert_eq!(r.kinds, vec![ClassKind::Large]);
        let mut groups: Vec<Vec<usize>> = r.jobs.iter().map(|j| j.members.clone()).collect();
        groups.sort();
        assert_eq!(groups, vec![vec![0], vec![1, 2, 3]]);
        // Both groups have size 9 and round up to 4 layers of 5/2.
        assert_eq!(r.sizes, vec![4]);
        assert_eq!(r.counts, vec![vec![2]]);
    }
}
