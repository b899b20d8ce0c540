//! Seeded random instances.

use std::fmt;
use std::str::FromStr;

use ccs_core::{CoreError, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Times uniform in `1..=pmax`, labels uniform.
    Uniform,
    /// At most three classes, times in the upper half of the range.
    FewLargeClasses,
    /// Every job in its own class.
    ManySingletons,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::FewLargeClasses => "few-large-classes",
            Family::ManySingletons => "many-singletons",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "few-large-classes" => Ok(Family::FewLargeClasses),
            "many-singletons" => Ok(Family::ManySingletons),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub family: Family,
    pub seed: u64,
    pub jobs: usize,
    pub machines: u64,
    pub slots: usize,
    pub max_time: i64,
}

impl GenParams {
    /// Short name that identifies the instance in reports.
    pub fn label(&self) -> String {
        format!(
            "{}-s{}-n{}-m{}-c{}-p{}",
            self.family, self.seed, self.jobs, self.machines, self.slots, self.max_time
        )
    }
}

/// Builds an instance; the same parameters always give the same instance.
///
/// Labels of the uniform and few-large-classes families never exceed
/// `m * c` distinct classes. The many-singletons family fails when there
/// are more jobs than slots in total.
pub fn generate(params: &GenParams) -> Result<Instance, CoreError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.jobs;
    let pmax = params.max_time.max(1);
    let capacity = (params.machines as u128 * params.slots as u128).min(n as u128).max(1) as u64;
    let (times, labels): (Vec<i64>, Vec<u64>) = match params.family {
        Family::Uniform => (0..n)
            .map(|_| (rng.gen_range(1..=pmax), rng.gen_range(0..capacity)))
            .unzip(),
        Family::FewLargeClasses => {
            let classes = capacity.min(3);
            (0..n)
                .map(|_| (rng.gen_range((pmax + 1) / 2..=pmax).max(1), rng.gen_range(0..classes)))
                .unzip()
        }
        Family::ManySingletons => (0..n).map(|j| (rng.gen_range(1..=pmax), j as u64)).unzip(),
    };
    Instance::from_integers(&times, &labels, params.machines, params.slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::int;

    fn params(family: Family, seed: u64) -> GenParams {
        GenParams {
            family,
            seed,
            jobs: 12,
            machines: 4,
            slots: 3,
            max_time: 9,
        }
    }

    #[test]
    fn same_seed_same_instance() {
        for family in [Family::Uniform, Family::FewLargeClasses, Family::ManySingletons] {
            assert_eq!(generate(&params(family, 7)), generate(&params(family, 7)));
        }
        assert_ne!(
            generate(&params(Family::Uniform, 7)),
            generate(&params(Family::Uniform, 8))
        );
    }

    #[test]
    fn singletons_have_one_job_per_class() {
        let inst = generate(&params(Family::ManySingletons, 3)).unwrap();
        assert_eq!(inst.class_count(), inst.job_count());
    }

    #[test]
    fn uniform_times_stay_in_range() {
        for seed in 0..20 {
            let inst = generate(&params(Family::Uniform, seed)).unwrap();
            assert!(inst.times().iter().all(|p| *p >= int(1) && *p <= int(9)));
        }
    }

    #[test]
    fn few_large_classes() {
        let inst = generate(&params(Family::FewLargeClasses, 1)).unwrap();
        assert!(inst.class_count() <= 3);
        assert!(inst.times().iter().all(|p| *p >= int(5)));
    }

    #[test]
    fn family_names_round_trip() {
        for family in [Family::Uniform, Family::FewLargeClasses, Family::ManySingletons] {
            assert_eq!(family.name().parse::<Family>(), Ok(family));
        }
    }
}
