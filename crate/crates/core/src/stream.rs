use num_traits::{Signed, Zero};

use crate::instance::Instance;
use crate::rational::Rational;

/// Walks a list of jobs as one continuous stream of processing time and
/// hands out consecutive segments of it.
#[derive(Debug, Clone)]
pub struct JobStream<'a> {
    instance: &'a Instance,
    jobs: Vec<usize>,
    next: usize,
    used: Rational,
}

impl<'a> JobStream<'a> {
    pub fn new(instance: &'a Instance, jobs: Vec<usize>) -> Self {
        JobStream {
            instance,
            jobs,
            next: 0,
            used: Rational::zero(),
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.next >= self.jobs.len()
    }

    /// Removes up to `amount` from the front of the stream and returns it as
    /// `(job, processing time)` segments.
    pub fn take(&mut self, amount: &Rational) -> Vec<(usize, Rational)> {
        let mut parts = Vec::new();
        let mut room = amount.clone();
        while room.is_positive() && !self.is_exhausted() {
            let job = self.jobs[self.next];
            let left = self.instance.time(job) - &self.used;
            if left <= room {
                room -= &left;
                parts.push((job, left));
                self.next += 1;
                self.used = Rational::zero();
            } else {
                self.used += &room;
                parts.push((job, room));
                room = Rational::zero();
            }
        }
        parts
    }

    /// Everything still in the stream.
    pub fn take_rest(&mut self) -> Vec<(usize, Rational)> {
        let mut parts = Vec::new();
        while !self.is_exhausted() {
            let job = self.jobs[self.next];
            parts.push((job, self.instance.time(job) - &self.used));
            self.next += 1;
            self.used = Rational::zero();
        }
        parts
    }
}
