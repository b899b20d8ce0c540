use ccs_core::rational::{big, ceil_to_int, floor_to_int, format_rational, int};
use ccs_core::{Rational, Variant};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::PtasError;

/// Multiple of the accuracy that bounds the total relative error of each
/// variant: the returned makespan is at most `(1 + factor * delta) * OPT`.
pub fn error_factor(variant: Variant) -> u64 {
    match variant {
        Variant::Splittable => 8,
        Variant::NonPreemptive => 9,
        Variant::Preemptive => 8,
    }
}

/// Largest accuracy `1/k` with `k >= 2` whose error ledger stays within
/// `1 + epsilon`. Returns `k`.
pub fn derive_delta(epsilon: &Rational, variant: Variant) -> Result<u64, PtasError> {
    if *epsilon <= int(0) || *epsilon > int(1) {
        return Err(PtasError::Epsilon(format_rational(epsilon)));
    }
    let k = ceil_to_int(&(big(error_factor(variant)) / epsilon));
    let k = k.to_u64().ok_or(PtasError::Overflow)?;
    Ok(k.max(2))
}

/// Everything that depends on the accuracy and the makespan guess.
///
/// Rounded sizes are measured in units of `delta^2 * T / c`, so the guess
/// itself is `c * k^2` units and a layer of the preemptive schedule is `c`
/// units long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasParams {
    pub variant: Variant,
    pub inverse_delta: u64,
    pub guess: Rational,
    pub slots: u64,
}

impl PtasParams {
    pub fn new(variant: Variant, inverse_delta: u64, guess: Rational, slots: u64) -> Self {
        PtasParams {
            variant,
            inverse_delta,
            guess,
            slots,
        }
    }

    pub fn delta(&self) -> Rational {
        Rational::new(One::one(), self.inverse_delta.into())
    }

    /// Length of one unit in the original time scale.
    pub fn unit(&self) -> Rational {
        let k = big(self.inverse_delta);
        &self.guess / (big(self.slots) * &k * &k)
    }

    /// `delta^2 * T` in units.
    pub fn layer_units(&self) -> i64 {
        self.slots as i64
    }

    /// `delta * T` in units.
    pub fn small_units(&self) -> i64 {
        (self.slots * self.inverse_delta) as i64
    }

    /// The guess in units.
    pub fn guess_units(&self) -> i64 {
        (self.slots * self.inverse_delta * self.inverse_delta) as i64
    }

    /// The inflated makespan bound in units. Integral except for the
    /// preemptive variant.
    pub fn inflated_units(&self) -> Rational {
        let k = self.inverse_delta;
        let c = self.slots;
        match self.variant {
            Variant::Splittable => big(c * (k * k + 4 * k)),
            Variant::NonPreemptive => big(c * (k + 3) * (k + 2)),
            Variant::Preemptive => Rational::new((c * (k + 3) * (k * k + 1)).into(), k.into()),
        }
    }

    /// The inflated bound in the original time scale.
    pub fn inflated_bound(&self) -> Rational {
        self.inflated_units() * self.unit()
    }

    /// Smallest positive integer that makes the inflated bound integral.
    pub fn area_scale(&self) -> i64 {
        self.inflated_units().denom().to_i64().expect("small denominator")
    }

    /// Number of layers of length `delta^2 * T` starting at or below the
    /// inflated bound.
    pub fn layer_count(&self) -> usize {
        let k = self.inverse_delta;
        Integer::div_floor(&((k + 3) * (k * k + 1)), &k) as usize + 1
    }

    /// Most large-class modules that fit on one machine.
    pub fn max_modules(&self) -> u64 {
        let cap = match self.variant {
            Variant::Splittable => self.inverse_delta + 4,
            Variant::NonPreemptive => floor_to_int(&(self.inflated_units() / big(self.small_units() as u64)))
                .to_u64()
                .expect("small quotient"),
            Variant::Preemptive => self.layer_count() as u64,
        };
        cap.min(self.slots)
    }

    /// Worst makespan in units of a schedule built for an accepted guess.
    pub fn makespan_bound_units(&self) -> Rational {
        self.inflated_units() + big(self.small_units() as u64)
    }
}
