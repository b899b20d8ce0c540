//! Greedy list distribution: round robin and longest processing time first.

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreedyError {
    #[error("cannot distribute items over zero bins")]
    NoBins,
}

/// Item identifiers per bin, in the order the items were placed.
pub type Bins = Vec<Vec<usize>>;

fn sorted_descending(items: &[(usize, Rational)]) -> Vec<&(usize, Rational)> {
    let mut order: Vec<&(usize, Rational)> = items.iter().collect();
    order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    order
}

/// Deals items in non-ascending weight order (ties by id) to bins
/// `0, 1, ..., bins - 1, 0, 1, ...`.
///
/// Every bin ends up with load at most `total / bins + max weight`.
pub fn round_robin(items: &[(usize, Rational)], bins: usize) -> Result<Bins, GreedyError> {
    if bins == 0 {
        return Err(GreedyError::NoBins);
    }
    let mut out = vec![Vec::new(); bins];
    for (i, (id, _)) in sorted_descending(items).into_iter().enumerate() {
        out[i % bins].push(*id);
    }
    Ok(out)
}

/// Places items in non-ascending weight order (ties by id) on the currently
/// least loaded bin, preferring the lowest bin index on ties.
pub fn lpt(items: &[(usize, Rational)], bins: usize) -> Result<Bins, GreedyError> {
    if bins == 0 {
        return Err(GreedyError::NoBins);
    }
    let mut out = vec![Vec::new(); bins];
    let mut loads = vec![Rational::zero(); bins];
    for (id, weight) in sorted_descending(items) {
        let target = loads
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)
            .expect("at least one bin");
        loads[target] += weight;
        out[target].push(*id);
    }
    Ok(out)
}

/// Total weight in each bin.
pub fn bin_loads(items: &[(usize, Rational)], bins: &Bins) -> Vec<Rational> {
    let weight = |id: usize| {
        items
            .iter()
            .find(|(i, _)| *i == id)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    };
    bins.iter()
        .map(|bin| bin.iter().fold(Rational::zero(), |acc, &id| acc + weight(id)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn items(weights: &[i64]) -> Vec<(usize, Rational)> {
        weights.iter().enumerate().map(|(i, &w)| (i, int(w))).collect()
    }

    #[test]
    fn round_robin_deals_in_descending_order() {
        let items = items(&[5, 4, 3, 3]);
        let bins = round_robin(&items, 2).unwrap();
        assert_eq!(bins, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(bin_loads(&items, &bins), vec![int(8), int(7)]);
    }

    #[test]
    fn lpt_balances() {
        let items = items(&[3, 3, 2, 2, 2]);
        let bins = lpt(&items, 2).unwrap();
        assert_eq!(bin_loads(&items, &bins), vec![int(7), int(5)]);
    }

    #[test]
    fn zero_bins_is_an_error() {
        assert_eq!(round_robin(&items(&[1]), 0), Err(GreedyError::NoBins));
        assert_eq!(lpt(&items(&[1]), 0), Err(GreedyError::NoBins));
    }

    #[test]
    fn ties_break_by_id() {
        let items = vec![(7, int(1)), (3, int(1)), (5, int(2))];
        assert_eq!(round_robin(&items, 3).unwrap(), vec![vec![5], vec![3], vec![7]]);
    }
}
