//! Which classes each machine is allowed to process.
//!
//! Allowing more classes on a machine never hurts, so every machine gets a
//! set of exactly `slots` classes. Machines are identical, so patterns are
//! multisets of such sets, and only multisets covering every class matter.

use crate::OracleError;

const MAX_MACHINES: usize = 4096;

fn subsets_of_size(classes: usize, size: usize) -> Vec<u32> {
    (0u32..(1u32 << classes))
        .filter(|s| s.count_ones() as usize == size)
        .collect()
}

/// Calls `visit` with every covering pattern, as a non-decreasing list of
/// class bitmasks, one per machine. Fails before visiting anything if there
/// are more than `cap` patterns.
pub fn for_each_pattern(
    classes: usize,
    slots: usize,
    machines: u64,
    cap: usize,
    mut visit: impl FnMut(&[u32]),
) -> Result<usize, OracleError> {
    if classes > 24 {
        return Err(OracleError::TooLarge {
            what: "class subsets",
            cap,
        });
    }
    let slots = slots.min(classes);
    let subsets = subsets_of_size(classes, slots);
    let machines = usize::try_from(machines)
        .ok()
        .filter(|&m| m <= MAX_MACHINES)
        .ok_or(OracleError::TooLarge {
            what: "slot patterns",
            cap,
        })?;
    let all = (1u32 << classes) - 1;
    let mut pattern = Vec::with_capacity(machines);
    let mut count = 0usize;
    // First pass counts, second pass visits.
    walk(&subsets, all, slots, machines, 0, 0, &mut pattern, &mut |_| {
        count += 1;
        count <= cap
    });
    if count > cap {
        return Err(OracleError::TooLarge {
            what: "slot patterns",
            cap,
        });
    }
    walk(&subsets, all, slots, machines, 0, 0, &mut pattern, &mut |p| {
        visit(p);
        true
    });
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    subsets: &[u32],
    all: u32,
    slots: usize,
    machines: usize,
    from: usize,
    covered: u32,
    pattern: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let left = machines - pattern.len();
    let uncovered = (all & !covered).count_ones() as usize;
    if uncovered > left * slots {
        return true;
    }
    if left == 0 {
        return visit(pattern);
    }
    for i in from..subsets.len() {
        pattern.push(subsets[i]);
        let keep_going = walk(
            subsets,
            all,
            slots,
            machines,
            i,
            covered | subsets[i],
            pattern,
            visit,
        );
        pattern.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_small_cases() {
        // 3 classes, 1 slot, 3 machines: only {0},{1},{2}.
        assert_eq!(for_each_pattern(3, 1, 3, 100, |_| {}).unwrap(), 1);
        // 2 classes, 1 slot, 3 machines: {0,0,1}, {0,1,1}.
        assert_eq!(for_each_pattern(2, 1, 3, 100, |_| {}).unwrap(), 2);
        // all classes fit on every machine.
        assert_eq!(for_each_pattern(3, 3, 5, 100, |_| {}).unwrap(), 1);
    }

    #[test]
    fn patterns_cover_all_classes() {
        let mut seen = 0;
        for_each_pattern(4, 2, 3, 10_000, |p| {
            assert_eq!(p.iter().fold(0, |a, s| a | s), 0b1111);
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
            seen += 1;
        })
        .unwrap();
        assert!(seen > 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            for_each_pattern(8, 3, 4, 10, |_| {}),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
