//! The N-fold program that decides a makespan guess.
//!
//! Each class is one brick. Per brick the columns are, in order: machine
//! counts per configuration, module counts, small-class placement per
//! group together with two slack columns per group, slot counts per size
//! and layer (preemptive only), and one slack for the extension row.

use ccs_core::rational::{big, ceil_to_int};
use ccs_core::Variant;
use ccs_nfold::{Block, NFoldProgram};
use num_traits::ToPrimitive;

use crate::enumerate::{Enumeration, ModuleContent};
use crate::params::PtasParams;
use crate::preprocess::RoundedInstance;
use crate::PtasError;

/// Column and row positions inside the program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub configurations: usize,
    pub modules: usize,
    /// Rows that match configurations against modules.
    pub kinds: usize,
    pub groups: usize,
    pub sizes: usize,
    pub layers: usize,
    /// Whether the layer-slot columns exist.
    pub slot_columns: bool,
    pub extension: bool,
}

impl Layout {
    pub fn x(&self, config: usize) -> usize {
        config
    }

    pub fn y(&self, module: usize) -> usize {
        self.configurations + module
    }

    pub fn z(&self, group: usize) -> usize {
        self.configurations + self.modules + group
    }

    pub fn space_slack(&self, group: usize) -> usize {
        self.z(group) + self.groups
    }

    pub fn area_slack(&self, group: usize) -> usize {
        self.z(group) + 2 * self.groups
    }

    pub fn slot(&self, size: usize, layer: usize) -> usize {
        self.z(0) + 3 * self.groups + size * self.layers + layer
    }

    fn slot_block(&self) -> usize {
        if self.slot_columns {
            self.sizes * self.layers
        } else {
            0
        }
    }

    pub fn extension_slack(&self) -> usize {
        self.z(0) + 3 * self.groups + self.slot_block()
    }

    pub fn width(&self) -> usize {
        self.extension_slack() + usize::from(self.extension)
    }

    pub fn coverage_row(&self, kind: usize) -> usize {
        1 + kind
    }

    pub fn space_row(&self, group: usize) -> usize {
        1 + self.kinds + group
    }

    pub fn area_row(&self, group: usize) -> usize {
        1 + self.kinds + self.groups + group
    }

    pub fn extension_row(&self) -> usize {
        1 + self.kinds + 2 * self.groups
    }

    pub fn top_rows(&self) -> usize {
        self.extension_row() + usize::from(self.extension)
    }
}

/// Everything built for one guess.
#[derive(Debug, Clone)]
pub struct Model {
    pub params: PtasParams,
    pub rounded: RoundedInstance,
    pub enumeration: Enumeration,
    pub layout: Layout,
    pub program: NFoldProgram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimensions {
    pub top_rows: usize,
    pub local_rows: usize,
    pub width: usize,
}

/// Shape of the program for an enumeration, from the counts alone.
pub fn expected_dimensions(variant: Variant, e: &Enumeration, sizes: usize, extension: bool) -> Dimensions {
    let configs = e.configurations.len();
    let modules = e.modules.len();
    let groups = e.config_sizes.len() * (e.max_modules as usize + 1);
    let kinds = match variant {
        Variant::NonPreemptive => {
            let mut sizes: Vec<i64> = e.modules.iter().map(|m| m.size).collect();
            sizes.sort_unstable();
            sizes.dedup();
            sizes.len()
        }
        Variant::Splittable | Variant::Preemptive => modules,
    };
    let extra = usize::from(extension);
    let (local_rows, slot_columns) = match variant {
        Variant::Splittable => (2, 0),
        Variant::NonPreemptive => (sizes + 1, 0),
        Variant::Preemptive => (sizes + e.layers + 1, sizes * e.layers),
    };
    Dimensions {
        top_rows: 1 + kinds + 2 * groups + extra,
        local_rows,
        width: configs + modules + 3 * groups + slot_columns + extra,
    }
}

fn to_i64(value: u128) -> Result<i64, PtasError> {
    i64::try_from(value).map_err(|_| PtasError::Overflow)
}

/// Builds the program for one guess. Returns it with its layout.
pub fn build_nfold(
    params: &PtasParams,
    rounded: &RoundedInstance,
    e: &Enumeration,
    machines: u64,
) -> Result<(NFoldProgram, Layout), PtasError> {
    let variant = params.variant;
    let layout = Layout {
        configurations: e.configurations.len(),
        modules: e.modules.len(),
        kinds: e.kinds.len(),
        groups: e.group_count(),
        sizes: rounded.sizes.len(),
        layers: e.layers,
        slot_columns: variant == Variant::Preemptive,
        extension: false,
    };
    let width = layout.width();
    let top_rows = layout.top_rows();
    let scale = params.area_scale();
    let inflated = ceil_to_int(&(params.inflated_units() * big(scale as u64)))
        .to_i64()
        .ok_or(PtasError::Overflow)?;
    let slots = params.slots as i64;
    let m = to_i64(machines as u128)?;

    // Top block shared by all bricks apart from the area coefficient of z.
    let mut shared = Block::zeros(top_rows, width);
    for (k, config) in e.configurations.iter().enumerate() {
        let col = layout.x(k);
        shared.set(0, col, 1);
        for &(kind, mult) in &config.kinds {
            shared.set(layout.coverage_row(kind), col, mult as i64);
        }
        let g = e.group_of(config.size, config.modules.min(e.max_modules));
        shared.set(layout.space_row(g), col, config.modules as i64 - slots);
        shared.set(layout.area_row(g), col, (scale * config.size - inflated).min(0));
    }
    for (i, module) in e.modules.iter().enumerate() {
        shared.set(layout.coverage_row(module.kind), layout.y(i), -1);
    }
    for g in 0..layout.groups {
        shared.set(layout.space_row(g), layout.z(g), 1);
        shared.set(layout.space_row(g), layout.space_slack(g), 1);
        shared.set(layout.area_row(g), layout.area_slack(g), 1);
    }

    let local_rows = match variant {
        Variant::Splittable => 2,
        Variant::NonPreemptive => layout.sizes + 1,
        Variant::Preemptive => layout.sizes + layout.layers + 1,
    };
    let choice_row = local_rows - 1;

    let mut upper = Vec::with_capacity(rounded.class_count() * width);
    let module_bound = match variant {
        Variant::Splittable => to_i64(machines as u128 * (params.inverse_delta as u128 + 4))?,
        _ => m,
    };
    let space_bound = to_i64(machines as u128 * slots as u128)?;
    let area_bound = to_i64(machines as u128 * inflated as u128)?;

    let mut top = Vec::with_capacity(rounded.class_count());
    let mut local = Vec::with_capacity(rounded.class_count());
    let mut rhs = vec![0i64; top_rows];
    rhs[0] = m;

    for class in 0..rounded.class_count() {
        let small = rounded.is_small(class);
        let mut block = shared.clone();
        if small {
            let size = scale * rounded.class_size(class);
            for g in 0..layout.groups {
                block.set(layout.area_row(g), layout.z(g), size);
            }
        }
        top.push(block);

        let mut lb = Block::zeros(local_rows, width);
        let mut brick_rhs = vec![0i64; local_rows];
        match variant {
            Variant::Splittable => {
                for (i, module) in e.modules.iter().enumerate() {
                    lb.set(0, layout.y(i), module.size);
                }
                if !small {
                    brick_rhs[0] = rounded.class_size(class);
                }
            }
            Variant::NonPreemptive => {
                for (i, module) in e.modules.iter().enumerate() {
                    let ModuleContent::Jobs(mult) = &module.content else {
                        unreachable!("job modules")
                    };
                    for (p, &count) in mult.iter().enumerate() {
                        if count > 0 {
                            lb.set(p, layout.y(i), count as i64);
                        }
                    }
                }
                if !small {
                    for (p, &n) in rounded.counts[class].iter().enumerate() {
                        brick_rhs[p] = n as i64;
                    }
                }
            }
            Variant::Preemptive => {
                for p in 0..layout.sizes {
                    for l in 0..layout.layers {
                        lb.set(p, layout.slot(p, l), 1);
                    }
                }
                for (i, module) in e.modules.iter().enumerate() {
                    let ModuleContent::Layers(mask) = module.content else {
                        unreachable!("layer modules")
                    };
                    for l in (0..layout.layers).filter(|l| mask >> l & 1 == 1) {
                        lb.set(layout.sizes + l, layout.y(i), 1);
                    }
                }
                for p in 0..layout.sizes {
                    for l in 0..layout.layers {
                        lb.set(layout.sizes + l, layout.slot(p, l), -1);
                    }
                }
                if !small {
                    for (p, &n) in rounded.counts[class].iter().enumerate() {
                        let pieces = rounded.sizes[p] / params.layer_units();
                        brick_rhs[p] = pieces * n as i64;
                    }
                }
            }
        }
        for g in 0..layout.groups {
            lb.set(choice_row, layout.z(g), 1);
        }
        brick_rhs[choice_row] = i64::from(small);
        local.push(lb);
        rhs.extend(brick_rhs);

        let mut bounds = vec![0i64; width];
        for k in 0..layout.configurations {
            bounds[layout.x(k)] = m;
        }
        for i in 0..layout.modules {
            bounds[layout.y(i)] = module_bound;
        }
        for g in 0..layout.groups {
            bounds[layout.z(g)] = 1;
            bounds[layout.space_slack(g)] = space_bound;
            bounds[layout.area_slack(g)] = area_bound;
        }
        if layout.slot_columns {
            for (p, &n) in rounded.counts[class].iter().enumerate() {
                for l in 0..layout.layers {
                    bounds[layout.slot(p, l)] = m.min(n as i64);
                }
            }
        }
        upper.extend(bounds);
    }
    let lower = vec![0i64; upper.len()];
    let objective = vec![0i64; upper.len()];
    let program = NFoldProgram::new(top_rows, local_rows, width, top, local, rhs, lower, upper, objective)?;
    Ok((program, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate, DEFAULT_ENUM_CAP};
    use crate::preprocess::preprocess;
    use ccs_core::rational::int;
    use ccs_core::Instance;
    use ccs_nfold::{solve_feasible, Outcome};

    fn setup(variant: Variant, k: u64, guess: i64, times: &[i64], classes: &[u64], m: u64, c: usize) -> (PtasParams, RoundedInstance, Enumeration, Instance) {
        let inst = Instance::from_integers(times, classes, m, c).unwrap();
        let params = PtasParams::new(variant, k, int(guess), inst.slots() as u64);
        let r = preprocess(&inst, &params).unwrap();
        let e = enumerate(&params, &r, DEFAULT_ENUM_CAP).unwrap();
        (params, r, e, inst)
    }

    #[test]
    fn dimensions_match_the_closed_form() {
        for variant in [Variant::Splittable, Variant::NonPreemptive, Variant::Preemptive] {
            let (params, r, e, inst) = setup(variant, 2, 10, &[7, 3, 2, 6], &[1, 1, 2, 3], 2, 2);
            let (program, layout) = build_nfold(&params, &r, &e, inst.machines()).unwrap();
            let d = expected_dimensions(variant, &e, r.sizes.len(), false);
            assert_eq!(program.top_rows(), d.top_rows, "{variant:?}");
            assert_eq!(program.local_rows(), d.local_rows, "{variant:?}");
            assert_eq!(program.width(), d.width, "{variant:?}");
            assert_eq!(program.bricks(), inst.class_count());
            assert_eq!(layout.width(), d.width);
        }
    }

    #[test]
    fn large_class_forbids_small_placement() {
        let (params, r, e, inst) = setup(Variant::Splittable, 2, 10, &[7], &[1], 1, 1);
        let (program, _) = build_nfold(&params, &r, &e, inst.machines()).unwrap();
        assert_eq!(program.local_rhs(0)[1], 0);
    }

    #[test]
    fn lone_small_class_goes_onto_the_empty_configuration() {
        let (params, r, e, inst) = setup(Variant::Splittable, 2, 10, &[1], &[1], 1, 1);
        assert!(r.is_small(0));
        let (program, layout) = build_nfold(&params, &r, &e, inst.machines()).unwrap();
        let Outcome::Feasible(s) = solve_feasible(&program).unwrap() else {
            panic!("a single short job fits")
        };
        let empty = e.configurations.iter().position(|c| c.kinds.is_empty()).unwrap();
        assert_eq!(s.brick(0)[layout.x(empty)], 1);
    }

    #[test]
    fn too_small_a_guess_is_rejected() {
        let (params, r, e, inst) = setup(Variant::NonPreemptive, 2, 2, &[9, 9, 9], &[1, 2, 3], 1, 3);
        let (program, _) = build_nfold(&params, &r, &e, inst.machines()).unwrap();
        assert_eq!(solve_feasible(&program).unwrap(), Outcome::Infeasible);
    }
}
