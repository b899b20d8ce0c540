//! Modules and machine configurations for one guess.

use ccs_core::rational::floor_to_int;
use ccs_core::Variant;
use num_traits::ToPrimitive;

use crate::params::PtasParams;
use crate::preprocess::RoundedInstance;
use crate::PtasError;

/// Default limit on the number of modules and of configurations.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleContent {
    /// A piece of a class of the module's size.
    Piece,
    /// Job multiplicities, indexed like the rounded large sizes.
    Jobs(Vec<u32>),
    /// Occupied layers as a bit set, layer `l` at bit `l`.
    Layers(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    /// Size in units.
    pub size: i64,
    /// Index of the covering row this module counts towards.
    pub kind: usize,
    pub content: ModuleContent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    /// `(kind, multiplicity)` pairs with positive multiplicity, by kind.
    pub kinds: Vec<(usize, u32)>,
    /// Total size in units.
    pub size: i64,
    /// Number of modules, i.e. class slots taken by large classes.
    pub modules: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub modules: Vec<Module>,
    /// Size in units of every kind a configuration is a multiset of.
    pub kinds: Vec<i64>,
    pub configurations: Vec<Configuration>,
    /// Distinct configuration sizes, ascending.
    pub config_sizes: Vec<i64>,
    /// Most modules in one configuration that the groups distinguish.
    pub max_modules: u32,
    /// Layer count of the preemptive variant, zero otherwise.
    pub layers: usize,
}

impl Enumeration {
    /// Groups are all pairs of a configuration size and a module count in
    /// `0..=max_modules`, size-major.
    pub fn group_count(&self) -> usize {
        self.config_sizes.len() * (self.max_modules as usize + 1)
    }

    pub fn group_of(&self, size: i64, modules: u32) -> usize {
        let at = self
            .config_sizes
            .binary_search(&size)
            .expect("size of an enumerated configuration");
        at * (self.max_modules as usize + 1) + modules as usize
    }

    /// `(size, module count)` of a group.
    pub fn group(&self, group: usize) -> (i64, u32) {
        let per = self.max_modules as usize + 1;
        (self.config_sizes[group / per], (group % per) as u32)
    }

    pub fn group_of_configuration(&self, config: usize) -> usize {
        let c = &self.configurations[config];
        self.group_of(c.size, c.modules)
    }

    /// The empty configuration, and the one holding just a single largest
    /// module.
    pub fn is_trivial(&self, config: usize) -> bool {
        let c = &self.configurations[config];
        let largest = self.kinds.len().checked_sub(1);
        c.kinds.is_empty() || (c.modules == 1 && Some(c.kinds[0].0) == largest)
    }
}

fn too_large(what: &'static str, cap: usize) -> PtasError {
    PtasError::EnumerationCap { what, cap }
}

/// Every multiset over `sizes` (ascending) with at most `max_items`
/// elements and total at most `limit`, as `(multiplicities, total)`.
/// Multiplicities are sparse `(index, count)` lists sorted by index.
fn multisets(
    sizes: &[i64],
    limit: i64,
    max_items: u32,
    cap: usize,
    what: &'static str,
) -> Result<Vec<(Vec<(usize, u32)>, i64, u32)>, PtasError> {
    fn walk(
        sizes: &[i64],
        from: usize,
        room: i64,
        items: u32,
        current: &mut Vec<(usize, u32)>,
        total: i64,
        count: u32,
        out: &mut Vec<(Vec<(usize, u32)>, i64, u32)>,
        cap: usize,
    ) -> bool {
        out.push((current.clone(), total, count));
        if out.len() > cap {
            return false;
        }
        for i in from..sizes.len() {
            if sizes[i] > room || items == 0 {
                break;
            }
            let mut mult = 0;
            let mut left = room;
            let mut used = items;
            while left >= sizes[i] && used > 0 {
                mult += 1;
                left -= sizes[i];
                used -= 1;
                current.push((i, mult));
                let ok = walk(sizes, i + 1, left, used, current, total + sizes[i] * mult as i64, count + mult, out, cap);
                current.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    if walk(sizes, 0, limit, max_items, &mut Vec::new(), 0, 0, &mut out, cap) {
        Ok(out)
    } else {
        Err(too_large(what, cap))
    }
}

fn collect_sizes(configurations: &[Configuration]) -> Vec<i64> {
    let mut sizes: Vec<i64> = configurations.iter().map(|c| c.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

/// Number of configurations of the preemptive variant: with `b` modules
/// they are the partitions of the layers plus one marker into `b + 1`
/// blocks, the marker's block holding the free layers.
fn preemptive_configuration_count(layers: usize, max_modules: usize) -> u128 {
    // Stirling numbers of the second kind, S(layers + 1, j), saturating.
    let n = layers + 1;
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=i.min(n)).rev() {
            row[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    (0..=max_modules.min(layers))
        .map(|b| row[b + 1])
        .fold(0u128, u128::saturating_add)
}

pub fn enumerate(params: &PtasParams, rounded: &RoundedInstance, cap: usize) -> Result<Enumeration, PtasError> {
    let limit = floor_to_int(&params.inflated_units()).to_i64().ok_or(PtasError::Overflow)?;
    let slots = params.slots.min(u32::MAX as u64) as u32;
    let max_modules = params.max_modules() as u32;
    match params.variant {
        Variant::Splittable => {
            let k = params.inverse_delta as i64;
            let c = params.layer_units();
            let kinds: Vec<i64> = (k..=k * k + 4 * k).map(|l| l * c).collect();
            if kinds.len() > cap {
                return Err(too_large("modules", cap));
            }
            let modules = kinds
                .iter()
                .enumerate()
                .map(|(kind, &size)| Module {
                    size,
                    kind,
                    content: ModuleContent::Piece,
                })
                .collect();
            let configurations: Vec<Configuration> = multisets(&kinds, limit, slots, cap, "configurations")?
                .into_iter()
                .map(|(kinds, size, modules)| Configuration { kinds, size, modules })
                .collect();
            Ok(Enumeration {
                modules,
                kinds,
                config_sizes: collect_sizes(&configurations),
                configurations,
                max_modules,
                layers: 0,
            })
        }
        Variant::NonPreemptive => {
            let raw = multisets(&rounded.sizes, limit, u32::MAX, cap, "modules")?;
            let mut kinds: Vec<i64> = raw.iter().filter(|m| m.2 > 0).map(|m| m.1).collect();
            kinds.sort_unstable();
            kinds.dedup();
            let modules = raw
                .into_iter()
                .filter(|m| m.2 > 0)
                .map(|(mult, size, _)| {
                    let mut dense = vec![0u32; rounded.sizes.len()];
                    for (i, c) in mult {
                        dense[i] = c;
                    }
                    Module {
                        size,
                        kind: kinds.binary_search(&size).expect("collected above"),
                        content: ModuleContent::Jobs(dense),
                    }
                })
                .collect();
            let configurations: Vec<Configuration> = multisets(&kinds, limit, slots, cap, "configurations")?
                .into_iter()
                .map(|(kinds, size, modules)| Configuration { kinds, size, modules })
                .collect();
            Ok(Enumeration {
                modules,
                kinds,
                config_sizes: collect_sizes(&configurations),
                configurations,
                max_modules,
                layers: 0,
            })
        }
        Variant::Preemptive => {
            let layers = params.layer_count();
            if layers >= 63 || (1usize << layers) - 1 > cap {
                return Err(too_large("modules", cap));
            }
            if preemptive_configuration_count(layers, slots as usize) > cap as u128 {
                return Err(too_large("configurations", cap));
            }
            let c = params.layer_units();
            let masks: Vec<u64> = (1..1u64 << layers).collect();
            let kinds: Vec<i64> = masks.iter().map(|m| m.count_ones() as i64 * c).collect();
            let modules = masks
                .iter()
                .enumerate()
                .map(|(kind, &mask)| Module {
                    size: kinds[kind],
                    kind,
                    content: ModuleContent::Layers(mask),
                })
                .collect();
            let mut configurations = Vec::new();
            let mut chosen = Vec::new();
            disjoint_sets(&masks, 0, 0, slots, &mut chosen, &mut |chosen, used| {
                configurations.push(Configuration {
                    kinds: chosen.iter().map(|&i| (i, 1)).collect(),
                    size: used.count_ones() as i64 * c,
                    modules: chosen.len() as u32,
                });
            });
            Ok(Enumeration {
                modules,
                kinds,
                config_sizes: collect_sizes(&configurations),
                configurations,
                max_modules,
                layers,
            })
        }
    }
}

fn disjoint_sets(
    masks: &[u64],
    from: usize,
    used: u64,
    room: u32,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], u64),
) {
    visit(chosen, used);
    if room == 0 {
        return;
    }
    for i in from..masks.len() {
        if masks[i] & used == 0 {
            chosen.push(i);
            disjoint_sets(masks, i + 1, used | masks[i], room - 1, chosen, visit);
            chosen.pop();
        }
    }
}
