use std::collections::HashMap;

use super::classes::ClassStructure;
use super::{BoundKind, OracleCaps, WidthReport};
use crate::error::{Error, Result};
use crate::functions::FunctionSpec;
use crate::obdd::VariableOrder;

/// Exact minimal width of a deterministic OBDD for a total `f` under `order`:
/// the number of distinct subfunctions left by the prefixes of each length.
pub fn subfunction_widths(f: &FunctionSpec, order: &VariableOrder, caps: &OracleCaps) -> Result<WidthReport> {
    if !f.is_total() {
        return Err(Error::PartialFunction(f.to_string()));
    }
    let cs = ClassStructure::build(f, order, caps.max_n_table)?;
    Ok(WidthReport::new(
        cs.counts(),
        BoundKind::Exact,
        "distinct subfunctions",
    ))
}

/// Per level, the largest set of prefixes that are pairwise comparable
/// (identical valid suffixes) and nonequivalent (some valid suffix tells
/// them apart). Such prefixes must reach distinct nodes.
///
/// Comparability is an equivalence, so the largest such set is the largest
/// group of classes sharing a definedness pattern.
pub fn distinguishability_lower_bound(
    f: &FunctionSpec,
    order: &VariableOrder,
    caps: &OracleCaps,
) -> Result<WidthReport> {
    let cs = ClassStructure::build(f, order, caps.max_n_table)?;
    Ok(WidthReport::new(
        largest_comparable_groups(&cs),
        BoundKind::LowerBound,
        "comparable nonequivalent prefixes",
    ))
}

pub(super) fn largest_comparable_groups(cs: &ClassStructure) -> Vec<usize> {
    (0..=cs.n)
        .map(|j| {
            let mut groups: HashMap<u32, usize> = HashMap::new();
            for &p in &cs.pattern[j] {
                *groups.entry(p).or_default() += 1;
            }
            groups.into_values().max().unwrap_or(1)
        })
        .collect()
}
