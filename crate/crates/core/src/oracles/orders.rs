use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::classes::reindexed_table;
use super::{partial_min_width_exact, subfunction_widths, OracleCaps, WidthReport};
use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Outcome};
use crate::obdd::VariableOrder;

/// Exact widths over every variable order.
#[derive(Clone, Debug)]
pub struct OrderSearch {
    /// Report for the first order (lexicographically) attaining the minimum.
    pub best: WidthReport,
    pub best_order: VariableOrder,
    /// Largest per-order optimum and the first order attaining it.
    pub worst: usize,
    pub worst_order: VariableOrder,
    pub orders: usize,
    /// Orders giving pairwise different reordered truth tables.
    pub distinct_tables: usize,
}

/// Minimum over all `n!` orders of the exact per-order oracle: subfunction
/// counting for total functions, the partial minimizer otherwise.
pub fn min_width_over_orders(f: &FunctionSpec, caps: &OracleCaps) -> Result<OrderSearch> {
    let n = f.n();
    if n > caps.max_n_orders {
        return Err(Error::CapExceeded {
            what: "input length for order enumeration",
            value: n as u64,
            cap: caps.max_n_orders as u64,
        });
    }
    let orders: Vec<VariableOrder> = (0..n)
        .permutations(n)
        .map(|p| VariableOrder::new(p).expect("permutation"))
        .collect();
    // orders inducing the same reordered table have the same optimum
    let mut first_of: HashMap<Vec<Outcome>, usize> = HashMap::new();
    let rep: Vec<usize> = orders
        .iter()
        .enumerate()
        .map(|(i, o)| *first_of.entry(reindexed_table(f, o)).or_insert(i))
        .collect();
    let mut distinct: Vec<usize> = first_of.into_values().collect();
    distinct.sort_unstable();
    let total = f.is_total();
    let solved: Vec<(usize, WidthReport)> = distinct
        .par_iter()
        .map(|&i| {
            let r = if total {
                subfunction_widths(f, &orders[i], caps)?
            } else {
                partial_min_width_exact(f, &orders[i], caps)?.report
            };
            Ok((i, r))
        })
        .collect::<Result<_>>()?;
    let report: HashMap<usize, &WidthReport> = solved.iter().map(|(i, r)| (*i, r)).collect();
    let value = |i: usize| report[&rep[i]].max;
    let best = (0..orders.len()).min_by_key(|&i| (value(i), i)).expect("n >= 1");
    let worst = (0..orders.len())
        .max_by_key(|&i| (value(i), std::cmp::Reverse(i)))
        .expect("n >= 1");
    Ok(OrderSearch {
        best: report[&rep[best]].clone(),
        best_order: orders[best].clone(),
        worst: value(worst),
        worst_order: orders[worst].clone(),
        orders: orders.len(),
        distinct_tables: solved.len(),
    })
}
