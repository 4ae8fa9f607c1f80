//! Width oracles: exact minimal widths, lower bounds and exhaustive search,
//! computed independently of the constructions they check.

mod classes;
mod fooling;
mod orders;
mod partial;
mod stable;
mod subfunction;


use std::fmt;

pub use fooling::{eqs_fooling_set, mod_fooling_set, FoolingSet};
pub use orders::{min_width_over_orders, OrderSearch};
pub use partial::{partial_min_width_exact, PartialMinimum};
pub use stable::{stable_exhaustive_search, StableSearch};
pub use subfunction::{distinguishability_lower_bound, subfunction_widths};

/// Feasibility limits shared by the oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Truth-table oracles (subfunction counts, lower bounds).
    pub max_n_table: usize,
    /// Exact partial-function minimization.
    pub max_n_partial: usize,
    /// Prefix classes per level for the partial minimizer (at most 64).
    pub max_classes: usize,
    /// Search nodes visited by the partial minimizer before giving up.
    pub max_search_nodes: u64,
    /// Stable programs enumerated by the exhaustive search.
    pub max_programs: u64,
    /// Input length for enumerating all orders.
    pub max_n_orders: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_n_table: 22,
            max_n_partial: 12,
            max_classes: 12,
            max_search_nodes: 2_000_000,
            max_programs: 1 << 22,
            max_n_orders: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Exact,
    LowerBound,
    Construction,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::LowerBound => "lower_bound",
            BoundKind::Construction => "construction",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-level widths `w_0 … w_n` with their maximum and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub per_level: Vec<usize>,
    pub max: usize,
    pub kind: BoundKind,
    pub method: String,
}

impl WidthReport {
    pub fn new(per_level: Vec<usize>, kind: BoundKind, method: impl Into<String>) -> Self {
        let max = per_level.iter().copied().max().unwrap_or(0);
        WidthReport {
            per_level,
            max,
            kind,
            method: method.into(),
        }
    }
}

impl fmt::Display for WidthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.per_level.iter().map(|w| w.to_string()).collect();
        write!(
            f,
            "{} {} [{}] ({})",
            self.kind,
            self.max,
            levels.join(" "),
            self.method
        )
    }
}
