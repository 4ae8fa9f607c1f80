use super::program::{ObddProgram, ProgramKind};
use super::transition::Transition;

/// Node counts per level, `w_0 … w_n`, and their maximum.
///
/// The source level is included in the maximum; `max_excluding_source` gives
/// the other convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthProfile {
    pub per_level: Vec<usize>,
    pub max: usize,
    /// Nodes reachable from the initial node (classical kinds only).
    pub reachable: Option<Vec<usize>>,
}

impl WidthProfile {
    pub fn max_excluding_source(&self) -> usize {
        self.per_level.iter().skip(1).copied().max().unwrap_or(0)
    }

    pub fn reachable_max(&self) -> Option<usize> {
        self.reachable.as_ref().and_then(|r| r.iter().copied().max())
    }
}

impl ObddProgram {
    pub fn width(&self) -> WidthProfile {
        let per_level = self.level_widths();
        let max = per_level.iter().copied().max().unwrap_or(0);
        let reachable = match self.kind() {
            ProgramKind::Deterministic | ProgramKind::Nondeterministic => Some(self.reachable_counts()),
            _ => None,
        };
        WidthProfile {
            per_level,
            max,
            reachable,
        }
    }

    fn reachable_counts(&self) -> Vec<usize> {
        let widths = self.level_widths();
        let mut live = vec![false; widths[0]];
        if self.initial() < live.len() {
            live[self.initial()] = true;
        }
        let mut counts = vec![1];
        for (j, level) in self.levels().iter().enumerate() {
            let mut next = vec![false; widths[j + 1]];
            for t in [&level.on0, &level.on1] {
                for (src, _) in live.iter().enumerate().filter(|(_, &l)| l) {
                    match t {
                        Transition::Map { targets, .. } => {
                            if let Some(&d) = targets.get(src) {
                                if d < next.len() {
                                    next[d] = true;
                                }
                            }
                        }
                        Transition::Relation { targets, .. } => {
                            for &d in targets.get(src).into_iter().flatten() {
                                if d < next.len() {
                                    next[d] = true;
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
            counts.push(next.iter().filter(|&&b| b).count());
            live = next;
        }
        counts
    }
}
