use crate::error::{Error, Result};
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Transition, VariableOrder};

// between pairs: [equal so far, mismatch]; inside a pair: [saw 0, saw 1, mismatch]
const EQ: usize = 0;
const MIS: usize = 1;
const MID_MIS: usize = 2;

/// Width-3 deterministic program for NotPAL_n under the pairing order
/// `(1, n, 2, n−1, …)`: remember the first bit of each pair, compare on the
/// second, and keep any mismatch to the end.
pub fn build_det_notpal(n: usize) -> Result<ObddProgram> {
    if n == 0 {
        return Err(Error::param("need n >= 1"));
    }
    let map = |targets: Vec<usize>, width: usize| Transition::Map { targets, width };
    let first = LevelTransition::new(map(vec![0, MID_MIS], 3), map(vec![1, MID_MIS], 3));
    let second = LevelTransition::new(map(vec![EQ, MIS, MIS], 2), map(vec![MIS, EQ, MIS], 2));
    let middle = LevelTransition::new(map(vec![EQ, MIS], 2), map(vec![EQ, MIS], 2));
    let mut levels = Vec::with_capacity(n);
    for t in 0..n / 2 {
        let mut head = first.clone();
        if t == 0 {
            // the source is a single node
            head = LevelTransition::new(map(vec![0], 3), map(vec![1], 3));
        }
        levels.push(head);
        levels.push(second.clone());
    }
    if n % 2 == 1 {
        levels.push(if n == 1 {
            LevelTransition::new(map(vec![EQ], 2), map(vec![EQ], 2))
        } else {
            middle
        });
    }
    ObddProgram::new(
        ProgramKind::Deterministic,
        VariableOrder::pairing(n),
        levels,
        0,
        [MIS],
        false,
    )
}
