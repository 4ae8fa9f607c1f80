use crate::error::{Error, Result};
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Shape, Transition, VariableOrder};

/// Node of the pair-reading automaton: which of α and β is ahead, and the
/// bits it holds that the other has not matched yet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pending {
    Equal,
    /// α ahead by `len` bits; `bits` holds them with the oldest as MSB.
    Alpha {
        len: usize,
        bits: usize,
    },
    Beta {
        len: usize,
        bits: usize,
    },
    Reject,
}

struct EvenLayout {
    max_len: usize,
}

impl EvenLayout {
    fn strings(&self) -> usize {
        (1 << (self.max_len + 1)) - 2
    }

    fn width(&self) -> usize {
        2 * self.strings() + 2
    }

    fn index(&self, s: Pending) -> usize {
        let id = |len: usize, bits: usize| (1 << len) - 2 + bits;
        match s {
            Pending::Alpha { len, bits } => id(len, bits),
            Pending::Beta { len, bits } => self.strings() + id(len, bits),
            Pending::Equal => 2 * self.strings(),
            Pending::Reject => 2 * self.strings() + 1,
        }
    }

    fn nodes(&self) -> Vec<Pending> {
        let mut out = Vec::with_capacity(self.width());
        for beta in [false, true] {
            for len in 1..=self.max_len {
                for bits in 0..1 << len {
                    out.push(if beta {
                        Pending::Beta { len, bits }
                    } else {
                        Pending::Alpha { len, bits }
                    });
                }
            }
        }
        out.push(Pending::Equal);
        out.push(Pending::Reject);
        out
    }

    /// Odd levels: every non-reject node paired with the pending marker, then reject.
    fn odd_index(&self, s: Pending, marker: bool) -> usize {
        match s {
            Pending::Reject => self.odd_width() - 1,
            _ => 2 * self.index(s) + marker as usize,
        }
    }

    fn odd_width(&self) -> usize {
        2 * (self.width() - 1) + 1
    }
}

/// One value bit `v` for the string selected by `marker` (false = α).
fn push(s: Pending, marker: bool, v: bool, max_len: usize) -> Pending {
    let v = v as usize;
    let grow = |len: usize, bits: usize| -> Option<(usize, usize)> {
        (len < max_len).then_some((len + 1, bits << 1 | v))
    };
    // the ahead string's oldest bit must match the new bit of the other
    let pop = |len: usize, bits: usize| -> Option<(usize, usize)> {
        let oldest = bits >> (len - 1) & 1;
        (oldest == v).then_some((len - 1, bits & ((1 << (len - 1)) - 1)))
    };
    let settle = |r: Option<(usize, usize)>, alpha_ahead: bool| match r {
        None => Pending::Reject,
        Some((0, _)) => Pending::Equal,
        Some((len, bits)) if alpha_ahead => Pending::Alpha { len, bits },
        Some((len, bits)) => Pending::Beta { len, bits },
    };
    match (s, marker) {
        (Pending::Reject, _) => Pending::Reject,
        (Pending::Equal, m) => settle(grow(0, 0), !m),
        (Pending::Alpha { len, bits }, false) => settle(grow(len, bits), true),
        (Pending::Alpha { len, bits }, true) => settle(pop(len, bits), true),
        (Pending::Beta { len, bits }, true) => settle(grow(len, bits), false),
        (Pending::Beta { len, bits }, false) => settle(pop(len, bits), false),
    }
}

/// Deterministic program for EQS^k_n in natural order, of width `8·2^{k/4} − 5`.
///
/// Between pairs the program remembers which of α, β is ahead and the
/// unmatched bits (at most `k/4` of them, else it rejects); after a marker it
/// additionally remembers the marker. Bits past `k` are ignored.
pub fn build_det_eqs(k: usize, n: usize) -> Result<ObddProgram> {
    if k < 4 || !k.is_multiple_of(4) || k > n {
        return Err(Error::param(format!(
            "EQS needs k divisible by 4 with 4 <= k <= n (k={k}, n={n})"
        )));
    }
    if k / 4 > 16 {
        return Err(Error::param("k > 64 is impractically wide"));
    }
    let layout = EvenLayout { max_len: k / 4 };
    let even = layout.nodes();
    let map = |targets: Vec<usize>, width: usize| Transition::Map { targets, width };

    let marker_level = |from: &[Pending]| {
        let on = |m: bool| {
            map(
                from.iter().map(|&s| layout.odd_index(s, m)).collect(),
                layout.odd_width(),
            )
        };
        LevelTransition::new(on(false), on(true))
    };
    let value_level = {
        let on = |v: bool| {
            let mut targets = vec![layout.index(Pending::Reject); layout.odd_width()];
            for &s in even.iter().filter(|s| **s != Pending::Reject) {
                for m in [false, true] {
                    targets[layout.odd_index(s, m)] = layout.index(push(s, m, v, layout.max_len));
                }
            }
            map(targets, layout.width())
        };
        LevelTransition::new(on(false), on(true))
    };

    let mut levels = Vec::with_capacity(n);
    levels.push(marker_level(&[Pending::Equal]));
    let inner_marker = marker_level(&even);
    for j in 2..=k {
        levels.push(if j % 2 == 0 {
            value_level.clone()
        } else {
            inner_marker.clone()
        });
    }
    let idle = Transition::identity(Shape::Map, layout.width());
    for _ in k..n {
        levels.push(LevelTransition::new(idle.clone(), idle.clone()));
    }
    ObddProgram::new(
        ProgramKind::Deterministic,
        VariableOrder::natural(n),
        levels,
        0,
        [layout.index(Pending::Equal)],
        false,
    )
}
