use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::order::VariableOrder;
use super::transition::{LevelTransition, Shape, Transition};
use crate::error::{Error, Result};

/// Tolerance for stochastic column sums, unitarity and state normalization.
pub const MODEL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProgramKind {
    Deterministic,
    Nondeterministic,
    Probabilistic,
    Quantum,
}

impl ProgramKind {
    pub fn shape(self) -> Shape {
        match self {
            ProgramKind::Deterministic => Shape::Map,
            ProgramKind::Nondeterministic => Shape::Relation,
            ProgramKind::Probabilistic => Shape::Stochastic,
            ProgramKind::Quantum => Shape::Unitary,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProgramKind::Deterministic => "deterministic",
            ProgramKind::Nondeterministic => "nondeterministic",
            ProgramKind::Probabilistic => "probabilistic",
            ProgramKind::Quantum => "quantum",
        }
    }
}

impl fmt::Display for ProgramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProgramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deterministic" => Ok(ProgramKind::Deterministic),
            "nondeterministic" => Ok(ProgramKind::Nondeterministic),
            "probabilistic" => Ok(ProgramKind::Probabilistic),
            "quantum" => Ok(ProgramKind::Quantum),
            other => Err(Error::param(format!("unknown program kind `{other}`"))),
        }
    }
}

/// A single definitional violation found by validation.
///
/// Levels, columns and nodes are reported one-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    EmptyProgram,
    LevelCount {
        order: usize,
        levels: usize,
    },
    ShapeMismatch {
        level: usize,
        symbol: u8,
        expected: Shape,
        found: Shape,
    },
    DimensionMismatch {
        level: usize,
        detail: String,
    },
    TargetOutOfRange {
        level: usize,
        symbol: u8,
        node: usize,
        target: usize,
        width: usize,
    },
    NegativeEntry {
        level: usize,
        symbol: u8,
        row: usize,
        column: usize,
        value: f64,
    },
    ColumnSum {
        level: usize,
        symbol: u8,
        column: usize,
        sum: f64,
    },
    NotSquare {
        level: usize,
        symbol: u8,
    },
    NotUnitary {
        level: usize,
        symbol: u8,
        deviation: f64,
    },
    BadInitial {
        initial: usize,
        width: usize,
    },
    BadAccept {
        node: usize,
        width: usize,
    },
    FalseStable {
        level: usize,
    },
}

fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyProgram => write!(f, "program has no levels"),
            Violation::LevelCount { order, levels } => {
                write!(f, "order has {order} variables but program has {levels} levels")
            }
            Violation::ShapeMismatch {
                level,
                symbol,
                expected,
                found,
            } => write!(
                f,
                "level {level} symbol {symbol}: expected {expected:?} transition, found {found:?}"
            ),
            Violation::DimensionMismatch { level, detail } => write!(f, "level {level}: {detail}"),
            Violation::TargetOutOfRange {
                level,
                symbol,
                node,
                target,
                width,
            } => write!(
                f,
                "level {level} symbol {symbol}: node {node} targets {target}, outside 1..={width}"
            ),
            Violation::NegativeEntry {
                level,
                symbol,
                row,
                column,
                value,
            } => write!(
                f,
                "entry ({row}, {column}) of level {level} symbol {symbol} is negative ({value})"
            ),
            Violation::ColumnSum {
                level,
                symbol,
                column,
                sum,
            } => write!(
                f,
                "column {column} of level {level} sums to {} (symbol {symbol})",
                tidy(*sum)
            ),
            Violation::NotSquare { level, symbol } => {
                write!(f, "level {level} symbol {symbol}: unitary matrix is not square")
            }
            Violation::NotUnitary {
                level,
                symbol,
                deviation,
            } => write!(
                f,
                "level {level} symbol {symbol}: matrix is not unitary (max |U*U - I| = {deviation:e})"
            ),
            Violation::BadInitial { initial, width } => {
                write!(f, "initial node {initial} outside 1..={width}")
            }
            Violation::BadAccept { node, width } => {
                write!(f, "accepting node {node} outside 1..={width}")
            }
            Violation::FalseStable { level } => {
                write!(f, "marked stable but level {level} differs from level 1")
            }
        }
    }
}

/// Outcome of [`ObddProgram::validate`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A layered, width-bounded OBDD of one of the four kinds.
///
/// Level `j` (one-based) maps the `w_{j-1}` nodes of the previous level onto
/// `w_j` nodes, choosing `on0`/`on1` by the bit `x_{π(j)}`. Widths may differ
/// from level to level. Nodes are indexed from zero.
///
/// Programs are immutable. Validation runs once at construction and the
/// report is kept, so [`ObddProgram::simulate`] can refuse invalid programs
/// without re-checking every matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ObddProgram {
    kind: ProgramKind,
    order: VariableOrder,
    levels: Vec<LevelTransition>,
    initial: usize,
    accept: BTreeSet<usize>,
    stable: bool,
    report: ValidationReport,
}

impl ObddProgram {
    /// Assembles a program without rejecting it; see [`ObddProgram::validate`].
    pub fn from_parts(
        kind: ProgramKind,
        order: VariableOrder,
        levels: Vec<LevelTransition>,
        initial: usize,
        accept: impl IntoIterator<Item = usize>,
        stable: bool,
    ) -> Self {
        let mut p = ObddProgram {
            kind,
            order,
            levels,
            initial,
            accept: accept.into_iter().collect(),
            stable,
            report: ValidationReport::default(),
        };
        p.report = p.check();
        p
    }

    /// Assembles a program and fails if it violates any definitional constraint.
    pub fn new(
        kind: ProgramKind,
        order: VariableOrder,
        levels: Vec<LevelTransition>,
        initial: usize,
        accept: impl IntoIterator<Item = usize>,
        stable: bool,
    ) -> Result<Self> {
        let p = Self::from_parts(kind, order, levels, initial, accept, stable);
        if p.report.is_ok() {
            Ok(p)
        } else {
            Err(Error::InvalidProgram(p.report))
        }
    }

    /// A stable program: the same level transition repeated `order.len()` times.
    pub fn stable(
        kind: ProgramKind,
        order: VariableOrder,
        level: LevelTransition,
        initial: usize,
        accept: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let levels = vec![level; order.len()];
        Self::new(kind, order, levels, initial, accept, true)
    }

    pub fn kind(&self) -> ProgramKind {
        self.kind
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn levels(&self) -> &[LevelTransition] {
        &self.levels
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accept(&self) -> &BTreeSet<usize> {
        &self.accept
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Number of input bits.
    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn validate(&self) -> &ValidationReport {
        &self.report
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidProgram(self.report.clone()))
        }
    }

    /// Node counts `w_0 … w_n`.
    pub fn level_widths(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.levels.len() + 1);
        if let Some(first) = self.levels.first() {
            w.push(first.source_width());
        }
        w.extend(self.levels.iter().map(|l| l.target_width()));
        w
    }

    fn check(&self) -> ValidationReport {
        let mut v = Vec::new();
        if self.levels.is_empty() {
            v.push(Violation::EmptyProgram);
            return ValidationReport { violations: v };
        }
        if self.levels.len() != self.order.len() {
            v.push(Violation::LevelCount {
                order: self.order.len(),
                levels: self.levels.len(),
            });
        }
        let expected = self.kind.shape();
        for (j, level) in self.levels.iter().enumerate() {
            let lj = j + 1;
            for (sym, t) in [(0u8, &level.on0), (1u8, &level.on1)] {
                if t.shape() != expected {
                    v.push(Violation::ShapeMismatch {
                        level: lj,
                        symbol: sym,
                        expected,
                        found: t.shape(),
                    });
                    continue;
                }
                check_transition(lj, sym, t, &mut v);
            }
            if level.on0.source_width() != level.on1.source_width()
                || level.on0.target_width() != level.on1.target_width()
            {
                v.push(Violation::DimensionMismatch {
                    level: lj,
                    detail: format!(
                        "on0 is {}->{} but on1 is {}->{}",
                        level.on0.source_width(),
                        level.on0.target_width(),
                        level.on1.source_width(),
                        level.on1.target_width()
                    ),
                });
            }
            if level.source_width() == 0 || level.target_width() == 0 {
                v.push(Violation::DimensionMismatch {
                    level: lj,
                    detail: "a level has no nodes".into(),
                });
            }
            if j > 0 && self.levels[j - 1].target_width() != level.source_width() {
                v.push(Violation::DimensionMismatch {
                    level: lj,
                    detail: format!(
                        "reads {} nodes but level {} produces {}",
                        level.source_width(),
                        j,
                        self.levels[j - 1].target_width()
                    ),
                });
            }
        }
        let w0 = self.levels[0].source_width();
        if self.initial >= w0 {
            v.push(Violation::BadInitial {
                initial: self.initial + 1,
                width: w0,
            });
        }
        let wn = self.levels[self.levels.len() - 1].target_width();
        for &a in &self.accept {
            if a >= wn {
                v.push(Violation::BadAccept {
                    node: a + 1,
                    width: wn,
                });
            }
        }
        if self.stable {
            if let Some(j) = self.levels.iter().position(|l| l != &self.levels[0]) {
                v.push(Violation::FalseStable { level: j + 1 });
            }
        }
        ValidationReport { violations: v }
    }
}

fn check_transition(level: usize, symbol: u8, t: &Transition, v: &mut Vec<Violation>) {
    match t {
        Transition::Map { targets, width } => {
            for (node, &dst) in targets.iter().enumerate() {
                if dst >= *width {
                    v.push(Violation::TargetOutOfRange {
                        level,
                        symbol,
                        node: node + 1,
                        target: dst + 1,
                        width: *width,
                    });
                }
            }
        }
        Transition::Relation { targets, width } => {
            for (node, set) in targets.iter().enumerate() {
                for &dst in set {
                    if dst >= *width {
                        v.push(Violation::TargetOutOfRange {
                            level,
                            symbol,
                            node: node + 1,
                            target: dst + 1,
                            width: *width,
                        });
                    }
                }
            }
        }
        Transition::Stochastic(m) => {
            for c in 0..m.ncols() {
                for r in 0..m.nrows() {
                    let x = m[(r, c)];
                    if x < 0.0 || !x.is_finite() {
                        v.push(Violation::NegativeEntry {
                            level,
                            symbol,
                            row: r + 1,
                            column: c + 1,
                            value: x,
                        });
                    }
                }
                let sum: f64 = m.column(c).iter().sum();
                if (sum - 1.0).abs() > MODEL_TOL {
                    v.push(Violation::ColumnSum {
                        level,
                        symbol,
                        column: c + 1,
                        sum,
                    });
                }
            }
        }
        Transition::Unitary(u) => {
            if u.nrows() != u.ncols() {
                v.push(Violation::NotSquare { level, symbol });
                return;
            }
            let gram = u.adjoint() * u;
            let mut dev: f64 = 0.0;
            for r in 0..gram.nrows() {
                for c in 0..gram.ncols() {
                    let target = if r == c { 1.0 } else { 0.0 };
                    dev = dev.max((gram[(r, c)] - target).norm());
                }
            }
            if dev.is_nan() || dev > MODEL_TOL {
                v.push(Violation::NotUnitary {
                    level,
                    symbol,
                    deviation: dev,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn stoch(rows: &[&[f64]]) -> Transition {
        let r = rows.len();
        let c = rows[0].len();
        Transition::Stochastic(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
    }

    #[test]
    fn identity_unitary_program_is_valid() {
        let id = Transition::identity(Shape::Unitary, 2);
        let p = ObddProgram::stable(
            ProgramKind::Quantum,
            VariableOrder::natural(3),
            LevelTransition::new(id.clone(), id),
            0,
            [0],
        )
        .unwrap();
        assert!(p.validate().is_ok());
        assert_eq!(p.validate().to_string(), "ok");
    }

    #[test]
    fn reports_bad_column_sum_by_level() {
        let good = stoch(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let bad = stoch(&[&[0.9, 0.0], &[0.0, 1.0]]);
        let levels = vec![
            LevelTransition::new(good.clone(), good.clone()),
            LevelTransition::new(good.clone(), good.clone()),
            LevelTransition::new(bad, good),
        ];
        let p = ObddProgram::from_parts(
            ProgramKind::Probabilistic,
            VariableOrder::natural(3),
            levels,
            0,
            [0],
            false,
        );
        let msg = p.validate().to_string();
        assert!(msg.contains("column 1 of level 3 sums to 0.9"), "{msg}");
        assert!(matches!(p.simulate(&[false; 3]), Err(Error::InvalidProgram(_))));
    }

    #[test]
    fn detects_non_unitary_and_shape_errors() {
        let skew = Transition::Unitary(DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0)));
        let id = Transition::identity(Shape::Unitary, 2);
        let p = ObddProgram::from_parts(
            ProgramKind::Quantum,
            VariableOrder::natural(1),
            vec![LevelTransition::new(skew, id)],
            0,
            [0],
            true,
        );
        assert!(matches!(p.validate().violations[0], Violation::NotUnitary { .. }));

        let map = Transition::identity(Shape::Map, 2);
        let p = ObddProgram::from_parts(
            ProgramKind::Quantum,
            VariableOrder::natural(1),
            vec![LevelTransition::new(map.clone(), map)],
            0,
            [0],
            false,
        );
        assert!(matches!(
            p.validate().violations[0],
            Violation::ShapeMismatch { .. }
        ));
    }

    #[test]
    fn detects_dimension_chain_and_bounds() {
        let a = Transition::Map {
            targets: vec![0, 1],
            width: 3,
        };
        let b = Transition::Map {
            targets: vec![0, 0],
            width: 2,
        };
        let p = ObddProgram::from_parts(
            ProgramKind::Deterministic,
            VariableOrder::natural(2),
            vec![
                LevelTransition::new(a.clone(), a),
                LevelTransition::new(b.clone(), b),
            ],
            5,
            [2],
            false,
        );
        let v = &p.validate().violations;
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::DimensionMismatch { level: 2, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::BadInitial { .. })));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::BadAccept { node: 3, .. })));
    }

    #[test]
    fn detects_false_stable_flag() {
        let id = Transition::identity(Shape::Map, 2);
        let swap = Transition::Map {
            targets: vec![1, 0],
            width: 2,
        };
        let p = ObddProgram::from_parts(
            ProgramKind::Deterministic,
            VariableOrder::natural(2),
            vec![
                LevelTransition::new(id.clone(), id.clone()),
                LevelTransition::new(id, swap),
            ],
            0,
            [0],
            true,
        );
        assert_eq!(p.validate().violations, vec![Violation::FalseStable { level: 2 }]);
    }
}
