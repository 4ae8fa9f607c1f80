use nalgebra::DMatrix;
use num_complex::Complex64;

/// One symbol's transition between two consecutive levels.
///
/// Matrices act on column vectors: entry `(target, source)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Transition {
    /// Deterministic map: `targets[source]`, into a level of `width` nodes.
    Map { targets: Vec<usize>, width: usize },
    /// Nondeterministic relation: `targets[source]` is a (possibly empty) set.
    Relation { targets: Vec<Vec<usize>>, width: usize },
    /// Column-stochastic matrix.
    Stochastic(DMatrix<f64>),
    /// Unitary matrix.
    Unitary(DMatrix<Complex64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Map,
    Relation,
    Stochastic,
    Unitary,
}

impl Transition {
    pub fn source_width(&self) -> usize {
        match self {
            Transition::Map { targets, .. } => targets.len(),
            Transition::Relation { targets, .. } => targets.len(),
            Transition::Stochastic(m) => m.ncols(),
            Transition::Unitary(u) => u.ncols(),
        }
    }

    pub fn target_width(&self) -> usize {
        match self {
            Transition::Map { width, .. } | Transition::Relation { width, .. } => *width,
            Transition::Stochastic(m) => m.nrows(),
            Transition::Unitary(u) => u.nrows(),
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Transition::Map { .. } => Shape::Map,
            Transition::Relation { .. } => Shape::Relation,
            Transition::Stochastic(_) => Shape::Stochastic,
            Transition::Unitary(_) => Shape::Unitary,
        }
    }

    /// Identity map on `width` nodes, in the given shape.
    pub fn identity(shape: Shape, width: usize) -> Self {
        match shape {
            Shape::Map => Transition::Map {
                targets: (0..width).collect(),
                width,
            },
            Shape::Relation => Transition::Relation {
                targets: (0..width).map(|i| vec![i]).collect(),
                width,
            },
            Shape::Stochastic => Transition::Stochastic(DMatrix::identity(width, width)),
            Shape::Unitary => Transition::Unitary(DMatrix::identity(width, width)),
        }
    }

    /// 0/1 column-stochastic matrix of a deterministic map.
    pub(crate) fn map_matrix(targets: &[usize], width: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(width, targets.len());
        for (src, &dst) in targets.iter().enumerate() {
            m[(dst, src)] = 1.0;
        }
        m
    }
}

/// The pair of transitions applied at one level, selected by the tested bit.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelTransition {
    pub on0: Transition,
    pub on1: Transition,
}

impl LevelTransition {
    pub fn new(on0: Transition, on1: Transition) -> Self {
        LevelTransition { on0, on1 }
    }

    pub fn on(&self, bit: bool) -> &Transition {
        if bit {
            &self.on1
        } else {
            &self.on0
        }
    }

    pub fn source_width(&self) -> usize {
        self.on0.source_width()
    }

    pub fn target_width(&self) -> usize {
        self.on0.target_width()
    }
}
