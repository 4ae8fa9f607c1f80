//! Exact minimal width for partial functions.
//!
//! A node of a deterministic OBDD is characterised by the set of prefix
//! classes reaching it. Such a set must be consistent (no suffix is forced
//! to both 0 and 1) and each bit must map it into a single node of the next
//! level. Because an edge carries every prefix reaching its source, one class
//! may be forced into several nodes, so the search runs over families of
//! overlapping blocks (closed covers) rather than partitions.

use std::collections::HashSet;

use super::classes::ClassStructure;
use super::subfunction::largest_comparable_groups;
use super::{BoundKind, OracleCaps, WidthReport};
use crate::error::{Error, Result};
use crate::functions::FunctionSpec;
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Transition, VariableOrder};

/// The optimum together with a program attaining it.
#[derive(Clone, Debug)]
pub struct PartialMinimum {
    pub report: WidthReport,
    pub witness: ObddProgram,
    /// Lower bound the search started from.
    pub start: usize,
    pub search_nodes: u64,
}

pub fn partial_min_width_exact(
    f: &FunctionSpec,
    order: &VariableOrder,
    caps: &OracleCaps,
) -> Result<PartialMinimum> {
    let cs = ClassStructure::build(f, order, caps.max_n_partial)?;
    let conflicts = cs.conflicts(caps.max_classes)?;
    let start = largest_comparable_groups(&cs).into_iter().max().unwrap_or(1);
    let upper = cs.counts().into_iter().max().unwrap_or(1);
    let mut nodes = 0;
    for w in start..=upper {
        let mut search = Search {
            cs: &cs,
            conflicts: &conflicts,
            width: w,
            failed: HashSet::new(),
            nodes,
            cap: caps.max_search_nodes,
        };
        let found = search.solve(0, vec![1])?;
        nodes = search.nodes;
        if let Some(families) = found {
            let witness = witness(&cs, order, &families)?;
            let report = WidthReport::new(
                families.iter().map(Vec::len).collect(),
                BoundKind::Exact,
                "closed-cover search",
            );
            return Ok(PartialMinimum {
                report,
                witness,
                start,
                search_nodes: nodes,
            });
        }
    }
    unreachable!("one block per class is always a solution")
}

fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Drops blocks contained in other blocks, then sorts.
fn canonical(mut blocks: Vec<u64>) -> Vec<u64> {
    blocks.sort_unstable_by_key(|b| std::cmp::Reverse(b.count_ones()));
    let mut kept: Vec<u64> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if !kept.iter().any(|&k| is_subset(b, k)) {
            kept.push(b);
        }
    }
    kept.sort_unstable();
    kept
}

struct Search<'a> {
    cs: &'a ClassStructure,
    conflicts: &'a [Vec<u64>],
    width: usize,
    failed: HashSet<(usize, Vec<u64>)>,
    nodes: u64,
    cap: u64,
}

struct Image {
    members: u64,
    conflicts: u64,
}

struct Group {
    union: u64,
    conflicts: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded {
                what: "partial-minimization search nodes",
                value: self.nodes,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Families for levels `level..=n` starting from `family`, if one fits the width.
    fn solve(&mut self, level: usize, family: Vec<u64>) -> Result<Option<Vec<Vec<u64>>>> {
        self.tick()?;
        if level == self.cs.n {
            return Ok(Some(vec![family]));
        }
        if self.failed.contains(&(level, family.clone())) {
            return Ok(None);
        }
        let kids = &self.cs.children[level];
        let mut images: Vec<u64> = family
            .iter()
            .flat_map(|&block| {
                [0, 1].map(|b| {
                    (0..kids.len())
                        .filter(|&c| block >> c & 1 == 1)
                        .fold(0u64, |m, c| m | 1 << kids[c][b])
                })
            })
            .collect();
        images.sort_unstable_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
        images.dedup();
        let images: Vec<u64> = canonical(images);
        let mut images: Vec<Image> = images
            .into_iter()
            .map(|members| Image {
                members,
                conflicts: self.conflicts_of(level + 1, members),
            })
            .collect();
        images.sort_by_key(|i| std::cmp::Reverse(i.members.count_ones()));

        let mut tried = HashSet::new();
        let found = self.assign(level, &images, 0, &mut Vec::new(), &mut tried)?;
        match found {
            Some(mut rest) => {
                rest.insert(0, family);
                Ok(Some(rest))
            }
            None => {
                self.failed.insert((level, family));
                Ok(None)
            }
        }
    }

    fn conflicts_of(&self, level: usize, members: u64) -> u64 {
        (0..64)
            .filter(|&c| members >> c & 1 == 1)
            .fold(0, |m, c| m | self.conflicts[level][c])
    }

    /// Groups images `i..` into at most `width` consistent blocks.
    fn assign(
        &mut self,
        level: usize,
        images: &[Image],
        i: usize,
        groups: &mut Vec<Group>,
        tried: &mut HashSet<Vec<u64>>,
    ) -> Result<Option<Vec<Vec<u64>>>> {
        if i == images.len() {
            let next = canonical(groups.iter().map(|g| g.union).collect());
            if !tried.insert(next.clone()) {
                return Ok(None);
            }
            return self.solve(level + 1, next);
        }
        self.tick()?;
        let img = &images[i];
        if groups.iter().any(|g| is_subset(img.members, g.union)) {
            return self.assign(level, images, i + 1, groups, tried);
        }
        for g in 0..groups.len() {
            if img.members & groups[g].conflicts != 0 || groups[g].union & img.conflicts != 0 {
                continue;
            }
            let saved = (groups[g].union, groups[g].conflicts);
            groups[g].union |= img.members;
            groups[g].conflicts |= img.conflicts;
            let r = self.assign(level, images, i + 1, groups, tried)?;
            groups[g].union = saved.0;
            groups[g].conflicts = saved.1;
            if r.is_some() {
                return Ok(r);
            }
        }
        if groups.len() < self.width {
            groups.push(Group {
                union: img.members,
                conflicts: img.conflicts,
            });
            let r = self.assign(level, images, i + 1, groups, tried)?;
            groups.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }
}

fn witness(cs: &ClassStructure, order: &VariableOrder, families: &[Vec<u64>]) -> Result<ObddProgram> {
    let mut levels = Vec::with_capacity(cs.n);
    for j in 0..cs.n {
        let (here, next) = (&families[j], &families[j + 1]);
        let kids = &cs.children[j];
        let on = |b: usize| {
            let targets = here
                .iter()
                .map(|&block| {
                    let img = (0..kids.len())
                        .filter(|&c| block >> c & 1 == 1)
                        .fold(0u64, |m, c| m | 1 << kids[c][b]);
                    next.iter()
                        .position(|&t| is_subset(img, t))
                        .expect("closed family")
                })
                .collect();
            Transition::Map {
                targets,
                width: next.len(),
            }
        };
        levels.push(LevelTransition::new(on(0), on(1)));
    }
    let ones = cs.accepting_leaves();
    let accept = families[cs.n]
        .iter()
        .enumerate()
        .filter(|(_, &b)| b & ones != 0)
        .map(|(i, _)| i);
    ObddProgram::new(
        ProgramKind::Deterministic,
        order.clone(),
        levels,
        0,
        accept,
        false,
    )
}
