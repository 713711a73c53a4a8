//! Numberlink: connect each pair of equal labels with vertex-disjoint paths.
//!
//! The default rules are the non-covering variant (cells may stay empty);
//! the covering variant is available through the `require_full_coverage`
//! flag of [`verify_solution`].

mod solver;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{CellCoord, Path};
use crate::verdict::{Rule, Verdict};

pub use solver::solve;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("EMPTY_GRID: grid must have positive width and height")]
    EmptyGrid,
    #[error("OUT_OF_BOUNDS: terminal {cell} of label {label} is outside the grid")]
    OutOfBounds { label: u32, cell: CellCoord },
    #[error("INVALID_LABEL: labels must be positive integers")]
    InvalidLabel,
    #[error("LABEL_MULTIPLICITY: label {label} appears {count} times, expected 2")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("DUPLICATE_TERMINAL: cell {0} carries more than one terminal")]
    DuplicateTerminal(CellCoord),
    #[error("NO_PAIRS: instance has no labels")]
    NoPairs,
}

impl InstanceError {
    pub fn code(&self) -> &'static str {
        match self {
            InstanceError::EmptyGrid => "EMPTY_GRID",
            InstanceError::OutOfBounds { .. } => "OUT_OF_BOUNDS",
            InstanceError::InvalidLabel => "INVALID_LABEL",
            InstanceError::LabelMultiplicity { .. } => "LABEL_MULTIPLICITY",
            InstanceError::DuplicateTerminal(_) => "DUPLICATE_TERMINAL",
            InstanceError::NoPairs => "NO_PAIRS",
        }
    }
}

/// One label and the cells that carry it. A validated instance has exactly
/// two cells per terminal entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Terminal {
    pub label: u32,
    pub cells: Vec<CellCoord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberlinkInstance {
    pub width: usize,
    pub height: usize,
    pub terminals: Vec<Terminal>,
}

impl NumberlinkInstance {
    pub fn new(width: usize, height: usize, terminals: Vec<Terminal>) -> Self {
        NumberlinkInstance {
            width,
            height,
            terminals,
        }
    }

    /// Convenience constructor from `(label, a, b)` triples.
    pub fn from_pairs(
        width: usize,
        height: usize,
        pairs: impl IntoIterator<Item = (u32, CellCoord, CellCoord)>,
    ) -> Self {
        let terminals = pairs
            .into_iter()
            .map(|(label, a, b)| Terminal {
                label,
                cells: vec![a, b],
            })
            .collect();
        NumberlinkInstance::new(width, height, terminals)
    }

    /// Checks structure and renumbers labels `1..=p` in first-appearance
    /// order, merging entries that share a label.
    pub fn validate(&self) -> Result<NumberlinkInstance, InstanceError> {
        if self.width == 0 || self.height == 0 {
            return Err(InstanceError::EmptyGrid);
        }
        let mut order: Vec<u32> = Vec::new();
        let mut cells_by_label: HashMap<u32, Vec<CellCoord>> = HashMap::new();
        let mut occupied: HashMap<CellCoord, u32> = HashMap::new();
        for t in &self.terminals {
            if t.label == 0 {
                return Err(InstanceError::InvalidLabel);
            }
            for &cell in &t.cells {
                if !cell.in_bounds(self.width, self.height) {
                    return Err(InstanceError::OutOfBounds {
                        label: t.label,
                        cell,
                    });
                }
                if occupied.insert(cell, t.label).is_some() {
                    return Err(InstanceError::DuplicateTerminal(cell));
                }
            }
            let entry = cells_by_label.entry(t.label).or_insert_with(|| {
                order.push(t.label);
                Vec::new()
            });
            entry.extend(&t.cells);
        }
        for &label in &order {
            let count = cells_by_label[&label].len();
            if count != 2 {
                return Err(InstanceError::LabelMultiplicity { label, count });
            }
        }
        if order.is_empty() {
            return Err(InstanceError::NoPairs);
        }
        let terminals = order
            .iter()
            .enumerate()
            .map(|(i, label)| Terminal {
                label: i as u32 + 1,
                cells: cells_by_label[label].clone(),
            })
            .collect();
        Ok(NumberlinkInstance::new(self.width, self.height, terminals))
    }

    /// Number of label pairs `p`.
    pub fn pair_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn endpoints(&self, label: u32) -> Option<(CellCoord, CellCoord)> {
        self.terminals
            .iter()
            .find(|t| t.label == label)
            .and_then(|t| match t.cells.as_slice() {
                [a, b] => Some((*a, *b)),
                _ => None,
            })
    }

    /// Label carried by each terminal cell.
    pub fn terminal_labels(&self) -> HashMap<CellCoord, u32> {
        self.terminals
            .iter()
            .flat_map(|t| t.cells.iter().map(move |&c| (c, t.label)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledPath {
    pub label: u32,
    pub cells: Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumberlinkSolution {
    pub paths: Vec<LabeledPath>,
}

impl NumberlinkSolution {
    /// Paths sorted by label, each oriented by [`Path::normalized`].
    pub fn normalized(&self) -> NumberlinkSolution {
        let mut paths: Vec<LabeledPath> = self
            .paths
            .iter()
            .map(|p| LabeledPath {
                label: p.label,
                cells: p.cells.normalized(),
            })
            .collect();
        paths.sort_by_key(|p| p.label);
        NumberlinkSolution { paths }
    }

    pub fn path(&self, label: u32) -> Option<&Path> {
        self.paths.iter().find(|p| p.label == label).map(|p| &p.cells)
    }
}

/// Checks a candidate solution against a validated instance. The reject
/// verdict names the first broken rule, checked in this order: per-path
/// structure and endpoints, missing labels, cell sharing, coverage.
pub fn verify_solution(
    inst: &NumberlinkInstance,
    sol: &NumberlinkSolution,
    require_full_coverage: bool,
) -> Verdict {
    let terminal_at = inst.terminal_labels();
    let mut seen_labels = HashMap::new();
    for (i, lp) in sol.paths.iter().enumerate() {
        let Some((a, b)) = inst.endpoints(lp.label) else {
            return Verdict::reject(Rule::UnknownLabel, Some(i), lp.cells.first());
        };
        if seen_labels.insert(lp.label, i).is_some() {
            return Verdict::reject(Rule::DuplicatePath, Some(i), lp.cells.first());
        }
        if let Some(at) = lp.cells.first_defect(inst.width, inst.height) {
            return Verdict::reject(Rule::BadPath, Some(i), lp.cells.cells().get(at).copied());
        }
        let (first, last) = (lp.cells.first().unwrap(), lp.cells.last().unwrap());
        if !((first == a && last == b) || (first == b && last == a)) {
            let off = if first != a && first != b { first } else { last };
            return Verdict::reject(Rule::EndpointMismatch, Some(i), Some(off));
        }
        let cells = lp.cells.cells();
        if let Some(&c) = cells[1..cells.len() - 1]
            .iter()
            .find(|c| terminal_at.contains_key(c))
        {
            return Verdict::reject(Rule::TerminalCrossed, Some(i), Some(c));
        }
    }
    if let Some(t) = inst
        .terminals
        .iter()
        .find(|t| !seen_labels.contains_key(&t.label))
    {
        return Verdict::reject(Rule::MissingPath, None, t.cells.first().copied());
    }
    let paths: Vec<Path> = sol.paths.iter().map(|p| p.cells.clone()).collect();
    if let Some((i, c)) = crate::grid::first_shared_cell(&paths) {
        return Verdict::reject(Rule::CellShared, Some(i), Some(c));
    }
    if require_full_coverage {
        let mut covered = vec![false; inst.width * inst.height];
        for p in &paths {
            for c in p.cells() {
                covered[c.y * inst.width + c.x] = true;
            }
        }
        // report the first uncovered cell in display order (top row first)
        for y in (0..inst.height).rev() {
            for x in 0..inst.width {
                if !covered[y * inst.width + x] {
                    return Verdict::reject(Rule::UncoveredCell, None, Some(CellCoord::new(x, y)));
                }
            }
        }
    }
    Verdict::Accept
}
