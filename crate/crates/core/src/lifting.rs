//! Moving solutions across the reduction.
//!
//! [`lift`] turns a Numberlink solution into a solution of the reduced
//! Wataridori instance: every filler pair is joined directly, and the path for
//! label `i` leaves its first number block along a ladder, follows the
//! corridors of the blocks in between and enters the last number block along
//! another ladder. The ladders contribute `2k` regions each, the two center
//! pluses and the shared corridor region one each, and the `i - 1` zig-zags
//! (split between the two ends) two each, for `4k + 2i + 1` in total.
//!
//! [`unlift`] goes the other way by compressing each main path to the
//! sequence of blocks it visits.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{CellCoord, Path};
use crate::numberlink::{self, LabeledPath, NumberlinkInstance, NumberlinkSolution};
use crate::reduction::{block_middle, block_size, rotate_cell, BlockKind, ReductionMap};
use crate::wataridori::WataridoriSolution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("BAD_K: gadget parameter must be at least 1, got {0}")]
    BadK(usize),
    #[error("ZIGZAG_RANGE: label {label} needs more zig-zags than k = {k} allows")]
    LabelOutOfRange { label: u32, k: usize },
    #[error("ZIGZAG_RANGE: {z} zig-zags requested but k = {k}")]
    TooManyZigzags { z: usize, k: usize },
    #[error("INVALID_SOLUTION: {0}")]
    InvalidSolution(String),
    #[error("MAP_MISMATCH: the map was not produced from this instance")]
    MapMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnliftError {
    #[error("STRAY_CENTER: path {path} joins a block center to a filler circle")]
    StrayCenter { path: usize },
    #[error("BLOCK_REVISITED: path {path} returns to block {block}")]
    BlockRevisited { path: usize, block: CellCoord },
    #[error("LABEL_MISMATCH: path {path} joins centers of different labels")]
    LabelMismatch { path: usize },
    #[error("DUPLICATE_LABEL: label {0} is joined by more than one path")]
    DuplicateLabel(u32),
    #[error("MISSING_LABEL: no path joins the centers of label {0}")]
    MissingLabel(u32),
    #[error("NOT_VERIFIED: extracted solution fails verification: {0}")]
    NotVerified(String),
}

/// The side of a block a route leaves through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arm {
    East,
    North,
    West,
    South,
}

impl Arm {
    pub const ALL: [Arm; 4] = [Arm::East, Arm::North, Arm::West, Arm::South];

    /// Quarter turns counter-clockwise from [`Arm::East`].
    pub fn turns(self) -> usize {
        match self {
            Arm::East => 0,
            Arm::North => 1,
            Arm::West => 2,
            Arm::South => 3,
        }
    }

    /// The arm leading from block `from` to the adjacent block `to`.
    pub fn between(from: CellCoord, to: CellCoord) -> Option<Arm> {
        match (to.x as isize - from.x as isize, to.y as isize - from.y as isize) {
            (1, 0) => Some(Arm::East),
            (-1, 0) => Some(Arm::West),
            (0, 1) => Some(Arm::North),
            (0, -1) => Some(Arm::South),
            _ => None,
        }
    }
}

/// A block-local route from the center `(c, c)` to the entry cell of `arm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmRoute {
    pub arm: Arm,
    pub z: usize,
    pub cells: Path,
}

/// Splits the `i - 1` zig-zags of label `i` between the first and last block,
/// loading the first block up to `k`.
pub fn zigzag_split(label: u32, k: usize) -> Result<(usize, usize), LiftError> {
    if label < 1 || label as usize > 2 * k + 1 {
        return Err(LiftError::LabelOutOfRange { label, k });
    }
    let total = label as usize - 1;
    let za = total.min(k);
    Ok((za, total - za))
}

pub fn route_arm(k: usize, arm: Arm, z: usize) -> Result<ArmRoute, LiftError> {
    if k < 1 {
        return Err(LiftError::BadK(k));
    }
    if z > k {
        return Err(LiftError::TooManyZigzags { z, k });
    }
    let (s, c) = (block_size(k), block_middle(k));
    let p = CellCoord::new;
    let mut cells = vec![p(c, c), p(c + 1, c)];
    for t in 0..z {
        let x = c + 2 + 2 * t;
        cells.extend([p(x, c), p(x, c - 1), p(x + 1, c - 1), p(x + 1, c)]);
    }
    cells.extend((c + 2 + 2 * z..s).map(|x| p(x, c)));
    for _ in 0..arm.turns() {
        for cell in &mut cells {
            *cell = rotate_cell(*cell, s);
        }
    }
    Ok(ArmRoute {
        arm,
        z,
        cells: Path::new(cells),
    })
}

fn placed(route: &ArmRoute, block: CellCoord, s: usize) -> impl DoubleEndedIterator<Item = CellCoord> + '_ {
    route
        .cells
        .cells()
        .iter()
        .map(move |c| c.offset(block.x * s, block.y * s))
}

/// The main H path for one Numberlink path (given as its block sequence).
fn main_path(k: usize, label: u32, blocks: &[CellCoord]) -> Result<Vec<CellCoord>, LiftError> {
    let s = block_size(k);
    let (za, zb) = zigzag_split(label, k)?;
    let last = blocks.len() - 1;
    let arm = |a, b| Arm::between(a, b).expect("consecutive path cells are adjacent");

    let mut cells: Vec<CellCoord> = placed(&route_arm(k, arm(blocks[0], blocks[1]), za)?, blocks[0], s).collect();
    for j in 1..last {
        let inbound = route_arm(k, arm(blocks[j], blocks[j - 1]), 0)?;
        let outbound = route_arm(k, arm(blocks[j], blocks[j + 1]), 0)?;
        cells.extend(placed(&inbound, blocks[j], s).rev());
        cells.extend(placed(&outbound, blocks[j], s).skip(1));
    }
    let closing = route_arm(k, arm(blocks[last], blocks[last - 1]), zb)?;
    cells.extend(placed(&closing, blocks[last], s).rev());
    Ok(cells)
}

fn terminal_key(g: &NumberlinkInstance) -> (usize, usize, Vec<(u32, Vec<CellCoord>)>) {
    let mut terminals: Vec<(u32, Vec<CellCoord>)> = g
        .terminals
        .iter()
        .map(|t| {
            let mut cells = t.cells.clone();
            cells.sort();
            (t.label, cells)
        })
        .collect();
    terminals.sort();
    (g.width, g.height, terminals)
}

/// Lifts a verified Numberlink solution of `g` to the reduced instance
/// described by `map`. Main paths come first in label order, followed by one
/// two-cell path per filler pair.
pub fn lift(g: &NumberlinkInstance, sol: &NumberlinkSolution, map: &ReductionMap) -> Result<WataridoriSolution, LiftError> {
    let g = g.validate().map_err(|e| LiftError::InvalidSolution(e.to_string()))?;
    if terminal_key(&map.source_instance()) != terminal_key(&g) || map.block_size != block_size(map.k) {
        return Err(LiftError::MapMismatch);
    }
    let verdict = numberlink::verify_solution(&g, sol, false);
    if !verdict.is_accept() {
        return Err(LiftError::InvalidSolution(verdict.to_string()));
    }
    let mut paths = Vec::with_capacity(sol.paths.len() + map.filler_pairs.len());
    for lp in &sol.normalized().paths {
        paths.push(Path::new(main_path(map.k, lp.label, lp.cells.cells())?));
    }
    paths.extend(map.filler_pairs.iter().map(|&(a, b)| Path::new(vec![a, b])));
    Ok(WataridoriSolution::from_paths(paths))
}

/// Extracts the Numberlink solution from a verified solution of the reduced
/// instance. Paths joining two block centers are the main paths; each is
/// compressed to the blocks it visits.
pub fn unlift(h_sol: &WataridoriSolution, map: &ReductionMap) -> Result<NumberlinkSolution, UnliftError> {
    let centers: HashMap<CellCoord, u32> = map
        .blocks
        .iter()
        .filter(|b| b.kind == BlockKind::Number)
        .filter_map(|b| Some((b.center?, b.label?)))
        .collect();

    let mut found: BTreeMap<u32, Path> = BTreeMap::new();
    for (i, path) in h_sol.iter().enumerate() {
        let (Some(a), Some(b)) = (path.first(), path.last()) else {
            continue;
        };
        let label = match (centers.get(&a), centers.get(&b)) {
            (Some(&la), Some(&lb)) if la == lb => la,
            (Some(_), Some(_)) => return Err(UnliftError::LabelMismatch { path: i }),
            (None, None) => continue,
            _ => return Err(UnliftError::StrayCenter { path: i }),
        };
        let mut blocks: Vec<CellCoord> = Vec::new();
        for &cell in path.cells() {
            let block = map.block_of(cell);
            if blocks.last() == Some(&block) {
                continue;
            }
            if blocks.contains(&block) {
                return Err(UnliftError::BlockRevisited { path: i, block });
            }
            blocks.push(block);
        }
        if found.insert(label, Path::new(blocks)).is_some() {
            return Err(UnliftError::DuplicateLabel(label));
        }
    }
    for &label in map.number_assignment.keys() {
        if !found.contains_key(&label) {
            return Err(UnliftError::MissingLabel(label));
        }
    }
    let sol = NumberlinkSolution {
        paths: found
            .into_iter()
            .map(|(label, cells)| LabeledPath { label, cells })
            .collect(),
    }
    .normalized();
    let verdict = numberlink::verify_solution(&map.source_instance(), &sol, false);
    if !verdict.is_accept() {
        return Err(UnliftError::NotVerified(verdict.to_string()));
    }
    Ok(sol)
}
