//! Numberlink to Wataridori reduction.
//!
//! Every Numberlink cell becomes an `s`-square block with `s = 4k + 5` and
//! `c = 2k + 2` the index of the middle row and column. Both block kinds
//! share a plus-shaped corridor through row `c` and column `c` that opens
//! onto the neighbouring blocks, and four `c`-square quadrants whose rims are
//! lined with circles numbered 1, paired up by adjacent "filler" pairs.
//!
//! A number block additionally carries a center circle at `(c, c)` and four
//! ladders: on each arm of the corridor, a band two cells wide and `2k` cells
//! long made of unit regions. The band covers `2k` corridor cells and the
//! adjacent `2k` quadrant cells (the flank), which pushes that quadrant's rim
//! inward by one cell. Leaving the block along an arm therefore crosses `2k`
//! regions, and each detour into the flank row and back adds two.
//!
//! Labels `1..=p` are assigned center numbers `4k + 2i + 1`; `k` is chosen so
//! that `2k + 1 >= p`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{regions_from_walls, CellCoord, GridError, RegionMap, WallSegment};
use crate::numberlink::{self, NumberlinkInstance, Terminal};
use crate::wataridori::{Circle, WataridoriInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("NO_PAIRS: the reduction needs at least one label")]
    NoPairs,
    #[error("BAD_K: gadget parameter must be at least 1, got {0}")]
    BadK(usize),
    #[error("BAD_NUMBER: center number {number} is not an odd value in {min}..={max}")]
    BadNumber { number: u32, min: u32, max: u32 },
    #[error("{0}")]
    Instance(#[from] numberlink::InstanceError),
    #[error("{0}")]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Number,
    Empty,
}

/// One block in block-local coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTemplate {
    pub kind: BlockKind,
    pub k: usize,
    pub size: usize,
    pub walls: BTreeSet<WallSegment>,
    pub circles: Vec<Circle>,
    pub filler_pairs: Vec<(CellCoord, CellCoord)>,
    pub center: Option<CellCoord>,
}

/// Block side length `4k + 5`.
pub fn block_size(k: usize) -> usize {
    4 * k + 5
}

/// Index of the middle row and column, `2k + 2`.
pub fn block_middle(k: usize) -> usize {
    2 * k + 2
}

/// Smallest admissible center number, `4k + 3`.
pub fn min_center_number(k: usize) -> u32 {
    (4 * k + 3) as u32
}

/// Largest admissible center number, `8k + 3`.
pub fn max_center_number(k: usize) -> u32 {
    (8 * k + 3) as u32
}

/// Center number for a label: `4k + 2i + 1`.
pub fn center_number(k: usize, label: u32) -> u32 {
    (4 * k) as u32 + 2 * label + 1
}

/// `k = max(1, ceil((p - 1) / 2))`, so that `2k + 1 >= p`.
pub fn choose_k(p: usize) -> Result<usize, ReductionError> {
    if p == 0 {
        return Err(ReductionError::NoPairs);
    }
    Ok((p - 1).div_ceil(2).max(1))
}

impl BlockTemplate {
    pub fn regions(&self) -> RegionMap {
        regions_from_walls(&self.walls, self.size, self.size).expect("block walls lie on the block lattice")
    }

    /// Image under a quarter turn counter-clockwise about the block center.
    pub fn rotated_ccw(&self) -> BlockTemplate {
        let s = self.size;
        BlockTemplate {
            kind: self.kind,
            k: self.k,
            size: s,
            walls: self.walls.iter().map(|w| w.rotated_ccw(s)).collect(),
            circles: self
                .circles
                .iter()
                .map(|c| Circle {
                    cell: rotate_cell(c.cell, s),
                    number: c.number,
                })
                .collect(),
            filler_pairs: self
                .filler_pairs
                .iter()
                .map(|&(a, b)| (rotate_cell(a, s), rotate_cell(b, s)))
                .collect(),
            center: self.center.map(|c| rotate_cell(c, s)),
        }
    }

    /// Cells of the four ladders (number blocks only).
    pub fn ladder_cells(&self) -> Vec<CellCoord> {
        if self.kind != BlockKind::Number {
            return Vec::new();
        }
        let c = block_middle(self.k);
        let bottom: Vec<CellCoord> = (c - 1..=c)
            .flat_map(|x| (1..=2 * self.k).map(move |y| CellCoord::new(x, y)))
            .collect();
        let mut out = bottom.clone();
        let mut arm = bottom;
        for _ in 0..3 {
            arm = arm.iter().map(|&p| rotate_cell(p, self.size)).collect();
            out.extend(&arm);
        }
        out
    }
}

/// Quarter turn counter-clockwise of a cell inside an `s`-square.
pub(crate) fn rotate_cell(c: CellCoord, s: usize) -> CellCoord {
    CellCoord::new(s - 1 - c.y, c.x)
}

fn check_k(k: usize) -> Result<(), ReductionError> {
    if k < 1 {
        Err(ReductionError::BadK(k))
    } else {
        Ok(())
    }
}

fn corridor_walls(k: usize) -> BTreeSet<WallSegment> {
    let (s, c) = (block_size(k), block_middle(k));
    let mut walls = BTreeSet::new();
    for at in [0, c, c + 1, s] {
        for (from, to) in [(0, c), (c + 1, s)] {
            walls.extend(WallSegment::line(at, from, at, to));
            walls.extend(WallSegment::line(from, at, to, at));
        }
    }
    walls
}

/// Filler pairs around the bottom-left quadrant. With `flank` set, the right
/// side of the rim is pushed in by one column where the bottom ladder
/// occupies the quadrant's last column.
fn bottom_left_ring(k: usize, flank: bool) -> Vec<(CellCoord, CellCoord)> {
    let c = block_middle(k);
    let p = CellCoord::new;
    let mut pairs = Vec::with_capacity(4 * k + 2);
    for j in 0..=k {
        pairs.push((p(2 * j, 0), p(2 * j + 1, 0)));
    }
    for j in 0..=k {
        pairs.push((p(2 * j, c - 1), p(2 * j + 1, c - 1)));
    }
    for j in 0..k {
        pairs.push((p(0, 2 * j + 1), p(0, 2 * j + 2)));
    }
    let right = if flank { c - 2 } else { c - 1 };
    for j in 0..k {
        pairs.push((p(right, 2 * j + 1), p(right, 2 * j + 2)));
    }
    pairs
}

fn assemble(kind: BlockKind, k: usize, walls: BTreeSet<WallSegment>, center_number: Option<u32>) -> BlockTemplate {
    let s = block_size(k);
    let mut quadrant = bottom_left_ring(k, kind == BlockKind::Number);
    let mut filler_pairs = Vec::with_capacity(4 * quadrant.len());
    for _ in 0..4 {
        filler_pairs.extend(&quadrant);
        quadrant = quadrant
            .iter()
            .map(|&(a, b)| (rotate_cell(a, s), rotate_cell(b, s)))
            .collect();
    }
    let mut circles: Vec<Circle> = filler_pairs
        .iter()
        .flat_map(|&(a, b)| [Circle::numbered(a, 1), Circle::numbered(b, 1)])
        .collect();
    let center = center_number.map(|n| {
        let c = block_middle(k);
        let cell = CellCoord::new(c, c);
        circles.push(Circle::numbered(cell, n));
        cell
    });
    BlockTemplate {
        kind,
        k,
        size: s,
        walls,
        circles,
        filler_pairs,
        center,
    }
}

/// A block standing for an empty Numberlink cell.
pub fn build_empty_block(k: usize) -> Result<BlockTemplate, ReductionError> {
    check_k(k)?;
    Ok(assemble(BlockKind::Empty, k, corridor_walls(k), None))
}

/// A block standing for a Numberlink terminal; `number` goes on the center
/// circle and must be odd and within `4k+3..=8k+3`.
pub fn build_number_block(k: usize, number: u32) -> Result<BlockTemplate, ReductionError> {
    check_k(k)?;
    let (min, max) = (min_center_number(k), max_center_number(k));
    if number % 2 == 0 || number < min || number > max {
        return Err(ReductionError::BadNumber { number, min, max });
    }
    let (s, c) = (block_size(k), block_middle(k));
    let mut walls = corridor_walls(k);
    // bottom, left, top, right ladders
    walls.extend(WallSegment::lattice(c - 1, 1, c + 1, 2 * k + 1));
    walls.extend(WallSegment::lattice(1, c, 2 * k + 1, c + 2));
    walls.extend(WallSegment::lattice(c, c + 2, c + 2, s - 1));
    walls.extend(WallSegment::lattice(c + 2, c - 1, s - 1, c + 1));
    Ok(assemble(BlockKind::Number, k, walls, Some(number)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    pub gx: usize,
    pub gy: usize,
    pub kind: BlockKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
    /// Center circle in H coordinates (number blocks only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CellCoord>,
}

/// Everything needed to relate a Numberlink instance to its reduced
/// Wataridori instance. All cells are in H coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionMap {
    pub k: usize,
    pub block_size: usize,
    pub g_width: usize,
    pub g_height: usize,
    /// One record per Numberlink cell, bottom row first.
    pub blocks: Vec<BlockRecord>,
    pub number_assignment: BTreeMap<u32, u32>,
    pub filler_pairs: Vec<(CellCoord, CellCoord)>,
}

impl ReductionMap {
    pub fn block(&self, gx: usize, gy: usize) -> Option<&BlockRecord> {
        (gx < self.g_width && gy < self.g_height).then(|| &self.blocks[gy * self.g_width + gx])
    }

    /// Block containing an H cell, as Numberlink coordinates.
    pub fn block_of(&self, cell: CellCoord) -> CellCoord {
        CellCoord::new(cell.x / self.block_size, cell.y / self.block_size)
    }

    pub fn label_for_number(&self, number: u32) -> Option<u32> {
        self.number_assignment
            .iter()
            .find(|(_, &n)| n == number)
            .map(|(&label, _)| label)
    }

    pub fn h_width(&self) -> usize {
        self.block_size * self.g_width
    }

    pub fn h_height(&self) -> usize {
        self.block_size * self.g_height
    }

    /// The (normalized) Numberlink instance the map was produced from.
    pub fn source_instance(&self) -> NumberlinkInstance {
        let mut by_label: BTreeMap<u32, Vec<CellCoord>> = BTreeMap::new();
        for b in &self.blocks {
            if let Some(label) = b.label {
                by_label.entry(label).or_default().push(CellCoord::new(b.gx, b.gy));
            }
        }
        let terminals = by_label
            .into_iter()
            .map(|(label, cells)| Terminal { label, cells })
            .collect();
        NumberlinkInstance::new(self.g_width, self.g_height, terminals)
    }
}

/// Builds the Wataridori instance for a Numberlink instance. Labels are
/// normalized first, so the assignment is always `i -> 4k + 2i + 1`.
pub fn reduce(g: &NumberlinkInstance) -> Result<(WataridoriInstance, ReductionMap), ReductionError> {
    let g = g.validate()?;
    let p = g.pair_count();
    let k = choose_k(p)?;
    let (s, c) = (block_size(k), block_middle(k));
    let (m, n) = (g.width, g.height);

    let number_assignment: BTreeMap<u32, u32> = (1..=p as u32).map(|i| (i, center_number(k, i))).collect();
    let empty = build_empty_block(k)?;
    let number_blocks = number_assignment
        .values()
        .map(|&num| build_number_block(k, num))
        .collect::<Result<Vec<_>, _>>()?;
    let labels = g.terminal_labels();

    let mut walls: Vec<WallSegment> = Vec::new();
    let mut circles: Vec<Circle> = Vec::new();
    let mut filler_pairs = Vec::new();
    let mut blocks = Vec::with_capacity(m * n);
    for gy in 0..n {
        for gx in 0..m {
            let label = labels.get(&CellCoord::new(gx, gy)).copied();
            let template = match label {
                Some(l) => &number_blocks[l as usize - 1],
                None => &empty,
            };
            let (dx, dy) = (gx * s, gy * s);
            walls.extend(template.walls.iter().map(|w| w.translated(dx, dy)));
            circles.extend(template.circles.iter().map(|ci| ci.translated(dx, dy)));
            filler_pairs.extend(
                template
                    .filler_pairs
                    .iter()
                    .map(|&(a, b)| (a.offset(dx, dy), b.offset(dx, dy))),
            );
            blocks.push(BlockRecord {
                gx,
                gy,
                kind: template.kind,
                label,
                center: label.map(|_| CellCoord::new(dx + c, dy + c)),
            });
        }
    }
    let regions = regions_from_walls(&walls, s * m, s * n)?;
    let map = ReductionMap {
        k,
        block_size: s,
        g_width: m,
        g_height: n,
        blocks,
        number_assignment,
        filler_pairs,
    };
    Ok((WataridoriInstance::new(regions, circles), map))
}
