//! Grid geometry shared by both puzzles: cell coordinates, orthogonal paths,
//! wall segments and the region partition they induce.
//!
//! Coordinates are `x` to the right and `y` upward, with `(0, 0)` the
//! bottom-left cell. Renderers flip rows for display.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("cell ({x},{y}) is outside the {width}x{height} grid")]
    OutOfBounds {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },
    #[error("wall segment {0} does not lie on the grid lattice")]
    WallOffLattice(WallSegment),
    #[error("region map has {found} cells, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("region ids are not dense: id {0} is missing")]
    NotDense(u32),
    #[error("region {0} is not orthogonally connected")]
    Disconnected(u32),
}

/// A cell position. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct CellCoord {
    pub x: usize,
    pub y: usize,
}

impl CellCoord {
    pub const fn new(x: usize, y: usize) -> Self {
        CellCoord { x, y }
    }

    pub fn in_bounds(self, width: usize, height: usize) -> bool {
        self.x < width && self.y < height
    }

    pub fn is_adjacent(self, other: CellCoord) -> bool {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y) == 1
    }

    pub fn offset(self, dx: usize, dy: usize) -> CellCoord {
        CellCoord::new(self.x + dx, self.y + dy)
    }

    /// Sort key used when normalizing path direction: row first, then column.
    pub fn row_major_key(self) -> (usize, usize) {
        (self.y, self.x)
    }
}

impl From<(usize, usize)> for CellCoord {
    fn from((x, y): (usize, usize)) -> Self {
        CellCoord { x, y }
    }
}

impl From<CellCoord> for (usize, usize) {
    fn from(c: CellCoord) -> Self {
        (c.x, c.y)
    }
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// In-bounds orthogonal neighbours in the fixed order up, down, left, right.
pub fn orthogonal_neighbors(
    cell: CellCoord,
    width: usize,
    height: usize,
) -> Result<Vec<CellCoord>, GridError> {
    check_in_bounds(cell, width, height)?;
    Ok(neighbors_unchecked(cell, width, height).collect())
}

pub(crate) fn neighbors_unchecked(
    cell: CellCoord,
    width: usize,
    height: usize,
) -> impl Iterator<Item = CellCoord> {
    let CellCoord { x, y } = cell;
    let up = (y + 1 < height).then(|| CellCoord::new(x, y + 1));
    let down = (y > 0).then(|| CellCoord::new(x, y - 1));
    let left = (x > 0).then(|| CellCoord::new(x - 1, y));
    let right = (x + 1 < width).then(|| CellCoord::new(x + 1, y));
    [up, down, left, right].into_iter().flatten()
}

pub(crate) fn check_in_bounds(cell: CellCoord, width: usize, height: usize) -> Result<(), GridError> {
    if cell.in_bounds(width, height) {
        Ok(())
    } else {
        Err(GridError::OutOfBounds {
            x: cell.x,
            y: cell.y,
            width,
            height,
        })
    }
}

/// An ordered cell sequence. Construction does not enforce path validity so
/// that verifiers can report malformed input; see [`is_simple_orthogonal_path`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<CellCoord>);

impl Path {
    pub fn new(cells: Vec<CellCoord>) -> Self {
        Path(cells)
    }

    pub fn cells(&self) -> &[CellCoord] {
        &self.0
    }

    pub fn into_cells(self) -> Vec<CellCoord> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<CellCoord> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<CellCoord> {
        self.0.last().copied()
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Orients the path so the endpoint with the smaller `(y, x)` comes first.
    pub fn normalized(&self) -> Path {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) if b.row_major_key() < a.row_major_key() => self.reversed(),
            _ => self.clone(),
        }
    }

    /// Index of the first cell that breaks simplicity, or `None` if the path
    /// is a simple orthogonal path of length at least two.
    pub fn first_defect(&self, width: usize, height: usize) -> Option<usize> {
        first_defect(&self.0, width, height)
    }
}

impl From<Vec<CellCoord>> for Path {
    fn from(cells: Vec<CellCoord>) -> Self {
        Path(cells)
    }
}

impl FromIterator<CellCoord> for Path {
    fn from_iter<I: IntoIterator<Item = CellCoord>>(iter: I) -> Self {
        Path(iter.into_iter().collect())
    }
}

fn first_defect(cells: &[CellCoord], width: usize, height: usize) -> Option<usize> {
    if cells.len() < 2 {
        return Some(cells.len().saturating_sub(1));
    }
    let mut seen = HashSet::with_capacity(cells.len());
    for (i, &c) in cells.iter().enumerate() {
        if !c.in_bounds(width, height) || !seen.insert(c) {
            return Some(i);
        }
        if i > 0 && !cells[i - 1].is_adjacent(c) {
            return Some(i);
        }
    }
    None
}

/// True iff `cells` has length at least two, stays in bounds, moves between
/// orthogonally adjacent cells and never repeats a cell.
pub fn is_simple_orthogonal_path(cells: &[CellCoord], width: usize, height: usize) -> bool {
    first_defect(cells, width, height).is_none()
}

/// True iff no cell occurs in two distinct paths.
pub fn paths_pairwise_disjoint(paths: &[Path]) -> bool {
    first_shared_cell(paths).is_none()
}

/// The first `(path index, cell)` that repeats a cell owned by an earlier path.
pub fn first_shared_cell(paths: &[Path]) -> Option<(usize, CellCoord)> {
    let mut owner = std::collections::HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        for &c in p.cells() {
            match owner.get(&c) {
                Some(&j) if j != i => return Some((i, c)),
                _ => {
                    owner.insert(c, i);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A unit segment of the lattice, identified by its lower/left endpoint.
///
/// A horizontal segment at `(x, y)` runs from lattice point `(x, y)` to
/// `(x + 1, y)` and separates cell `(x, y - 1)` from cell `(x, y)`. A vertical
/// segment at `(x, y)` runs to `(x, y + 1)` and separates `(x - 1, y)` from
/// `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallSegment {
    pub x: usize,
    pub y: usize,
    pub orientation: Orientation,
}

impl WallSegment {
    pub const fn horizontal(x: usize, y: usize) -> Self {
        WallSegment {
            x,
            y,
            orientation: Orientation::Horizontal,
        }
    }

    pub const fn vertical(x: usize, y: usize) -> Self {
        WallSegment {
            x,
            y,
            orientation: Orientation::Vertical,
        }
    }

    pub fn on_lattice(&self, width: usize, height: usize) -> bool {
        match self.orientation {
            Orientation::Horizontal => self.x < width && self.y <= height,
            Orientation::Vertical => self.x <= width && self.y < height,
        }
    }

    pub fn translated(&self, dx: usize, dy: usize) -> WallSegment {
        WallSegment {
            x: self.x + dx,
            y: self.y + dy,
            orientation: self.orientation,
        }
    }

    /// Image under a quarter turn counter-clockwise inside a `size`-square.
    pub fn rotated_ccw(&self, size: usize) -> WallSegment {
        match self.orientation {
            Orientation::Horizontal => WallSegment::vertical(size - self.y, self.x),
            Orientation::Vertical => WallSegment::horizontal(size - self.y - 1, self.x),
        }
    }

    /// Expands a straight lattice line between two points into unit segments.
    pub fn line(x1: usize, y1: usize, x2: usize, y2: usize) -> Vec<WallSegment> {
        if y1 == y2 {
            (x1.min(x2)..x1.max(x2))
                .map(|x| WallSegment::horizontal(x, y1))
                .collect()
        } else {
            assert_eq!(x1, x2, "lattice lines must be axis-aligned");
            (y1.min(y2)..y1.max(y2))
                .map(|y| WallSegment::vertical(x1, y))
                .collect()
        }
    }

    /// Every unit lattice segment inside and on the rectangle with lattice
    /// corners `(x0, y0)` and `(x1, y1)`.
    pub fn lattice(x0: usize, y0: usize, x1: usize, y1: usize) -> Vec<WallSegment> {
        let mut out = Vec::new();
        for y in y0..=y1 {
            out.extend((x0..x1).map(|x| WallSegment::horizontal(x, y)));
        }
        for x in x0..=x1 {
            out.extend((y0..y1).map(|y| WallSegment::vertical(x, y)));
        }
        out
    }
}

impl fmt::Display for WallSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Horizontal => 'h',
            Orientation::Vertical => 'v',
        };
        write!(f, "{}({},{})", o, self.x, self.y)
    }
}

/// Per-cell region ids. Ids are dense and assigned in scan order (top row
/// first, left to right) of each region's first cell; every region is
/// orthogonally connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionMap {
    width: usize,
    height: usize,
    ids: Vec<u32>,
    count: u32,
}

impl RegionMap {
    /// Builds a map from arbitrary per-cell labels (row-major, bottom row
    /// first). Labels must be dense `0..R` and each must label one connected
    /// area; ids are then renumbered canonically.
    pub fn from_labels(width: usize, height: usize, labels: Vec<u32>) -> Result<Self, GridError> {
        if labels.len() != width * height {
            return Err(GridError::SizeMismatch {
                expected: width * height,
                found: labels.len(),
            });
        }
        let distinct: std::collections::BTreeSet<u32> = labels.iter().copied().collect();
        for (expected, &id) in distinct.iter().enumerate() {
            if id != expected as u32 {
                return Err(GridError::NotDense(expected as u32));
            }
        }
        let map = Self::flood(width, height, |a, b| {
            labels[a.y * width + a.x] == labels[b.y * width + b.x]
        });
        if map.count as usize != distinct.len() {
            // more components than labels: some label is split
            let mut first_component = vec![u32::MAX; distinct.len()];
            for (i, &l) in labels.iter().enumerate() {
                let comp = map.ids[i];
                let slot = &mut first_component[l as usize];
                if *slot == u32::MAX {
                    *slot = comp;
                } else if *slot != comp {
                    return Err(GridError::Disconnected(l));
                }
            }
        }
        Ok(map)
    }

    /// Connected components of the "joined" relation between adjacent cells,
    /// numbered in canonical scan order.
    fn flood(width: usize, height: usize, joined: impl Fn(CellCoord, CellCoord) -> bool) -> Self {
        let mut ids = vec![u32::MAX; width * height];
        let mut count = 0u32;
        let mut queue = VecDeque::new();
        for y in (0..height).rev() {
            for x in 0..width {
                if ids[y * width + x] != u32::MAX {
                    continue;
                }
                ids[y * width + x] = count;
                queue.push_back(CellCoord::new(x, y));
                while let Some(c) = queue.pop_front() {
                    for n in neighbors_unchecked(c, width, height) {
                        let slot = &mut ids[n.y * width + n.x];
                        if *slot == u32::MAX && joined(c, n) {
                            *slot = count;
                            queue.push_back(n);
                        }
                    }
                }
                count += 1;
            }
        }
        RegionMap {
            width,
            height,
            ids,
            count,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn region_count(&self) -> usize {
        self.count as usize
    }

    /// Region id of an in-bounds cell.
    ///
    /// Panics if the cell is outside the map.
    pub fn id(&self, cell: CellCoord) -> u32 {
        assert!(cell.in_bounds(self.width, self.height), "cell {cell} out of bounds");
        self.ids[cell.y * self.width + cell.x]
    }

    pub fn get(&self, cell: CellCoord) -> Option<u32> {
        cell.in_bounds(self.width, self.height)
            .then(|| self.ids[cell.y * self.width + cell.x])
    }

    /// Ids in row-major order, bottom row first.
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// Rows of ids, bottom row first.
    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.ids.chunks(self.width.max(1))
    }

    pub fn cells_of(&self, region: u32) -> Vec<CellCoord> {
        self.ids
            .iter()
            .enumerate()
            .filter(|(_, &id)| id == region)
            .map(|(i, _)| CellCoord::new(i % self.width, i / self.width))
            .collect()
    }

    /// True iff a region boundary separates the two adjacent cells.
    pub fn separates(&self, a: CellCoord, b: CellCoord) -> bool {
        self.id(a) != self.id(b)
    }
}

/// Partitions a `width` x `height` grid into regions separated by `walls`.
/// The outer boundary is always treated as walled.
pub fn regions_from_walls<'a, I>(walls: I, width: usize, height: usize) -> Result<RegionMap, GridError>
where
    I: IntoIterator<Item = &'a WallSegment>,
{
    // blocked[h]: horizontal segments indexed y * width + x, y in 0..=height
    let mut blocked_h = vec![false; width * (height + 1)];
    let mut blocked_v = vec![false; (width + 1) * height];
    for w in walls {
        if !w.on_lattice(width, height) {
            return Err(GridError::WallOffLattice(*w));
        }
        match w.orientation {
            Orientation::Horizontal => blocked_h[w.y * width + w.x] = true,
            Orientation::Vertical => blocked_v[w.y * (width + 1) + w.x] = true,
        }
    }
    Ok(RegionMap::flood(width, height, |a, b| {
        if a.x == b.x {
            let y = a.y.max(b.y);
            !blocked_h[y * width + a.x]
        } else {
            let x = a.x.max(b.x);
            !blocked_v[a.y * (width + 1) + x]
        }
    }))
}

/// The path's region ids with consecutive duplicates collapsed.
pub fn region_runs(path: &[CellCoord], rmap: &RegionMap) -> Vec<u32> {
    let mut runs: Vec<u32> = Vec::new();
    for &c in path {
        let id = rmap.id(c);
        if runs.last() != Some(&id) {
            runs.push(id);
        }
    }
    runs
}
