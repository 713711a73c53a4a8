//! Wataridori: pair up all circles with disjoint paths whose region count
//! matches the circle numbers.
//!
//! A path's region count is the number of maximal runs of its cells that lie
//! in one region; a path may not come back to a region it has left, so the
//! count equals the number of distinct regions touched. Region boundaries are
//! counting boundaries only and paths may cross them freely.

mod solver;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{region_runs, CellCoord, GridError, Path, RegionMap};
use crate::verdict::{Rule, Verdict};

pub use solver::solve;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("DUPLICATE_CIRCLE: two circles on cell {0}")]
    DuplicateCircle(CellCoord),
    #[error("OUT_OF_BOUNDS: circle {0} is outside the grid")]
    OutOfBounds(CellCoord),
    #[error("INVALID_NUMBER: circle {0} has number 0")]
    InvalidNumber(CellCoord),
    #[error("REGION_MAP: {0}")]
    RegionMap(#[from] GridError),
}

impl InstanceError {
    pub fn code(&self) -> &'static str {
        match self {
            InstanceError::DuplicateCircle(_) => "DUPLICATE_CIRCLE",
            InstanceError::OutOfBounds(_) => "OUT_OF_BOUNDS",
            InstanceError::InvalidNumber(_) => "INVALID_NUMBER",
            InstanceError::RegionMap(_) => "REGION_MAP",
        }
    }
}

/// A circle; `number: None` is a wildcard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle {
    pub cell: CellCoord,
    pub number: Option<u32>,
}

impl Circle {
    pub fn numbered(cell: CellCoord, number: u32) -> Self {
        Circle {
            cell,
            number: Some(number),
        }
    }

    pub fn wildcard(cell: CellCoord) -> Self {
        Circle { cell, number: None }
    }

    pub fn translated(&self, dx: usize, dy: usize) -> Circle {
        Circle {
            cell: self.cell.offset(dx, dy),
            number: self.number,
        }
    }
}

/// The region count two circles demand of the path joining them, or an
/// error if their numbers disagree. `Ok(None)` means any count is accepted.
pub(crate) fn pair_target(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>, ()> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(()),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WataridoriInstance {
    pub regions: RegionMap,
    pub circles: Vec<Circle>,
}

impl WataridoriInstance {
    pub fn new(regions: RegionMap, circles: Vec<Circle>) -> Self {
        WataridoriInstance { regions, circles }
    }

    pub fn width(&self) -> usize {
        self.regions.width()
    }

    pub fn height(&self) -> usize {
        self.regions.height()
    }

    /// Checks circle placement. An odd number of circles is allowed: such an
    /// instance is unsolvable, not malformed.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let mut seen = HashMap::new();
        for circle in &self.circles {
            if !circle.cell.in_bounds(self.width(), self.height()) {
                return Err(InstanceError::OutOfBounds(circle.cell));
            }
            if circle.number == Some(0) {
                return Err(InstanceError::InvalidNumber(circle.cell));
            }
            if seen.insert(circle.cell, ()).is_some() {
                return Err(InstanceError::DuplicateCircle(circle.cell));
            }
        }
        Ok(())
    }

    pub fn circle_at(&self) -> HashMap<CellCoord, Circle> {
        self.circles.iter().map(|c| (c.cell, *c)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnlabeledPath {
    pub cells: Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WataridoriSolution {
    pub paths: Vec<UnlabeledPath>,
}

impl WataridoriSolution {
    pub fn from_paths(paths: impl IntoIterator<Item = Path>) -> Self {
        WataridoriSolution {
            paths: paths.into_iter().map(|cells| UnlabeledPath { cells }).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().map(|p| &p.cells)
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Checks a candidate solution. Rules are checked in this order, and the
/// first failure is reported:
///
/// 1. every path is a simple orthogonal path (`BAD_PATH`);
/// 2. both endpoints of every path are circles (`ENDPOINT_NOT_CIRCLE`);
/// 3. no cell is used twice and no path runs through a circle (`CELL_SHARED`);
/// 4. every circle ends some path (`UNPAIRED_CIRCLE`);
/// 5. per path: no region is re-entered (`REGION_REENTERED`), endpoint
///    numbers agree (`NUMBER_MISMATCH`) and equal the region count
///    (`COUNT_MISMATCH`). Two wildcards accept any count.
pub fn verify_solution(inst: &WataridoriInstance, sol: &WataridoriSolution) -> Verdict {
    let (width, height) = (inst.width(), inst.height());
    let circles = inst.circle_at();

    for (i, p) in sol.iter().enumerate() {
        if let Some(at) = p.first_defect(width, height) {
            return Verdict::reject(Rule::BadPath, Some(i), p.cells().get(at).copied());
        }
    }
    for (i, p) in sol.iter().enumerate() {
        for end in [p.first().unwrap(), p.last().unwrap()] {
            if !circles.contains_key(&end) {
                return Verdict::reject(Rule::EndpointNotCircle, Some(i), Some(end));
            }
        }
    }
    let mut owner: HashMap<CellCoord, usize> = HashMap::new();
    for (i, p) in sol.iter().enumerate() {
        let cells = p.cells();
        for (j, &c) in cells.iter().enumerate() {
            let interior = j > 0 && j + 1 < cells.len();
            if owner.insert(c, i).is_some() || (interior && circles.contains_key(&c)) {
                return Verdict::reject(Rule::CellShared, Some(i), Some(c));
            }
        }
    }
    if let Some(c) = inst.circles.iter().find(|c| !owner.contains_key(&c.cell)) {
        return Verdict::reject(Rule::UnpairedCircle, None, Some(c.cell));
    }
    for (i, p) in sol.iter().enumerate() {
        if let Err(rule) = check_path_count(p, inst, &circles) {
            return Verdict::reject(rule.0, Some(i), Some(rule.1));
        }
    }
    Verdict::Accept
}

fn check_path_count(
    p: &Path,
    inst: &WataridoriInstance,
    circles: &HashMap<CellCoord, Circle>,
) -> Result<(), (Rule, CellCoord)> {
    let cells = p.cells();
    let runs = region_runs(cells, &inst.regions);
    let mut seen = std::collections::HashSet::new();
    for (j, &c) in cells.iter().enumerate() {
        let id = inst.regions.id(c);
        let starts_run = j == 0 || inst.regions.id(cells[j - 1]) != id;
        if starts_run && !seen.insert(id) {
            return Err((Rule::RegionReentered, c));
        }
    }
    let (a, b) = (p.first().unwrap(), p.last().unwrap());
    let target = pair_target(circles[&a].number, circles[&b].number).map_err(|_| (Rule::NumberMismatch, b))?;
    match target {
        Some(n) if n as usize != runs.len() => Err((Rule::CountMismatch, b)),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{regions_from_walls, WallSegment};

    fn c(x: usize, y: usize) -> CellCoord {
        CellCoord::new(x, y)
    }

    fn path(cells: &[(usize, usize)]) -> Path {
        cells.iter().map(|&(x, y)| c(x, y)).collect()
    }

    /// 3x1 strip split into three single-cell regions.
    fn three_cells(left: Option<u32>, right: Option<u32>) -> WataridoriInstance {
        let walls = [WallSegment::vertical(1, 0), WallSegment::vertical(2, 0)];
        let regions = regions_from_walls(&walls, 3, 1).unwrap();
        WataridoriInstance::new(
            regions,
            vec![
                Circle { cell: c(0, 0), number: left },
                Circle { cell: c(2, 0), number: right },
            ],
        )
    }

    #[test]
    fn count_rule() {
        let sol = WataridoriSolution::from_paths([path(&[(0, 0), (1, 0), (2, 0)])]);
        assert!(verify_solution(&three_cells(Some(3), Some(3)), &sol).is_accept());
        assert!(verify_solution(&three_cells(Some(3), None), &sol).is_accept());
        assert!(verify_solution(&three_cells(None, None), &sol).is_accept());
        assert_eq!(
            verify_solution(&three_cells(Some(2), Some(2)), &sol).rule(),
            Some(Rule::CountMismatch)
        );
        assert_eq!(
            verify_solution(&three_cells(Some(3), Some(2)), &sol).rule(),
            Some(Rule::NumberMismatch)
        );
    }

    #[test]
    fn reentry_rejected() {
        // 2x2 grid: left column is one region, right column two single cells
        let labels = vec![1, 2, 1, 0];
        let regions = RegionMap::from_labels(2, 2, labels).unwrap();
        // ids along the path: left, bottom-right, left  -> [a, b, a]
        let inst = WataridoriInstance::new(
            regions,
            vec![Circle::wildcard(c(0, 0)), Circle::wildcard(c(0, 1))],
        );
        let sol = WataridoriSolution::from_paths([path(&[(0, 0), (1, 0), (1, 1), (0, 1)])]);
        let sol_bad = WataridoriSolution::from_paths([path(&[(0, 0), (1, 0), (1, 1)])]);
        assert_eq!(verify_solution(&inst, &sol_bad).rule(), Some(Rule::EndpointNotCircle));
        // left column -> (1,0) -> (1,1) -> left column again
        let v = verify_solution(&inst, &sol);
        assert_eq!(v.rule(), Some(Rule::RegionReentered));
        assert_eq!(v.rejection().unwrap().cell, Some(c(0, 1)));
    }

    #[test]
    fn structural_rejections() {
        let inst = three_cells(None, None);
        let empty = WataridoriSolution::default();
        let v = verify_solution(&inst, &empty);
        assert_eq!(v.rule(), Some(Rule::UnpairedCircle));
        assert_eq!(v.rejection().unwrap().cell, Some(c(0, 0)));

        let single = WataridoriSolution::from_paths([path(&[(0, 0)])]);
        assert_eq!(verify_solution(&inst, &single).rule(), Some(Rule::BadPath));

        let twice = WataridoriSolution::from_paths([
            path(&[(0, 0), (1, 0), (2, 0)]),
            path(&[(2, 0), (1, 0), (0, 0)]),
        ]);
        assert_eq!(verify_solution(&inst, &twice).rule(), Some(Rule::CellShared));
    }

    #[test]
    fn path_through_circle_is_shared() {
        let regions = regions_from_walls(&[], 3, 1).unwrap();
        let inst = WataridoriInstance::new(
            regions,
            vec![
                Circle::wildcard(c(0, 0)),
                Circle::wildcard(c(1, 0)),
                Circle::wildcard(c(2, 0)),
            ],
        );
        let sol = WataridoriSolution::from_paths([path(&[(0, 0), (1, 0), (2, 0)])]);
        let v = verify_solution(&inst, &sol);
        assert_eq!(v.rule(), Some(Rule::CellShared));
        assert_eq!(v.rejection().unwrap().cell, Some(c(1, 0)));
    }

    #[test]
    fn validation() {
        let regions = regions_from_walls(&[], 2, 2).unwrap();
        let dup = WataridoriInstance::new(regions.clone(), vec![Circle::wildcard(c(0, 0)), Circle::numbered(c(0, 0), 2)]);
        assert_eq!(dup.validate().unwrap_err().code(), "DUPLICATE_CIRCLE");
        let oob = WataridoriInstance::new(regions.clone(), vec![Circle::wildcard(c(2, 0))]);
        assert_eq!(oob.validate().unwrap_err().code(), "OUT_OF_BOUNDS");
        let lone = WataridoriInstance::new(regions_from_walls(&[], 1, 1).unwrap(), vec![Circle::wildcard(c(0, 0))]);
        assert!(lone.validate().is_ok());
    }
}
