use std::collections::VecDeque;

use crate::grid::{neighbors_unchecked, CellCoord, Path};
use crate::verdict::SolveOutcome;

use super::{LabeledPath, NumberlinkInstance, NumberlinkSolution};

struct BudgetExceeded;

/// Depth-first search over labels in order, growing one path at a time with
/// neighbours tried up, down, left, right.
///
/// Two prunings are applied, both of which preserve solvability for the
/// non-covering rules: every unfinished pair must stay connected through
/// free cells, and paths never touch themselves (a path that does can be
/// shortened without affecting the others).
///
/// `budget` bounds the number of search nodes.
pub fn solve(inst: &NumberlinkInstance, budget: u64) -> SolveOutcome<NumberlinkSolution> {
    let mut search = Search::new(inst, budget);
    match search.solve_from(0) {
        Ok(true) => {
            let paths = search
                .labels
                .iter()
                .zip(search.paths)
                .map(|(&label, cells)| LabeledPath {
                    label,
                    cells: Path::new(cells),
                })
                .collect();
            SolveOutcome::Solved(NumberlinkSolution { paths })
        }
        Ok(false) => SolveOutcome::Unsat,
        Err(BudgetExceeded) => SolveOutcome::BudgetExceeded,
    }
}

const FREE: u32 = 0;

struct Search {
    width: usize,
    height: usize,
    /// 0 for free cells, otherwise the owning pair index + 1
    owner: Vec<u32>,
    labels: Vec<u32>,
    pairs: Vec<(CellCoord, CellCoord)>,
    paths: Vec<Vec<CellCoord>>,
    nodes: u64,
    budget: u64,
    // scratch for reachability checks
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<CellCoord>,
}

impl Search {
    fn new(inst: &NumberlinkInstance, budget: u64) -> Self {
        let (width, height) = (inst.width, inst.height);
        let mut owner = vec![FREE; width * height];
        let mut labels = Vec::new();
        let mut pairs = Vec::new();
        for (i, t) in inst.terminals.iter().enumerate() {
            for c in &t.cells {
                owner[c.y * width + c.x] = i as u32 + 1;
            }
            labels.push(t.label);
            pairs.push((t.cells[0], t.cells[1]));
        }
        Search {
            width,
            height,
            owner,
            labels,
            pairs,
            paths: Vec::new(),
            nodes: 0,
            budget,
            mark: vec![0; width * height],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    fn idx(&self, c: CellCoord) -> usize {
        c.y * self.width + c.x
    }

    fn solve_from(&mut self, pair: usize) -> Result<bool, BudgetExceeded> {
        if pair == self.pairs.len() {
            return Ok(true);
        }
        let (start, target) = self.pairs[pair];
        self.paths.push(vec![start]);
        if self.extend(pair, start, target)? {
            return Ok(true);
        }
        self.paths.pop();
        Ok(false)
    }

    fn extend(&mut self, pair: usize, cur: CellCoord, target: CellCoord) -> Result<bool, BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded);
        }
        let tag = pair as u32 + 1;
        if cur.is_adjacent(target) {
            self.paths[pair].push(target);
            if self.later_pairs_connected(pair + 1) && self.solve_from(pair + 1)? {
                return Ok(true);
            }
            self.paths[pair].pop();
            return Ok(false);
        }
        let candidates: Vec<CellCoord> = neighbors_unchecked(cur, self.width, self.height).collect();
        for next in candidates {
            let ni = self.idx(next);
            if self.owner[ni] != FREE {
                continue;
            }
            let touches_self = neighbors_unchecked(next, self.width, self.height)
                .any(|n| n != cur && n != target && self.owner[self.idx(n)] == tag);
            if touches_self {
                continue;
            }
            self.owner[ni] = tag;
            self.paths[pair].push(next);
            if self.connected(next, target) && self.later_pairs_connected(pair + 1) {
                if self.extend(pair, next, target)? {
                    return Ok(true);
                }
            }
            self.paths[pair].pop();
            self.owner[ni] = FREE;
        }
        Ok(false)
    }

    fn later_pairs_connected(&mut self, from: usize) -> bool {
        (from..self.pairs.len()).all(|p| {
            let (a, b) = self.pairs[p];
            self.connected(a, b)
        })
    }

    /// Breadth-first reachability from `a` to `b` through free cells.
    fn connected(&mut self, a: CellCoord, b: CellCoord) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        self.queue.clear();
        self.queue.push_back(a);
        let ai = self.idx(a);
        self.mark[ai] = epoch;
        while let Some(c) = self.queue.pop_front() {
            for n in neighbors_unchecked(c, self.width, self.height) {
                if n == b {
                    return true;
                }
                let ni = self.idx(n);
                if self.mark[ni] != epoch && self.owner[ni] == FREE {
                    self.mark[ni] = epoch;
                    self.queue.push_back(n);
                }
            }
        }
        false
    }
}
