use std::collections::VecDeque;

use crate::grid::{neighbors_unchecked, CellCoord, Path};
use crate::verdict::SolveOutcome;

use super::{pair_target, WataridoriInstance, WataridoriSolution};

struct BudgetExceeded;

/// Exact search for small instances.
///
/// The first unpaired circle (in instance order) is paired with each
/// number-compatible partner in turn, and for each partner every admissible
/// route is tried before moving on. A partial route is cut as soon as it
/// re-enters a region, exceeds its target count, or can no longer reach its
/// partner without entering a used region. After each completed route every
/// remaining circle must still reach some compatible partner.
///
/// `budget` bounds the number of search nodes.
pub fn solve(inst: &WataridoriInstance, budget: u64) -> SolveOutcome<WataridoriSolution> {
    if inst.circles.len() % 2 == 1 {
        return SolveOutcome::Unsat;
    }
    let mut search = Search::new(inst, budget);
    match search.pair_next() {
        Ok(true) => SolveOutcome::Solved(WataridoriSolution::from_paths(
            search.paths.into_iter().map(Path::new),
        )),
        Ok(false) => SolveOutcome::Unsat,
        Err(BudgetExceeded) => SolveOutcome::BudgetExceeded,
    }
}

struct Search<'a> {
    inst: &'a WataridoriInstance,
    width: usize,
    height: usize,
    region: Vec<u32>,
    circle_index: Vec<Option<usize>>,
    paired: Vec<bool>,
    used: Vec<bool>,
    region_used: Vec<bool>,
    paths: Vec<Vec<CellCoord>>,
    nodes: u64,
    budget: u64,
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<CellCoord>,
}

struct Route {
    goal: CellCoord,
    goal_region: u32,
    target: Option<u32>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a WataridoriInstance, budget: u64) -> Self {
        let (width, height) = (inst.width(), inst.height());
        let mut circle_index = vec![None; width * height];
        for (i, c) in inst.circles.iter().enumerate() {
            circle_index[c.cell.y * width + c.cell.x] = Some(i);
        }
        Search {
            inst,
            width,
            height,
            region: inst.regions.ids().to_vec(),
            circle_index,
            paired: vec![false; inst.circles.len()],
            used: vec![false; width * height],
            region_used: vec![false; inst.regions.region_count()],
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

    fn reg(&self, c: CellCoord) -> u32 {
        self.region[self.idx(c)]
    }

    fn free(&self, c: CellCoord) -> bool {
        let i = self.idx(c);
        !self.used[i] && self.circle_index[i].is_none()
    }

    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(BudgetExceeded)
        } else {
            Ok(())
        }
    }

    fn pair_next(&mut self) -> Result<bool, BudgetExceeded> {
        self.tick()?;
        let Some(first) = self.paired.iter().position(|p| !p) else {
            return Ok(true);
        };
        let inst = self.inst;
        let circles = &inst.circles;
        let start = circles[first].cell;
        for partner in first + 1..circles.len() {
            if self.paired[partner] {
                continue;
            }
            let Ok(target) = pair_target(circles[first].number, circles[partner].number) else {
                continue;
            };
            let goal = circles[partner].cell;
            let route = Route {
                goal,
                goal_region: self.reg(goal),
                target,
            };
            self.paired[first] = true;
            self.paired[partner] = true;
            let (si, gi) = (self.idx(start), self.idx(goal));
            self.used[si] = true;
            self.used[gi] = true;
            let r = self.reg(start);
            self.region_used[r as usize] = true;
            self.paths.push(vec![start]);
            let found = self.walk(&route, start, 1)?;
            if found {
                return Ok(true);
            }
            self.paths.pop();
            self.region_used[r as usize] = false;
            self.used[si] = false;
            self.used[gi] = false;
            self.paired[first] = false;
            self.paired[partner] = false;
        }
        Ok(false)
    }

    fn walk(&mut self, route: &Route, cur: CellCoord, runs: u32) -> Result<bool, BudgetExceeded> {
        self.tick()?;
        let cur_region = self.reg(cur);
        let next_cells: Vec<CellCoord> = neighbors_unchecked(cur, self.width, self.height).collect();
        for next in next_cells {
            if next == route.goal {
                let entering = route.goal_region != cur_region;
                if entering && self.region_used[route.goal_region as usize] {
                    continue;
                }
                let total = runs + entering as u32;
                if route.target.is_some_and(|t| t != total) {
                    continue;
                }
                let last = self.paths.len() - 1;
                self.paths[last].push(next);
                if self.remaining_feasible() {
                    // region usage is per path
                    let fresh = vec![false; self.region_used.len()];
                    let saved = std::mem::replace(&mut self.region_used, fresh);
                    let found = self.pair_next();
                    self.region_used = saved;
                    if found? {
                        return Ok(true);
                    }
                }
                self.paths[last].pop();
                continue;
            }
            if !self.free(next) {
                continue;
            }
            let r = self.reg(next);
            let entering = r != cur_region;
            if entering && self.region_used[r as usize] {
                continue;
            }
            let runs_next = runs + entering as u32;
            if let Some(t) = route.target {
                // ending outside the current region costs one more run
                let min_total = runs_next + (route.goal_region != r) as u32;
                if min_total > t {
                    continue;
                }
            }
            let ni = self.idx(next);
            self.used[ni] = true;
            if entering {
                self.region_used[r as usize] = true;
            }
            let last = self.paths.len() - 1;
            self.paths[last].push(next);
            if self.goal_reachable(next, route) && self.walk(route, next, runs_next)? {
                return Ok(true);
            }
            self.paths[last].pop();
            if entering {
                self.region_used[r as usize] = false;
            }
            self.used[ni] = false;
        }
        Ok(false)
    }

    /// The goal can still be reached through free cells that lie in the
    /// current region or in regions the route has not used.
    fn goal_reachable(&mut self, from: CellCoord, route: &Route) -> bool {
        let here = self.reg(from);
        if route.goal_region != here && self.region_used[route.goal_region as usize] {
            return false;
        }
        self.bfs(from, |s, c| {
            let r = s.reg(c);
            s.free(c) && (r == here || !s.region_used[r as usize])
        }, |c| c == route.goal)
    }

    /// Every unpaired circle still reaches some compatible unpaired partner.
    fn remaining_feasible(&mut self) -> bool {
        let n = self.inst.circles.len();
        for i in 0..n {
            if self.paired[i] {
                continue;
            }
            let a = self.inst.circles[i];
            let partners: Vec<CellCoord> = (0..n)
                .filter(|&j| j != i && !self.paired[j])
                .filter(|&j| pair_target(a.number, self.inst.circles[j].number).is_ok())
                .map(|j| self.inst.circles[j].cell)
                .collect();
            if partners.is_empty() {
                return false;
            }
            if !self.bfs(a.cell, |s, c| s.free(c), |c| partners.contains(&c)) {
                return false;
            }
        }
        true
    }

    fn bfs(
        &mut self,
        from: CellCoord,
        passable: impl Fn(&Self, CellCoord) -> bool,
        is_goal: impl Fn(CellCoord) -> bool,
    ) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut queue = std::mem::take(&mut self.queue);
        queue.clear();
        queue.push_back(from);
        let fi = self.idx(from);
        self.mark[fi] = epoch;
        let mut found = false;
        'outer: while let Some(c) = queue.pop_front() {
            for n in neighbors_unchecked(c, self.width, self.height) {
                if is_goal(n) {
                    found = true;
                    break 'outer;
                }
                let ni = self.idx(n);
                if self.mark[ni] != epoch && passable(self, n) {
                    self.mark[ni] = epoch;
                    queue.push_back(n);
                }
            }
        }
        self.queue = queue;
        found
    }
}
