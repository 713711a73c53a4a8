#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::Rng;
use serde_json::Value;
use wataridori_core::grid::{CellCoord, WallSegment};
use wataridori_core::numberlink::NumberlinkInstance;
use wataridori_core::wataridori::WataridoriInstance;

pub fn c(x: usize, y: usize) -> CellCoord {
    CellCoord::new(x, y)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

fn cell_of(v: &Value) -> CellCoord {
    c(v[0].as_u64().unwrap() as usize, v[1].as_u64().unwrap() as usize)
}

fn unordered(a: CellCoord, b: CellCoord) -> (CellCoord, CellCoord) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A block drawing transcribed by hand: lattice lines, fully ruled
/// rectangles, circles (`None` marks the center circle) and filler ticks.
pub struct GadgetFixture {
    pub size: usize,
    pub walls: BTreeSet<WallSegment>,
    pub circles: BTreeSet<(CellCoord, Option<u32>)>,
    pub filler_pairs: BTreeSet<(CellCoord, CellCoord)>,
}

pub fn load_gadget(name: &str) -> GadgetFixture {
    let doc: Value = serde_json::from_str(&fixture(name)).unwrap();
    let coords = |v: &Value| -> Vec<usize> { v.as_array().unwrap().iter().map(|n| n.as_u64().unwrap() as usize).collect() };
    let mut walls = BTreeSet::new();
    for line in doc["lines"].as_array().unwrap() {
        let p = coords(line);
        walls.extend(WallSegment::line(p[0], p[1], p[2], p[3]));
    }
    for rect in doc["grids"].as_array().unwrap() {
        let p = coords(rect);
        walls.extend(WallSegment::lattice(p[0], p[1], p[2], p[3]));
    }
    let circles = doc["circles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (cell_of(v), v[2].as_u64().map(|n| n as u32)))
        .collect();
    let filler_pairs = doc["filler_pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| unordered(cell_of(&p[0]), cell_of(&p[1])))
        .collect();
    GadgetFixture {
        size: doc["size"].as_u64().unwrap() as usize,
        walls,
        circles,
        filler_pairs,
    }
}

pub fn pair_set(pairs: &[(CellCoord, CellCoord)]) -> BTreeSet<(CellCoord, CellCoord)> {
    pairs.iter().map(|&(a, b)| unordered(a, b)).collect()
}

/// Width, height and walls of a drawing given as lattice lines.
pub fn load_wall_lines(name: &str) -> (usize, usize, Vec<WallSegment>) {
    let doc: Value = serde_json::from_str(&fixture(name)).unwrap();
    let mut walls = Vec::new();
    for line in doc["lines"].as_array().unwrap() {
        let p: Vec<usize> = line.as_array().unwrap().iter().map(|n| n.as_u64().unwrap() as usize).collect();
        walls.extend(WallSegment::line(p[0], p[1], p[2], p[3]));
    }
    (doc["width"].as_u64().unwrap() as usize, doc["height"].as_u64().unwrap() as usize, walls)
}

fn neighbours(p: CellCoord, w: usize, h: usize) -> Vec<CellCoord> {
    let mut out = Vec::new();
    if p.x > 0 {
        out.push(c(p.x - 1, p.y));
    }
    if p.x + 1 < w {
        out.push(c(p.x + 1, p.y));
    }
    if p.y > 0 {
        out.push(c(p.x, p.y - 1));
    }
    if p.y + 1 < h {
        out.push(c(p.x, p.y + 1));
    }
    out
}

/// Same-region relation by transitive closure of "adjacent and not walled
/// off", computed over all cell pairs.
pub fn same_region_oracle(w: usize, h: usize, walls: &[WallSegment]) -> Vec<Vec<bool>> {
    let n = w * h;
    let walled: HashSet<&WallSegment> = walls.iter().collect();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
        let p = c(i % w, i / w);
        if p.x + 1 < w && !walled.contains(&WallSegment::vertical(p.x + 1, p.y)) {
            reach[i][i + 1] = true;
            reach[i + 1][i] = true;
        }
        if p.y + 1 < h && !walled.contains(&WallSegment::horizontal(p.x, p.y + 1)) {
            reach[i][i + w] = true;
            reach[i + w][i] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Every simple path from `from` to `to` whose interior avoids `blocked`.
pub fn all_simple_paths(
    w: usize,
    h: usize,
    from: CellCoord,
    to: CellCoord,
    blocked: &dyn Fn(CellCoord) -> bool,
) -> Vec<Vec<CellCoord>> {
    fn go(
        w: usize,
        h: usize,
        to: CellCoord,
        blocked: &dyn Fn(CellCoord) -> bool,
        cur: &mut Vec<CellCoord>,
        out: &mut Vec<Vec<CellCoord>>,
    ) {
        let last = *cur.last().unwrap();
        for n in neighbours(last, w, h) {
            if cur.contains(&n) {
                continue;
            }
            if n == to {
                let mut done = cur.clone();
                done.push(n);
                out.push(done);
            } else if !blocked(n) {
                cur.push(n);
                go(w, h, to, blocked, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(w, h, to, blocked, &mut vec![from], &mut out);
    out
}

/// Enumerates every path system; true iff some system connects all pairs
/// with cell-disjoint paths avoiding foreign terminals.
pub fn numberlink_oracle(inst: &NumberlinkInstance) -> bool {
    let terminals: HashSet<CellCoord> = inst.terminals.iter().flat_map(|t| t.cells.iter().copied()).collect();
    let options: Vec<Vec<Vec<CellCoord>>> = inst
        .terminals
        .iter()
        .map(|t| all_simple_paths(inst.width, inst.height, t.cells[0], t.cells[1], &|p| terminals.contains(&p)))
        .collect();
    fn pick(options: &[Vec<Vec<CellCoord>>], used: &mut HashSet<CellCoord>) -> bool {
        let Some((first, rest)) = options.split_first() else {
            return true;
        };
        for path in first {
            if path.iter().any(|p| used.contains(p)) {
                continue;
            }
            used.extend(path.iter().copied());
            let ok = pick(rest, used);
            for p in path {
                used.remove(p);
            }
            if ok {
                return true;
            }
        }
        false
    }
    pick(&options, &mut HashSet::new())
}

/// Whether a path satisfies the region rules for its two endpoint numbers,
/// computed from the raw per-cell ids.
fn path_counts_ok(path: &[CellCoord], ids: &[u32], w: usize, a: Option<u32>, b: Option<u32>) -> bool {
    let mut visited = Vec::new();
    let mut prev = None;
    for p in path {
        let id = ids[p.y * w + p.x];
        if prev != Some(id) {
            if visited.contains(&id) {
                return false;
            }
            visited.push(id);
            prev = Some(id);
        }
    }
    let r = visited.len() as u32;
    match (a, b) {
        (Some(x), Some(y)) => x == y && x == r,
        (Some(x), None) | (None, Some(x)) => x == r,
        (None, None) => true,
    }
}

/// Enumerate-everything Wataridori oracle: every pairing of the circles,
/// every simple path for each pair, checked against the rules directly.
pub fn wataridori_oracle(inst: &WataridoriInstance) -> bool {
    let (w, h) = (inst.width(), inst.height());
    let ids = inst.regions.ids();
    let circles: Vec<(CellCoord, Option<u32>)> = inst.circles.iter().map(|c| (c.cell, c.number)).collect();
    if circles.len() % 2 == 1 {
        return false;
    }
    let circle_cells: HashSet<CellCoord> = circles.iter().map(|c| c.0).collect();
    fn go(
        w: usize,
        h: usize,
        ids: &[u32],
        circles: &[(CellCoord, Option<u32>)],
        circle_cells: &HashSet<CellCoord>,
        paired: &mut Vec<bool>,
        used: &mut HashSet<CellCoord>,
    ) -> bool {
        let Some(i) = paired.iter().position(|p| !p) else {
            return true;
        };
        paired[i] = true;
        for j in 0..circles.len() {
            if paired[j] {
                continue;
            }
            paired[j] = true;
            let paths = all_simple_paths(w, h, circles[i].0, circles[j].0, &|p| circle_cells.contains(&p) || used.contains(&p));
            for path in paths {
                if !path_counts_ok(&path, ids, w, circles[i].1, circles[j].1) {
                    continue;
                }
                used.extend(path.iter().copied());
                let ok = go(w, h, ids, circles, circle_cells, paired, used);
                for p in &path {
                    used.remove(p);
                }
                if ok {
                    return true;
                }
            }
            paired[j] = false;
        }
        paired[i] = false;
        false
    }
    go(w, h, ids, &circles, &circle_cells, &mut vec![false; circles.len()], &mut HashSet::new())
}

/// Random partition of a `w` x `h` grid into at most `max_regions` connected
/// regions, grown from random seeds. Labels are row-major, bottom row first.
pub fn random_partition(rng: &mut StdRng, w: usize, h: usize, max_regions: usize) -> Vec<u32> {
    let n = w * h;
    let r = rng.gen_range(1..=max_regions.min(n));
    let mut labels = vec![u32::MAX; n];
    let mut seeds = 0;
    while seeds < r {
        let i = rng.gen_range(0..n);
        if labels[i] == u32::MAX {
            labels[i] = seeds as u32;
            seeds += 1;
        }
    }
    while labels.contains(&u32::MAX) {
        let i = rng.gen_range(0..n);
        if labels[i] != u32::MAX {
            continue;
        }
        let p = c(i % w, i / w);
        let near: Vec<u32> = neighbours(p, w, h)
            .into_iter()
            .map(|q| labels[q.y * w + q.x])
            .filter(|&l| l != u32::MAX)
            .collect();
        if !near.is_empty() {
            labels[i] = near[rng.gen_range(0..near.len())];
        }
    }
    labels
}

/// All set partitions of the `w` x `h` cells into connected parts, as dense
/// label vectors.
pub fn connected_partitions(w: usize, h: usize) -> Vec<Vec<u32>> {
    let n = w * h;
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    fn go(i: usize, max: u32, n: usize, w: usize, h: usize, labels: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            if wataridori_core::grid::RegionMap::from_labels(w, h, labels.clone()).is_ok() {
                out.push(labels.clone());
            }
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            go(i + 1, max.max(l + 1), n, w, h, labels, out);
        }
    }
    go(0, 0, n, w, h, &mut labels, &mut out);
    out
}
