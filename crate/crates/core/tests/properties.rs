mod common;

use common::{c, fixture, numberlink_oracle, same_region_oracle};
use proptest::prelude::*;
use wataridori_core::format;
use wataridori_core::grid::{region_runs, regions_from_walls, CellCoord, Path, RegionMap, WallSegment};
use wataridori_core::lifting::{lift, unlift};
use wataridori_core::numberlink::{self, LabeledPath, NumberlinkInstance, NumberlinkSolution};
use wataridori_core::reduction::reduce;
use wataridori_core::wataridori::{self, WataridoriSolution};
use wataridori_core::SolveOutcome;

fn walls_strategy() -> impl Strategy<Value = (usize, usize, Vec<WallSegment>)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(w, h)| {
        let horizontal = prop::collection::vec((0..w, 0..=h), 0..30)
            .prop_map(|v| v.into_iter().map(|(x, y)| WallSegment::horizontal(x, y)).collect::<Vec<_>>());
        let vertical = prop::collection::vec((0..=w, 0..h), 0..30)
            .prop_map(|v| v.into_iter().map(|(x, y)| WallSegment::vertical(x, y)).collect::<Vec<_>>());
        (Just(w), Just(h), horizontal, vertical).prop_map(|(w, h, mut a, b)| {
            a.extend(b);
            (w, h, a)
        })
    })
}

/// Applies reversals (bit i of `flips`) and a rotation of the path order.
fn shuffled<T: Clone>(items: &[T], flips: u64, shift: usize, reverse: impl Fn(&T) -> T) -> Vec<T> {
    let mut out: Vec<T> = items
        .iter()
        .enumerate()
        .map(|(i, p)| if flips >> (i % 64) & 1 == 1 { reverse(p) } else { p.clone() })
        .collect();
    let len = out.len();
    out.rotate_left(shift % len.max(1));
    out
}

proptest! {
    #[test]
    fn regions_agree_with_reachability((w, h, walls) in walls_strategy()) {
        let rmap = regions_from_walls(&walls, w, h).unwrap();
        let reach = same_region_oracle(w, h, &walls);
        for i in 0..w * h {
            for j in 0..w * h {
                let (a, b) = (c(i % w, i / w), c(j % w, j / w));
                prop_assert_eq!(rmap.id(a) == rmap.id(b), reach[i][j]);
            }
        }
        // canonical: rebuilding from the ids changes nothing
        let again = RegionMap::from_labels(w, h, rmap.ids().to_vec()).unwrap();
        prop_assert_eq!(&again, &rmap);
        // ids are dense and the first cell in scan order gets id 0
        prop_assert_eq!(rmap.id(c(0, h - 1)), 0);
        prop_assert_eq!(*rmap.ids().iter().max().unwrap() as usize + 1, rmap.region_count());
    }

    #[test]
    fn run_lengths_sum_to_path_length(len in 2usize..12, seed in any::<u64>()) {
        // a snake through a 6x6 grid with random walls
        let cells: Vec<CellCoord> = (0..36).map(|i| if (i / 6) % 2 == 0 { c(i % 6, i / 6) } else { c(5 - i % 6, i / 6) }).take(len).collect();
        let walls: Vec<WallSegment> = (0..6).filter(|x| seed >> x & 1 == 1).map(|x| WallSegment::vertical(x, 0)).collect();
        let rmap = regions_from_walls(&walls, 6, 6).unwrap();
        let runs = region_runs(&cells, &rmap);
        let mut total = 0;
        let mut i = 0;
        for r in &runs {
            let start = i;
            while i < cells.len() && rmap.id(cells[i]) == *r {
                i += 1;
            }
            prop_assert!(i > start);
            total += i - start;
        }
        prop_assert_eq!(total, cells.len());
    }

    #[test]
    fn wataridori_verify_ignores_order_and_direction(flips in any::<u64>(), shift in 0usize..7, mutate in 0usize..3) {
        let inst = format::parse_wataridori(&fixture("wataridori_6x6.json")).unwrap();
        let mut sol = format::parse_wataridori_solution(&fixture("wataridori_6x6_solution.json")).unwrap();
        if mutate == 1 {
            sol.paths.remove(5);
        } else if mutate == 2 {
            sol.paths[6].cells = Path::new(vec![c(3, 3), c(2, 3), c(2, 4), c(2, 5), c(3, 5)]);
        }
        let base = wataridori::verify_solution(&inst, &sol);
        let paths: Vec<Path> = sol.iter().cloned().collect();
        let moved = WataridoriSolution::from_paths(shuffled(&paths, flips, shift, Path::reversed));
        let verdict = wataridori::verify_solution(&inst, &moved);
        prop_assert_eq!(verdict.is_accept(), base.is_accept());
        prop_assert_eq!(verdict.rule(), base.rule());
    }

    #[test]
    fn numberlink_verify_ignores_order_and_direction(flips in any::<u64>(), shift in 0usize..5) {
        let g = format::parse_numberlink(&fixture("numberlink_6x6.json")).unwrap();
        let sol = format::parse_numberlink_solution(&fixture("numberlink_6x6_solution.json")).unwrap();
        let moved = NumberlinkSolution {
            paths: shuffled(&sol.paths, flips, shift, |p| LabeledPath { label: p.label, cells: p.cells.reversed() }),
        };
        prop_assert!(numberlink::verify_solution(&g, &moved, false).is_accept());
        prop_assert_eq!(moved.normalized(), sol.normalized());
        prop_assert_eq!(moved.normalized().normalized(), moved.normalized());
    }

    #[test]
    fn lifting_random_small_instances(w in 1usize..=4, h in 1usize..=3, picks in prop::collection::vec(any::<prop::sample::Index>(), 2..=6)) {
        let n = w * h;
        prop_assume!(n >= 2);
        let mut cells: Vec<CellCoord> = Vec::new();
        for ix in picks {
            let i = ix.index(n);
            let cell = c(i % w, i / w);
            if !cells.contains(&cell) {
                cells.push(cell);
            }
        }
        let p = cells.len() / 2;
        prop_assume!(p >= 1);
        let g = NumberlinkInstance::from_pairs(w, h, (0..p).map(|i| (i as u32 + 1, cells[2 * i], cells[2 * i + 1])))
            .validate()
            .unwrap();
        match numberlink::solve(&g, 1_000_000) {
            SolveOutcome::Solved(sol) => {
                prop_assert!(numberlink_oracle(&g));
                let (hh, map) = reduce(&g).unwrap();
                let lifted = lift(&g, &sol, &map).unwrap();
                prop_assert!(wataridori::verify_solution(&hh, &lifted).is_accept());
                for (i, path) in lifted.iter().enumerate() {
                    let runs = region_runs(path.cells(), &hh.regions).len();
                    if i < p {
                        prop_assert_eq!(runs as u32, map.number_assignment[&(i as u32 + 1)]);
                    } else {
                        prop_assert_eq!((path.len(), runs), (2, 1));
                    }
                }
                prop_assert_eq!(unlift(&lifted, &map).unwrap(), sol.normalized());
            }
            SolveOutcome::Unsat => prop_assert!(!numberlink_oracle(&g)),
            SolveOutcome::BudgetExceeded => prop_assert!(false, "budget exceeded"),
        }
    }
}
