//! Text and SVG renderings. Both print the top row first; output depends only
//! on the inputs.

use std::collections::HashMap;
use std::fmt::Write;

use crate::format::Puzzle;
use crate::grid::{CellCoord, Path};

struct Board<'a> {
    width: usize,
    height: usize,
    wall_between: Box<dyn Fn(CellCoord, CellCoord) -> bool + 'a>,
    marks: HashMap<CellCoord, String>,
}

impl<'a> Board<'a> {
    fn new(puzzle: &'a Puzzle) -> Self {
        match puzzle {
            Puzzle::Wataridori(inst) => Board {
                width: inst.width(),
                height: inst.height(),
                wall_between: Box::new(|a, b| inst.regions.separates(a, b)),
                marks: inst
                    .circles
                    .iter()
                    .map(|c| (c.cell, c.number.map(|n| n.to_string()).unwrap_or_default()))
                    .collect(),
            },
            Puzzle::Numberlink(inst) => Board {
                width: inst.width,
                height: inst.height,
                wall_between: Box::new(|_, _| false),
                marks: inst
                    .terminals
                    .iter()
                    .flat_map(|t| t.cells.iter().map(move |&c| (c, t.label.to_string())))
                    .collect(),
            },
        }
    }

    /// Wall on the top side of cell `(x, y)`; `y == height` is the border.
    fn wall_above(&self, x: usize, y: usize) -> bool {
        y == 0 || y == self.height || (self.wall_between)(CellCoord::new(x, y - 1), CellCoord::new(x, y))
    }

    /// Wall on the left side of cell `(x, y)`; `x == width` is the border.
    fn wall_left(&self, x: usize, y: usize) -> bool {
        x == 0 || x == self.width || (self.wall_between)(CellCoord::new(x - 1, y), CellCoord::new(x, y))
    }
}

/// Grid with `+` corners, `-` and `|` walls, circles or terminals as `(n)`
/// (wildcards as `( )`) and path cells as `*`.
pub fn ascii(puzzle: &Puzzle, paths: &[Path]) -> String {
    let board = Board::new(puzzle);
    let on_path: std::collections::HashSet<CellCoord> = paths.iter().flat_map(|p| p.cells().iter().copied()).collect();
    let cell_w = board.marks.values().map(|m| m.len().max(1) + 2).max().unwrap_or(3).max(3);
    let mut out = String::new();
    let rule = |out: &mut String, y: usize| {
        for x in 0..board.width {
            out.push('+');
            let c = if board.wall_above(x, y) { '-' } else { ' ' };
            out.extend(std::iter::repeat(c).take(cell_w));
        }
        out.push_str("+\n");
    };
    for y in (0..board.height).rev() {
        rule(&mut out, y + 1);
        for x in 0..=board.width {
            out.push(if board.wall_left(x, y) { '|' } else { ' ' });
            if x == board.width {
                break;
            }
            let cell = CellCoord::new(x, y);
            let content = match board.marks.get(&cell) {
                Some(m) if m.is_empty() => "( )".to_owned(),
                Some(m) => format!("({m})"),
                None if on_path.contains(&cell) => "*".to_owned(),
                None => String::new(),
            };
            let left = (cell_w - content.len()) / 2;
            let _ = write!(out, "{:left$}{content}{:right$}", "", "", right = cell_w - content.len() - left);
        }
        out.push('\n');
    }
    rule(&mut out, 0);
    out
}

const CELL: usize = 40;
const MARGIN: usize = 10;

/// SVG with thin cell lines, bold walls, red path polylines and circles.
pub fn svg(puzzle: &Puzzle, paths: &[Path]) -> String {
    let board = Board::new(puzzle);
    let (w, h) = (board.width, board.height);
    let px = |x: usize| MARGIN + x * CELL;
    // y grows downward in SVG; grid line `y` sits at the top of row y - 1
    let py = |y: usize| MARGIN + (h - y) * CELL;
    let center = |c: CellCoord| (px(c.x) + CELL / 2, py(c.y + 1) + CELL / 2);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        w * CELL + 2 * MARGIN,
        h * CELL + 2 * MARGIN,
        w * CELL + 2 * MARGIN,
        h * CELL + 2 * MARGIN
    );
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>");

    out.push_str("<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
    for x in 0..=w {
        let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", px(x), py(h), px(x), py(0));
    }
    for y in 0..=h {
        let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", px(0), py(y), px(w), py(y));
    }
    out.push_str("</g>\n");

    out.push_str("<g stroke=\"black\" stroke-width=\"4\" stroke-linecap=\"square\">\n");
    for y in 0..=h {
        for x in 0..w {
            if board.wall_above(x, y) {
                let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", px(x), py(y), px(x + 1), py(y));
            }
        }
    }
    for x in 0..=w {
        for y in 0..h {
            if board.wall_left(x, y) {
                let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", px(x), py(y + 1), px(x), py(y));
            }
        }
    }
    out.push_str("</g>\n");

    for path in paths {
        let points: Vec<String> = path
            .cells()
            .iter()
            .map(|&c| {
                let (cx, cy) = center(c);
                format!("{cx},{cy}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"red\" stroke-width=\"4\" stroke-linejoin=\"round\"/>",
            points.join(" ")
        );
    }

    let mut marks: Vec<(&CellCoord, &String)> = board.marks.iter().collect();
    marks.sort_by_key(|(c, _)| c.row_major_key());
    for (&cell, label) in marks.into_iter().rev() {
        let (cx, cy) = center(cell);
        let _ = writeln!(
            out,
            "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>",
            CELL * 2 / 5
        );
        if !label.is_empty() {
            let _ = writeln!(
                out,
                "<text x=\"{cx}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{label}</text>",
                cy + 6
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
