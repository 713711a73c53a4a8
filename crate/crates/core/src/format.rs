//! Canonical JSON documents.
//!
//! Every writer produces the same layout: one top-level key per line, lists
//! with one compact item per line, and a trailing newline. Parsing a document
//! the writers produced and writing it again gives back the same bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{CellCoord, RegionMap};
use crate::numberlink::{NumberlinkInstance, NumberlinkSolution, Terminal};
use crate::reduction::ReductionMap;
use crate::wataridori::{Circle, WataridoriInstance, WataridoriSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatErrorKind {
    Syntax,
    UnknownField,
    MissingField,
    WrongPuzzle,
    Invalid,
}

impl FormatErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            FormatErrorKind::Syntax => "SYNTAX",
            FormatErrorKind::UnknownField => "UNKNOWN_FIELD",
            FormatErrorKind::MissingField => "MISSING_FIELD",
            FormatErrorKind::WrongPuzzle => "WRONG_PUZZLE",
            FormatErrorKind::Invalid => "INVALID",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{} at line {line}, column {column}: {message}", kind.code())]
pub struct FormatError {
    pub kind: FormatErrorKind,
    pub message: String,
    /// 1-based; 0 when the problem is not tied to a position.
    pub line: usize,
    pub column: usize,
}

impl FormatError {
    fn invalid(message: impl ToString) -> Self {
        FormatError {
            kind: FormatErrorKind::Invalid,
            message: message.to_string(),
            line: 0,
            column: 0,
        }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let message = e.to_string();
        let kind = match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => FormatErrorKind::Syntax,
            Category::Data if message.starts_with("unknown field") => FormatErrorKind::UnknownField,
            Category::Data if message.starts_with("missing field") => FormatErrorKind::MissingField,
            Category::Data => FormatErrorKind::Invalid,
        };
        FormatError {
            kind,
            message,
            line: e.line(),
            column: e.column(),
        }
    }
}

/// A parsed puzzle of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Puzzle {
    Numberlink(NumberlinkInstance),
    Wataridori(WataridoriInstance),
}

#[derive(Deserialize)]
struct Probe {
    puzzle: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NumberlinkDoc {
    puzzle: String,
    width: usize,
    height: usize,
    terminals: Vec<Terminal>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleDoc {
    x: usize,
    y: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    number: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WataridoriDoc {
    puzzle: String,
    width: usize,
    height: usize,
    regions: Vec<Vec<u32>>,
    circles: Vec<CircleDoc>,
}

fn probe(text: &str) -> Result<String, FormatError> {
    Ok(serde_json::from_str::<Probe>(text)?.puzzle)
}

fn expect_puzzle(found: &str, expected: &str) -> Result<(), FormatError> {
    if found == expected {
        Ok(())
    } else {
        Err(FormatError {
            kind: FormatErrorKind::WrongPuzzle,
            message: format!("expected a {expected} document, found \"{found}\""),
            line: 0,
            column: 0,
        })
    }
}

/// Parses a puzzle document, dispatching on its `"puzzle"` field.
pub fn parse_puzzle(text: &str) -> Result<Puzzle, FormatError> {
    match probe(text)?.as_str() {
        "numberlink" => parse_numberlink(text).map(Puzzle::Numberlink),
        "wataridori" => parse_wataridori(text).map(Puzzle::Wataridori),
        other => Err(FormatError {
            kind: FormatErrorKind::WrongPuzzle,
            message: format!("unknown puzzle kind \"{other}\""),
            line: 0,
            column: 0,
        }),
    }
}

/// Parses and validates a Numberlink instance; labels come back normalized.
pub fn parse_numberlink(text: &str) -> Result<NumberlinkInstance, FormatError> {
    expect_puzzle(&probe(text)?, "numberlink")?;
    let doc: NumberlinkDoc = serde_json::from_str(text)?;
    NumberlinkInstance::new(doc.width, doc.height, doc.terminals)
        .validate()
        .map_err(FormatError::invalid)
}

/// Parses and validates a Wataridori instance. Region rows are listed bottom
/// row first; region ids must be dense and each id must label a connected
/// area. Ids are renumbered canonically.
pub fn parse_wataridori(text: &str) -> Result<WataridoriInstance, FormatError> {
    expect_puzzle(&probe(text)?, "wataridori")?;
    let doc: WataridoriDoc = serde_json::from_str(text)?;
    if doc.width == 0 || doc.height == 0 {
        return Err(FormatError::invalid("grid must have positive width and height"));
    }
    if doc.regions.len() != doc.height {
        return Err(FormatError::invalid(format!(
            "expected {} region rows, found {}",
            doc.height,
            doc.regions.len()
        )));
    }
    if let Some((y, row)) = doc.regions.iter().enumerate().find(|(_, r)| r.len() != doc.width) {
        return Err(FormatError::invalid(format!(
            "region row {y} has {} entries, expected {}",
            row.len(),
            doc.width
        )));
    }
    let labels = doc.regions.into_iter().flatten().collect();
    let regions = RegionMap::from_labels(doc.width, doc.height, labels).map_err(FormatError::invalid)?;
    let circles = doc
        .circles
        .into_iter()
        .map(|c| Circle {
            cell: CellCoord::new(c.x, c.y),
            number: c.number,
        })
        .collect();
    let inst = WataridoriInstance::new(regions, circles);
    inst.validate().map_err(FormatError::invalid)?;
    Ok(inst)
}

pub fn parse_numberlink_solution(text: &str) -> Result<NumberlinkSolution, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_wataridori_solution(text: &str) -> Result<WataridoriSolution, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_map(text: &str) -> Result<ReductionMap, FormatError> {
    Ok(serde_json::from_str(text)?)
}

enum Field {
    Scalar(String),
    List(Vec<String>),
}

fn compact<T: Serialize>(v: T) -> String {
    serde_json::to_string(&v).expect("document values serialize")
}

fn scalar<T: Serialize>(v: T) -> Field {
    Field::Scalar(compact(v))
}

fn list<T: Serialize>(items: impl IntoIterator<Item = T>) -> Field {
    Field::List(items.into_iter().map(compact).collect())
}

fn write_document(fields: Vec<(&str, Field)>) -> String {
    let mut out = String::from("{\n");
    let n = fields.len();
    for (i, (name, field)) in fields.into_iter().enumerate() {
        out.push_str("  ");
        out.push_str(&compact(name));
        out.push_str(": ");
        match field {
            Field::Scalar(v) => out.push_str(&v),
            Field::List(items) if items.is_empty() => out.push_str("[]"),
            Field::List(items) => {
                out.push_str("[\n");
                let last = items.len() - 1;
                for (j, item) in items.iter().enumerate() {
                    out.push_str("    ");
                    out.push_str(item);
                    if j != last {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str("  ]");
            }
        }
        if i + 1 != n {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

pub fn numberlink_to_string(inst: &NumberlinkInstance) -> String {
    write_document(vec![
        ("puzzle", scalar("numberlink")),
        ("width", scalar(inst.width)),
        ("height", scalar(inst.height)),
        ("terminals", list(&inst.terminals)),
    ])
}

pub fn wataridori_to_string(inst: &WataridoriInstance) -> String {
    let circles = inst.circles.iter().map(|c| CircleDoc {
        x: c.cell.x,
        y: c.cell.y,
        number: c.number,
    });
    write_document(vec![
        ("puzzle", scalar("wataridori")),
        ("width", scalar(inst.width())),
        ("height", scalar(inst.height())),
        ("regions", list(inst.regions.rows())),
        ("circles", list(circles)),
    ])
}

pub fn puzzle_to_string(puzzle: &Puzzle) -> String {
    match puzzle {
        Puzzle::Numberlink(p) => numberlink_to_string(p),
        Puzzle::Wataridori(p) => wataridori_to_string(p),
    }
}

pub fn numberlink_solution_to_string(sol: &NumberlinkSolution) -> String {
    write_document(vec![("paths", list(&sol.paths))])
}

pub fn wataridori_solution_to_string(sol: &WataridoriSolution) -> String {
    write_document(vec![("paths", list(&sol.paths))])
}

pub fn map_to_string(map: &ReductionMap) -> String {
    write_document(vec![
        ("k", scalar(map.k)),
        ("block_size", scalar(map.block_size)),
        ("g_width", scalar(map.g_width)),
        ("g_height", scalar(map.g_height)),
        ("blocks", list(&map.blocks)),
        ("number_assignment", scalar(&map.number_assignment)),
        ("filler_pairs", list(&map.filler_pairs)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL_W: &str = "{\n  \"puzzle\": \"wataridori\",\n  \"width\": 2,\n  \"height\": 1,\n  \"regions\": [\n    [0,1]\n  ],\n  \"circles\": [\n    {\"x\":0,\"y\":0,\"number\":2},\n    {\"x\":1,\"y\":0}\n  ]\n}\n";

    #[test]
    fn wataridori_round_trip() {
        let inst = parse_wataridori(SMALL_W).unwrap();
        assert_eq!(inst.circles[1].number, None);
        assert_eq!(wataridori_to_string(&inst), SMALL_W);
    }

    #[test]
    fn error_kinds() {
        let e = parse_puzzle("{\"puzzle\": \"numberlink\", \"width\": 2").unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::Syntax);
        assert!(e.line >= 1);
        let e = parse_numberlink("{\"puzzle\":\"numberlink\",\"width\":2,\"height\":1,\"terminals\":[],\"extra\":1}").unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::UnknownField);
        let e = parse_numberlink("{\"puzzle\":\"numberlink\",\"width\":2,\"terminals\":[]}").unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::MissingField);
        let e = parse_numberlink(SMALL_W).unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::WrongPuzzle);
        let e = parse_puzzle("{\"puzzle\":\"sudoku\"}").unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::WrongPuzzle);
    }

    #[test]
    fn region_rows_are_checked() {
        let short = SMALL_W.replace("[0,1]", "[0]");
        assert_eq!(parse_wataridori(&short).unwrap_err().kind, FormatErrorKind::Invalid);
        let sparse = SMALL_W.replace("[0,1]", "[0,2]");
        assert_eq!(parse_wataridori(&sparse).unwrap_err().kind, FormatErrorKind::Invalid);
        let split = "{\"puzzle\":\"wataridori\",\"width\":3,\"height\":1,\"regions\":[[0,1,0]],\"circles\":[]}";
        assert_eq!(parse_wataridori(split).unwrap_err().kind, FormatErrorKind::Invalid);
    }

    #[test]
    fn numberlink_normalizes() {
        let doc = "{\"puzzle\":\"numberlink\",\"width\":3,\"height\":1,\"terminals\":[{\"label\":9,\"cells\":[[0,0],[2,0]]}]}";
        let inst = parse_numberlink(doc).unwrap();
        assert_eq!(inst.terminals[0].label, 1);
        let canonical = numberlink_to_string(&inst);
        assert_eq!(numberlink_to_string(&parse_numberlink(&canonical).unwrap()), canonical);
        assert!(canonical.contains("    {\"label\":1,\"cells\":[[0,0],[2,0]]}\n"));
    }
}
