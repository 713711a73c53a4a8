use std::fmt;

use crate::grid::CellCoord;

/// A rule a candidate solution can break. The string codes are part of the
/// command-line output contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Path is too short, leaves the grid, skips a cell or repeats one.
    BadPath,
    /// A path references a label the instance does not have.
    UnknownLabel,
    DuplicatePath,
    MissingPath,
    /// Path endpoints are not the label's two terminals.
    EndpointMismatch,
    /// A path runs through another label's terminal.
    TerminalCrossed,
    /// A cell belongs to two paths, or a path runs through a circle.
    CellShared,
    UncoveredCell,
    EndpointNotCircle,
    UnpairedCircle,
    /// A path leaves a region and later comes back to it.
    RegionReentered,
    /// Both endpoints are numbered, with different numbers.
    NumberMismatch,
    /// The region count of the path differs from the circle number.
    CountMismatch,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::BadPath => "BAD_PATH",
            Rule::UnknownLabel => "UNKNOWN_LABEL",
            Rule::DuplicatePath => "DUPLICATE_PATH",
            Rule::MissingPath => "MISSING_PATH",
            Rule::EndpointMismatch => "ENDPOINT_MISMATCH",
            Rule::TerminalCrossed => "TERMINAL_CROSSED",
            Rule::CellShared => "CELL_SHARED",
            Rule::UncoveredCell => "UNCOVERED_CELL",
            Rule::EndpointNotCircle => "ENDPOINT_NOT_CIRCLE",
            Rule::UnpairedCircle => "UNPAIRED_CIRCLE",
            Rule::RegionReentered => "REGION_REENTERED",
            Rule::NumberMismatch => "NUMBER_MISMATCH",
            Rule::CountMismatch => "COUNT_MISMATCH",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub rule: Rule,
    pub path: Option<usize>,
    pub cell: Option<CellCoord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub(crate) fn reject(rule: Rule, path: Option<usize>, cell: Option<CellCoord>) -> Verdict {
        Verdict::Reject(Rejection { rule, path, cell })
    }

    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject(r) => Some(r.rule),
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject(r) => Some(r),
        }
    }
}

/// `ACCEPT`, or `REJECT <RULE> path=<idx> cell=<x,y>` with `-` for absent fields.
impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("ACCEPT"),
            Verdict::Reject(r) => {
                write!(f, "REJECT {}", r.rule)?;
                match r.path {
                    Some(i) => write!(f, " path={i}")?,
                    None => f.write_str(" path=-")?,
                }
                match r.cell {
                    Some(c) => write!(f, " cell={c}"),
                    None => f.write_str(" cell=-"),
                }
            }
        }
    }
}

/// Result of an exact search with a node budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<S> {
    Solved(S),
    Unsat,
    BudgetExceeded,
}

impl<S> SolveOutcome<S> {
    pub fn solution(self) -> Option<S> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveOutcome::Unsat)
    }
}
