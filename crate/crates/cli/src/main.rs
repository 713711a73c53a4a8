use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use wataridori_core::format::{self, Puzzle};
use wataridori_core::grid::Path;
use wataridori_core::lifting::{self, LiftError};
use wataridori_core::reduction::reduce;
use wataridori_core::{numberlink, render, wataridori, SolveOutcome, Verdict};

const OK: u8 = 0;
const NEGATIVE: u8 = 2;
const BUDGET: u8 = 3;

/// Wataridori and Numberlink: solve, verify, reduce, lift, unlift, render.
#[derive(Parser)]
#[command(name = "wataridori", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a puzzle (exit 0 solved, 2 unsatisfiable, 3 budget exhausted)
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        /// Solution output; standard output if omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Search node limit
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Check a solution (exit 0 accepted, 2 rejected)
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
        /// Numberlink only: every cell must lie on a path
        #[arg(long)]
        require_coverage: bool,
    },
    /// Reduce a Numberlink instance to a Wataridori instance
    Reduce {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Turn a Numberlink solution into a solution of the reduced instance
    Lift {
        #[arg(short, long)]
        g: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recover the Numberlink solution from a solution of the reduced instance
    Unlift {
        #[arg(short, long)]
        solution: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw a puzzle and optionally a solution
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: RenderFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: Option<&FsPath>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parsed<T>(path: &FsPath, result: Result<T, format::FormatError>) -> Result<T> {
    result.with_context(|| format!("parsing {}", path.display()))
}

fn report(verdict: &Verdict) -> u8 {
    println!("{verdict}");
    if verdict.is_accept() {
        OK
    } else {
        NEGATIVE
    }
}

fn solve(input: &FsPath, output: Option<&FsPath>, budget: u64) -> Result<u8> {
    let text = match parsed(input, format::parse_puzzle(&read(input)?))? {
        Puzzle::Numberlink(g) => match numberlink::solve(&g, budget) {
            SolveOutcome::Solved(s) => format::numberlink_solution_to_string(&s),
            SolveOutcome::Unsat => return Ok(unsat()),
            SolveOutcome::BudgetExceeded => return Ok(budget_exceeded()),
        },
        Puzzle::Wataridori(h) => match wataridori::solve(&h, budget) {
            SolveOutcome::Solved(s) => format::wataridori_solution_to_string(&s),
            SolveOutcome::Unsat => return Ok(unsat()),
            SolveOutcome::BudgetExceeded => return Ok(budget_exceeded()),
        },
    };
    write(output, &text)?;
    Ok(OK)
}

fn unsat() -> u8 {
    eprintln!("UNSAT");
    NEGATIVE
}

fn budget_exceeded() -> u8 {
    eprintln!("BUDGET_EXCEEDED");
    BUDGET
}

fn verify(input: &FsPath, solution: &FsPath, require_coverage: bool) -> Result<u8> {
    let sol_text = read(solution)?;
    let verdict = match parsed(input, format::parse_puzzle(&read(input)?))? {
        Puzzle::Numberlink(g) => {
            let sol = parsed(solution, format::parse_numberlink_solution(&sol_text))?;
            numberlink::verify_solution(&g, &sol, require_coverage)
        }
        Puzzle::Wataridori(h) => {
            if require_coverage {
                bail!("--require-coverage applies to Numberlink puzzles only");
            }
            let sol = parsed(solution, format::parse_wataridori_solution(&sol_text))?;
            wataridori::verify_solution(&h, &sol)
        }
    };
    Ok(report(&verdict))
}

fn reduce_cmd(input: &FsPath, output: &FsPath, map_path: &FsPath) -> Result<u8> {
    let g = parsed(input, format::parse_numberlink(&read(input)?))?;
    let (h, map) = reduce(&g)?;
    write(Some(output), &format::wataridori_to_string(&h))?;
    write(Some(map_path), &format::map_to_string(&map))?;
    Ok(OK)
}

fn lift_cmd(g_path: &FsPath, solution: &FsPath, map_path: &FsPath, output: &FsPath) -> Result<u8> {
    let g = parsed(g_path, format::parse_numberlink(&read(g_path)?))?;
    let sol = parsed(solution, format::parse_numberlink_solution(&read(solution)?))?;
    let map = parsed(map_path, format::parse_map(&read(map_path)?))?;
    match lifting::lift(&g, &sol, &map) {
        Ok(lifted) => {
            write(Some(output), &format::wataridori_solution_to_string(&lifted))?;
            Ok(OK)
        }
        Err(e @ LiftError::InvalidSolution(_)) => {
            eprintln!("{e}");
            Ok(NEGATIVE)
        }
        Err(e) => Err(e.into()),
    }
}

fn unlift_cmd(solution: &FsPath, map_path: &FsPath, output: &FsPath) -> Result<u8> {
    let map = parsed(map_path, format::parse_map(&read(map_path)?))?;
    let h_sol = parsed(solution, format::parse_wataridori_solution(&read(solution)?))?;
    let g = map.source_instance();
    let (h, rebuilt) = reduce(&g)?;
    if rebuilt != map {
        bail!("{} is not a map produced by reduce", map_path.display());
    }
    let verdict = wataridori::verify_solution(&h, &h_sol);
    if !verdict.is_accept() {
        return Ok(report(&verdict));
    }
    match lifting::unlift(&h_sol, &map) {
        Ok(sol) => {
            write(Some(output), &format::numberlink_solution_to_string(&sol))?;
            Ok(OK)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(NEGATIVE)
        }
    }
}

fn render_cmd(input: &FsPath, solution: Option<&FsPath>, fmt: RenderFormat, output: Option<&FsPath>) -> Result<u8> {
    let puzzle = parsed(input, format::parse_puzzle(&read(input)?))?;
    let paths: Vec<Path> = match solution {
        None => Vec::new(),
        Some(s) => {
            let text = read(s)?;
            match &puzzle {
                Puzzle::Numberlink(_) => parsed(s, format::parse_numberlink_solution(&text))?
                    .paths
                    .into_iter()
                    .map(|p| p.cells)
                    .collect(),
                Puzzle::Wataridori(_) => parsed(s, format::parse_wataridori_solution(&text))?
                    .paths
                    .into_iter()
                    .map(|p| p.cells)
                    .collect(),
            }
        }
    };
    let text = match fmt {
        RenderFormat::Ascii => render::ascii(&puzzle, &paths),
        RenderFormat::Svg => render::svg(&puzzle, &paths),
    };
    write(output, &text)?;
    Ok(OK)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { input, output, budget } => solve(&input, output.as_deref(), budget),
        Command::Verify {
            input,
            solution,
            require_coverage,
        } => verify(&input, &solution, require_coverage),
        Command::Reduce { input, output, map } => reduce_cmd(&input, &output, &map),
        Command::Lift { g, solution, map, output } => lift_cmd(&g, &solution, &map, &output),
        Command::Unlift { solution, map, output } => unlift_cmd(&solution, &map, &output),
        Command::Render {
            input,
            solution,
            format,
            output,
        } => render_cmd(&input, solution.as_deref(), format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
