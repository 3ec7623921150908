//! Command-line front end. [`run`] takes its streams as arguments so tests
//! can drive it without spawning a process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{run_basic_line, to_csv};
use crate::format::{parse_any, serialize_puzzle, Input};
use crate::line::{check_consistency, settle_with, LineMethod};
use crate::model::{
    classic_to_puzzle, classify_curve, classify_puzzle, is_nested, CellState, ClassicNonogram, Description,
    LineProblem, LineSpec, Puzzle, Side,
};
use crate::oracle::{oracle_line_fixes, oracle_puzzle_solutions, DEFAULT_BOUND};
use crate::reduction::{reduce, verify_reduction, Mode};
use crate::solver::{full_settle, SolveOptions, Verdict};

#[derive(Parser, Debug)]
#[command(name = "curved-nonogram", version, about = "Curved nonogram line solver, puzzle solver and reduction generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct LineArgs {
    /// Cells as 0, 1 and ?, e.g. `0??1`.
    #[arg(long)]
    spec: String,
    /// One character per cell (equal characters are the same face), or `distinct`.
    #[arg(long, default_value = "distinct")]
    letters: String,
    /// Clues joined by dashes, e.g. `5-1-2`; `-` for none.
    #[arg(long, allow_hyphen_values = true)]
    desc: String,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    oracle_bound: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the class of every curve and of the whole puzzle.
    Classify { file: PathBuf },
    /// Decide whether a single line is consistent.
    CheckLine {
        #[command(flatten)]
        line: LineArgs,
    },
    /// Settle a single line.
    SettleLine {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, default_value = "dp")]
        method: LineMethod,
    },
    /// Repeatedly settle every sequence until nothing changes.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "dp")]
        line_method: LineMethod,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        oracle_bound: usize,
        /// Fail on non-nested sequences instead of enumerating them.
        #[arg(long)]
        no_expert_fallback: bool,
        /// Settle all sequences of a pass against the same snapshot, in parallel.
        #[arg(long)]
        parallel: bool,
        /// Print the cells settled by each sequence.
        #[arg(long)]
        trace: bool,
    },
    /// Build a curved puzzle from a classic nonogram.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value = "full")]
        mode: Mode,
        /// Also run the construction checks (needs a uniquely solvable input).
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        oracle_bound: usize,
    },
    /// List every solution by exhaustive search.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Time the line settle and print CSV.
    Bench {
        #[arg(long, default_value = "basic-line")]
        kind: String,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "dp")]
        method: LineMethod,
    },
}

/// Failure of a command: exit code and message for stderr.
struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(2, msg.to_string())
}

type Outcome = Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Classify { file } => classify(&read_input(&file)?, out),
        Command::CheckLine { line } => check_line(&line, out),
        Command::SettleLine { line, method } => settle_line(&line, method, out),
        Command::Solve {
            file,
            line_method,
            oracle_bound,
            no_expert_fallback,
            parallel,
            trace,
        } => {
            let opts = SolveOptions {
                line_method,
                oracle_bound,
                expert_fallback: !no_expert_fallback,
                order: None,
                parallel,
            };
            solve(&read_input(&file)?, &opts, trace, out, err)
        }
        Command::Reduce {
            file,
            mode,
            verify,
            oracle_bound,
        } => match read_input(&file)? {
            Input::Classic(n) => reduce_cmd(&n, mode, verify.then_some(oracle_bound), out),
            Input::Puzzle(_) => Err(usage("reduce expects a classic nonogram file")),
        },
        Command::Oracle { file, bound } => oracle(&puzzle_of(&read_input(&file)?), bound, out),
        Command::Bench {
            kind,
            sizes,
            seed,
            method,
        } => {
            if kind != "basic-line" {
                return Err(usage(format!("unknown bench kind {kind:?} (expected basic-line)")));
            }
            let rows = run_basic_line(&sizes, seed, method).map_err(usage)?;
            emit(out, &to_csv(&rows))?;
            Ok(0)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure(2, e.to_string()))
}

fn read_input(path: &PathBuf) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_any(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn puzzle_of(input: &Input) -> Puzzle {
    match input {
        Input::Puzzle(p) => p.clone(),
        Input::Classic(n) => classic_to_puzzle(n),
    }
}

fn classify(input: &Input, out: &mut dyn Write) -> Outcome {
    let p = puzzle_of(input);
    let mut text = String::new();
    for c in p.curves() {
        text.push_str(&format!("curve {} {}\n", c.name, classify_curve(c)));
    }
    text.push_str(&format!("overall {}\n", classify_puzzle(&p)));
    emit(out, &text)?;
    Ok(0)
}

fn line_problem(a: &LineArgs) -> Result<LineProblem, Failure> {
    let spec: LineSpec = a.spec.parse().map_err(usage)?;
    let desc: Description = a.desc.parse().map_err(usage)?;
    if a.letters == "distinct" {
        return Ok(LineProblem::distinct(spec, desc));
    }
    let letters: Vec<usize> = a.letters.chars().map(|c| c as usize).collect();
    LineProblem::new(spec, letters, desc).map_err(usage)
}

fn check_line(a: &LineArgs, out: &mut dyn Write) -> Outcome {
    let p = line_problem(a)?;
    let consistent = if is_nested(p.letters()) {
        check_consistency(&p).map_err(usage)?
    } else {
        !oracle_line_fixes(&p, a.oracle_bound).map_err(usage)?.is_empty()
    };
    emit(out, if consistent { "consistent\n" } else { "inconsistent\n" })?;
    Ok(if consistent { 0 } else { 1 })
}

fn settle_line(a: &LineArgs, method: LineMethod, out: &mut dyn Write) -> Outcome {
    let p = line_problem(a)?;
    match settle_with(&p, method, a.oracle_bound) {
        Ok(s) => {
            emit(out, &format!("{s}\n"))?;
            Ok(0)
        }
        Err(crate::error::LineError::Inconsistent) => {
            emit(out, "inconsistent\n")?;
            Ok(1)
        }
        Err(e) => Err(usage(e)),
    }
}

fn grid(cells: &[CellState], n: &ClassicNonogram) -> String {
    let mut text = String::new();
    for r in 0..n.height() {
        for c in 0..n.width() {
            text.push(match cells[r * n.width() + c] {
                CellState::Filled => '#',
                CellState::Empty => '.',
                CellState::Unsettled => '?',
            });
        }
        text.push('\n');
    }
    text
}

fn solve(input: &Input, opts: &SolveOptions, trace: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let p = puzzle_of(input);
    let report = full_settle(&p, opts).map_err(usage)?;
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let mut text = String::new();
    if trace {
        for (i, round) in report.rounds.iter().enumerate() {
            for step in &round.steps {
                let side = match step.line.side {
                    Side::Right => "right",
                    Side::Left => "left",
                };
                text.push_str(&format!("round {} {} {side}", i + 1, p.curves()[step.line.curve].name));
                for (id, v) in &step.settled {
                    text.push_str(&format!(" {id}={}", v.as_char()));
                }
                text.push('\n');
            }
        }
    }
    text.push_str(&format!("board {}\nverdict {}\n", report.board, report.verdict));
    if let Some(l) = report.failed_line {
        let _ = writeln!(
            err,
            "failed at curve {} ({:?} side)",
            p.curves()[l.curve].name,
            l.side
        );
    }
    if let Input::Classic(n) = input {
        text.push_str(&grid(report.board.cells(), n));
    }
    emit(out, &text)?;
    Ok(if report.verdict == Verdict::SolvedSimple { 0 } else { 1 })
}

fn reduce_cmd(n: &ClassicNonogram, mode: Mode, verify_bound: Option<usize>, out: &mut dyn Write) -> Outcome {
    let r = reduce(n, mode);
    let mut text = String::new();
    let mut code = 0;
    for line in r.metadata_lines() {
        text.push_str(&format!("# {line}\n"));
    }
    if let Some(bound) = verify_bound {
        let report = verify_reduction(&r, n, bound).map_err(|e| Failure(1, e.to_string()))?;
        for c in &report.checks {
            match &c.outcome {
                Ok(()) => text.push_str(&format!("# check {} pass\n", c.name)),
                Err(e) => text.push_str(&format!("# check {} fail {e}\n", c.name)),
            }
        }
        if !report.passed() {
            code = 1;
        }
    }
    text.push_str(&serialize_puzzle(&r.puzzle));
    emit(out, &text)?;
    Ok(code)
}

fn oracle(p: &Puzzle, bound: usize, out: &mut dyn Write) -> Outcome {
    let solutions = oracle_puzzle_solutions(p, bound).map_err(usage)?;
    let mut text = format!("solutions {}\n", solutions.len());
    for s in &solutions {
        text.push_str(&format!("{}\n", LineSpec(s.clone())));
    }
    emit(out, &text)?;
    Ok(0)
}
