//! Command-line front end. [`run`] does everything except touching the
//! process: it returns the exit code and the text for stdout and stderr.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dsl::{self, DslError};
use crate::engine;
use crate::error::{EngineError, OperatorError};
use crate::operator::BlockOperator;
use crate::report::{self, Format};
use crate::scalar::{parse_rational, Rational};
use crate::suites::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bfredholm", version, about = "Exact B-Fredholm index computations for Toeplitz-plus-finite-rank operators")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification, both index routes and the witness data.
    Analyze { expr: String },
    /// The index as a bare integer.
    Index { expr: String },
    /// An exact window of one block.
    Entries {
        expr: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        block: usize,
    },
    /// Classify `A - λe` on circles around zero.
    Scan {
        expr: String,
        /// Comma-separated positive rationals, e.g. `1/8,1/16`.
        #[arg(long, default_value = "1/8,1/16,1/32")]
        radii: String,
        #[arg(long, default_value_t = 8)]
        directions: usize,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Perturbations per operator in the welldefined and ideal suites.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Built-in demonstrations.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Nonstability,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

fn dsl_code(e: &DslError) -> i32 {
    if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_PRECONDITION
    }
}

fn engine_code(e: &EngineError) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_PRECONDITION
    }
}

fn operator(expr: &str) -> Result<BlockOperator, Outcome> {
    let ast = dsl::parse(expr).map_err(|e| Outcome::fail(dsl_code(&e), format!("error: {e}\n")))?;
    dsl::eval(&ast).map_err(|e| Outcome::fail(dsl_code(&e), format!("error: {e}\n")))
}

fn engine_fail(e: EngineError) -> Outcome {
    Outcome::fail(engine_code(&e), format!("error: {e}\n"))
}

fn parse_radii(s: &str) -> Result<Vec<Rational>, Outcome> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match parse_rational(t) {
            Some(r) if r > Rational::from_integer(0.into()) => Ok(r),
            _ => Err(Outcome::fail(EXIT_USAGE, format!("error: radius '{t}' is not a positive rational\n"))),
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    let format = cli.format;
    Ok(match &cli.command {
        Command::Analyze { expr } => {
            let a = operator(expr)?;
            let r = engine::analyze(&a).map_err(engine_fail)?;
            let mut out = Outcome::ok(report::emit_report(&r, format));
            if r.classification == engine::Classification::NotInClass {
                out.code = EXIT_PRECONDITION;
            }
            out
        }
        Command::Index { expr } => {
            let a = operator(expr)?;
            let r = engine::analyze(&a).map_err(engine_fail)?;
            let Some(i) = r.index() else {
                return Err(Outcome::fail(EXIT_PRECONDITION, format!("error: {}\n", EngineError::NotBFredholm)));
            };
            let route = if r.index_trace.is_some() { "trace and winding routes agree" } else { "winding route only" };
            match format {
                Format::Json => Outcome::ok(format!("{{\"index\":{i},\"route\":\"{route}\"}}\n")),
                Format::Csv => Outcome::ok(format!("index,route\n{i},{route}\n")),
                Format::Text => Outcome { code: EXIT_OK, stdout: format!("{i}\n"), stderr: format!("{route}\n") },
            }
        }
        Command::Entries { expr, rows, cols, block } => {
            let a = operator(expr)?;
            let mut window = Vec::with_capacity(*rows);
            for i in 0..*rows {
                let row = (0..*cols)
                    .map(|j| a.entry(*block, i, j))
                    .collect::<Result<Vec<_>, OperatorError>>()
                    .map_err(|e| engine_fail(e.into()))?;
                window.push(row);
            }
            Outcome::ok(report::emit_window(&window, format))
        }
        Command::Scan { expr, radii, directions } => {
            let radii = parse_radii(radii)?;
            let a = operator(expr)?;
            let r = engine::analyze(&a).map_err(engine_fail)?;
            let table = engine::punctured_scan(&a, &radii, *directions).map_err(engine_fail)?;
            Outcome::ok(report::emit_scan(&r, &table, format))
        }
        Command::Verify { suite, seed, trials } => {
            let cases = suites::run_suite(*suite, *seed, *trials);
            let mut out = Outcome::ok(report::emit_checks(&suite.to_string(), *seed, &cases, format));
            if cases.iter().any(|c| !c.passed) {
                out.code = EXIT_INTERNAL;
            }
            out
        }
        Command::Demo { name: Demo::Nonstability } => {
            Outcome::ok(report::emit_nonstability(&engine::nonstability_demo(), format))
        }
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Outcome::fail(EXIT_USAGE, e.render().to_string()),
        Err(e) => return Outcome::ok(e.render().to_string()),
    };
    let mut out = dispatch(&cli).unwrap_or_else(|o| o);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return Outcome::fail(EXIT_USAGE, format!("error: cannot write {}: {e}\n", path.display()));
        }
        out.stdout.clear();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("bfredholm").chain(args.iter().copied()))
    }

    #[test]
    fn index_of_a_shift_power() {
        let o = cli(&["index", "T(z^3)"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "-3\n"));
    }

    #[test]
    fn circle_zero_exits_two() {
        let o = cli(&["analyze", "T(z-1)"]);
        assert_eq!(o.code, EXIT_PRECONDITION);
        assert!(o.stdout.contains("NotInClass"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(cli(&["index", "T(z"]).code, EXIT_USAGE);
        assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(cli(&["scan", "T(z)", "--radii", "-1"]).code, EXIT_USAGE);
        assert_eq!(cli(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn entries_window() {
        let o = cli(&["entries", "T(z) * T(z^-1)", "--rows", "2", "--cols", "2"]);
        assert_eq!(o.stdout, "0,0\n0,1\n");
        let o = cli(&["entries", "M[[1,2],[3,4]]", "--rows", "3", "--cols", "1"]);
        assert_eq!(o.code, EXIT_PRECONDITION);
    }

    #[test]
    fn empty_radii_give_empty_samples() {
        let o = cli(&["--format", "json", "scan", "T(z)", "--radii", ""]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"samples\": []"));
    }
}
