//! Command-line front end for `eo-algebra`: argument parsing, JSON and text
//! reports, and grid sweeps.

pub mod commands;
pub mod error;
pub mod report;
pub mod sweep;

use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use clap::Parser;

use crate::commands::{Cli, Command};
use crate::error::{CliError, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};
use crate::report::Report;

/// Captured result of one invocation.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    let start = Instant::now();
    let (results, verdicts) = match command {
        Command::Decompose(w) => commands::decompose(w)?,
        Command::FreeGens(w) => commands::free_gens(w)?,
        Command::FiniteSupport(w) => commands::finite_support(w)?,
        Command::ThomLinear(w) => commands::thom_linear(w)?,
        Command::TateCheck { pk, bot, top, stage } => commands::tate_check(pk, *bot, *top, *stage)?,
        Command::KoPattern { top } => commands::ko(*top)?,
        Command::OrientOrder { p, n } => commands::orient_order(*p, *n)?,
        Command::Bound(pk) => commands::bound(pk)?,
        Command::KnownOrders { pk, n } => commands::known_orders(pk, *n)?,
        Command::OrderPElement { pk, precision } => commands::order_p_element(pk, *precision)?,
        Command::VerifyTk { pk, precision } => commands::verify_tk(pk, *precision)?,
        Command::Sweep { grid, precision } => sweep::sweep(grid, *precision)?,
    };
    Ok(Report {
        command: command.name().to_string(),
        inputs: command.inputs(),
        results,
        verdicts,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Invocation { code, stdout, stderr, report: None };
        }
    };

    let outcome = catch_unwind(AssertUnwindSafe(|| execute(&cli.command)));
    match outcome {
        Ok(Ok(report)) => {
            let code = if report.passed() { EXIT_OK } else { EXIT_VERDICT };
            let stdout = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            Invocation { code, stdout, stderr: String::new(), report: Some(report) }
        }
        Ok(Err(e)) => Invocation {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            report: None,
        },
        Err(_) => Invocation {
            code: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: "error: internal assertion failed\n".to_string(),
            report: None,
        },
    }
}
