//! Command-line front end.
//!
//! Exit codes: `0` clean, `1` validation warnings were reported, `2` the
//! model could not be read or is structurally invalid (or the invocation
//! itself was wrong).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use accessneeds::{
    check_goal_structure, expand_hierarchy, export_dot, fixtures, parse_model, render_report, validate_access,
    AssetModel, GoalGraph, ParseError, ReportFormat, View,
};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_WARNINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "accessneeds", version, about = "Validate access needs against access control policy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ViewArg {
    Asset,
    Goal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every access need against the policy and report warnings.
    Validate {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Let assets inherit the access needs of their parents first.
        #[arg(long)]
        expand_inheritance: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the structural checks only.
    Check { model: PathBuf },
    /// Write a Graphviz DOT rendering of the asset or goal view.
    Export {
        model: PathBuf,
        #[arg(long, value_enum)]
        view: ViewArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one of the bundled example models.
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let rendered = err.render().to_string();
            let _ = if err.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    execute(cli.command, stdout, stderr)
}

pub fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match command {
        Command::Validate {
            model,
            format,
            expand_inheritance,
            out,
        } => cmd_validate(&model, format, expand_inheritance, out.as_deref(), stdout, stderr),
        Command::Check { model } => cmd_check(&model, stderr),
        Command::Export { model, view, out } => cmd_export(&model, view, out.as_deref(), stdout, stderr),
        Command::Fixture { name, out } => cmd_fixture(&name, out.as_deref(), stdout, stderr),
    }
}

fn load(path: &Path, stderr: &mut dyn Write) -> Option<(AssetModel, GoalGraph)> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(err) => {
            let _ = writeln!(stderr, "error: cannot read {}: {err}", path.display());
            return None;
        }
    };
    match parse_model(&bytes) {
        Ok(parsed) => Some(parsed),
        Err(err) => {
            report_parse_error(path, &err, stderr);
            None
        }
    }
}

fn report_parse_error(path: &Path, err: &ParseError, stderr: &mut dyn Write) {
    match err {
        ParseError::Semantic(findings) => {
            for finding in findings {
                let _ = writeln!(stderr, "{}: {finding}", path.display());
            }
        }
        other => {
            let _ = writeln!(stderr, "{}: error: {other}", path.display());
        }
    }
}

fn emit(payload: &str, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> bool {
    let result = match out {
        Some(path) => fs::write(path, payload).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(payload.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    };
    match result {
        Ok(()) => true,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            false
        }
    }
}

pub fn cmd_validate(
    path: &Path,
    format: FormatArg,
    expand_inheritance: bool,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let Some((model, graph)) = load(path, stderr) else { return EXIT_ERROR };
    let model = if expand_inheritance { expand_hierarchy(&model) } else { model };
    let report = validate_access(&model, &graph);
    let format = match format {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Json => ReportFormat::Json,
    };
    if !emit(&render_report(&report, format), out, stdout, stderr) {
        return EXIT_ERROR;
    }
    if report.is_clean() {
        EXIT_CLEAN
    } else {
        EXIT_WARNINGS
    }
}

pub fn cmd_check(path: &Path, stderr: &mut dyn Write) -> i32 {
    let Some((model, graph)) = load(path, stderr) else { return EXIT_ERROR };
    // Only warning-severity findings can remain after a successful parse.
    for finding in check_goal_structure(&graph, &model) {
        let _ = writeln!(stderr, "{}: {finding}", path.display());
    }
    EXIT_CLEAN
}

pub fn cmd_export(
    path: &Path,
    view: ViewArg,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let Some((model, graph)) = load(path, stderr) else { return EXIT_ERROR };
    let view = match view {
        ViewArg::Asset => View::Asset,
        ViewArg::Goal => View::Goal,
    };
    if emit(&export_dot(&model, &graph, view), out, stdout, stderr) {
        EXIT_CLEAN
    } else {
        EXIT_ERROR
    }
}

pub fn cmd_fixture(name: &str, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let Some(doc) = fixtures::fixture(name) else {
        let _ = writeln!(
            stderr,
            "error: unknown fixture `{name}`; expected one of: {}",
            fixtures::NAMES.join(", ")
        );
        return EXIT_ERROR;
    };
    if emit(doc, out, stdout, stderr) {
        EXIT_CLEAN
    } else {
        EXIT_ERROR
    }
}
