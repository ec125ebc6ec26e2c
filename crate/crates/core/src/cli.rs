//! The `hott` command line.
//!
//! Exit codes: 0 when everything checks, 1 when some declaration fails,
//! 2 for usage, I/O and syntax errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::checker::{check_module, CheckOptions, Outcome, Report};
use crate::corpus::{load_source, shipped_corpus_dir, Corpus};
use crate::evaluator::ConvOptions;

#[derive(Parser, Debug)]
#[command(name = "hott", version, about = "Check homotopy type theory source files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type-check files in order.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print the axioms each declaration depends on.
    Axioms {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Check the corpus manifest and audit its axiom footprints.
    Corpus {
        /// Corpus directory (defaults to ./corpus, then the shipped corpus).
        dir: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Flags {
    /// Print each failed conversion in normal form.
    #[arg(long)]
    trace_conversion: bool,
    /// Disable η-rules in conversion.
    #[arg(long)]
    no_eta: bool,
    /// Only print failures and the summary.
    #[arg(long)]
    quiet: bool,
}

impl Flags {
    fn options(self) -> CheckOptions {
        CheckOptions {
            conv: ConvOptions { eta: !self.no_eta },
            trace_conversion: self.trace_conversion,
        }
    }
}

/// Run the command line with the given arguments (including the program
/// name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { files, flags } => check(&files, flags, out, false),
        Command::Axioms { files, flags } => check(&files, flags, out, true),
        Command::Corpus { dir, flags } => corpus(dir, flags, out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn check(files: &[PathBuf], flags: Flags, out: &mut dyn Write, axioms: bool) -> Result<i32, String> {
    let modules = files
        .iter()
        .map(|f| load_source(f))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let (_, report) = check_module(&modules, flags.options());
    write_report(&report, flags, out, axioms).map_err(|e| e.to_string())?;
    Ok(if report.all_ok() { 0 } else { 1 })
}

fn write_report(report: &Report, flags: Flags, out: &mut dyn Write, axioms: bool) -> std::io::Result<()> {
    for e in &report.entries {
        match &e.outcome {
            Outcome::Ok if flags.quiet => {}
            Outcome::Ok if axioms => {
                let names: Vec<&str> = e.footprint.iter().map(|a| &**a).collect();
                writeln!(out, "{}: {}", e.name, names.join(", "))?;
            }
            Outcome::Ok => writeln!(out, "OK {}", e.name)?,
            Outcome::Failed(msg) => writeln!(out, "FAIL {}: {msg}", e.name)?,
        }
        for t in &e.trace {
            for line in t.lines() {
                writeln!(out, "  {line}")?;
            }
        }
    }
    Ok(())
}

fn default_corpus_dir() -> PathBuf {
    let local = Path::new("corpus");
    if local.join("manifest").is_file() {
        local.to_path_buf()
    } else {
        shipped_corpus_dir()
    }
}

fn corpus(dir: Option<PathBuf>, flags: Flags, out: &mut dyn Write) -> Result<i32, String> {
    let dir = dir.unwrap_or_else(default_corpus_dir);
    let corpus = Corpus::load(&dir).map_err(|e| e.to_string())?;
    let result = corpus.check(flags.options());
    let io = |e: std::io::Error| e.to_string();
    for entry in &corpus.entries {
        let problems: Vec<_> = result.problems.iter().filter(|p| p.name == entry.name).collect();
        if problems.is_empty() {
            if !flags.quiet {
                writeln!(out, "OK {}", entry.name).map_err(io)?;
            }
        } else {
            for p in problems {
                writeln!(out, "FAIL {p}").map_err(io)?;
            }
        }
    }
    // Failures of helper declarations outside the manifest.
    for p in &result.problems {
        if !corpus.entries.iter().any(|e| e.name == p.name) {
            writeln!(out, "FAIL {p}").map_err(io)?;
        }
    }
    if flags.trace_conversion {
        for e in &result.report.entries {
            for t in &e.trace {
                writeln!(out, "{}:", e.name).map_err(io)?;
                for line in t.lines() {
                    writeln!(out, "  {line}").map_err(io)?;
                }
            }
        }
    }
    let n = corpus.entries.len();
    if result.ok() {
        writeln!(out, "CORPUS OK ({n} entries)").map_err(io)?;
        Ok(0)
    } else {
        let failed = corpus
            .entries
            .iter()
            .filter(|e| result.problems.iter().any(|p| p.name == e.name))
            .count();
        writeln!(out, "CORPUS FAILED ({failed} of {n} entries, {} problems)", result.problems.len())
            .map_err(io)?;
        Ok(1)
    }
}
