//! Command-line driver. `run` takes explicit streams so it can be tested
//! without spawning a process.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcfpr_core::{build_dcfpr, reduce, verify, Credibility, Problem, TriangulationMode};

use crate::document::{parse_problem, CfprDocument, DocumentError, MatrixDocument};
use crate::report::{emit_report, ReportFormat};

pub const EXIT_OK: i32 = 0;
/// Invalid input or an unsolvable request.
pub const EXIT_FAILURE: i32 = 1;
/// Bad arguments or I/O trouble.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dcfpr",
    version,
    about = "Rank alternatives from D-number preference judgments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the D-number preference matrix from a problem document.
    Build {
        #[command(flatten)]
        input: Input,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank the alternatives and compute weights.
    Solve(SolveArgs),
    /// Check a problem document and the matrix it produces.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Reduce a certain problem to a crisp preference relation.
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "DCFPR_PORT", default_value_t = 8080)]
        port: u16,
        /// Serve static assets from this directory.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Idle sessions expire after this many seconds.
        #[arg(long, default_value_t = 86_400)]
        session_ttl: u64,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Problem document (JSON); `-` reads stdin.
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CredibilityArg {
    High,
    Medium,
    Low,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "high", conflicts_with = "lambda")]
    credibility: CredibilityArg,
    /// Custom weight divisor instead of a credibility preset.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Force the exact ranking search.
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Force the local-search ranking.
    #[arg(long)]
    heuristic: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let lines: Vec<String> = e
            .diagnostics()
            .iter()
            .map(|d| format!("error: {d}"))
            .collect();
        Failure::invalid(lines.join("\n"))
    }
}

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = stream.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Build { input, output } => {
            let problem = load(&input.input)?;
            let doc = MatrixDocument::new(problem.alternatives(), &build_dcfpr(&problem));
            let text = to_json(&doc);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
                None => emit(out, &text),
            }
        }
        Command::Solve(args) => solve(args, out),
        Command::Validate { input } => {
            let problem = load(&input.input)?;
            let report = verify(&build_dcfpr(&problem));
            if !report.is_empty() {
                let lines: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| format!("error: {v}"))
                    .collect();
                return Err(Failure::invalid(lines.join("\n")));
            }
            emit(
                out,
                &format!(
                    "valid: {} alternatives, {} judgments\n",
                    problem.size(),
                    problem.size() - 1
                ),
            )
        }
        Command::Reduce { input } => {
            let problem = load(&input.input)?;
            let relation = reduce(&build_dcfpr(&problem))
                .map_err(|e| Failure::invalid(format!("error: {e}")))?;
            emit(
                out,
                &to_json(&CfprDocument::new(problem.alternatives(), &relation)),
            )
        }
        Command::Serve {
            port,
            static_dir,
            session_ttl,
        } => {
            let config = crate::http::ServerConfig {
                port,
                static_dir,
                session_ttl: Duration::from_secs(session_ttl),
            };
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| Failure::usage(format!("cannot start runtime: {e}")))?;
            runtime
                .block_on(crate::http::serve(config, err))
                .map_err(|e| Failure::usage(format!("server error: {e}")))
        }
    }
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let credibility = match args.lambda {
        Some(lambda) if !(lambda.is_finite() && lambda > 0.0) => {
            return Err(Failure::usage(format!(
                "--lambda must be positive, got {lambda}"
            )));
        }
        Some(lambda) => Credibility::Custom(lambda),
        None => match args.credibility {
            CredibilityArg::High => Credibility::High,
            CredibilityArg::Medium => Credibility::Medium,
            CredibilityArg::Low => Credibility::Low,
        },
    };
    let mode = if args.exact {
        TriangulationMode::Exact
    } else if args.heuristic {
        TriangulationMode::Heuristic
    } else {
        TriangulationMode::Auto
    };
    let problem = load(&args.input.input)?;
    let doc = crate::solve_problem(&problem, credibility, mode)
        .map_err(|e| Failure::invalid(format!("error: {e}")))?;
    let format = match args.format {
        FormatArg::Json => ReportFormat::Json,
        FormatArg::Table => ReportFormat::Table,
    };
    emit(out, &emit_report(&doc, format))
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(parse_problem(&text)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document serializes");
    s.push('\n');
    s
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}
