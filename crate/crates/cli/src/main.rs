mod commands;
mod text;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use isofact::{Error, ErrorCategory, Exec};
use serde_json::{json, Value};

/// Isolated factorizations, Betti elements and classification of numerical
/// and affine semigroups.
///
/// Generators are given as `24,26,36,39` (numerical) or `(1,0);(0,2);(0,3)`
/// (affine). Indices in text output and on the command line are 1-based;
/// JSON output uses 0-based indices.
#[derive(Parser, Debug)]
#[command(name = "isofact", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Total degree bound for Betti sweeps of affine semigroups.
    #[arg(long, global = true, value_name = "N")]
    pub degree_bound: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Largest fiber to enumerate before giving up.
    #[arg(long, global = true, value_name = "N")]
    pub fiber_cap: Option<usize>,
    /// Report elapsed time.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Global {
    pub fn exec(&self) -> Exec {
        match self.threads {
            Some(1) => Exec::Sequential,
            _ => Exec::Parallel,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti elements, isolated factorizations and constants.
    Analyze(commands::AnalyzeArgs),
    /// All factorizations of one element with their R-classes.
    Factorize(commands::FactorizeArgs),
    /// Betti elements with fibers and a minimal presentation.
    Betti(commands::GensArgs),
    /// Every classification predicate.
    Classify(commands::ClassifyArgs),
    /// Betti divisible semigroups from parameters, and back.
    #[command(subcommand)]
    Construct(commands::ConstructCmd),
    /// Glue two numerical semigroups, or check an affine gluing.
    Glue(commands::GlueArgs),
    /// Searches over Betti divisible semigroups.
    #[command(subcommand)]
    Search(commands::SearchCmd),
    /// Run every theorem check and bound over a corpus.
    Verify(commands::VerifyArgs),
}

/// What a command produced.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Non-zero for reports that signal a failed check.
    pub status: u8,
}

impl Report {
    pub fn ok(text: String, json: Value) -> Self {
        Report { text, json, status: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.category() {
        ErrorCategory::Input => 2,
        ErrorCategory::Infeasible => 3,
        ErrorCategory::Invariant => 4,
    }
}

fn category_name(e: &Error) -> &'static str {
    match e.category() {
        ErrorCategory::Input => "input",
        ErrorCategory::Infeasible => "infeasible",
        ErrorCategory::Invariant => "invariant",
    }
}

fn configure_threads(g: &Global) -> Result<(), Error> {
    #[cfg(feature = "parallel")]
    if let Some(n) = g.threads {
        if n == 0 {
            return Err(Error::Parse("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = g;
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Error> {
    configure_threads(&cli.global)?;
    let g = &cli.global;
    match &cli.command {
        Command::Analyze(a) => commands::analyze(g, a),
        Command::Factorize(a) => commands::factorize(g, a),
        Command::Betti(a) => commands::betti(g, a),
        Command::Classify(a) => commands::classify(g, a),
        Command::Construct(c) => commands::construct(g, c),
        Command::Glue(a) => commands::glue(g, a),
        Command::Search(c) => commands::search(g, c),
        Command::Verify(a) => commands::verify(g, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(mut r) => {
            if cli.global.json {
                if cli.global.timing {
                    r.json["elapsed_ms"] = json!(ms);
                }
                println!("{}", r.json);
            } else {
                print!("{}", r.text);
                if cli.global.timing {
                    println!("elapsed {ms:.1} ms");
                }
            }
            ExitCode::from(r.status)
        }
        Err(e) => {
            if cli.global.json {
                println!("{}", json!({ "error": { "category": category_name(&e), "message": e.to_string() } }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
