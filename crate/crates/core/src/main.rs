use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use charcycle::cli::{self, exit, DiskCache, RunOptions};
use charcycle::cycles::{set_component_store, Strategy};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Single,
    Iterative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Characteristic cycles of localizations and local cohomology modules.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// Job file, or `-` for standard input.
    job: Option<PathBuf>,

    /// Job text given inline instead of a file.
    #[arg(short = 'e', long = "expr", conflicts_with = "job")]
    expr: Option<String>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Overrides the strategy of the job.
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,

    /// Treat warnings as errors (exit code 4).
    #[arg(long)]
    strict: bool,

    /// Directory for cached localizations.
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Report every vertex of the cube.
    #[arg(long)]
    vertices: bool,

    /// Direct-sum split of the module, blocks separated by `|`.
    #[arg(long)]
    split: Option<String>,
}

fn fail(code: i32, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let text = match (&args.expr, &args.job) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                return fail(exit::USAGE, &format!("reading standard input: {e}"));
            }
            s
        }
        (None, Some(p)) => match std::fs::read_to_string(p) {
            Ok(s) => s,
            Err(e) => return fail(exit::USAGE, &format!("{}: {e}", p.display())),
        },
        (None, None) => return fail(exit::USAGE, "no job given (pass a file, `-` or --expr)"),
    };
    let job = match cli::parse_job(&text) {
        Ok(j) => j,
        Err(e) => return fail(cli::exit_code(&e), &e.to_string()),
    };
    let split = match &args.split {
        Some(s) => match cli::parse_split(&job.ring, &job.cotangent, s) {
            Ok(b) => Some(b),
            Err(e) => return fail(cli::exit_code(&e), &format!("--split: {e}")),
        },
        None => None,
    };
    let cache = match &args.cache_dir {
        Some(dir) => match DiskCache::open(dir) {
            Ok(c) => {
                set_component_store(Some(c.clone()));
                Some(c)
            }
            Err(e) => return fail(exit::USAGE, &e.to_string()),
        },
        None => None,
    };
    let opts = RunOptions {
        vertices: args.vertices,
        strategy: args.strategy.map(|s| match s {
            StrategyArg::Single => Strategy::Single,
            StrategyArg::Iterative => Strategy::Iterative,
        }),
        split,
    };
    let mut report = match cli::run(&job, &opts) {
        Ok(r) => r,
        Err(e) => return fail(cli::exit_code(&e), &e.to_string()),
    };
    if let Some(c) = &cache {
        report.warnings.extend(c.warnings());
    }
    let out = match args.format {
        Format::Text => cli::render_text(&report),
        Format::Json => cli::render_json(&report),
    };
    print!("{out}");
    if args.strict && !report.warnings.is_empty() {
        eprintln!("error: {} warning(s) under --strict", report.warnings.len());
        return ExitCode::from(exit::STRICT_WARNING as u8);
    }
    ExitCode::SUCCESS
}
