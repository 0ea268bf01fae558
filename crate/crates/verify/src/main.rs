use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dpcy::claims::{emit_report, exit_code, registry, run_claims, Context, ReportFormat};
use dpcy::groebner::GbCache;
use dpcy::numsolve::Config;

/// Overrides `--cache` when set.
const CACHE_ENV: &str = "VERIFY_CACHE_DIR";

#[derive(Parser)]
#[command(name = "verify", about = "Check the registered claims about the nodal threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claims and print a report.
    Run(RunArgs),
    /// List claim ids.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TolProfile {
    Default,
    Strict,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Comma-separated claim ids; all claims when omitted.
    #[arg(long, value_delimiter = ',')]
    claims: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "text")]
    report: Format,
    #[arg(long = "tol-profile", value_enum, default_value = "default")]
    tol_profile: TolProfile,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Directory for cached Groebner bases.
    #[arg(long)]
    cache: Option<PathBuf>,
}

fn run(args: RunArgs) -> Result<i32, String> {
    let mut cfg = match args.tol_profile {
        TolProfile::Default => Config::default(),
        TolProfile::Strict => Config::strict(),
    };
    if let Some(seed) = args.seed {
        cfg = cfg.with_seed(seed);
    }
    let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).or(args.cache);
    let cache = dir.map(GbCache::new).transpose().map_err(|e| e.to_string())?;
    let ctx = Context::new(cfg, cache);
    let reports = run_claims(args.claims.as_deref(), &ctx, args.workers).map_err(|e| e.to_string())?;
    let format = match args.report {
        Format::Json => ReportFormat::Json,
        Format::Text => ReportFormat::Text,
    };
    println!("{}", emit_report(&reports, format));
    Ok(exit_code(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for c in registry() {
                println!("{:<28} {}", c.id, c.anchor);
            }
            ExitCode::SUCCESS
        }
        Command::Run(args) => match run(args) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
