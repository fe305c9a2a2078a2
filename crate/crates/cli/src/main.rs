mod commands;
mod config;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
use error::CliError;
use report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "ordkit",
    version,
    about = "Exact computations with orderings of groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// A file of `key = value` lines supplying defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Step cap for handle reduction.
    #[arg(long, global = true, env = "ORDKIT_STEP_CAP")]
    step_cap: Option<usize>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "ORDKIT_THREADS")]
    threads: Option<usize>,
    /// Exit with status 1 unless the report's verdict equals this value.
    #[arg(long, global = true)]
    expect: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Braid words: signs, equality, cone rewriting.
    #[command(subcommand)]
    Braid(BraidCommand),
    /// Ordering oracles.
    #[command(subcommand)]
    Order(OrderCommand),
    /// Build the dynamical realization of an ordering.
    Realize(RealizeArgs),
    /// Search a realization table for crossed or transversal elements.
    Crossings(CrossingsArgs),
    /// Bracket powers of g between powers of f.
    Holder(HolderArgs),
    /// The space of orderings: distances, extensions, isolation.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
pub enum BraidCommand {
    /// Sign of a braid under a Dehornoy-type ordering.
    Sign {
        /// `dehornoy:bN` or `dd:bN`.
        #[arg(long)]
        order: String,
        #[arg(long)]
        element: String,
    },
    /// Decide whether two braid words are equal.
    Equal {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Rewrite a DD-positive braid of B3 as a positive word in u1, u2.
    Rewrite {
        #[arg(long)]
        element: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrderCommand {
    /// Sign of an element.
    Sign {
        #[arg(long)]
        order: String,
        #[arg(long)]
        element: String,
    },
    /// Compare two elements.
    Compare {
        #[arg(long)]
        order: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Search positive pairs of a ball for a Conrad-property witness.
    Conrad {
        #[arg(long)]
        order: String,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Search positive pairs of a ball for a right-recurrence suspect.
    Recurrence {
        #[arg(long)]
        order: String,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        max_power: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    #[arg(long)]
    order: String,
    /// Number of shortlex elements to realize.
    #[arg(long)]
    count: Option<usize>,
    /// Write the table to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CrossingsArgs {
    #[arg(long)]
    table: PathBuf,
    /// Ordered pairs examined.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HolderArgs {
    #[arg(long)]
    order: String,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[arg(long)]
    pmax: Option<usize>,
    /// Largest exponent tried while bracketing.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum SpaceCommand {
    /// Ball ultrametric between two orderings.
    Distance {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        max_radius: Option<usize>,
    },
    /// Count sign assignments on a ball that survive cone saturation.
    ExtendCount {
        /// `f2`, `b3`, `z2`, `klein`, ...
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: usize,
        /// `left`, `bi` or `conrad`.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        /// Radius of the closure region.
        #[arg(long)]
        region_radius: Option<usize>,
        /// Fixed signs as `element=+` or `element=-`; repeatable.
        #[arg(long = "fix")]
        fix: Vec<String>,
        /// Include the surviving assignments in the report.
        #[arg(long)]
        list: bool,
    },
    /// Look for another ordering agreeing on a ball.
    Probe {
        #[arg(long)]
        order: String,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        region_radius: Option<usize>,
    },
    /// Conjugates of an ordering approaching a target.
    Converge {
        #[arg(long)]
        order: String,
        /// Defaults to the ordering itself.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        conjugator_radius: usize,
        #[arg(long)]
        target_radius: usize,
    },
    /// Conradian soul of a braid ordering.
    Soul {
        #[arg(long)]
        strands: usize,
        /// `dehornoy` or `dd`.
        #[arg(long)]
        ordering: String,
        #[arg(long)]
        radius: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only criteria whose tag contains this text, or with this number.
    #[arg(long)]
    filter: Option<String>,
    /// Negative control: run with a deliberately broken handle reduction.
    #[arg(long)]
    corrupt_reduction: bool,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let config = RunConfig::load(cli.config.as_deref(), cli.format, cli.step_cap, cli.threads)?;
    if let Some(cap) = config.step_cap {
        ordkit::braid::set_step_cap(cap);
    }
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let report = commands::dispatch(cli.command, &config)?;
    let out = report.render(config.format)?;
    std::io::stdout().write_all(out.as_bytes())?;
    let mismatch = match (&cli.expect, &report.verdict) {
        (Some(want), Some(got)) => want != got,
        (Some(_), None) => {
            return Err(CliError::Usage(
                "this command has no verdict to check".into(),
            ))
        }
        (None, _) => false,
    };
    Ok(if report.failed || mismatch { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ordkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
