mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dpcoh::exactlin::RingMode;

use crate::config::ExperimentConfig;
use crate::output::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "dpcoh", version, about = "Divided power modules and cohomology of FI-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic and invariants of divided power modules.
    #[command(subcommand)]
    Dp(DpCommand),
    /// Tables of H^t(S_n, M_n) for an FI-module M.
    #[command(subcommand)]
    Gamma(GammaCommand),
    /// Run a verification suite: all, dpa, a number 1-10, or a suite name.
    Verify {
        suite: String,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run experiments described by key=value config files, concurrently.
    Run {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DpCommand {
    /// Multiply two elements, e.g. "x[2]" "x[3]".
    Mul {
        #[command(flatten)]
        ring: RingArg,
        a: String,
        b: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Graded pieces M_n of a presented module over a range `a..b` (inclusive).
    Hilbert {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value = "0..20")]
        n: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Freeness level epsilon, top generator degree and lambda.
    Epsilon {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Onset and period of the dimensions of the graded pieces.
    Period {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print a built-in presentation in the .dpm line format.
    Show {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        src: SourceArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GammaCommand {
    /// Dimension table with a periodicity verdict.
    Table {
        /// FI-module descriptor: trivial, induced:d=2,rep=regular, specht:2,1, point:d=1, shift:<desc>.
        #[arg(long)]
        module: String,
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        nmax: usize,
        /// hemmer, fi, pd, nakaoka, or onset=A;period=B. Defaults by module.
        #[arg(long)]
        claim: Option<String>,
        /// Accept a window cut short by the scale guards instead of failing.
        #[arg(long)]
        truncate: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Whether restriction H^t(S_n) -> H^t(S_{n-1}) is an isomorphism.
    Nakaoka {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        truncate: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct RingArg {
    /// Coefficient ring: a prime p, 0 or Z for the integers.
    #[arg(long = "ring", visible_alias = "p", default_value = "2", value_parser = parse_ring)]
    ring: RingMode,
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Presentation file in the .dpm line format.
    #[arg(long, conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// sphere, augmentation:N, y0-quotients, free:d1,d2,...
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Written atomically; stdout if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_ring(s: &str) -> Result<RingMode, String> {
    s.parse::<RingMode>().map_err(|e| e.to_string())
}

impl From<&SourceArgs> for config::Source {
    fn from(s: &SourceArgs) -> Self {
        match (&s.file, &s.builtin) {
            (Some(f), _) => config::Source::File(f.clone()),
            (None, Some(b)) => config::Source::Builtin(b.clone()),
            (None, None) => config::Source::Missing,
        }
    }
}

fn to_config(cmd: Command) -> Result<Vec<ExperimentConfig>, Outcome> {
    use config::Experiment as E;
    let mut c = ExperimentConfig::default();
    let out = |c: &mut ExperimentConfig, o: OutArgs| {
        c.format = o.format;
        c.output = o.output;
    };
    match cmd {
        Command::Run { configs } => {
            return configs.iter().map(|p| ExperimentConfig::load(p).map_err(Outcome::usage)).collect();
        }
        Command::Verify { suite, out: o, seed } => {
            c.experiment = Some(E::Verify);
            c.suite = Some(suite);
            c.seed = seed;
            out(&mut c, o);
        }
        Command::Dp(DpCommand::Mul { ring, a, b, out: o }) => {
            c.experiment = Some(E::DpMul);
            c.ring = Some(ring.ring);
            c.operands = Some((a, b));
            out(&mut c, o);
        }
        Command::Dp(DpCommand::Hilbert { ring, src, n, out: o }) => {
            c.experiment = Some(E::DpHilbert);
            c.ring = Some(ring.ring);
            c.source = Some((&src).into());
            c.range = Some(config::parse_range(&n).map_err(Outcome::usage)?);
            out(&mut c, o);
        }
        Command::Dp(DpCommand::Epsilon { ring, src, out: o }) => {
            c.experiment = Some(E::DpEpsilon);
            c.ring = Some(ring.ring);
            c.source = Some((&src).into());
            out(&mut c, o);
        }
        Command::Dp(DpCommand::Period { ring, src, out: o }) => {
            c.experiment = Some(E::DpPeriod);
            c.ring = Some(ring.ring);
            c.source = Some((&src).into());
            out(&mut c, o);
        }
        Command::Dp(DpCommand::Show { ring, src }) => {
            c.experiment = Some(E::DpShow);
            c.ring = Some(ring.ring);
            c.source = Some((&src).into());
        }
        Command::Gamma(GammaCommand::Table { module, ring, t, nmax, claim, truncate, out: o }) => {
            c.experiment = Some(E::GammaTable);
            c.module = Some(module.parse().map_err(|e| Outcome::usage(format!("--module: {e}")))?);
            c.ring = Some(ring.ring);
            c.t = Some(t);
            c.nmax = Some(nmax);
            c.claim = claim.map(|s| s.parse()).transpose().map_err(|e| Outcome::usage(format!("--claim: {e}")))?;
            c.truncate = truncate;
            out(&mut c, o);
        }
        Command::Gamma(GammaCommand::Nakaoka { ring, t, nmax, truncate, out: o }) => {
            c.experiment = Some(E::Nakaoka);
            c.ring = Some(ring.ring);
            c.t = Some(t);
            c.nmax = Some(nmax);
            c.truncate = truncate;
            out(&mut c, o);
        }
    }
    Ok(vec![c])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match to_config(cli.command) {
        Ok(configs) => commands::run_all(&configs),
        Err(o) => o,
    };
    outcome.finish()
}
