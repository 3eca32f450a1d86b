use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orthoscheme_cli::checks::{Fault, SampleSizes, Settings};
use orthoscheme_cli::output::{emit, Format};
use orthoscheme_cli::tables::{build_table, TableFamily, TableRequest};
use orthoscheme_cli::verify::run_verify;
use orthoscheme_cli::{experiments, CliError, Result};
use orthoscheme_core::rational::parse_rational;
use orthoscheme_core::{ConeSpec, Source, WalkKind};
use orthoscheme_mc::estimate::DEFAULT_SEED;
use orthoscheme_mc::recovery::Weights;
use orthoscheme_mc::McConfig;

#[derive(Parser)]
#[command(name = "orthoscheme", version, about = "Angle sums of Weyl chambers and orthoschemes: exact tables and Monte Carlo checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Base seed; every experiment derives its own stream seed from it.
    #[arg(long, env = "ORTHOSCHEME_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn mc(&self) -> McConfig {
        McConfig::new(self.seed).with_threads(self.threads)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact values of one formula family for all sizes up to --n.
    Tables {
        #[arg(value_enum)]
        family: TableFamily,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Parameter of the r-Stirling tables, as p/q.
        #[arg(long, default_value = "1")]
        r: String,
        /// Dimension for expected-faces.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Source polyhedron for recovery.
        #[arg(long, default_value = "WB")]
        source: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every check and write a JSON report; exits nonzero if any fails.
    Verify {
        /// Samples per Monte Carlo check (defaults are sized for a short run).
        #[arg(long)]
        samples: Option<u64>,
        /// Acceptance multiplier for |z|.
        #[arg(long, default_value_t = 4.0)]
        sigma: f64,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo estimates next to their exact values.
    Mc {
        #[command(subcommand)]
        experiment: Experiment,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Walk,
    Bridge,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Equal,
    Random,
}

#[derive(Subcommand)]
enum Experiment {
    /// Expected j-faces of the Minkowski sum of walk hulls.
    Faces {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Walk lengths, comma separated (one per summand).
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long, value_enum, default_value_t = Kind::Walk)]
        kind: Kind,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Intrinsic volumes of a product of chambers such as A2xB2.
    Volumes {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Probability of unique recovery from k Gaussian measurements.
    Recovery {
        #[arg(long)]
        source: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = WeightArg::Equal)]
        weights: WeightArg,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Internal angles from block lengths, or the angle reconstruction of
    /// every intrinsic volume of --spec.
    Angles {
        #[arg(long, value_delimiter = ',', conflicts_with = "spec", required_unless_present = "spec")]
        blocks: Vec<usize>,
        #[arg(long)]
        bounded: bool,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Tables { family, n, r, d, source, common } => {
            let req = TableRequest {
                family,
                n,
                r: parse_rational(&r).map_err(usage)?,
                d,
                source: source.parse::<Source>().map_err(usage)?,
            };
            emit(&build_table(&req)?, common.format, common.out.as_deref())?;
            Ok(true)
        }
        Command::Verify { samples, sigma, inject_fault, common } => {
            if sigma.is_nan() || sigma <= 0.0 {
                return Err(CliError::Usage("--sigma must be positive".into()));
            }
            let settings = Settings {
                mc: common.mc(),
                sigma,
                samples: samples.map_or_else(SampleSizes::quick, SampleSizes::uniform),
                fault: inject_fault,
            };
            let report = run_verify(&settings);
            let text = serde_json::to_string_pretty(&report)?;
            match &common.out {
                Some(p) => std::fs::write(p, text + "\n")?,
                None => writeln!(std::io::stdout().lock(), "{text}")?,
            }
            for f in report.failures() {
                eprintln!("check failed: {} ({})", f.name, f.detail);
            }
            Ok(report.passed)
        }
        Command::Mc { experiment } => {
            let (rows, common) = match experiment {
                Experiment::Faces { d, n, j, kind, samples, common } => {
                    let kind = match kind {
                        Kind::Walk => WalkKind::Walk,
                        Kind::Bridge => WalkKind::Bridge,
                    };
                    (experiments::faces(d, &n, j, kind, samples, &common.mc())?, common)
                }
                Experiment::Volumes { spec, samples, common } => {
                    let spec: ConeSpec = spec.parse().map_err(usage)?;
                    (experiments::volumes(&spec, samples, &common.mc())?, common)
                }
                Experiment::Recovery { source, n, j, k, weights, samples, common } => {
                    let source: Source = source.parse().map_err(usage)?;
                    let weights = match weights {
                        WeightArg::Equal => Weights::Equal,
                        WeightArg::Random => Weights::Random,
                    };
                    (experiments::recovery(source, n, j, k, weights, samples, &common.mc())?, common)
                }
                Experiment::Angles { blocks, bounded, spec, samples, common } => {
                    let rows = match spec {
                        Some(s) => experiments::reconstruction(&s.parse().map_err(usage)?, samples, &common.mc())?,
                        None => experiments::angles(&blocks, bounded, samples, &common.mc())?,
                    };
                    (rows, common)
                }
            };
            emit(&rows, common.format, common.out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) | CliError::Core(_) | CliError::Mc(orthoscheme_mc::McError::InvalidArgument(_)) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
