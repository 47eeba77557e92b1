use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use quadfield_audit::bounds::BaseSplit;
use quadfield_audit::report::{self, BoundsArgs, ConfigFile, CurveArgs, Format, RayclassArgs, Report, RunConfig, TableChoice};
use quadfield_audit::Result;

#[derive(Parser)]
#[command(name = "qfaudit", version, about = "Audit quadratic-field bounds, tables and curves")]
struct Cli {
    /// Decimal digits for interval arithmetic [env: QFAUDIT_PRECISION]
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// json, tsv or text
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// TOML file with run settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Add wall-clock time to the report
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exclusion thresholds for one scenario
    Bounds {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value = "ramified")]
        base: BaseSplit,
        #[arg(long, conflicts_with = "tame")]
        wild: bool,
        #[arg(long)]
        tame: bool,
    },
    /// Ray class groups modulo p^k
    Rayclass {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        kmax: Option<u32>,
        /// Include the real places in the modulus
        #[arg(long)]
        infinity: bool,
    },
    /// Audit the stored tables
    Tables {
        #[arg(long, default_value = "table1")]
        which: TableChoice,
        /// CSV or JSON polynomial corpus to search
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    Curve(CurveCmd),
    /// Every audit in sequence
    Walkthrough,
}

#[derive(Args)]
struct CurveCmd {
    /// JSON curve model {d, a1, a2, a3, a4, a6}
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long)]
    corollary3: bool,
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(path) = &cli.config {
        cfg = cfg.merge_file(ConfigFile::load(path)?);
    }
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.output.is_some() {
        cfg.output = cli.output.clone();
    }
    cfg.timing = cli.timing;
    if let Cmd::Rayclass { kmax: Some(k), .. } = cli.cmd {
        cfg.kmax = k;
    }
    if let Cmd::Tables { corpus: Some(c), .. } = &cli.cmd {
        cfg.corpus = Some(c.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(Report, RunConfig)> {
    let cfg = config(cli)?;
    let start = Instant::now();
    let mut rep = match &cli.cmd {
        Cmd::Bounds { p, base, tame, .. } => report::cmd_bounds(&cfg, BoundsArgs { p: *p, base: *base, wild: !tame })?,
        Cmd::Rayclass { d, p, infinity, .. } => report::cmd_rayclass(&cfg, RayclassArgs { d: *d, p: *p, kmax: cfg.kmax, infinity: *infinity })?,
        Cmd::Tables { which, .. } => report::cmd_tables(&cfg, *which)?,
        Cmd::Curve(c) => report::cmd_curve(&cfg, &CurveArgs { file: c.file.clone(), d: c.d, corollary3: c.corollary3 })?,
        Cmd::Walkthrough => report::cmd_walkthrough(&cfg)?,
    };
    if cfg.timing {
        rep.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok((rep, cfg))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (rep, cfg) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("qfaudit: {e}");
            return ExitCode::from(report::exit_code(&e) as u8);
        }
    };
    let text = rep.render(cfg.format);
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("qfaudit: {}: {e}", path.display());
                return ExitCode::from(report::EXIT_USAGE as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report::report_exit_code(&rep) as u8)
}
