use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use etalab_cli::commands;
use etalab_cli::config::{self, FlagSet};
use etalab_cli::error::{usage, Result};
use etalab_cli::Report;

/// High-precision reports on the alternating zeta series: tail values,
/// closed-form approximation errors, functional-equation factors and
/// critical-line zeros.
#[derive(Parser)]
#[command(name = "etalab", version, disable_help_subcommand = true)]
struct Cli {
    /// Optional key=value settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate eta, zeta and a partial sum at one point.
    Eval(FlagSet),
    /// Tail vs closed-form approximation, digit by digit.
    Digits(FlagSet),
    /// Rounded-digit relative errors of the approximation, with a
    /// decay fit.
    Table1(FlagSet),
    /// Asymptotic probes over an index schedule.
    Probe {
        #[arg(value_enum)]
        which: ProbeKind,
        #[command(flatten)]
        flags: FlagSet,
    },
    /// Locate critical-line zeros in a range.
    Zeros(FlagSet),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    /// Consecutive-tail ratios against their limit.
    Lemma1,
    /// First-term-to-tail ratio against its limit 2.
    FSeq,
    /// Approximation error rescaled by (n+0.5)^s.
    EpsScaled,
    /// Sup of |R_n| on a segment against n^(-sigma).
    Uniform,
    /// Iterated-limit table around a located zero.
    Exchange,
}

fn run(cli: Cli) -> Result<Report> {
    let file = cli
        .config
        .as_deref()
        .map(config::load_config_file)
        .transpose()?;
    let build = |flags: FlagSet| config::resolve(flags, file.clone());
    match cli.command {
        Command::Eval(flags) => commands::cmd_eval(&build(flags)?),
        Command::Digits(flags) => commands::cmd_digits(&build(flags)?),
        Command::Table1(flags) => commands::cmd_table1(&build(flags)?),
        Command::Probe { which, flags } => {
            let cfg = build(flags)?;
            match which {
                ProbeKind::Lemma1 => commands::cmd_probe_lemma1(&cfg),
                ProbeKind::FSeq => commands::cmd_probe_f_seq(&cfg),
                ProbeKind::EpsScaled => commands::cmd_probe_eps_scaled(&cfg),
                ProbeKind::Uniform => commands::cmd_probe_uniform(&cfg),
                ProbeKind::Exchange => commands::cmd_probe_exchange(&cfg),
            }
        }
        Command::Zeros(flags) => commands::cmd_zeros(&build(flags)?),
    }
}

fn main() {
    let cli = Cli::parse();
    let config_path = cli.config.clone();
    // Resolve once more inside run(); here only to learn format/out.
    let outcome: Result<()> = (|| {
        let file = config_path
            .as_deref()
            .map(config::load_config_file)
            .transpose()?;
        let (format, out) = match &cli.command {
            Command::Eval(f)
            | Command::Digits(f)
            | Command::Table1(f)
            | Command::Zeros(f)
            | Command::Probe { flags: f, .. } => {
                let cfg = config::resolve(f.clone(), file)?;
                (cfg.format, cfg.out.clone())
            }
        };
        let report = run(cli)?;
        let rendered = report.render(format);
        match out {
            None => print!("{rendered}"),
            Some(path) => std::fs::write(&path, rendered).map_err(|e| {
                usage(format!("cannot write {}: {e}", path.display()))
            })?,
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
