use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use confine::numfmt::sig;
use confine_cli::output::{write_file, Table};
use confine_cli::runs;
use confine_cli::{CliError, CliResult, ModeSelection, OutputFormat, RunConfig};

/// Variational and finite-difference ground states in a hard-wall sphere.
#[derive(Debug, Parser)]
#[command(name = "confine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Key-value config file (`section.key = value`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write output files here instead of printing to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// paper, normalized or both.
    #[arg(long, global = true)]
    mode: Option<ModeSelection>,

    /// csv or json.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimize at a single z and compare with the finite-difference energy.
    Solve,
    /// One row per z and mode.
    Sweep,
    /// Recompute the published tables under all four conventions.
    Tables,
    /// |ψ(r)|² at the optimized a.
    Density {
        #[arg(long)]
        samples: Option<usize>,
    },
    /// |ψ(0)|² against z.
    WfoCurve,
    /// Invariant checks and the closed-form audit.
    Validate,
    /// Finite-difference ground state for each z.
    Exact {
        /// Also export u(r) on the grid.
        #[arg(long)]
        eigenfunction: bool,
    },
}

fn load(cli: &Cli) -> CliResult<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out_dir = Some(out.clone());
    }
    if let Some(mode) = cli.mode {
        cfg.modes = mode;
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Command::Density { samples: Some(n) } = cli.command {
        cfg.density_samples = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Writes `stem.ext` to the output directory, or prints it.
fn emit(cfg: &RunConfig, stem: &str, table: &Table) -> CliResult<()> {
    let body = table.render(cfg.format);
    match &cfg.out_dir {
        Some(dir) => write_file(dir, &format!("{stem}.{}", cfg.format.extension()), &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit_text(cfg: &RunConfig, name: &str, text: &str) -> CliResult<()> {
    if let Some(dir) = &cfg.out_dir {
        write_file(dir, name, text)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = load(cli)?;
    match cli.command {
        Command::Solve => {
            let outcome = runs::run_solve(&cfg)?;
            print!("{}", outcome.summary());
            if cfg.out_dir.is_some() {
                emit(&cfg, "solve", &outcome.table())?;
            }
        }
        Command::Sweep => emit(&cfg, "sweep", &runs::run_sweep(&cfg)?)?,
        Command::Tables => {
            let report = runs::run_tables(&cfg)?;
            let summary = report.summary();
            if cfg.out_dir.is_some() {
                emit(&cfg, "tables", &report.table())?;
                emit_text(&cfg, "tables_summary.txt", &summary)?;
                print!("{summary}");
            } else {
                emit(&cfg, "tables", &report.table())?;
                eprint!("{summary}");
            }
        }
        Command::Density { .. } => {
            let curves = runs::run_density(&cfg)?;
            emit(&cfg, "density", &runs::density_table(&curves))?;
        }
        Command::WfoCurve => emit(&cfg, "wfo_curve", &runs::run_wfo_curve(&cfg)?)?,
        Command::Validate => {
            let report = runs::run_validate(&cfg)?;
            let text = report.text();
            print!("{text}");
            emit_text(&cfg, "validate.txt", &text)?;
            emit_text(&cfg, "cross_check.csv", &report.cross_check.to_csv())?;
            emit_text(&cfg, "cross_check.txt", &report.cross_check.to_key_value())?;
            if report.failures() > 0 {
                return Err(CliError::Validation(format!(
                    "{} invariant(s) failed",
                    report.failures()
                )));
            }
        }
        Command::Exact { eigenfunction } => {
            let solutions = runs::run_exact(&cfg)?;
            emit(&cfg, "exact", &runs::exact_table(&solutions))?;
            if eigenfunction {
                for s in &solutions {
                    let z = *s.r.last().expect("grid");
                    emit(&cfg, &format!("eigenfunction_z{}", sig(z, 6)), &runs::eigenfunction_table(s))?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
