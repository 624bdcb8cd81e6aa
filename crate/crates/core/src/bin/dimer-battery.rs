use std::fs::{self, File};
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dimer_battery::sweep::{
    emit_csv, emit_plot_script, figure_preset, parse_config, run_sweep, SweepError, SweepResult,
    SweepSpec, PRESETS,
};

/// Charging sweeps for a dipole-coupled two-emitter quantum battery.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a JSON config; writes <stem>.csv and <stem>.plot.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a reference figure preset; writes <preset>.csv and <preset>.plot.
    Figure {
        #[arg(value_parser = PRESETS)]
        preset: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a JSON config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load(path: &Path) -> Result<SweepSpec, SweepError> {
    let text = fs::read_to_string(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn write_outputs(result: SweepResult, out: &Path, stem: &str) -> Result<(), SweepError> {
    fs::create_dir_all(out)?;
    let result = result.labeled(stem);
    let csv = out.join(&result.provenance.data_file);
    let plot = out.join(format!("{stem}.plot"));
    emit_csv(&result, BufWriter::new(File::create(&csv)?))?;
    emit_plot_script(&result, BufWriter::new(File::create(&plot)?))?;
    println!("wrote {} ({} rows)", csv.display(), result.rows.len());
    println!("wrote {}", plot.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), SweepError> {
    match cli.command {
        Command::Sweep { config, out } => {
            let spec = load(&config)?;
            let stem = config
                .file_stem()
                .map_or("sweep".into(), |s| s.to_string_lossy().into_owned());
            write_outputs(run_sweep(&spec)?, &out, &stem)
        }
        Command::Figure { preset, out } => {
            write_outputs(run_sweep(&figure_preset(&preset)?)?, &out, &preset)
        }
        Command::Validate { config } => {
            let spec = load(&config)?;
            let series = spec.axis_values().len();
            println!(
                "{}: ok ({} tau points x {} series, {} metrics)",
                config.display(),
                spec.tau.count,
                series,
                spec.metrics.len()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                SweepError::Invalid(list) => {
                    eprintln!("error: invalid sweep");
                    for f in list {
                        eprintln!("  {f}");
                    }
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
