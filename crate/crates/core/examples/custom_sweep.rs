//! Build a sweep from a JSON config and write the CSV and plot script.
//!
//!     cargo run --example custom_sweep -- [config.json] [out-dir]

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use dimer_battery::sweep::{emit_csv, emit_plot_script, parse_config, run_sweep};

const DEFAULT: &str = r#"{
  "nu0": 4, "delta": 6, "v12": 0.01, "temperature": 1,
  "tau_stop": 3.141592653589793, "tau_count": 101,
  "vary_name": "v12", "vary_values": [0.01, 0.5, 2],
  "metrics": ["ergotropy", "avg_power"]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let (text, stem) = match args.next() {
        Some(path) => {
            let path = PathBuf::from(path);
            (
                fs::read_to_string(&path)?,
                path.file_stem().unwrap().to_string_lossy().into_owned(),
            )
        }
        None => (DEFAULT.to_owned(), "custom".to_owned()),
    };
    let out = args
        .next()
        .map_or_else(|| std::env::temp_dir().join("dimer-battery"), PathBuf::from);

    let spec = parse_config(&text)?;
    let result = run_sweep(&spec)?.labeled(&stem);
    fs::create_dir_all(&out)?;
    emit_csv(
        &result,
        BufWriter::new(File::create(out.join(format!("{stem}.csv")))?),
    )?;
    emit_plot_script(
        &result,
        BufWriter::new(File::create(out.join(format!("{stem}.plot")))?),
    )?;
    println!(
        "{} rows -> {}",
        result.rows.len(),
        out.join(format!("{stem}.csv")).display()
    );
    Ok(())
}
