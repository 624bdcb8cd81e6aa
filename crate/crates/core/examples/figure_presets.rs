//! Run the four reference figure sweeps and summarize each curve.
//!
//!     cargo run --release --example figure_presets

use dimer_battery::sweep::{figure_preset, run_sweep, Metric, PRESETS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in PRESETS {
        let spec = figure_preset(name)?;
        let axis = spec.vary.as_ref().map_or("none", |v| v.axis.name());
        let r = run_sweep(&spec)?;
        println!("{name}: {} rows, varying {axis}", r.rows.len());
        let emax = r.max_by_series(Metric::Ergotropy);
        let cmax = r.max_by_series(Metric::Coherence);
        for ((a, e), (_, c)) in emax.iter().zip(&cmax) {
            let cap = r.series(*a).next().map_or(f64::NAN, |s| s.capacity);
            println!(
                "  {axis} = {:>5}: max E = {e:.6}  C = {cap:.6}  max C_l1 = {c:.6}",
                a.unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
