//! Ergotropy, anti-ergotropy, capacity, power and coherence along one
//! charging cycle.

use std::f64::consts::PI;

use dimer_battery::metrics::{Evaluator, SampleOptions};
use dimer_battery::model::DimerParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = DimerParams::new(6.0, 10.0, 0.05, 0.5)?;
    let ev = Evaluator::new(&p, SampleOptions::default())?;
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "tau", "E", "W", "C", "P", "C_l1"
    );
    for k in 0..=16 {
        let s = ev.sample(k as f64 * PI / 8.0)?;
        println!(
            "{:>8.4} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            s.tau, s.ergotropy, s.anti_ergotropy, s.capacity, s.power, s.coherence_l1
        );
    }
    Ok(())
}
