//! Charge the thermal state with the transverse drive and compare the
//! conjugation path with the closed-form matrix elements.

use std::f64::consts::PI;

use dimer_battery::charging::{eta_closed_form, evolve, u_x, ChargeConfig};
use dimer_battery::model::DimerParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = DimerParams::new(6.0, 4.0, 0.05, 0.5)?;
    let drive = ChargeConfig::new(2.0, PI / 4.0)?;
    println!(
        "Omega = {}, tau = {:.4} (t = {:.4})",
        drive.omega(),
        drive.tau(),
        drive.time()
    );

    println!(
        "U_x(pi/2), a full swap of both emitters:\n{:?}",
        u_x(PI / 2.0)
    );

    for k in 0..=8 {
        let tau = k as f64 * PI / 8.0;
        let rho = evolve(&p, tau);
        let gap = rho.matrix().max_abs_diff(eta_closed_form(&p, tau).matrix());
        println!(
            "tau = {:>6.4}  <11|rho|11> = {:.6}  <00|rho|00> = {:.6}  closed-form gap {gap:.1e}",
            tau,
            rho[(3, 3)].re,
            rho[(0, 0)].re
        );
    }
    Ok(())
}
