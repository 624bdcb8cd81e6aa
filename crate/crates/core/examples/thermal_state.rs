//! Thermal state of the dimer and its energy levels.
//!
//!     cargo run --example thermal_state -- 6 10 0.05 0.5

use dimer_battery::linalg::hermitian_eig;
use dimer_battery::model::{
    analytic_spectrum, gibbs_state, hamiltonian, partition_function, DimerParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let [nu0, delta, v12, t] = match args.as_slice() {
        [] => [6.0, 10.0, 0.05, 0.5],
        [a, b, c, d] => [*a, *b, *c, *d],
        _ => return Err("usage: thermal_state [nu0 delta v12 temperature]".into()),
    };
    let p = DimerParams::new(nu0, delta, v12, t)?;

    println!(
        "nu0={nu0} delta={delta} v12={v12} T={t}  alpha={:.6}",
        p.alpha()
    );
    let spec = analytic_spectrum(&p);
    println!("analytic energies: {:?}", spec.energies);
    println!(
        "numeric energies:  {:?}",
        hermitian_eig(&hamiltonian(&p))?.values()
    );
    println!("Z = {:.10e}", partition_function(&p));

    let g = gibbs_state(&p);
    println!("Gibbs state:\n{:?}", g.matrix());
    println!("populations: {:?}", g.spectrum()?);
    Ok(())
}
