//! Exchange coupling and collective decay from emitter orientation and
//! separation, for an H-aggregate (side by side) and a J-aggregate (head to tail).

use dimer_battery::model::{coupling_from_geometry, emission_rate, GeometryConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = [1.0, 0.0, 0.0];
    let z = [0.0, 0.0, 1.0];
    let gamma = emission_rate(1.0, 1.0, 1.0, 1.0);

    println!(
        "{:>8} {:>14} {:>14} {:>14} {:>14}",
        "z12", "V12 (H)", "L12 (H)", "V12 (J)", "L12 (J)"
    );
    for z12 in [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0] {
        let h = coupling_from_geometry(&GeometryConfig::new(x, x, z, z12, gamma, gamma)?)?;
        let j = coupling_from_geometry(&GeometryConfig::new(z, z, z, z12, gamma, gamma)?)?;
        println!(
            "{z12:>8.2} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
            h.v12, h.lambda12, j.v12, j.lambda12
        );
    }
    Ok(())
}
