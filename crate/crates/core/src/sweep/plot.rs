//! gnuplot script generation: one panel per metric, one curve per
//! secondary-axis value, reading the CSV named in the provenance.

use std::io::Write;

use super::csv::fmt_num;
use super::{Metric, SweepError, SweepResult};

/// Panel order.
const PANEL_ORDER: [Metric; 6] = [
    Metric::Ergotropy,
    Metric::Power,
    Metric::Coherence,
    Metric::Capacity,
    Metric::AntiErgotropy,
    Metric::AvgPower,
];

fn ylabel(m: Metric) -> &'static str {
    match m {
        Metric::Ergotropy => "E",
        Metric::AntiErgotropy => "W",
        Metric::Capacity => "C",
        Metric::Power => "P",
        Metric::AvgPower => "<P>",
        Metric::Coherence => "C_{l_1}",
    }
}

/// 1-based CSV column of a metric.
fn column(m: Metric) -> usize {
    4 + Metric::ALL.iter().position(|&x| x == m).unwrap()
}

fn layout(n: usize) -> (usize, usize) {
    match n {
        1 => (1, 1),
        2 => (1, 2),
        3 | 4 => (2, 2),
        _ => (2, 3),
    }
}

pub fn emit_plot_script(result: &SweepResult, mut out: impl Write) -> Result<(), SweepError> {
    if result.rows.is_empty() {
        return Err(SweepError::Invalid(vec![super::FieldError::new(
            "rows",
            "nothing to plot",
        )]));
    }
    let prov = &result.provenance;
    let spec = &prov.spec;
    let panels: Vec<Metric> = PANEL_ORDER
        .into_iter()
        .filter(|m| spec.metrics.contains(m))
        .collect();
    let (rows, cols) = layout(panels.len());
    let data = prov.data_file.replace('\'', "''");

    writeln!(out, "# {} {} ({})", prov.tool, prov.version, prov.label)?;
    writeln!(out, "set datafile separator ','")?;
    writeln!(out, "set datafile commentschars '#'")?;
    writeln!(
        out,
        "set terminal pngcairo enhanced size {},{}",
        520 * cols,
        400 * rows
    )?;
    writeln!(out, "set output '{}.png'", prov.label.replace('\'', "''"))?;
    writeln!(out, "set xlabel '{{/Symbol W}}t'")?;
    writeln!(out, "set key top right")?;
    writeln!(out, "data = '{data}'")?;
    if panels.len() > 1 {
        writeln!(out, "set multiplot layout {rows},{cols}")?;
    }
    for m in &panels {
        writeln!(out)?;
        writeln!(out, "set ylabel '{}'", ylabel(*m))?;
        let col = column(*m);
        match &spec.vary {
            None => writeln!(out, "plot data using 3:{col} with lines notitle")?,
            Some(v) => {
                let curves: Vec<String> = spec
                    .axis_values()
                    .into_iter()
                    .flatten()
                    .map(|x| {
                        format!(
                            "data using 3:(strcol(2) eq '{}' ? ${col} : 1/0) with lines title '{} = {}'",
                            fmt_num(x),
                            v.axis.symbol(),
                            x
                        )
                    })
                    .collect();
                writeln!(out, "plot {}", curves.join(", \\\n     "))?;
            }
        }
    }
    if panels.len() > 1 {
        writeln!(out, "\nunset multiplot")?;
    }
    out.flush()?;
    Ok(())
}
