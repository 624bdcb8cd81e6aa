//! CSV emission and the matching reader.
//!
//! Layout: `#`-prefixed provenance lines, the header, then one row per
//! sample. Numbers use `{:.16e}` (17 significant digits), so every value
//! parses back to the identical `f64`. Unselected or undefined values are
//! empty cells; without a secondary axis `axis` is `none` and
//! `axis_value` is empty.

use std::io::{BufRead, Write};

use super::{Metric, SweepError, SweepResult};
use crate::sweep::to_config_json;

pub const CSV_HEADER: &str =
    "axis,axis_value,tau,ergotropy,anti_ergotropy,capacity,power,avg_power,coherence";

const CONFIG_PREFIX: &str = "# config: ";

pub(crate) fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit_csv(result: &SweepResult, mut out: impl Write) -> Result<(), SweepError> {
    let prov = &result.provenance;
    let spec = &prov.spec;
    writeln!(out, "# {} {}", prov.tool, prov.version)?;
    writeln!(out, "# label: {}", prov.label)?;
    writeln!(out, "{CONFIG_PREFIX}{}", to_config_json(spec))?;
    writeln!(out, "{CSV_HEADER}")?;
    let axis = spec.vary.as_ref().map_or("none", |v| v.axis.name());
    let mut line = String::new();
    for row in &result.rows {
        line.clear();
        line.push_str(axis);
        line.push(',');
        if let Some(a) = row.axis_value {
            line.push_str(&fmt_num(a));
        }
        line.push(',');
        line.push_str(&fmt_num(row.sample.tau));
        for m in Metric::ALL {
            line.push(',');
            if spec.metrics.contains(&m) {
                if let Some(v) = m.value(&row.sample) {
                    line.push_str(&fmt_num(v));
                }
            }
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

/// One parsed data row. `values` follows [`Metric::ALL`].
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub axis: String,
    pub axis_value: Option<f64>,
    pub tau: f64,
    pub values: [Option<f64>; 6],
}

impl CsvRow {
    pub fn get(&self, m: Metric) -> Option<f64> {
        self.values[Metric::ALL.iter().position(|&x| x == m).unwrap()]
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    /// Comment lines without the leading `# `.
    pub comments: Vec<String>,
    /// The echoed configuration JSON, if present.
    pub config: Option<String>,
    pub rows: Vec<CsvRow>,
}

/// Reads a file written by [`emit_csv`].
pub fn read_csv(input: impl BufRead) -> Result<CsvTable, SweepError> {
    let mut table = CsvTable::default();
    let mut seen_header = false;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let err = |message: String| SweepError::Csv {
            line: lineno,
            message,
        };
        if let Some(c) = line.strip_prefix('#') {
            if let Some(cfg) = line.strip_prefix(CONFIG_PREFIX) {
                table.config = Some(cfg.to_owned());
            }
            table.comments.push(c.trim_start().to_owned());
            continue;
        }
        if !seen_header {
            if line != CSV_HEADER {
                return Err(err(format!("expected header `{CSV_HEADER}`")));
            }
            seen_header = true;
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 9 {
            return Err(err(format!("expected 9 cells, found {}", cells.len())));
        }
        let num = |s: &str| -> Result<Option<f64>, SweepError> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse()
                    .map(Some)
                    .map_err(|_| err(format!("bad number `{s}`")))
            }
        };
        let tau = num(cells[2])?.ok_or_else(|| err("empty tau".into()))?;
        let mut values = [None; 6];
        for (k, v) in values.iter_mut().enumerate() {
            *v = num(cells[3 + k])?;
        }
        table.rows.push(CsvRow {
            axis: cells[0].to_owned(),
            axis_value: num(cells[1])?,
            tau,
            values,
        });
    }
    if !seen_header {
        return Err(SweepError::Csv {
            line: 0,
            message: "missing header".into(),
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DimerParams;
    use crate::sweep::{figure_preset, parse_config, run_sweep, SweepSpec};

    fn emit(r: &SweepResult) -> String {
        let mut buf = Vec::new();
        emit_csv(r, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn values_round_trip_bit_identically() {
        let mut s = figure_preset("fig1").unwrap();
        s.metrics = Metric::ALL.into_iter().collect();
        s.tau.count = 21;
        let r = run_sweep(&s).unwrap();
        let t = read_csv(emit(&r).as_bytes()).unwrap();
        assert_eq!(t.rows.len(), r.rows.len());
        for (a, b) in r.rows.iter().zip(&t.rows) {
            assert_eq!(b.axis, "delta");
            assert_eq!(
                a.axis_value.map(f64::to_bits),
                b.axis_value.map(f64::to_bits)
            );
            assert_eq!(a.sample.tau.to_bits(), b.tau.to_bits());
            for m in Metric::ALL {
                assert_eq!(
                    m.value(&a.sample).map(f64::to_bits),
                    b.get(m).map(f64::to_bits)
                );
            }
        }
        assert_eq!(parse_config(t.config.as_deref().unwrap()).unwrap(), s);
    }

    #[test]
    fn layout_without_axis() {
        let p = DimerParams::new(1.0, 0.5, 0.2, 1.0).unwrap();
        let mut s = SweepSpec::new(p).with_metrics([Metric::Capacity, Metric::AvgPower]);
        s.tau.count = 3;
        let text = emit(&run_sweep(&s).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# dimer-battery "));
        assert_eq!(lines[3], CSV_HEADER);
        assert_eq!(lines.len(), 7);
        let first: Vec<&str> = lines[4].split(',').collect();
        assert_eq!(&first[..3], ["none", "", "0.0000000000000000e0"]);
        assert_eq!(first[3], "");
        assert!(!first[5].is_empty());
        assert_eq!(first[7], "", "avg_power undefined at tau = 0");
        let second: Vec<&str> = lines[5].split(',').collect();
        assert!(!second[7].is_empty());
    }

    #[test]
    fn number_format_has_17_significant_digits() {
        for x in [0.1, -8.0, std::f64::consts::PI, 1e-300, 6.02e23, -0.0] {
            let s = fmt_num(x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn reader_rejects_garbage() {
        assert!(matches!(
            read_csv("a,b\n".as_bytes()),
            Err(SweepError::Csv { line: 1, .. })
        ));
        let bad = format!("{CSV_HEADER}\nnone,,x,,,,,,\n");
        assert!(matches!(
            read_csv(bad.as_bytes()),
            Err(SweepError::Csv { line: 2, .. })
        ));
        assert!(read_csv("# only comments\n".as_bytes()).is_err());
    }
}
