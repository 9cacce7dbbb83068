//! Pattern and convergence CSV files.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::metrics::GainSample;

pub const PATTERN_HEADER: &str = "angle_deg,directivity_dBi,gain_dBi,realized_gain_dBi";
pub const TRACE_HEADER: &str = "iteration,best_cost";

/// One row of a pattern CSV, angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternRow {
    pub angle_deg: f64,
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
    pub realized_gain_dbi: f64,
}

impl From<&GainSample> for PatternRow {
    fn from(s: &GainSample) -> Self {
        Self {
            angle_deg: s.angle.to_degrees(),
            directivity_dbi: s.directivity_dbi,
            gain_dbi: s.gain_dbi,
            realized_gain_dbi: s.realized_gain_dbi,
        }
    }
}

// Six decimals survive a parse/format cycle unchanged, which keeps
// re-emitted files byte-identical.
fn cell(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.6}")
    }
}

pub fn write_pattern(rows: &[PatternRow]) -> String {
    let mut out = String::with_capacity(48 * (rows.len() + 1));
    out.push_str(PATTERN_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            cell(r.angle_deg),
            cell(r.directivity_dbi),
            cell(r.gain_dbi),
            cell(r.realized_gain_dbi)
        );
    }
    out
}

pub fn read_pattern(text: &str) -> Result<Vec<PatternRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == PATTERN_HEADER => {}
        other => {
            return Err(Error::InvalidArgument(format!(
                "expected pattern header `{PATTERN_HEADER}`, got {other:?}"
            )))
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let v: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", i + 2)))?;
            match v[..] {
                [a, d, g, r] => Ok(PatternRow {
                    angle_deg: a,
                    directivity_dbi: d,
                    gain_dbi: g,
                    realized_gain_dbi: r,
                }),
                _ => Err(Error::InvalidArgument(format!("line {}: expected 4 columns", i + 2))),
            }
        })
        .collect()
}

pub fn write_trace(trace: &[(usize, f64)]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for (it, cost) in trace {
        let _ = writeln!(out, "{it},{cost}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_and_nan() {
        let text = write_pattern(&[PatternRow {
            angle_deg: 0.0,
            directivity_dbi: 3.0,
            gain_dbi: f64::NEG_INFINITY,
            realized_gain_dbi: f64::NAN,
        }]);
        assert_eq!(text, format!("{PATTERN_HEADER}\n0.000000,3.000000,-inf,nan\n"));
        let back = read_pattern(&text).unwrap();
        assert!(back[0].realized_gain_dbi.is_nan());
        assert_eq!(write_pattern(&back), text);
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(read_pattern("angle,d\n1,2\n").is_err());
        assert!(read_pattern(&format!("{PATTERN_HEADER}\n1,2,3\n")).is_err());
    }

    #[test]
    fn trace_format() {
        assert_eq!(write_trace(&[(0, 21.0), (1, 0.0)]), "iteration,best_cost\n0,21\n1,0\n");
    }

    proptest! {
        #[test]
        fn pattern_round_trip_is_byte_identical(rows in prop::collection::vec((0.0f64..360.0, -50.0f64..20.0, -50.0f64..20.0, -50.0f64..20.0), 1..50)) {
            let rows: Vec<PatternRow> = rows.into_iter().map(|(a, d, g, r)| PatternRow { angle_deg: a, directivity_dbi: d, gain_dbi: g, realized_gain_dbi: r }).collect();
            let text = write_pattern(&rows);
            prop_assert_eq!(write_pattern(&read_pattern(&text).unwrap()), text);
        }
    }
}
