//! CSV and manifest writers.
//!
//! CSV dialect: comma separators, '.' decimal point, one header row, LF line
//! endings, floats with 17 significant digits so reruns are byte-identical.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::RunnerError;

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// A column of float data with a header name.
pub type Column = (String, Vec<f64>);

pub fn write_timeseries_csv(path: &Path, times: &[f64], columns: &[Column]) -> Result<(), RunnerError> {
    let mut body = String::new();
    body.push_str("time");
    for (name, values) in columns {
        assert_eq!(values.len(), times.len(), "column {name} length mismatch");
        body.push(',');
        body.push_str(name);
    }
    body.push('\n');
    for (k, t) in times.iter().enumerate() {
        body.push_str(&format_float(*t));
        for (_, values) in columns {
            body.push(',');
            body.push_str(&format_float(values[k]));
        }
        body.push('\n');
    }
    write_atomic(path, body.as_bytes())
}

/// One row per grid point: axis values, a status marker, then the metrics
/// (nan-filled on failed points).
pub struct SweepTable {
    pub axis_names: Vec<String>,
    pub metric_names: Vec<String>,
    pub rows: Vec<SweepRow>,
}

pub struct SweepRow {
    pub axis_values: Vec<f64>,
    pub status: Result<Vec<f64>, String>,
}

pub fn write_sweep_csv(path: &Path, table: &SweepTable) -> Result<(), RunnerError> {
    let mut body = String::new();
    body.push_str(&table.axis_names.join(","));
    body.push_str(",status,");
    body.push_str(&table.metric_names.join(","));
    body.push('\n');
    for row in &table.rows {
        let axes: Vec<String> = row.axis_values.iter().map(|v| format_float(*v)).collect();
        body.push_str(&axes.join(","));
        match &row.status {
            Ok(metrics) => {
                body.push_str(",ok");
                for m in metrics {
                    body.push(',');
                    body.push_str(&format_float(*m));
                }
            }
            Err(_) => {
                body.push_str(",error");
                for _ in &table.metric_names {
                    body.push_str(",nan");
                }
            }
        }
        body.push('\n');
    }
    write_atomic(path, body.as_bytes())
}

/// Single-row CSV of named scalars.
pub fn write_scalar_csv(path: &Path, values: &[(String, f64)]) -> Result<(), RunnerError> {
    let mut body = String::new();
    body.push_str(&values.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(","));
    body.push('\n');
    body.push_str(&values.iter().map(|(_, v)| format_float(*v)).collect::<Vec<_>>().join(","));
    body.push('\n');
    write_atomic(path, body.as_bytes())
}

/// Everything needed to reproduce a run: the resolved configuration, the
/// seed actually used, and the generator identity.
pub fn write_manifest(
    path: &Path,
    resolved_config_toml: &str,
    seed: u64,
    threads: usize,
    rng_identity: &str,
    outputs: &[PathBuf],
) -> Result<(), RunnerError> {
    let mut body = String::new();
    body.push_str("# run manifest\n");
    body.push_str(&format!("tool = \"qpurify {}\"\n", env!("CARGO_PKG_VERSION")));
    body.push_str(&format!("rng = \"{rng_identity}\"\n"));
    body.push_str(&format!("seed = {seed}\n"));
    body.push_str(&format!("threads = {threads}\n"));
    body.push_str("format = \"csv\"\n");
    for out in outputs {
        body.push_str(&format!("output = \"{}\"\n", out.display()));
    }
    body.push_str("\n# resolved configuration\n");
    body.push_str(resolved_config_toml);
    write_atomic(path, body.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), RunnerError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(RunnerError::Io)?;
        }
    }
    let mut f = fs::File::create(path).map_err(RunnerError::Io)?;
    f.write_all(bytes).map_err(RunnerError::Io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_17_significant_digits() {
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
        assert_eq!(format_float(12.0 / 13.0), "9.2307692307692313e-1");
        assert_eq!(format_float(f64::NAN), "nan");
    }

    #[test]
    fn timeseries_round_trip_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let times = vec![0.0, 0.1];
        let cols = vec![("sx".to_string(), vec![1.0, 0.9])];
        write_timeseries_csv(&path, &times, &cols).unwrap();
        let a = std::fs::read(&path).unwrap();
        write_timeseries_csv(&path, &times, &cols).unwrap();
        let b = std::fs::read(&path).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("time,sx\n"));
        assert!(!text.contains('\r'), "LF endings only");
    }

    #[test]
    fn sweep_error_rows_are_marked() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let table = SweepTable {
            axis_names: vec!["dt".into()],
            metric_names: vec!["concurrence".into()],
            rows: vec![
                SweepRow { axis_values: vec![0.1], status: Ok(vec![0.5]) },
                SweepRow { axis_values: vec![0.2], status: Err("boom".into()) },
            ],
        };
        write_sweep_csv(&path, &table).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].contains(",ok,"));
        assert!(lines[2].contains(",error,nan"));
    }
}
