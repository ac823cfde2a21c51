//! `report`: merge saved JSON reports into one CSV per table family plus
//! plot data.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use laguerre_hardy::report::{cell_string, ScanReport, Table};
use serde_json::Value;

use crate::config::{CliResult, Failure};

struct Family {
    name: String,
    columns: Vec<String>,
    /// `(run, table)` in input order.
    parts: Vec<(usize, Table)>,
}

fn load(inputs: &[PathBuf]) -> CliResult<Vec<ScanReport>> {
    if inputs.is_empty() {
        return Err(Failure::Config("report: no input files given".into()));
    }
    let missing: Vec<String> = inputs.iter().filter(|p| !p.is_file()).map(|p| p.display().to_string()).collect();
    if !missing.is_empty() {
        return Err(Failure::Io(format!("report: missing input files: {}", missing.join(", "))));
    }
    inputs
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            ScanReport::from_json(&text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))
        })
        .collect()
}

fn families(reports: &[ScanReport]) -> CliResult<Vec<Family>> {
    let mut out: Vec<Family> = Vec::new();
    for (run, rep) in reports.iter().enumerate() {
        for t in &rep.tables {
            match out.iter_mut().find(|f| f.name == t.name) {
                Some(f) if f.columns != t.columns => {
                    return Err(Failure::Config(format!("report: table {:?} has differing columns across runs", t.name)))
                }
                Some(f) => f.parts.push((run, t.clone())),
                None => out.push(Family { name: t.name.clone(), columns: t.columns.clone(), parts: vec![(run, t.clone())] }),
            }
        }
    }
    Ok(out)
}

fn writer(path: &Path) -> CliResult<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn io<T>(r: csv::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::Io(e.to_string()))
}

fn column(t: &Table, name: &str) -> Option<usize> {
    t.columns.iter().position(|c| c == name)
}

fn as_f64(v: &Value) -> Option<f64> {
    v.as_f64()
}

/// Plot series `(series, x, y)` for tables with a natural 2-D projection.
fn plot_points(t: &Table) -> Option<Vec<(String, f64, f64)>> {
    match t.name.as_str() {
        "divergence" => {
            let (b, n, s) = (column(t, "beta")?, column(t, "N")?, column(t, "S(N)")?);
            Some(
                t.rows
                    .iter()
                    .filter_map(|r| Some((format!("beta={}", cell_string(&r[b])), as_f64(&r[n])?.ln(), as_f64(&r[s])?)))
                    .collect(),
            )
        }
        "norm_scaling" => {
            let (k, a, r, s) = (column(t, "kind")?, column(t, "alpha")?, column(t, "r")?, column(t, "sup_norm")?);
            Some(
                t.rows
                    .iter()
                    .filter_map(|row| {
                        let x = (1.0 - as_f64(&row[r])?).ln();
                        let y = as_f64(&row[s])?.ln();
                        Some((format!("{} {}", cell_string(&row[k]), cell_string(&row[a])), x, y))
                    })
                    .collect(),
            )
        }
        _ => None,
    }
}

/// Rescaled norms with one column per `r`, one row per `(run, kind, alpha)`.
fn scaling_wide(f: &Family, path: &Path) -> CliResult<()> {
    let t0 = &f.parts[0].1;
    let (Some(k), Some(a), Some(r), Some(s)) =
        (column(t0, "kind"), column(t0, "alpha"), column(t0, "r"), column(t0, "rescaled"))
    else {
        return Ok(());
    };
    let mut rs: Vec<f64> = Vec::new();
    for (_, t) in &f.parts {
        for row in &t.rows {
            if let Some(v) = as_f64(&row[r]) {
                if !rs.contains(&v) {
                    rs.push(v);
                }
            }
        }
    }
    rs.sort_by(f64::total_cmp);
    let mut w = writer(path)?;
    let mut header = vec!["run".to_string(), "kind".into(), "alpha".into()];
    header.extend(rs.iter().map(|v| format!("r={v}")));
    io(w.write_record(&header))?;
    for (run, t) in &f.parts {
        let mut keys: BTreeSet<(String, String)> = BTreeSet::new();
        let mut order = Vec::new();
        for row in &t.rows {
            let key = (cell_string(&row[k]), cell_string(&row[a]));
            if keys.insert(key.clone()) {
                order.push(key);
            }
        }
        for key in order {
            let mut rec = vec![run.to_string(), key.0.clone(), key.1.clone()];
            for &rv in &rs {
                let cell = t
                    .rows
                    .iter()
                    .find(|row| cell_string(&row[k]) == key.0 && cell_string(&row[a]) == key.1 && as_f64(&row[r]) == Some(rv))
                    .map(|row| cell_string(&row[s]))
                    .unwrap_or_default();
                rec.push(cell);
            }
            io(w.write_record(&rec))?;
        }
    }
    io(w.flush().map_err(csv::Error::from))
}

/// Writes the merged files and returns their paths. Nothing is created
/// unless every input loads.
pub fn run(inputs: &[PathBuf], out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    let reports = load(inputs)?;
    let fams = families(&reports)?;
    if fams.is_empty() {
        return Err(Failure::Config("report: inputs contain no tables".into()));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Failure::Io(format!("{}: {e}", out_dir.display())))?;
    let mut written = Vec::new();
    for f in &fams {
        let path = out_dir.join(format!("{}.csv", f.name));
        let mut w = writer(&path)?;
        let mut header = vec!["run".to_string(), "command".into(), "seed".into()];
        header.extend(f.columns.iter().cloned());
        io(w.write_record(&header))?;
        for (run, t) in &f.parts {
            let rep = &reports[*run];
            for row in t.string_rows() {
                let mut rec = vec![run.to_string(), rep.command.clone(), rep.seed.to_string()];
                rec.extend(row);
                io(w.write_record(&rec))?;
            }
        }
        io(w.flush().map_err(csv::Error::from))?;
        written.push(path);

        let pts: Vec<(usize, Vec<(String, f64, f64)>)> =
            f.parts.iter().filter_map(|(run, t)| plot_points(t).map(|p| (*run, p))).collect();
        if !pts.is_empty() {
            let path = out_dir.join(format!("{}_plot.csv", f.name));
            let mut w = writer(&path)?;
            io(w.write_record(["run", "series", "x", "y"]))?;
            for (run, p) in pts {
                for (s, x, y) in p {
                    io(w.write_record([run.to_string(), s, x.to_string(), y.to_string()]))?;
                }
            }
            io(w.flush().map_err(csv::Error::from))?;
            written.push(path);
        }
        if f.name == "norm_scaling" {
            let path = out_dir.join("norm_scaling_wide.csv");
            scaling_wide(f, &path)?;
            written.push(path);
        }
    }
    Ok(written)
}
