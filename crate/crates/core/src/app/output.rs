//! Diagnostics CSV, phase-space snapshots, and the run metadata echo.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diagnostics::InvariantRecord;
use crate::error::{Error, Result};
use crate::mesh_basis::DistributionFunction;

use super::config::RunConfig;

pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const META_FILE: &str = "run_meta.txt";

/// 17 significant digits, enough to round-trip any f64.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn diagnostics_csv(records: &[InvariantRecord]) -> String {
    let mut out = InvariantRecord::COLUMNS.join(",");
    out.push('\n');
    for r in records {
        let row: Vec<String> = r.to_array().iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_diagnostics_csv(text: &str) -> Result<Vec<InvariantRecord>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != InvariantRecord::COLUMNS.join(",") {
        return Err(Error::invalid(format!(
            "unexpected diagnostics header `{header}`"
        )));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let fields: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::invalid(format!("bad diagnostics row `{line}`: {e}")))?;
            let arr: [f64; 11] = fields
                .try_into()
                .map_err(|_| Error::invalid(format!("diagnostics row `{line}` needs 11 fields")))?;
            Ok(InvariantRecord::from_array(arr))
        })
        .collect()
}

/// Cell averages, one line per v cell, x varying along the line.
pub fn snapshot_csv(f: &DistributionFunction) -> String {
    let g = f.grid();
    let (nx, nv) = (g.x().n_cells(), g.v().n_cells());
    let avg = f.cell_averages();
    let mut out = String::new();
    for iv in 0..nv {
        let row: Vec<String> = (0..nx).map(|ix| fmt_f64(avg[ix * nv + iv])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Nodal dump: one line per v node, x nodes along the line.
pub fn nodal_snapshot_csv(f: &DistributionFunction) -> String {
    let g = f.grid();
    let p = g.n_nodes();
    let mut out = String::new();
    for iv in 0..g.v().n_cells() {
        for b in 0..p {
            let mut row = Vec::with_capacity(g.x().n_cells() * p);
            for ix in 0..g.x().n_cells() {
                for a in 0..p {
                    row.push(fmt_f64(f.get(ix, iv, a, b)));
                }
            }
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn snapshot_file_name(t: f64) -> String {
    format!("snapshot_t{t:.3}.csv")
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Extra resolved quantities echoed after the configuration.
#[derive(Debug, Clone, Default)]
pub struct RunSummary {
    pub entries: Vec<(String, String)>,
}

/// Writes every output file into `output_dir`; returns the paths written.
pub fn write_outputs(
    records: &[InvariantRecord],
    snapshots: &[(f64, DistributionFunction)],
    config: &RunConfig,
    summary: &RunSummary,
    output_dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(output_dir).map_err(|e| Error::io(output_dir, e))?;
    let mut written = vec![write(
        output_dir.join(DIAGNOSTICS_FILE),
        &diagnostics_csv(records),
    )?];
    for (t, f) in snapshots {
        written.push(write(
            output_dir.join(snapshot_file_name(*t)),
            &snapshot_csv(f),
        )?);
        if config.nodal_snapshots {
            let name = format!("nodal_t{t:.3}.csv");
            written.push(write(output_dir.join(name), &nodal_snapshot_csv(f))?);
        }
    }
    let mut meta = String::new();
    for (k, v) in config.echo().iter().chain(&summary.entries) {
        let _ = writeln!(meta, "{k} = {v}");
    }
    written.push(write(output_dir.join(META_FILE), &meta)?);
    Ok(written)
}
