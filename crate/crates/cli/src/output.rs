//! CSV result tables.
//!
//! Every file starts with a `# ` comment preamble (tool version, schema,
//! resolved configuration) followed by a header row. Floats are written with
//! 17 significant digits so that values round-trip exactly; missing values
//! are `nan`.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use pftc_core::sweep::SweepCell;
use pftc_core::EnsembleStatistics;

use crate::config::{Mode, RunConfig};

pub const SERIES_HEADER: &str =
    "t_over_T,Sz_mean,Sz_stderr,ent_mean,ent_stderr,coh_mean,coh_stderr,qfi_mean,qfi_stderr,qfi_ratio";
pub const MAP_HEADER: &str = "axis1,axis2,lifetime,lifetime_is_capped,ent_sat,coh_sat,max_qfi_ratio,argmax_t";
pub const SCHEMA_VERSION: u32 = 1;

/// Round-trip exact rendering: 17 significant digits in scientific form.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else {
        format!("{x:.16e}")
    }
}

fn preamble(cfg: &RunConfig, schema: &str, extra: &[String]) -> String {
    let mut s = String::new();
    writeln!(s, "# pftc {}", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(s, "# schema: {schema} v{SCHEMA_VERSION}").unwrap();
    for line in extra {
        writeln!(s, "# {line}").unwrap();
    }
    for line in cfg.provenance_toml().lines() {
        if line.is_empty() {
            s.push_str("#\n");
        } else {
            writeln!(s, "# {line}").unwrap();
        }
    }
    s
}

/// Series table: one row per recorded stroboscopic time.
pub fn series_table(cfg: &RunConfig, stats: &EnsembleStatistics, extra: &[String]) -> String {
    let mut s = preamble(cfg, "series", extra);
    s.push_str(SERIES_HEADER);
    s.push('\n');
    let ratio = stats.qfi_ratio();
    for (i, &t) in stats.times.iter().enumerate() {
        let (qm, qs) = stats.qfi.as_ref().map_or((f64::NAN, f64::NAN), |q| (q.mean[i], q.stderr[i]));
        let qr = ratio.as_ref().map_or(f64::NAN, |r| r[i]);
        let row = [
            stats.magnetization.mean[i],
            stats.magnetization.stderr[i],
            stats.entanglement.mean[i],
            stats.entanglement.stderr[i],
            stats.coherence.mean[i],
            stats.coherence.stderr[i],
            qm,
            qs,
            qr,
        ];
        write!(s, "{t}").unwrap();
        for v in row {
            s.push(',');
            s.push_str(&format_float(v));
        }
        s.push('\n');
    }
    s
}

/// Map table: one row per sweep cell in grid order.
pub fn map_table(cfg: &RunConfig, cells: &[SweepCell]) -> String {
    let names: Vec<&str> = cfg.grid.axes.iter().map(|a| a.name.as_str()).collect();
    let extra = vec![format!("axis1: {}", names.first().unwrap_or(&"none")), format!(
        "axis2: {}",
        names.get(1).unwrap_or(&"none")
    )];
    let mut s = preamble(cfg, "map", &extra);
    s.push_str(MAP_HEADER);
    s.push('\n');
    for cell in cells {
        let coord = |k: usize| cell.coords.get(k).copied().unwrap_or(f64::NAN);
        let (ratio, argmax) = match cell.max_qfi_ratio {
            Some((r, t)) => (format_float(r), t.to_string()),
            None => ("nan".to_owned(), "nan".to_owned()),
        };
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            format_float(coord(0)),
            format_float(coord(1)),
            cell.lifetime.value(),
            u8::from(cell.lifetime.is_capped()),
            format_float(cell.ent_sat),
            format_float(cell.coh_sat),
            ratio,
            argmax
        )
        .unwrap();
    }
    s
}

/// File-name stem for a sweep cell, e.g. `h=7_phi=3.05`.
pub fn cell_stem(cfg: &RunConfig, cell: &SweepCell) -> String {
    cfg.grid
        .axes
        .iter()
        .zip(&cell.coords)
        .map(|(a, v)| format!("{}={v}", a.name.as_str()))
        .collect::<Vec<_>>()
        .join("_")
}

fn cell_label(cfg: &RunConfig, cell: &SweepCell) -> String {
    let coords: Vec<String> = cfg
        .grid
        .axes
        .iter()
        .zip(&cell.coords)
        .map(|(a, v)| format!("{}={}", a.name.as_str(), format_float(*v)))
        .collect();
    format!("cell: {}", coords.join(" "))
}

fn prefix(mode: Mode) -> &'static str {
    match mode {
        Mode::Evolve => "evolve",
        Mode::Ensemble => "ensemble",
        Mode::Sweep => "sweep",
        Mode::QfiScaling => "qfi_scaling",
    }
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> io::Result<()> {
    std::fs::write(&path, contents)?;
    written.push(path);
    Ok(())
}

/// Write the series table of an `evolve` or `ensemble` run.
pub fn emit_series(cfg: &RunConfig, stats: &EnsembleStatistics, out_dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let path = out_dir.join(format!("{}_series.csv", prefix(cfg.mode)));
    write(path, &series_table(cfg, stats, &[]), &mut written)?;
    Ok(written)
}

/// Write the map table of a sweep and, when requested, one series table per
/// cell under `<prefix>_cells/`.
pub fn emit_sweep(cfg: &RunConfig, cells: &[SweepCell], out_dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let map = out_dir.join(format!("{}_map.csv", prefix(cfg.mode)));
    write(map, &map_table(cfg, cells), &mut written)?;
    if cfg.write_series {
        let dir = out_dir.join(format!("{}_cells", prefix(cfg.mode)));
        std::fs::create_dir_all(&dir)?;
        for cell in cells {
            let path = dir.join(format!("{}.csv", cell_stem(cfg, cell)));
            write(path, &series_table(cfg, &cell.stats, &[cell_label(cfg, cell)]), &mut written)?;
        }
    }
    Ok(written)
}
