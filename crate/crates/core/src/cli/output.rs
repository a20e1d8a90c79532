//! File output: number formatting, CSV, and atomic writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::ode::Trajectory;

/// Shortest decimal string that parses back to the same `f64`. Plain
/// notation in `[1e-5, 1e16)`, scientific outside it.
pub fn format_float(x: f64) -> String {
    let m = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&m) || !x.is_finite() {
        // Normalizes -0 to 0.
        if x == 0.0 {
            "0".to_string()
        } else {
            format!("{x}")
        }
    } else {
        format!("{x:e}")
    }
}

pub const TRAJECTORY_HEADER: &str = "t,s,i,r,u";

pub fn trajectory_csv(tr: &Trajectory) -> String {
    let mut out = String::with_capacity(tr.len() * 80);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for ((t, x), u) in tr.times.iter().zip(&tr.states).zip(&tr.controls) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_float(*t),
            format_float(x.s),
            format_float(x.i),
            format_float(x.r),
            format_float(*u)
        );
    }
    out
}

/// Writes to a temporary file in the target directory, then renames it into
/// place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
