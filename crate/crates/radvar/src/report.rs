//! CSV emission and parsing for the command-line artifacts.
//!
//! All numbers are written as `{:.16e}` (17 significant digits), which
//! round-trips f64 exactly and keeps outputs byte-deterministic. Files are
//! plain comma-separated with one header row; fields never need quoting.

use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use std::io::Write;
use std::path::Path;

/// Full-precision, round-trip-exact rendering of an f64.
pub fn fnum(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidConfig(format!("{}: empty csv", path.display())))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|s| s.trim().to_string()).collect())
        .collect();
    Ok((header, rows))
}

fn parse_field(s: &str, path: &Path) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::InvalidConfig(format!("{}: bad numeric field {s:?}", path.display())))
}

/// Two-column (r, v) profile file.
pub fn write_profile_csv(path: &Path, profile: &RadialProfile, value_name: &str) -> Result<()> {
    let rows: Vec<Vec<String>> = profile
        .grid()
        .iter()
        .zip(profile.values())
        .map(|(&r, &v)| vec![fnum(r), fnum(v)])
        .collect();
    write_csv(path, &["r", value_name], &rows)
}

pub fn read_profile_csv(path: &Path) -> Result<RadialProfile> {
    let (header, rows) = read_csv(path)?;
    if header.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "{}: profile csv needs two columns (r, value)",
            path.display()
        )));
    }
    let mut grid = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for row in &rows {
        if row.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "{}: short row in profile csv",
                path.display()
            )));
        }
        grid.push(parse_field(&row[0], path)?);
        values.push(parse_field(&row[1], path)?);
    }
    RadialProfile::new(grid, values)
}
