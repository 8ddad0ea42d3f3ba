//! Deterministic CSV emission: '#'-prefixed metadata (tool version and a
//! config echo), one mandatory header row, then data rows with floats in
//! full-precision scientific notation.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use goldbach::error::Result;

pub fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Round-trip-exact float field.
pub fn fnum(x: f64) -> String {
    format!("{x:.17e}")
}

pub fn metadata(out: &mut dyn Write, config_echo: &str) -> Result<()> {
    writeln!(out, "# goldbach {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# config: {config_echo}")?;
    Ok(())
}

pub fn header(out: &mut dyn Write, columns: &str) -> Result<()> {
    writeln!(out, "{columns}")?;
    Ok(())
}

pub fn row(out: &mut dyn Write, fields: &[String]) -> Result<()> {
    writeln!(out, "{}", fields.join(","))?;
    Ok(())
}

/// Writes a plain-text zero table (the ingestion format) instead of CSV.
pub fn zero_table(
    out: &mut dyn Write,
    modulus: u64,
    label: &str,
    height: f64,
    ordinates: &[f64],
) -> Result<()> {
    writeln!(out, "# goldbach zero table")?;
    writeln!(
        out,
        "# modulus {modulus} character {label} height {height} count {}",
        ordinates.len()
    )?;
    for g in ordinates {
        writeln!(out, "{g:.17e}")?;
    }
    Ok(())
}
