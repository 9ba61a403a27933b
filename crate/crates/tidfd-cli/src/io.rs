//! CSV and JSON file formats.
//!
//! Signals serialize as `index,x,value` rows, banks as `scale,k,re,im`,
//! operators as `k,re,im` and quasi-singular values as `scale,kappa`,
//! all with LF line endings and floats at full double precision
//! (17 significant digits). JSON reports use lowercase snake_case keys.

use std::fs;
use std::path::Path;

use serde::Serialize;
use tidfd_core::dfd::TiDfd;
use tidfd_core::frame::{CoefficientFamily, MultiplierBank};
use tidfd_core::operator::DiagonalOperator;
use tidfd_core::signal::Signal;

use crate::error::{CliError, CliResult};

/// Full-precision decimal rendering: 17 significant digits.
pub fn format_full(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_signal_csv(path: &Path, f: &Signal) -> CliResult<()> {
    let mut out = String::from("index,x,value\n");
    for (i, v) in f.values().iter().enumerate() {
        out.push_str(&format!("{i},{},{}\n", format_full(f.x(i)), format_full(*v)));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_signal_csv(path: &Path) -> CliResult<Signal> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("index,x,value") => {}
        other => {
            return Err(CliError::Config(format!(
                "{}: expected header 'index,x,value', got {other:?}",
                path.display()
            )));
        }
    }
    let mut values = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Config(format!(
                "{} line {}: expected 3 fields",
                path.display(),
                lineno + 2
            )));
        }
        let value: f64 = fields[2].parse().map_err(|e| {
            CliError::Config(format!("{} line {}: {e}", path.display(), lineno + 2))
        })?;
        values.push(value);
    }
    Signal::new(values).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn write_bank_csv(path: &Path, bank: &MultiplierBank) -> CliResult<()> {
    let mut out = String::from("scale,k,re,im\n");
    for (scale, m) in bank.iter() {
        for (k, c) in m.iter_freqs() {
            out.push_str(&format!(
                "{scale},{k},{},{}\n",
                format_full(c.re),
                format_full(c.im)
            ));
        }
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn write_operator_csv(path: &Path, op: &DiagonalOperator) -> CliResult<()> {
    let mut out = String::from("k,re,im\n");
    for (k, c) in op.multiplier().iter_freqs() {
        out.push_str(&format!("{k},{},{}\n", format_full(c.re), format_full(c.im)));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn write_kappas_csv(path: &Path, dfd: &TiDfd) -> CliResult<()> {
    let mut out = String::from("scale,kappa\n");
    for (scale, kappa) in dfd.scales().iter().zip(dfd.kappas()) {
        out.push_str(&format!("{scale},{}\n", format_full(*kappa)));
    }
    fs::write(path, out)?;
    Ok(())
}

/// One signal CSV per scale, named `<stem>_scale<j>.csv`.
pub fn write_coefficient_csvs(dir: &Path, stem: &str, c: &CoefficientFamily) -> CliResult<()> {
    for (scale, signal) in c.iter() {
        write_signal_csv(&dir.join(format!("{stem}_scale{scale}.csv")), signal)?;
    }
    Ok(())
}

/// Pretty JSON with a trailing newline; key order follows the struct,
/// so identical inputs give identical bytes.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("serialization: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
