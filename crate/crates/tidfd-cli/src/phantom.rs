//! Test phantoms.
//!
//! Every phantom comes back mean-subtracted, cleared of the unpaired
//! Nyquist bin, and normalized to unit l2 norm, so it sits in the
//! subspace on which the operator calculus is exact.

use num_complex::Complex64;
use tidfd_core::signal::{Signal, Spectrum};

use crate::config::PhantomKind;
use crate::error::{CliError, CliResult};
use crate::io::read_signal_csv;

fn normalized(f: Signal) -> CliResult<Signal> {
    let f = f.project_zero_mean().project_zero_nyquist();
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(CliError::Config("phantom is identically zero".into()));
    }
    Ok(f.scaled(1.0 / norm))
}

/// Builds the configured phantom on an `n`-point grid.
pub fn make_phantom(kind: &PhantomKind, n: usize) -> CliResult<Signal> {
    let raw = match kind {
        PhantomKind::PiecewiseConstant => Signal::from_fn(n, |x| {
            let mut v = 0.0;
            if (0.15..0.35).contains(&x) {
                v += 1.0;
            }
            if (0.45..0.6).contains(&x) {
                v -= 0.7;
            }
            if (0.7..0.85).contains(&x) {
                v += 0.4;
            }
            v
        })?,
        PhantomKind::Smooth => Signal::from_fn(n, |x| {
            (-(x - 0.35) * (x - 0.35) / 0.004).exp()
                - 0.6 * (-(x - 0.7) * (x - 0.7) / 0.009).exp()
        })?,
        PhantomKind::Band { scale } => {
            let lo = 1i64 << (scale - 1);
            let hi = 1i64 << scale;
            let spectrum = Spectrum::from_fn(n, |k| {
                // Flat on the band, leaving the unpaired Nyquist bin empty.
                if k.abs() >= lo && k.abs() < hi {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })?;
            Signal::from_spectrum(&spectrum)?
        }
        PhantomKind::CustomCsv { path } => {
            let f = read_signal_csv(path)?;
            if f.len() != n {
                return Err(CliError::Config(format!(
                    "custom phantom has {} samples, config says n = {n}",
                    f.len()
                )));
            }
            f
        }
    };
    normalized(raw)
}
