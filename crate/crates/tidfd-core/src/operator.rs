//! Fourier-diagonal forward operators.
//!
//! A [`DiagonalOperator`] acts by pointwise multiplication in frequency.
//! The flagship instance is 1D integration with multiplier `1/(i w)`
//! away from DC; its unbounded continuous counterpart shows up here as
//! conditioning that grows like `pi * n` with the grid size.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{omega, ti_convolve, Signal, Spectrum};

/// Relative mean tolerance for operators whose domain excludes DC.
const MEAN_TOL: f64 = 1e-12;

/// A Fourier-multiplier operator `f -> F^-1(m * Ff)`.
#[derive(Debug, Clone)]
pub struct DiagonalOperator {
    multiplier: Spectrum,
    domain_requires_zero_mean: bool,
}

impl DiagonalOperator {
    /// Wraps a multiplier. Operators that are singular at `w = 0` must
    /// assign `m(0) = 0` and flag `domain_requires_zero_mean`.
    pub fn new(multiplier: Spectrum, domain_requires_zero_mean: bool) -> Result<Self> {
        if domain_requires_zero_mean && multiplier.coeff(0).norm_sqr() != 0.0 {
            return Err(Error::DomainViolation {
                mean: multiplier.coeff(0).re,
            });
        }
        Ok(Self {
            multiplier,
            domain_requires_zero_mean,
        })
    }

    pub fn multiplier(&self) -> &Spectrum {
        &self.multiplier
    }

    pub fn domain_requires_zero_mean(&self) -> bool {
        self.domain_requires_zero_mean
    }

    pub fn n(&self) -> usize {
        self.multiplier.len()
    }

    /// Largest multiplier magnitude; the operator norm on its domain.
    pub fn norm(&self) -> f64 {
        self.multiplier.max_abs()
    }
}

/// The integration operator: `m(w_k) = 1/(i w_k)` for `k != 0`,
/// `m(0) = 0`, with zero-mean domain standing in for the zero-integral
/// constraint of the continuous picture.
pub fn integration_op(n: usize) -> Result<DiagonalOperator> {
    let multiplier = Spectrum::from_fn(n, |k| {
        if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            // 1/(i w) = -i/w
            Complex64::new(0.0, -1.0 / omega(k))
        }
    })?;
    DiagonalOperator::new(multiplier, true)
}

/// Spectral differentiation: `m(w_k) = i w_k`. Total on the grid; DC is
/// annihilated rather than excluded.
pub fn differentiation_op(n: usize) -> Result<DiagonalOperator> {
    let multiplier = Spectrum::from_fn(n, |k| Complex64::new(0.0, omega(k)))?;
    DiagonalOperator::new(multiplier, false)
}

/// Applies the operator. Inputs with nonzero mean are refused when the
/// domain forbids them; callers project explicitly.
pub fn apply(op: &DiagonalOperator, f: &Signal) -> Result<Signal> {
    if op.domain_requires_zero_mean {
        let mean = f.mean();
        if mean.abs() > MEAN_TOL * f.l2_norm() {
            return Err(Error::DomainViolation { mean });
        }
    }
    ti_convolve(&op.multiplier, f, false)
}

/// Adjoint operator: the conjugate multiplier. For integration this
/// negates the multiplier, i.e. the adjoint is minus the operator.
pub fn adjoint(op: &DiagonalOperator) -> DiagonalOperator {
    let bins: Vec<Complex64> = op.multiplier.bins().iter().map(|c| c.conj()).collect();
    DiagonalOperator {
        multiplier: Spectrum::new(bins).expect("conjugation preserves validity"),
        domain_requires_zero_mean: op.domain_requires_zero_mean,
    }
}

/// Pointwise inverse multiplier `1/m` away from DC. The result composes
/// with `op` to the identity on the operator's domain; for integration
/// it is the (discretely bounded, norm ~ pi*n) differentiation.
pub fn unstable_inverse(op: &DiagonalOperator) -> Result<DiagonalOperator> {
    let n = op.n() as i64;
    let mut bins = Vec::with_capacity(op.n());
    for bin in 0..op.n() {
        let k = crate::signal::bin_to_k(bin, op.n());
        let m = op.multiplier.bins()[bin];
        if k == 0 {
            bins.push(if m.norm_sqr() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                1.0 / m
            });
        } else {
            if m.norm_sqr() == 0.0 {
                return Err(Error::SingularMultiplier { k });
            }
            bins.push(1.0 / m);
        }
    }
    debug_assert_eq!(n as usize, op.n());
    let dc_removed = op.multiplier.coeff(0).norm_sqr() == 0.0;
    Ok(DiagonalOperator {
        multiplier: Spectrum::new(bins).expect("inverse bins stay finite"),
        domain_requires_zero_mean: if dc_removed {
            true
        } else {
            op.domain_requires_zero_mean
        },
    })
}
