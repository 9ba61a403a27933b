//! Filtered reconstruction through a TI-DFD.
//!
//! The central pipeline: vaguelette coefficients of the data, a
//! regularizing filter evaluated at the quasi-singular values, synthesis
//! through a dual bank. Thresholded and decimated variants reuse the
//! same skeleton, the a-priori parameter rule ties the filter strength
//! to the noise level, and the probes measure the stability bound and
//! the worst-case lower-bound construction.

use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dfd::TiDfd;
use crate::error::{Error, Result};
use crate::filter::{soft_threshold, FilterSpec};
use crate::frame::{self, MultiplierBank};
use crate::operator;
use crate::signal::Signal;

/// Seed for the randomized stability probe.
const PROBE_SEED: u64 = 0x5eed;

/// Reconstruction plus the diagnostics the experiment harness reports.
#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub reconstruction: Signal,
    pub alpha: f64,
    pub filter_name: &'static str,
    /// Norm of each filtered coefficient, by scale label.
    pub per_scale_energy: Vec<(i32, f64)>,
    /// Stability bound `||Phi_alpha||_inf ||W|| ||V||` from the
    /// multiplier maxima.
    pub norm_bound: f64,
}

fn dual_checked(dfd: &TiDfd, w_bank: &MultiplierBank) -> Result<()> {
    let residual = frame::verify_dual(dfd.u_bank(), w_bank)?;
    if residual > 1e-10 {
        return Err(Error::DualMismatch { residual });
    }
    Ok(())
}

fn filter_sup_norm(filter: &FilterSpec, alpha: f64, kappas: &[f64]) -> f64 {
    filter.sup_norm_law(alpha).unwrap_or_else(|| {
        kappas
            .iter()
            .map(|&k| filter.evaluate(alpha, k).abs())
            .fold(0.0, f64::max)
    })
}

fn bank_operator_norm(bank: &MultiplierBank) -> f64 {
    libm::sqrt(bank.multiplier_sum().into_iter().fold(0.0, f64::max))
}

/// Filtered TI-DFD reconstruction
/// `sum_j w_j * (Phi_alpha(kappa_j) * (v_j^* * g))`.
pub fn filtered_reconstruct(
    dfd: &TiDfd,
    w_bank: &MultiplierBank,
    filter: &FilterSpec,
    alpha: f64,
    g: &Signal,
) -> Result<ReconstructionReport> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::BadAlpha { alpha });
    }
    dual_checked(dfd, w_bank)?;

    let coeffs = dfd.vaguelette_analysis(g)?;
    let filtered = dfd.map_coefficients(&coeffs, |_, kappa, c| {
        c.scaled(filter.evaluate(alpha, kappa))
    });
    let per_scale_energy = filtered.iter().map(|(j, c)| (j, c.l2_norm())).collect();
    let reconstruction = frame::synthesis(w_bank, &filtered)?;
    let norm_bound = filter_sup_norm(filter, alpha, dfd.kappas())
        * bank_operator_norm(w_bank)
        * bank_operator_norm(dfd.v_bank());

    Ok(ReconstructionReport {
        reconstruction,
        alpha,
        filter_name: filter.name(),
        per_scale_energy,
        norm_bound,
    })
}

/// Soft-thresholded reconstruction with level-dependent thresholds
/// `t_j = kappa_j * beta`:
/// `sum_j w_j * (kappa_j^-1 * soft(t_j, v_j^* * g))`.
/// `beta = 0` reproduces the unfiltered inversion.
pub fn thresholded_reconstruct(
    dfd: &TiDfd,
    w_bank: &MultiplierBank,
    beta: f64,
    g: &Signal,
) -> Result<Signal> {
    if beta < 0.0 || !beta.is_finite() {
        return Err(Error::BadAlpha { alpha: beta });
    }
    dual_checked(dfd, w_bank)?;

    let coeffs = dfd.vaguelette_analysis(g)?;
    let shrunk = dfd.map_coefficients(&coeffs, |_, kappa, c| {
        let t = kappa * beta;
        let values = c
            .values()
            .iter()
            .map(|&x| soft_threshold(t, x) / kappa)
            .collect();
        Signal::new(values).expect("thresholding preserves finiteness")
    });
    frame::synthesis(w_bank, &shrunk)
}

/// Coefficient treatment of the decimated pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecimatedMode {
    /// Linear filtering by `Phi_alpha(kappa_j)` per scale.
    Tikhonov(f64),
    /// Soft thresholding at `t_j = kappa_j * beta`, then `kappa_j^-1`.
    Soft(f64),
}

/// Decimated counterpart of the filtered/thresholded reconstructions:
/// the vaguelette coefficients are subsampled at the dyadic strides
/// before the coefficient map, and synthesis runs through upsampled
/// convolution against `w_bank`. Without thresholding it still
/// reconstructs exactly; with thresholding it is shift-variant.
pub fn decimated_reconstruct(
    dfd: &TiDfd,
    w_bank: &MultiplierBank,
    mode: DecimatedMode,
    g: &Signal,
) -> Result<Signal> {
    dual_checked(dfd, w_bank)?;
    let filter = crate::filter::tikhonov_filter();
    let kappas = dfd.kappas();

    let decimated = frame::decimated_analysis(dfd.v_bank(), g)?;
    let mut idx = 0;
    let treated = decimated.map(|_, seq| {
        let kappa = kappas[idx];
        idx += 1;
        match mode {
            DecimatedMode::Tikhonov(alpha) => {
                let phi = filter.evaluate(alpha, kappa);
                seq.iter().map(|&x| phi * x).collect()
            }
            DecimatedMode::Soft(beta) => {
                let t = kappa * beta;
                seq.iter().map(|&x| soft_threshold(t, x) / kappa).collect()
            }
        }
    });
    match mode {
        DecimatedMode::Tikhonov(alpha) if !(alpha > 0.0) || !alpha.is_finite() => {
            return Err(Error::BadAlpha { alpha });
        }
        DecimatedMode::Soft(beta) if beta < 0.0 || !beta.is_finite() => {
            return Err(Error::BadAlpha { alpha: beta });
        }
        _ => {}
    }
    frame::decimated_synthesis_with_dual(dfd.u_bank(), w_bank, &treated)
}

/// A-priori parameter choice `alpha = c * (delta / rho)^(2 / (2 mu + 1))`.
/// Admissible for the built-in filters: both `alpha` and
/// `delta * ||Phi_alpha||_inf ~ delta^(2 mu / (2 mu + 1))` vanish with
/// the noise level.
pub fn a_priori_alpha(delta: f64, rho: f64, mu: f64, c: f64) -> f64 {
    debug_assert!(delta > 0.0 && rho > 0.0 && mu > 0.0 && c > 0.0);
    c * libm::pow(delta / rho, 2.0 / (2.0 * mu + 1.0))
}

/// One member of the lower-bound family: a single-scale source element
/// together with its exact data norm.
#[derive(Debug, Clone)]
pub struct WorstCaseProbe {
    pub scale: i32,
    pub kappa: f64,
    pub f_n: Signal,
    /// Exact discrete `||K f_n||` for the integration operator.
    pub delta_n: f64,
    pub norm_f_n: f64,
    /// Measured constant of
    /// `norm_f_n >= c * delta_n^(2mu/(2mu+1)) * rho^(1/(2mu+1))`.
    pub lower_bound_constant: f64,
}

/// Builds `f_n = rho * kappa_n^(2 mu) * e_n` for the integration-operator
/// decomposition, where `e_n` is the unit cosine at the lowest frequency
/// of scale `n`'s band. Those frequencies scale exactly dyadically, so
/// the family `(delta_n, ||f_n||)` follows the rate power law without
/// grid corrections. Requires pairwise disjoint bands.
pub fn worst_case_probe(dfd: &TiDfd, mu: f64, rho: f64, scale: i32) -> Result<WorstCaseProbe> {
    let n = dfd.n();
    // Disjoint bands: at most one scale may occupy any frequency.
    let mut covered = alloc::vec![false; n];
    for (_, m) in dfd.u_bank().iter() {
        for (bin, c) in m.bins().iter().enumerate() {
            if c.norm_sqr() > 0.0 {
                if covered[bin] {
                    return Err(Error::BandOverlap);
                }
                covered[bin] = true;
            }
        }
    }

    let idx = dfd
        .scales()
        .iter()
        .position(|&j| j == scale)
        .ok_or(Error::BadScaleRange)?;
    let kappa = dfd.kappas()[idx];
    let k_lowest = dfd
        .u_bank()
        .multiplier(idx)
        .iter_freqs()
        .filter(|(k, c)| *k > 0 && c.norm_sqr() > 0.0)
        .map(|(k, _)| k)
        .min()
        .ok_or(Error::BadScaleRange)?;

    let sqrt2 = libm::sqrt(2.0);
    let e_n = Signal::from_fn(n, |x| {
        sqrt2 * libm::cos(2.0 * core::f64::consts::PI * k_lowest as f64 * x)
    })?;
    let amplitude = rho * libm::pow(kappa, 2.0 * mu);
    let f_n = e_n.scaled(amplitude);
    let norm_f_n = f_n.l2_norm();

    let op = operator::integration_op(n)?;
    let delta_n = operator::apply(&op, &f_n)?.l2_norm();

    let exponent = 2.0 * mu / (2.0 * mu + 1.0);
    let lower_bound_constant =
        norm_f_n / (libm::pow(delta_n, exponent) * libm::pow(rho, 1.0 / (2.0 * mu + 1.0)));

    Ok(WorstCaseProbe {
        scale,
        kappa,
        f_n,
        delta_n,
        norm_f_n,
        lower_bound_constant,
    })
}

/// Empirical operator norm of the filtered reconstruction against the
/// stability bound.
#[derive(Debug, Clone, Copy)]
pub struct NormBoundProbe {
    pub empirical: f64,
    pub bound: f64,
}

/// Maximizes `||R_alpha g||` over `trials` random unit-norm inputs and
/// reports it next to `||Phi_alpha||_inf ||W|| ||V||`; the empirical
/// value never exceeds the bound.
pub fn norm_bound_probe(
    dfd: &TiDfd,
    w_bank: &MultiplierBank,
    filter: &FilterSpec,
    alpha: f64,
    trials: usize,
) -> Result<NormBoundProbe> {
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut empirical: f64 = 0.0;
    let mut bound = 0.0;
    for _ in 0..trials.max(1) {
        let g = Signal::random_zero_mean(dfd.n(), &mut rng)?;
        let g = g.scaled(1.0 / g.l2_norm());
        let report = filtered_reconstruct(dfd, w_bank, filter, alpha, &g)?;
        empirical = empirical.max(report.reconstruction.l2_norm());
        bound = report.norm_bound;
    }
    Ok(NormBoundProbe { empirical, bound })
}
