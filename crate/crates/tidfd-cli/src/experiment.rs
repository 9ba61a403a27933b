//! Experiment drivers behind the CLI subcommands.
//!
//! Each driver assembles the Shannon (or Meyer) decomposition of the
//! integration operator, runs its pipeline deterministically from
//! `(config, seed)`, writes the CSV/JSON outputs, and returns the report
//! for in-process callers.

use std::path::Path;

use serde::Serialize;

use tidfd_core::dfd::{self, TiDfd};
use tidfd_core::filter::{self, FilterSpec};
use tidfd_core::frame::{self, MultiplierBank};
use tidfd_core::operator::{apply, integration_op};
use tidfd_core::recon::{self, DecimatedMode};
use tidfd_core::signal::Signal;

use crate::config::{BankChoice, ExperimentConfig, FilterChoice};
use crate::error::{CliError, CliResult};
use crate::io;
use crate::phantom::make_phantom;

/// Median of a sample; the upper median for even sizes.
pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite errors"));
    sorted[sorted.len() / 2]
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|(x, _)| x.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, y)| y.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Decomposition, dual bank and forward operator shared by the drivers.
pub struct Pipeline {
    pub dfd: TiDfd,
    pub w_bank: MultiplierBank,
    pub op: tidfd_core::operator::DiagonalOperator,
}

impl Pipeline {
    pub fn build(config: &ExperimentConfig) -> CliResult<Self> {
        let bank = match config.bank {
            BankChoice::Shannon => frame::shannon_bank(config.n, 1)?,
            BankChoice::Meyer => frame::meyer_bank(config.n)?,
        };
        let dfd = dfd::build_ti_wvd(&bank)?;
        let w_bank = frame::canonical_dual(dfd.u_bank())?;
        let op = integration_op(config.n)?;
        Ok(Self { dfd, w_bank, op })
    }
}

fn filter_spec(choice: FilterChoice) -> Option<FilterSpec> {
    match choice {
        FilterChoice::Tikhonov => Some(filter::tikhonov_filter()),
        FilterChoice::Truncation => Some(filter::truncation_filter()),
        FilterChoice::Soft => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaleEnergy {
    pub scale: i32,
    pub energy: f64,
}

/// JSON report of a single reconstruction run.
#[derive(Debug, Clone, Serialize)]
pub struct ReconReport {
    pub n: usize,
    pub phantom: String,
    pub sigma: f64,
    pub filter: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub seed: u64,
    pub relative_error: f64,
    pub data_norm: f64,
    /// `||reconstruction|| / ||data||`; stays below `norm_bound`.
    pub empirical_norm: f64,
    pub norm_bound: f64,
    pub per_scale_energy: Vec<ScaleEnergy>,
}

/// Phantom -> integrate -> add noise -> reconstruct -> report.
/// Writes `recon.csv` and `report.json` into the output directory.
pub fn run_reconstruction(config: &ExperimentConfig) -> CliResult<ReconReport> {
    config.validate()?;
    let pipeline = Pipeline::build(config)?;
    let f_star = make_phantom(&config.phantom, config.n)?;
    let g = apply(&pipeline.op, &f_star)?;
    let noisy = g.add_white_noise(config.sigma, config.seed);

    let (reconstruction, alpha, beta, per_scale_energy, norm_bound) = match filter_spec(config.filter)
    {
        Some(spec) => {
            let report = recon::filtered_reconstruct(
                &pipeline.dfd,
                &pipeline.w_bank,
                &spec,
                config.alpha,
                &noisy,
            )?;
            let energy = report
                .per_scale_energy
                .iter()
                .map(|&(scale, energy)| ScaleEnergy { scale, energy })
                .collect();
            (
                report.reconstruction,
                Some(config.alpha),
                None,
                energy,
                report.norm_bound,
            )
        }
        None => {
            let rec =
                recon::thresholded_reconstruct(&pipeline.dfd, &pipeline.w_bank, config.beta, &noisy)?;
            let coeffs = pipeline.dfd.vaguelette_analysis(&noisy)?;
            let shrunk = pipeline.dfd.map_coefficients(&coeffs, |_, kappa, c| {
                let values = c
                    .values()
                    .iter()
                    .map(|&x| filter::soft_threshold(kappa * config.beta, x) / kappa)
                    .collect();
                Signal::new(values).expect("finite coefficients")
            });
            let energy = shrunk
                .iter()
                .map(|(scale, c)| ScaleEnergy {
                    scale,
                    energy: c.l2_norm(),
                })
                .collect();
            // The soft map is dominated by the unfiltered inversion, so
            // the exact-inverse stability bound applies.
            let kappa_min = pipeline
                .dfd
                .kappas()
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            let bound = bank_norm(&pipeline.w_bank) * bank_norm(pipeline.dfd.v_bank()) / kappa_min;
            (rec, None, Some(config.beta), energy, bound)
        }
    };

    let relative_error = reconstruction.sub(&f_star)?.l2_norm() / f_star.l2_norm();
    let data_norm = noisy.l2_norm();
    let empirical_norm = if data_norm > 0.0 {
        reconstruction.l2_norm() / data_norm
    } else {
        0.0
    };
    if empirical_norm > norm_bound * (1.0 + 1e-12) {
        return Err(CliError::NumericalInvariant(format!(
            "reconstruction norm {empirical_norm} exceeds stability bound {norm_bound}"
        )));
    }

    let report = ReconReport {
        n: config.n,
        phantom: config.phantom.label(),
        sigma: config.sigma,
        filter: config.filter.label().into(),
        alpha,
        beta,
        seed: config.seed,
        relative_error,
        data_norm,
        empirical_norm,
        norm_bound,
        per_scale_energy,
    };

    let dir = ensure_dir(&config.output_dir)?;
    io::write_signal_csv(&dir.join("recon.csv"), &reconstruction)?;
    io::write_json(&dir.join("report.json"), &report)?;
    Ok(report)
}

fn bank_norm(bank: &MultiplierBank) -> f64 {
    bank.multiplier_sum()
        .into_iter()
        .fold(0.0f64, f64::max)
        .sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct RateRow {
    pub delta: f64,
    pub alpha_used: f64,
    pub median_error: f64,
}

/// Rate-study outcome: per-noise-level medians and the fitted slope.
#[derive(Debug, Clone, Serialize)]
pub struct RateStudyResult {
    pub filter: String,
    pub mu: f64,
    pub rho: f64,
    pub target_slope: f64,
    pub fitted_slope: f64,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<RateRow>,
}

/// Sweeps the noise level, choosing `alpha` by the a-priori rule with
/// `rho = source_norm(phantom, mu)`, and fits the log-log error slope.
/// Noise realizations are rescaled so `||eta|| = delta` exactly.
pub fn run_rate_study(config: &ExperimentConfig) -> CliResult<RateStudyResult> {
    config.validate()?;
    let spec = filter_spec(config.filter).ok_or_else(|| {
        CliError::Config("rate-study needs a linear filter (tikhonov or truncation)".into())
    })?;
    if let Some(q) = spec.qualification() {
        if config.mu > q {
            eprintln!(
                "warning: mu = {} exceeds the {} filter qualification {q}; \
                 the study will exhibit saturation",
                config.mu,
                spec.name()
            );
        }
    }

    let pipeline = Pipeline::build(config)?;
    let f_star = make_phantom(&config.phantom, config.n)?;
    let g = apply(&pipeline.op, &f_star)?;
    let rho = dfd::source_norm(&pipeline.dfd, &f_star, config.mu)?;
    let zero = Signal::zeros(config.n)?;

    let mut deltas = config.delta_list.clone();
    deltas.sort_by(|a, b| b.partial_cmp(a).expect("finite deltas"));

    let mut rows = Vec::new();
    let mut points = Vec::new();
    for (d_idx, &delta) in deltas.iter().enumerate() {
        let alpha = recon::a_priori_alpha(delta, rho, config.mu, config.alpha_constant);
        let errors: Vec<f64> = (0..config.trials)
            .map(|trial| {
                let seed = config.seed + (d_idx * config.trials + trial) as u64;
                let eta = zero.add_white_noise(1.0, seed);
                let eta = eta.scaled(delta / eta.l2_norm());
                let noisy = g.add(&eta)?;
                let report = recon::filtered_reconstruct(
                    &pipeline.dfd,
                    &pipeline.w_bank,
                    &spec,
                    alpha,
                    &noisy,
                )?;
                Ok(report.reconstruction.sub(&f_star)?.l2_norm() / f_star.l2_norm())
            })
            .collect::<CliResult<_>>()?;
        let median_error = median(&errors);
        points.push((delta, median_error));
        rows.push(RateRow {
            delta,
            alpha_used: alpha,
            median_error,
        });
    }

    let result = RateStudyResult {
        filter: spec.name().into(),
        mu: config.mu,
        rho,
        target_slope: 2.0 * config.mu / (2.0 * config.mu + 1.0),
        fitted_slope: loglog_slope(&points),
        trials: config.trials,
        seed: config.seed,
        rows,
    };

    let dir = ensure_dir(&config.output_dir)?;
    let mut csv = String::from("delta,alpha_used,median_error\n");
    for row in &result.rows {
        csv.push_str(&format!(
            "{},{},{}\n",
            io::format_full(row.delta),
            io::format_full(row.alpha_used),
            io::format_full(row.median_error)
        ));
    }
    std::fs::write(dir.join("rate_study.csv"), csv)?;
    io::write_json(&dir.join("rate_study.json"), &result)?;
    Ok(result)
}

/// Undecimated-versus-decimated comparison summary.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonSummary {
    pub phantom: String,
    pub sigma: f64,
    pub beta_ti: f64,
    pub beta_decimated: f64,
    pub trials: usize,
    pub seed: u64,
    pub median_ti_error: f64,
    pub median_decimated_error: f64,
    /// Max over all circular shifts of
    /// `||unshift(rec(shift(g))) - rec(g)||`.
    pub ti_shift_variance: f64,
    pub decimated_shift_variance: f64,
}

/// Thresholded undecimated versus thresholded decimated reconstruction
/// over `trials` noise seeds, plus a full circular-shift sweep on the
/// first realization. Writes `ti.csv`, `decimated.csv`, `summary.json`.
pub fn run_comparison(config: &ExperimentConfig) -> CliResult<ComparisonSummary> {
    config.validate()?;
    let pipeline = Pipeline::build(config)?;
    let f_star = make_phantom(&config.phantom, config.n)?;
    let g = apply(&pipeline.op, &f_star)?;

    let ti_rec = |data: &Signal| -> CliResult<Signal> {
        Ok(recon::thresholded_reconstruct(
            &pipeline.dfd,
            &pipeline.w_bank,
            config.beta_ti,
            data,
        )?)
    };
    let dec_rec = |data: &Signal| -> CliResult<Signal> {
        Ok(recon::decimated_reconstruct(
            &pipeline.dfd,
            &pipeline.w_bank,
            DecimatedMode::Soft(config.beta_decimated),
            data,
        )?)
    };

    let mut ti_errors = Vec::new();
    let mut dec_errors = Vec::new();
    let mut first_outputs = None;
    for trial in 0..config.trials {
        let noisy = g.add_white_noise(config.sigma, config.seed + trial as u64);
        let ti = ti_rec(&noisy)?;
        let dec = dec_rec(&noisy)?;
        ti_errors.push(ti.sub(&f_star)?.l2_norm() / f_star.l2_norm());
        dec_errors.push(dec.sub(&f_star)?.l2_norm() / f_star.l2_norm());
        if first_outputs.is_none() {
            first_outputs = Some((noisy, ti, dec));
        }
    }
    let (first_noisy, first_ti, first_dec) = first_outputs.expect("trials >= 1");

    let shift_score = |rec: &dyn Fn(&Signal) -> CliResult<Signal>,
                       base: &Signal|
     -> CliResult<f64> {
        let mut worst: f64 = 0.0;
        for m in 1..config.n as i64 {
            let shifted = rec(&first_noisy.shift(m))?;
            worst = worst.max(shifted.shift(-m).sub(base)?.l2_norm());
        }
        Ok(worst)
    };
    let ti_shift_variance = shift_score(&ti_rec, &first_ti)?;
    let decimated_shift_variance = shift_score(&dec_rec, &first_dec)?;

    let summary = ComparisonSummary {
        phantom: config.phantom.label(),
        sigma: config.sigma,
        beta_ti: config.beta_ti,
        beta_decimated: config.beta_decimated,
        trials: config.trials,
        seed: config.seed,
        median_ti_error: median(&ti_errors),
        median_decimated_error: median(&dec_errors),
        ti_shift_variance,
        decimated_shift_variance,
    };

    let dir = ensure_dir(&config.output_dir)?;
    io::write_signal_csv(&dir.join("ti.csv"), &first_ti)?;
    io::write_signal_csv(&dir.join("decimated.csv"), &first_dec)?;
    io::write_json(&dir.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Frame diagnostics written by `validate-frame`.
#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub bank: String,
    pub n: usize,
    pub bounds_a: f64,
    pub bounds_b: f64,
    pub dual_residual: f64,
    pub max_reproducing_error: f64,
}

/// Frame bounds, canonical-dual residual and the reproducing formula
/// over random zero-mean probes. Violations surface as
/// [`CliError::NumericalInvariant`].
pub fn run_validate_frame(config: &ExperimentConfig) -> CliResult<FrameReport> {
    config.validate()?;
    let (label, bank) = match config.bank {
        BankChoice::Shannon => ("shannon", frame::shannon_bank(config.n, 1)?),
        BankChoice::Meyer => ("meyer", frame::meyer_bank(config.n)?),
    };
    let bounds = frame::frame_bounds(&bank, true)?;
    let dual = frame::canonical_dual(&bank)?;
    let dual_residual = frame::verify_dual(&bank, &dual)?;

    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut max_reproducing_error: f64 = 0.0;
    for _ in 0..config.trials.max(1) {
        let f = Signal::random_zero_mean(config.n, &mut rng)?;
        let rec = frame::synthesis(&dual, &frame::analysis(&bank, &f)?)?;
        max_reproducing_error =
            max_reproducing_error.max(rec.sub(&f)?.l2_norm() / f.l2_norm());
    }

    let report = FrameReport {
        bank: label.into(),
        n: config.n,
        bounds_a: bounds.a,
        bounds_b: bounds.b,
        dual_residual,
        max_reproducing_error,
    };
    let dir = ensure_dir(&config.output_dir)?;
    io::write_json(&dir.join("frame_report.json"), &report)?;
    io::write_bank_csv(&dir.join("bank.csv"), &bank)?;

    if dual_residual > 1e-10 {
        return Err(CliError::NumericalInvariant(format!(
            "canonical dual residual {dual_residual:e}"
        )));
    }
    if max_reproducing_error > 1e-9 {
        return Err(CliError::NumericalInvariant(format!(
            "reproducing formula error {max_reproducing_error:e}"
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct QualificationRow {
    pub mu: f64,
    pub c_mu: f64,
    pub holds: bool,
}

/// Filter diagnostics written by `validate-filter`.
#[derive(Debug, Clone, Serialize)]
pub struct FilterReport {
    pub name: String,
    pub f1_ok: bool,
    pub c: f64,
    pub f3_max_deviation: f64,
    pub f3_monotone: bool,
    pub r2_table: Vec<QualificationRow>,
}

/// Filter-axiom measurements over the standard grids.
pub fn run_validate_filter(config: &ExperimentConfig) -> CliResult<FilterReport> {
    config.validate()?;
    let spec = filter_spec(config.filter).ok_or_else(|| {
        CliError::Config("validate-filter needs a linear filter (tikhonov or truncation)".into())
    })?;

    let alphas: Vec<f64> = (1..=6).map(|m| 10f64.powi(-m)).collect();
    let l = config.n.trailing_zeros() as i32;
    let kappas: Vec<f64> = (1..l).map(|j| 0.5f64.powi(j)).collect();
    let report = filter::validate_regularizing_filter(&spec, &alphas, &kappas);
    let r2_table = filter::R2_ORDERS
        .iter()
        .map(|&mu| {
            let q = filter::qualification_check(&spec, mu, &alphas);
            QualificationRow {
                mu,
                c_mu: q.c_mu,
                holds: q.holds,
            }
        })
        .collect();

    let out = FilterReport {
        name: report.name.clone(),
        f1_ok: report.f1_ok,
        c: report.f2_constant,
        f3_max_deviation: report.f3_max_deviation,
        f3_monotone: report.f3_monotone,
        r2_table,
    };
    let dir = ensure_dir(&config.output_dir)?;
    io::write_json(&dir.join("filter_report.json"), &out)?;

    if !out.f1_ok || !out.f3_monotone {
        return Err(CliError::NumericalInvariant(
            "filter axioms (F1)/(F3) violated on the test grid".into(),
        ));
    }
    if out.c > 1.0 + 1e-12 {
        return Err(CliError::NumericalInvariant(format!(
            "uniform bound constant {} exceeds 1",
            out.c
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimalityRow {
    pub scale: i32,
    pub kappa: f64,
    pub delta_n: f64,
    pub norm_f_n: f64,
    pub lower_bound_constant: f64,
}

/// Lower-bound family report written by `probe-optimality`.
#[derive(Debug, Clone, Serialize)]
pub struct OptimalityReport {
    pub mu: f64,
    pub rho: f64,
    pub target_slope: f64,
    pub fitted_slope: f64,
    pub rows: Vec<OptimalityRow>,
}

/// Builds the single-scale source family and regresses
/// `log ||f_n||` on `log delta_n`; the slope must match
/// `2 mu / (2 mu + 1)` to 1e-6.
pub fn run_probe_optimality(config: &ExperimentConfig) -> CliResult<OptimalityReport> {
    config.validate()?;
    let pipeline = Pipeline::build(config)?;

    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &scale in pipeline.dfd.scales() {
        let probe = recon::worst_case_probe(&pipeline.dfd, config.mu, config.rho, scale)?;
        points.push((probe.delta_n, probe.norm_f_n));
        rows.push(OptimalityRow {
            scale,
            kappa: probe.kappa,
            delta_n: probe.delta_n,
            norm_f_n: probe.norm_f_n,
            lower_bound_constant: probe.lower_bound_constant,
        });
    }
    let fitted_slope = loglog_slope(&points);
    let target_slope = 2.0 * config.mu / (2.0 * config.mu + 1.0);

    let report = OptimalityReport {
        mu: config.mu,
        rho: config.rho,
        target_slope,
        fitted_slope,
        rows,
    };
    let dir = ensure_dir(&config.output_dir)?;
    let mut csv = String::from("scale,kappa,delta_n,norm_f_n,lower_bound_constant\n");
    for row in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            row.scale,
            io::format_full(row.kappa),
            io::format_full(row.delta_n),
            io::format_full(row.norm_f_n),
            io::format_full(row.lower_bound_constant)
        ));
    }
    std::fs::write(dir.join("optimality.csv"), csv)?;
    io::write_json(&dir.join("optimality.json"), &report)?;

    if (fitted_slope - target_slope).abs() > 1e-6 {
        return Err(CliError::NumericalInvariant(format!(
            "optimality slope {fitted_slope} deviates from {target_slope}"
        )));
    }
    Ok(report)
}

fn ensure_dir(dir: &Path) -> CliResult<std::path::PathBuf> {
    std::fs::create_dir_all(dir)?;
    Ok(dir.to_path_buf())
}
