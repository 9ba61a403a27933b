//! Experiment configuration: JSON file with lowercase snake_case keys,
//! one struct shared by all subcommands.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Test signal selection.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum PhantomKind {
    /// Three steps supported in [0.1, 0.9].
    PiecewiseConstant,
    /// Two-Gaussian bump mixture supported in [0.1, 0.9].
    Smooth,
    /// Flat spectrum on one dyadic band.
    Band { scale: u32 },
    /// Samples from a signal CSV, run through the same normalization.
    CustomCsv { path: PathBuf },
}

impl PhantomKind {
    pub fn label(&self) -> String {
        match self {
            PhantomKind::PiecewiseConstant => "piecewise_constant".into(),
            PhantomKind::Smooth => "smooth".into(),
            PhantomKind::Band { scale } => format!("band_{scale}"),
            PhantomKind::CustomCsv { path } => format!("custom_csv:{}", path.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FilterChoice {
    Tikhonov,
    Truncation,
    Soft,
}

impl FilterChoice {
    pub fn label(&self) -> &'static str {
        match self {
            FilterChoice::Tikhonov => "tikhonov",
            FilterChoice::Truncation => "truncation",
            FilterChoice::Soft => "soft",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BankChoice {
    Shannon,
    Meyer,
}

/// One configuration drives every subcommand; fields irrelevant to a
/// command are ignored by it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub phantom: PhantomKind,
    pub sigma: f64,
    pub filter: FilterChoice,
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub trials: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub bank: BankChoice,
    /// Noise levels of the rate study, descending.
    pub delta_list: Vec<f64>,
    /// Constant `c` of the a-priori rule `alpha = c (delta/rho)^(2/(2mu+1))`.
    pub alpha_constant: f64,
    /// Threshold of the undecimated arm of `compare`.
    pub beta_ti: f64,
    /// Threshold of the decimated arm of `compare`.
    pub beta_decimated: f64,
    /// Source-condition radius used by `probe-optimality`.
    pub rho: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 512,
            phantom: PhantomKind::PiecewiseConstant,
            sigma: 0.03,
            filter: FilterChoice::Tikhonov,
            alpha: 0.01,
            beta: 0.05,
            mu: 1.0,
            trials: 20,
            seed: 0,
            output_dir: PathBuf::from("out"),
            bank: BankChoice::Shannon,
            delta_list: vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4],
            alpha_constant: 0.25,
            beta_ti: 0.05,
            beta_decimated: 0.005,
            rho: 1.0,
        }
    }
}

impl ExperimentConfig {
    /// Defaults tuned for `rate-study` runs: single-band phantom and
    /// fewer trials per noise level.
    pub fn rate_study_defaults() -> Self {
        Self {
            phantom: PhantomKind::Band { scale: 5 },
            trials: 10,
            ..Self::default()
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: Self = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.n < 8 || !self.n.is_power_of_two() {
            return Err(CliError::Config(format!(
                "n must be a power of two >= 8, got {}",
                self.n
            )));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return Err(CliError::Config(format!("sigma must be >= 0, got {}", self.sigma)));
        }
        if self.trials < 1 {
            return Err(CliError::Config("trials must be >= 1".into()));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(CliError::Config(format!("alpha must be > 0, got {}", self.alpha)));
        }
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(CliError::Config(format!("beta must be >= 0, got {}", self.beta)));
        }
        if !(self.mu > 0.0) {
            return Err(CliError::Config(format!("mu must be > 0, got {}", self.mu)));
        }
        if !(self.alpha_constant > 0.0) {
            return Err(CliError::Config("alpha_constant must be > 0".into()));
        }
        if !(self.rho > 0.0) {
            return Err(CliError::Config("rho must be > 0".into()));
        }
        if self.delta_list.is_empty() || self.delta_list.iter().any(|&d| !(d > 0.0)) {
            return Err(CliError::Config("delta_list entries must be > 0".into()));
        }
        let l = self.n.trailing_zeros();
        if let PhantomKind::Band { scale } = self.phantom {
            if scale < 1 || scale > l - 1 {
                return Err(CliError::Config(format!(
                    "band scale must lie in 1..={}, got {scale}",
                    l - 1
                )));
            }
        }
        Ok(())
    }
}
