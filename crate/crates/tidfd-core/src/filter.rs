//! Regularizing filters.
//!
//! A filter family `Phi_alpha` approximates `kappa -> 1/kappa` as
//! `alpha -> 0` while keeping `|kappa * Phi_alpha(kappa)|` uniformly
//! bounded. Truncation and Tikhonov are built in; the validation
//! routines measure the filter axioms and the qualification order on
//! grids, since that is all a finite run can observe.

use alloc::string::String;
use alloc::vec::Vec;


/// A regularizing filter family `(alpha, kappa) -> Phi_alpha(kappa)`
/// with optional closed-form sup-norm law and qualification order.
#[derive(Clone)]
pub struct FilterSpec {
    name: &'static str,
    eval: fn(f64, f64) -> f64,
    sup_norm_law: Option<fn(f64) -> f64>,
    qualification: Option<f64>,
}

impl core::fmt::Debug for FilterSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FilterSpec")
            .field("name", &self.name)
            .field("qualification", &self.qualification)
            .finish()
    }
}

impl FilterSpec {
    pub fn new(
        name: &'static str,
        eval: fn(f64, f64) -> f64,
        sup_norm_law: Option<fn(f64) -> f64>,
        qualification: Option<f64>,
    ) -> Self {
        Self {
            name,
            eval,
            sup_norm_law,
            qualification,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// `Phi_alpha(kappa)`.
    pub fn evaluate(&self, alpha: f64, kappa: f64) -> f64 {
        (self.eval)(alpha, kappa)
    }

    /// Closed-form `||Phi_alpha||_inf` when known.
    pub fn sup_norm_law(&self, alpha: f64) -> Option<f64> {
        self.sup_norm_law.map(|law| law(alpha))
    }

    /// Largest smoothness order `mu` for which the filter attains the
    /// full convergence rate; `None` when unknown, `inf` when unlimited.
    pub fn qualification(&self) -> Option<f64> {
        self.qualification
    }
}

/// Hard truncation: `Phi_alpha(kappa) = 1/kappa` on `kappa^2 >= alpha`,
/// zero below the cut. Sup norm `alpha^(-1/2)`, unlimited qualification.
pub fn truncation_filter() -> FilterSpec {
    FilterSpec::new(
        "truncation",
        |alpha, kappa| {
            if kappa * kappa >= alpha {
                1.0 / kappa
            } else {
                0.0
            }
        },
        Some(|alpha| 1.0 / libm::sqrt(alpha)),
        Some(f64::INFINITY),
    )
}

/// Tikhonov filter `Phi_alpha(kappa) = kappa / (kappa^2 + alpha)`. Its
/// maximum `alpha^(-1/2) / 2` sits at `kappa = sqrt(alpha)`; the
/// qualification is 1.
pub fn tikhonov_filter() -> FilterSpec {
    FilterSpec::new(
        "tikhonov",
        |alpha, kappa| kappa / (kappa * kappa + alpha),
        Some(|alpha| 0.5 / libm::sqrt(alpha)),
        Some(1.0),
    )
}

/// Soft-threshold `sign(x) * max(0, |x| - t)`; the nonlinear coefficient
/// map used by thresholded reconstructions, not a filter family.
pub fn soft_threshold(t: f64, x: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let shrunk = x.abs() - t;
    if shrunk <= 0.0 {
        0.0
    } else if x < 0.0 {
        -shrunk
    } else {
        shrunk
    }
}

/// Numeric `||Phi_alpha||_inf` over `kappa_grid`, refined around
/// `kappa = sqrt(alpha)` where the built-in filters peak.
pub fn numeric_sup_norm(filter: &FilterSpec, alpha: f64, kappa_grid: &[f64]) -> f64 {
    let mut sup: f64 = 0.0;
    for &kappa in kappa_grid {
        sup = sup.max(filter.evaluate(alpha, kappa).abs());
    }
    let pivot = libm::sqrt(alpha);
    for step in -100..=100 {
        let kappa = pivot * (1.0 + 1e-5 * step as f64);
        if kappa > 0.0 {
            sup = sup.max(filter.evaluate(alpha, kappa).abs());
        }
    }
    sup
}

/// Measured filter axioms and qualification table.
#[derive(Debug, Clone)]
pub struct FilterValidationReport {
    pub name: String,
    /// Every evaluation over the grid stayed finite.
    pub f1_ok: bool,
    /// Measured uniform bound `C = max |kappa Phi_alpha(kappa)|`.
    pub f2_constant: f64,
    /// Max over the kappa grid of `|Phi_alpha(kappa) - 1/kappa|` at the
    /// smallest tested alpha.
    pub f3_max_deviation: f64,
    /// Deviation from `1/kappa` was non-increasing along decreasing
    /// alpha for every fixed kappa.
    pub f3_monotone: bool,
    /// Per smoothness order `mu`: measured `max q(alpha) / alpha^mu`
    /// with `q(alpha) = sup_kappa kappa^(2 mu) |1 - kappa Phi_alpha|`.
    pub r2_table: Vec<(f64, f64)>,
}

/// Smoothness orders tabulated by [`validate_regularizing_filter`].
pub const R2_ORDERS: [f64; 3] = [0.5, 1.0, 2.0];

/// Measures (F1)-(F3) of the regularizing-filter definition on the given
/// grids; report-only, nothing is asserted here.
pub fn validate_regularizing_filter(
    filter: &FilterSpec,
    alpha_grid: &[f64],
    kappa_grid: &[f64],
) -> FilterValidationReport {
    let mut f1_ok = true;
    let mut f2_constant: f64 = 0.0;
    for &alpha in alpha_grid {
        for &kappa in kappa_grid {
            let phi = filter.evaluate(alpha, kappa);
            if !phi.is_finite() {
                f1_ok = false;
                continue;
            }
            f2_constant = f2_constant.max((kappa * phi).abs());
        }
    }

    // (F3): pointwise convergence Phi_alpha(kappa) -> 1/kappa along
    // decreasing alpha, monotonically for each fixed kappa.
    let mut alphas: Vec<f64> = alpha_grid.to_vec();
    alphas.sort_by(|a, b| b.partial_cmp(a).expect("finite alphas"));
    let mut f3_monotone = true;
    for &kappa in kappa_grid {
        let mut prev = f64::INFINITY;
        for &alpha in &alphas {
            let dev = (filter.evaluate(alpha, kappa) - 1.0 / kappa).abs();
            if dev > prev * (1.0 + 1e-12) {
                f3_monotone = false;
            }
            prev = dev;
        }
    }
    let alpha_min = alphas.last().copied().unwrap_or(1.0);
    let f3_max_deviation = kappa_grid
        .iter()
        .map(|&kappa| (filter.evaluate(alpha_min, kappa) - 1.0 / kappa).abs())
        .fold(0.0f64, f64::max);

    let r2_table = R2_ORDERS
        .iter()
        .map(|&mu| (mu, qualification_check(filter, mu, alpha_grid).c_mu))
        .collect();

    FilterValidationReport {
        name: String::from(filter.name),
        f1_ok,
        f2_constant,
        f3_max_deviation,
        f3_monotone,
        r2_table,
    }
}

/// Outcome of a qualification probe at one smoothness order.
#[derive(Debug, Clone, Copy)]
pub struct QualificationResult {
    /// `q(alpha) / alpha^mu` stayed bounded over the alpha grid
    /// (max/min ratio at most 10).
    pub holds: bool,
    /// Largest observed `q(alpha) / alpha^mu`.
    pub c_mu: f64,
}

/// Measures `q(alpha) = sup_kappa kappa^(2 mu) |1 - kappa Phi_alpha|`
/// on a fine kappa grid (including the points straddling
/// `kappa = sqrt(alpha)`, where the truncation filter attains its
/// supremum) and checks whether `q(alpha) <= C_mu alpha^mu` with a
/// grid-stable constant.
pub fn qualification_check(filter: &FilterSpec, mu: f64, alpha_grid: &[f64]) -> QualificationResult {
    debug_assert!(mu > 0.0);
    let mut ratio_min = f64::INFINITY;
    let mut ratio_max: f64 = 0.0;
    for &alpha in alpha_grid {
        let mut q: f64 = 0.0;
        let mut probe = |kappa: f64| {
            if kappa > 0.0 {
                let term = libm::pow(kappa, 2.0 * mu)
                    * (1.0 - kappa * filter.evaluate(alpha, kappa)).abs();
                q = q.max(term);
            }
        };
        for step in 0..=600 {
            // Log-spaced kappa from 1e-4 to 1.
            probe(libm::pow(10.0, -4.0 + 4.0 * step as f64 / 600.0));
        }
        let edge = libm::sqrt(alpha);
        probe(libm::nextafter(edge, 0.0));
        probe(edge);
        let ratio = q / libm::pow(alpha, mu);
        ratio_min = ratio_min.min(ratio);
        ratio_max = ratio_max.max(ratio);
    }
    QualificationResult {
        holds: ratio_max <= 10.0 * ratio_min,
        c_mu: ratio_max,
    }
}
