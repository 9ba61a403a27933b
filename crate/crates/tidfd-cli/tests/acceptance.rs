//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`) and failing the build on
//! violation.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tidfd_cli::config::{ExperimentConfig, FilterChoice, PhantomKind};
use tidfd_cli::experiment::{
    median, run_comparison, run_rate_study, run_reconstruction,
};
use tidfd_core::dfd::{build_ti_wvd, exact_inverse, verify_tidfd};
use tidfd_core::filter::{numeric_sup_norm, qualification_check, tikhonov_filter, truncation_filter};
use tidfd_core::frame::{analysis, canonical_dual, frame_bounds, shannon_bank, synthesis};
use tidfd_core::operator::{apply, integration_op};
use tidfd_core::recon::{filtered_reconstruct, worst_case_probe};
use tidfd_core::signal::Signal;

const N: usize = 512;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    started: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32, name: &'static str, limit_secs: u64) -> Self {
        Self {
            id,
            name,
            limit: Duration::from_secs(limit_secs),
            started: Instant::now(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.failures.push(detail);
        }
    }

    fn finish(mut self) {
        let elapsed = self.started.elapsed();
        if elapsed > self.limit {
            self.failures.push(format!(
                "runtime {elapsed:.2?} exceeds limit {:?}",
                self.limit
            ));
        }
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [{verdict}] {} ({elapsed:.2?})",
            self.id, self.name
        );
        for failure in &self.failures {
            println!("    - {failure}");
        }
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.id,
            self.failures
        );
    }
}

fn out_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("tidfd-acceptance-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn criterion_1_frame_axioms() {
    let mut c = Criterion::new(1, "Shannon frame bounds and reproducing formula", 5);

    let bank = shannon_bank(N, 1).unwrap();
    let bounds = frame_bounds(&bank, true).unwrap();
    c.check(
        (bounds.a - 1.0).abs() <= 1e-12 && (bounds.b - 1.0).abs() <= 1e-12,
        format!("frame bounds ({}, {})", bounds.a, bounds.b),
    );

    let dual = canonical_dual(&bank).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let f = Signal::random_gaussian(N, &mut rng)
            .unwrap()
            .project_zero_mean();
        let rec = synthesis(&dual, &analysis(&bank, &f).unwrap()).unwrap();
        worst = worst.max(rec.sub(&f).unwrap().l2_norm() / f.l2_norm());
    }
    c.check(
        worst <= 1e-10,
        format!("reproducing formula relative error {worst:e}"),
    );
    c.finish();
}

#[test]
fn criterion_2_tidfd_axioms() {
    let mut c = Criterion::new(2, "TI-WVD diagonalization and vaguelette bounds", 5);

    let dfd = build_ti_wvd(&shannon_bank(N, 1).unwrap()).unwrap();
    let op = integration_op(N).unwrap();
    let report = verify_tidfd(&dfd, &op, 10).unwrap();
    c.check(
        report.ti3_residual <= 1e-12,
        format!("diagonalization residual {:e}", report.ti3_residual),
    );
    c.check(
        report.ti2_bounds.a >= PI * PI - 1e-9 && report.ti2_bounds.b <= 4.0 * PI * PI + 1e-9,
        format!(
            "vaguelette bounds ({}, {}) outside [pi^2, 4 pi^2]",
            report.ti2_bounds.a, report.ti2_bounds.b
        ),
    );
    c.finish();
}

#[test]
fn criterion_3_exact_inversion_and_instability() {
    let mut c = Criterion::new(3, "exact inversion and noise blow-up", 5);

    let dfd = build_ti_wvd(&shannon_bank(N, 1).unwrap()).unwrap();
    let w = canonical_dual(dfd.u_bank()).unwrap();
    let op = integration_op(N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let f = Signal::random_zero_mean(N, &mut rng).unwrap();
    let f = f.scaled(1.0 / f.l2_norm());
    let g = apply(&op, &f).unwrap();

    let rec = exact_inverse(&dfd, &w, &g).unwrap();
    let rel = rec.sub(&f).unwrap().l2_norm() / f.l2_norm();
    c.check(rel <= 1e-9, format!("noiseless recovery error {rel:e}"));

    let mut worst_noisy = f64::INFINITY;
    for seed in 0..5u64 {
        let noisy = g.add_white_noise(0.03, seed);
        let bad = exact_inverse(&dfd, &w, &noisy).unwrap();
        worst_noisy = worst_noisy.min(bad.sub(&f).unwrap().l2_norm() / f.l2_norm());
    }
    c.check(
        worst_noisy > 1.0,
        format!("unfiltered noisy error {worst_noisy} not above 1"),
    );
    c.finish();
}

#[test]
fn criterion_4_filter_laws() {
    let mut c = Criterion::new(4, "filter sup-norm laws and qualification", 2);

    let tik = tikhonov_filter();
    let grid: Vec<f64> = (0..=400)
        .map(|i| 1e-5 * (1e5f64).powf(i as f64 / 400.0))
        .collect();
    for m in 1..=5 {
        let alpha = 10f64.powi(-m);
        let numeric = numeric_sup_norm(&tik, alpha, &grid);
        let law = 0.5 / alpha.sqrt();
        c.check(
            (numeric - law).abs() <= 1e-6 * law,
            format!("tikhonov sup norm at alpha 1e-{m}: {numeric} vs {law}"),
        );
    }

    let tru = truncation_filter();
    let alphas: Vec<f64> = (1..=6).map(|m| 10f64.powi(-m)).collect();
    for mu in [0.5, 1.0, 2.0] {
        let q = qualification_check(&tru, mu, &alphas);
        c.check(
            q.holds && (q.c_mu - 1.0).abs() <= 1e-12,
            format!("truncation qualification constant at mu {mu}: {}", q.c_mu),
        );
    }

    c.check(
        qualification_check(&tik, 1.0, &alphas).holds,
        "tikhonov fails qualification mu = 1".into(),
    );
    c.check(
        !qualification_check(&tik, 2.0, &alphas).holds,
        "tikhonov unexpectedly satisfies qualification mu = 2".into(),
    );
    c.finish();
}

#[test]
fn criterion_5_convergence_rates() {
    let mut c = Criterion::new(5, "a-priori rate study slopes", 60);

    let base = ExperimentConfig {
        phantom: PhantomKind::Band { scale: 5 },
        trials: 10,
        output_dir: out_dir("rate-tik"),
        ..ExperimentConfig::default()
    };

    let tik = run_rate_study(&ExperimentConfig {
        filter: FilterChoice::Tikhonov,
        mu: 1.0,
        ..base.clone()
    })
    .unwrap();
    let target = 2.0 / 3.0;
    c.check(
        (tik.fitted_slope - target).abs() <= 0.10,
        format!("tikhonov mu=1 slope {} vs {target}", tik.fitted_slope),
    );

    let tru = run_rate_study(&ExperimentConfig {
        filter: FilterChoice::Truncation,
        mu: 2.0,
        output_dir: out_dir("rate-tru"),
        ..base
    })
    .unwrap();
    let target = 4.0 / 5.0;
    c.check(
        (tru.fitted_slope - target).abs() <= 0.10,
        format!("truncation mu=2 slope {} vs {target}", tru.fitted_slope),
    );
    c.finish();
}

#[test]
fn criterion_6_order_optimality_probe() {
    let mut c = Criterion::new(6, "lower-bound family rate exponent", 5);

    let dfd = build_ti_wvd(&shannon_bank(N, 1).unwrap()).unwrap();
    for mu in [0.5, 1.0] {
        let points: Vec<(f64, f64)> = dfd
            .scales()
            .iter()
            .map(|&j| {
                let probe = worst_case_probe(&dfd, mu, 1.0, j).unwrap();
                (probe.delta_n, probe.norm_f_n)
            })
            .collect();
        let slope = tidfd_cli::experiment::loglog_slope(&points);
        let target = 2.0 * mu / (2.0 * mu + 1.0);
        c.check(
            (slope - target).abs() <= 1e-6,
            format!("mu {mu}: slope {slope} vs {target}"),
        );
    }
    c.finish();
}

#[test]
fn criterion_7_experiment_rerun() {
    let mut c = Criterion::new(7, "noisy reconstruction error targets", 30);

    // Piecewise-constant phantom, Tikhonov alpha = 0.01, sigma = 0.03.
    let mut piecewise_errors = Vec::new();
    for seed in 0..20u64 {
        let config = ExperimentConfig {
            seed,
            output_dir: out_dir("rerun-pc"),
            ..ExperimentConfig::default()
        };
        piecewise_errors.push(run_reconstruction(&config).unwrap().relative_error);
    }
    let pc_median = median(&piecewise_errors);
    c.check(
        pc_median < 0.05,
        format!("piecewise-constant median relative error {pc_median:.4} not below 0.05"),
    );

    // Smooth phantom, alpha = 0.025.
    let mut smooth_errors = Vec::new();
    for seed in 0..20u64 {
        let config = ExperimentConfig {
            phantom: PhantomKind::Smooth,
            alpha: 0.025,
            seed,
            output_dir: out_dir("rerun-sm"),
            ..ExperimentConfig::default()
        };
        smooth_errors.push(run_reconstruction(&config).unwrap().relative_error);
    }
    let sm_median = median(&smooth_errors);
    c.check(
        sm_median < 0.02,
        format!("smooth median relative error {sm_median:.4} not below 0.02"),
    );

    // Semi-convergence: the error curve over alpha attains an interior
    // minimum.
    let dfd = build_ti_wvd(&shannon_bank(N, 1).unwrap()).unwrap();
    let w = canonical_dual(dfd.u_bank()).unwrap();
    let f = tidfd_cli::phantom::make_phantom(&PhantomKind::PiecewiseConstant, N).unwrap();
    let g = apply(&integration_op(N).unwrap(), &f)
        .unwrap()
        .add_white_noise(0.03, 7);
    let alphas: Vec<f64> = (0..=12)
        .map(|i| 1e-4 * (1e3f64).powf(i as f64 / 12.0))
        .collect();
    let errors: Vec<f64> = alphas
        .iter()
        .map(|&alpha| {
            let rec = filtered_reconstruct(&dfd, &w, &tikhonov_filter(), alpha, &g).unwrap();
            rec.reconstruction.sub(&f).unwrap().l2_norm() / f.l2_norm()
        })
        .collect();
    let min_idx = errors
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    c.check(
        min_idx > 0 && min_idx < errors.len() - 1,
        format!("semi-convergence minimum at grid edge (index {min_idx})"),
    );
    c.finish();
}

#[test]
fn criterion_8_ti_vs_decimated() {
    let mut c = Criterion::new(8, "undecimated beats decimated thresholding", 60);

    let config = ExperimentConfig {
        trials: 20,
        beta_ti: 0.05,
        beta_decimated: 0.005,
        output_dir: out_dir("compare"),
        ..ExperimentConfig::default()
    };
    let summary = run_comparison(&config).unwrap();
    c.check(
        summary.median_ti_error <= summary.median_decimated_error,
        format!(
            "median TI error {} above decimated {}",
            summary.median_ti_error, summary.median_decimated_error
        ),
    );
    c.check(
        summary.ti_shift_variance <= 1e-10,
        format!("TI shift variance {:e}", summary.ti_shift_variance),
    );
    c.check(
        summary.decimated_shift_variance > 1e-3,
        format!(
            "decimated shift variance {:e}",
            summary.decimated_shift_variance
        ),
    );
    c.finish();
}

#[test]
fn criterion_9_cli_determinism() {
    let mut c = Criterion::new(9, "byte-identical CLI reruns", 60);

    let binary = env!("CARGO_BIN_EXE_tidfd");
    let base = out_dir("determinism");
    std::fs::create_dir_all(&base).unwrap();
    let config_path = base.join("config.json");
    std::fs::write(
        &config_path,
        r#"{"n": 256, "trials": 3, "seed": 11, "delta_list": [1e-2, 1e-3]}"#,
    )
    .unwrap();

    for sub in ["reconstruct", "rate-study", "compare"] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let dir = base.join(format!("{sub}-{run}"));
            let status = std::process::Command::new(binary)
                .args([
                    sub,
                    "--config",
                    config_path.to_str().unwrap(),
                    "--out",
                    dir.to_str().unwrap(),
                ])
                .output()
                .unwrap();
            c.check(
                status.status.success(),
                format!(
                    "{sub} run {run} exited with {:?}: {}",
                    status.status.code(),
                    String::from_utf8_lossy(&status.stderr)
                ),
            );
            let mut files: Vec<_> = std::fs::read_dir(&dir)
                .map(|entries| {
                    entries
                        .map(|e| e.unwrap().path())
                        .collect::<Vec<_>>()
                })
                .unwrap_or_default();
            files.sort();
            let bytes: Vec<(String, Vec<u8>)> = files
                .iter()
                .map(|p| {
                    (
                        p.file_name().unwrap().to_string_lossy().into_owned(),
                        std::fs::read(p).unwrap(),
                    )
                })
                .collect();
            c.check(!bytes.is_empty(), format!("{sub} run {run} wrote no files"));
            outputs.push(bytes);
        }
        c.check(
            outputs[0] == outputs[1],
            format!("{sub}: reruns differ byte-wise"),
        );
    }
    c.finish();
}
