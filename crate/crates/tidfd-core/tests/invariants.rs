//! Cross-module invariants checked over batches of random signals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tidfd_core::dfd::build_ti_wvd;
use tidfd_core::filter::tikhonov_filter;
use tidfd_core::frame::{
    analysis, canonical_dual, frame_bounds, meyer_bank, shannon_bank, synthesis,
};
use tidfd_core::recon::filtered_reconstruct;
use tidfd_core::signal::Signal;

const N: usize = 512;

#[test]
fn frame_inequality_on_random_signals() {
    for bank in [shannon_bank(N, 1).unwrap(), meyer_bank(N).unwrap()] {
        let bounds = frame_bounds(&bank, true).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let f = Signal::random_zero_mean(N, &mut rng).unwrap();
            let energy = {
                let v = analysis(&bank, &f).unwrap().norm();
                v * v
            };
            let norm_sq = f.l2_norm() * f.l2_norm();
            assert!(bounds.a * norm_sq <= energy * (1.0 + 1e-12));
            assert!(energy <= bounds.b * norm_sq * (1.0 + 1e-12));
        }
    }
}

#[test]
fn reproducing_formula_over_random_signals() {
    for bank in [shannon_bank(N, 1).unwrap(), meyer_bank(N).unwrap()] {
        let dual = canonical_dual(&bank).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..100 {
            let f = Signal::random_gaussian(N, &mut rng).unwrap().project_zero_mean();
            let rec = synthesis(&dual, &analysis(&bank, &f).unwrap()).unwrap();
            let rel = rec.sub(&f).unwrap().l2_norm() / f.l2_norm();
            assert!(rel < 1e-10, "reproducing error {rel:e}");
        }
    }
}

#[test]
fn analysis_and_synthesis_commute_with_shifts() {
    let bank = shannon_bank(N, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let f = Signal::random_gaussian(N, &mut rng).unwrap();
    let c = analysis(&bank, &f).unwrap();
    for &m in &[1i64, 19, 247, 500] {
        let shifted = analysis(&bank, &f.shift(m)).unwrap();
        for ((_, a), (_, b)) in shifted.iter().zip(c.iter()) {
            assert!(a.sub(&b.shift(m)).unwrap().l2_norm() < 1e-12 * f.l2_norm());
        }
    }
}

#[test]
fn filtered_reconstruction_is_linear_and_shift_equivariant() {
    let dfd = build_ti_wvd(&shannon_bank(N, 1).unwrap()).unwrap();
    let w = canonical_dual(dfd.u_bank()).unwrap();
    let filter = tikhonov_filter();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let g = Signal::random_zero_mean(N, &mut rng).unwrap();
    let h = Signal::random_zero_mean(N, &mut rng).unwrap();

    let rec = |x: &Signal| {
        filtered_reconstruct(&dfd, &w, &filter, 0.01, x)
            .unwrap()
            .reconstruction
    };
    let combined = rec(&g.scaled(1.5).add(&h).unwrap());
    let separate = rec(&g).scaled(1.5).add(&rec(&h)).unwrap();
    assert!(combined.sub(&separate).unwrap().l2_norm() < 1e-12 * combined.l2_norm().max(1.0));

    for &m in &[3i64, 97] {
        let a = rec(&g.shift(m));
        let b = rec(&g).shift(m);
        assert!(a.sub(&b).unwrap().l2_norm() < 1e-10 * g.l2_norm());
    }
}
