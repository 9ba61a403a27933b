//! Discrete periodic signal model.
//!
//! A [`Signal`] holds real samples `f(x_i)`, `x_i = i/n`, on the torus
//! `[0, 1)` with `n = 2^l` samples, `l >= 3`. Its [`Spectrum`] carries
//! complex Fourier coefficients indexed by integer frequencies
//! `k in {-n/2, ..., n/2 - 1}` with angular frequency `w_k = 2*pi*k`,
//! normalized so that `coeff(k) = (1/n) * sum_i f(x_i) e^{-i w_k x_i}`.
//! Under this convention Parseval is weight-free:
//! `(1/n) * sum_i |f(x_i)|^2 = sum_k |coeff(k)|^2`.
//!
//! The bin `k = -n/2` (frequency magnitude `pi*n`) has no conjugate
//! partner on the grid. Real signals carry real data there; odd
//! multipliers rotate it off the real axis, so multiplier application
//! materializes results through the real part and the exactness of the
//! spectral calculus is stated on signals with that bin empty.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::fft;

/// Smallest admissible grid: `2^3` samples.
pub const MIN_GRID: usize = 8;

fn valid_grid(n: usize) -> bool {
    n >= MIN_GRID && n.is_power_of_two()
}

/// Real-valued function sampled on the uniform periodic grid over `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    values: Vec<f64>,
}

impl Signal {
    /// Wraps samples after checking the grid invariant and finiteness.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !valid_grid(values.len()) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal);
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    /// Samples `f` at the grid points `x_i = i/n`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n).map(|i| f(i as f64 / n as f64)).collect();
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Grid abscissa `x_i = i/n`.
    pub fn x(&self, i: usize) -> f64 {
        i as f64 / self.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Discrete `L^2([0,1))` norm: `sqrt((1/n) * sum |f(x_i)|^2)`.
    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|v| v * v).sum::<f64>() / self.len() as f64)
    }

    /// `(1/n)`-weighted inner product.
    pub fn inner(&self, other: &Signal) -> Result<f64> {
        self.check_len(other.len())?;
        let dot: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        Ok(dot / self.len() as f64)
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.check_len(other.len())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Signal { values })
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.check_len(other.len())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Signal { values })
    }

    pub fn scaled(&self, c: f64) -> Signal {
        Signal {
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Circular shift by `m` samples: `out(x) = f(x - m/n)`.
    pub fn shift(&self, m: i64) -> Signal {
        let n = self.len() as i64;
        let values = (0..n)
            .map(|i| self.values[(i - m).rem_euclid(n) as usize])
            .collect();
        Signal { values }
    }

    /// Removes the mean.
    pub fn project_zero_mean(&self) -> Signal {
        let m = self.mean();
        Signal {
            values: self.values.iter().map(|v| v - m).collect(),
        }
    }

    /// Removes the alternating component, i.e. empties the unpaired
    /// bin `k = -n/2`.
    pub fn project_zero_nyquist(&self) -> Signal {
        let n = self.len();
        let comp = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { *v } else { -*v })
            .sum::<f64>()
            / n as f64;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { v - comp } else { v + comp })
            .collect();
        Signal { values }
    }

    /// I.i.d. standard normal samples.
    pub fn random_gaussian(n: usize, rng: &mut impl Rng) -> Result<Signal> {
        let values = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        Signal::new(values)
    }

    /// Random test signal in the subspace on which the spectral calculus
    /// is exact: Gaussian samples with mean and unpaired Nyquist bin
    /// projected out.
    pub fn random_zero_mean(n: usize, rng: &mut impl Rng) -> Result<Signal> {
        Ok(Signal::random_gaussian(n, rng)?
            .project_zero_mean()
            .project_zero_nyquist())
    }

    /// Adds i.i.d. Gaussian noise of standard deviation `sigma` per
    /// sample, deterministically for a fixed `seed`. Under the
    /// `(1/n)`-weighted norm, `E[l2_norm(noise)^2] = sigma^2`.
    pub fn add_white_noise(&self, sigma: f64, seed: u64) -> Signal {
        assert!(sigma >= 0.0, "noise level must be nonnegative");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = self
            .values
            .iter()
            .map(|v| {
                let eta: f64 = rng.sample(StandardNormal);
                v + sigma * eta
            })
            .collect();
        Signal { values }
    }

    /// Forward transform: `coeff(k) = (1/n) sum_i f(x_i) e^{-i w_k x_i}`.
    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum {
            bins: fft::forward_real(&self.values),
            real_symmetric: true,
        }
    }

    /// Inverse transform `f(x_i) = sum_k coeff(k) e^{i w_k x_i}` for
    /// spectra with real-signal conjugate symmetry. The imaginary residue
    /// is discarded after asserting it stays below `1e-10 * ||s||`.
    pub fn from_spectrum(s: &Spectrum) -> Result<Signal> {
        let inv = fft::inverse(s.bins());
        let n = inv.len() as f64;
        let imag_l2 = libm::sqrt(inv.iter().map(|c| c.im * c.im).sum::<f64>() / n);
        let tolerance = 1e-10 * s.norm();
        if imag_l2 > tolerance {
            return Err(Error::SymmetryViolation {
                residual: imag_l2,
                tolerance,
            });
        }
        Ok(Signal {
            values: inv.iter().map(|c| c.re).collect(),
        })
    }

    fn check_len(&self, other: usize) -> Result<()> {
        if self.len() != other {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                got: other,
            });
        }
        Ok(())
    }
}

/// Complex Fourier coefficients on the frequency grid
/// `k in {-n/2, ..., n/2 - 1}`, stored in FFT bin order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    bins: Vec<Complex64>,
    real_symmetric: bool,
}

impl Spectrum {
    /// Wraps FFT-bin-ordered coefficients; conjugate symmetry is measured
    /// once and recorded in [`Spectrum::is_real_symmetric`].
    pub fn new(bins: Vec<Complex64>) -> Result<Self> {
        if !valid_grid(bins.len()) || bins.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidSignal);
        }
        let mut s = Self {
            bins,
            real_symmetric: false,
        };
        let norm = s.norm();
        s.real_symmetric = s.symmetry_residual() <= 1e-12 * norm.max(1e-300);
        Ok(s)
    }

    /// Builds coefficients from a function of the integer frequency `k`.
    pub fn from_fn(n: usize, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        if !valid_grid(n) {
            return Err(Error::InvalidSignal);
        }
        let bins = (0..n).map(|bin| f(bin_to_k(bin, n))).collect();
        Self::new(bins)
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Coefficient at integer frequency `k in [-n/2, n/2)`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.len() as i64;
        debug_assert!(-n / 2 <= k && k < n / 2);
        self.bins[k.rem_euclid(n) as usize]
    }

    /// Raw coefficients in FFT bin order.
    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }

    /// Iterates `(k, coeff(k))` for `k = -n/2 .. n/2 - 1`.
    pub fn iter_freqs(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.len() as i64;
        (-n / 2..n / 2).map(move |k| (k, self.coeff(k)))
    }

    /// `sqrt(sum_k |coeff(k)|^2)`; by Parseval the l2 norm of the signal
    /// the spectrum represents.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.bins.iter().map(|c| c.norm_sqr()).sum::<f64>())
    }

    /// Largest magnitude over all bins.
    pub fn max_abs(&self) -> f64 {
        self.bins
            .iter()
            .map(|c| libm::sqrt(c.norm_sqr()))
            .fold(0.0, f64::max)
    }

    /// Whether the coefficients had real-signal conjugate symmetry at
    /// construction.
    pub fn is_real_symmetric(&self) -> bool {
        self.real_symmetric
    }

    /// Max over `k` of `|coeff(-k) - conj(coeff(k))|`; the unpaired bins
    /// `k = 0` and `k = -n/2` contribute their imaginary magnitude.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.len() as i64;
        let mut worst = self.coeff(0).im.abs().max(self.coeff(-n / 2).im.abs());
        for k in 1..n / 2 {
            let d = self.coeff(-k) - self.coeff(k).conj();
            worst = worst.max(libm::sqrt(d.norm_sqr()));
        }
        worst
    }
}

/// Angular frequency of the integer frequency `k`.
pub fn omega(k: i64) -> f64 {
    2.0 * core::f64::consts::PI * k as f64
}

/// FFT bin index to integer frequency.
pub fn bin_to_k(bin: usize, n: usize) -> i64 {
    if bin < n / 2 {
        bin as i64
    } else {
        bin as i64 - n as i64
    }
}

/// Analysis (`adjoint = true`) or synthesis (`adjoint = false`)
/// convolution of `f` against the multiplier `u`:
/// `F^-1(conj(u) * Ff)` respectively `F^-1(u * Ff)`.
///
/// The result is materialized through the real part; with a
/// conjugate-symmetric multiplier this is exact, and for multipliers
/// carrying the unpaired Nyquist bin off the real axis it realizes the
/// symmetrized action on that single mode.
pub fn ti_convolve(u: &Spectrum, f: &Signal, adjoint: bool) -> Result<Signal> {
    if u.len() != f.len() {
        return Err(Error::SizeMismatch {
            expected: f.len(),
            got: u.len(),
        });
    }
    let fhat = fft::forward_real(f.values());
    let product: Vec<Complex64> = u
        .bins()
        .iter()
        .zip(&fhat)
        .map(|(m, c)| if adjoint { m.conj() * c } else { m * c })
        .collect();
    let inv = fft::inverse(&product);
    Ok(Signal {
        values: inv.iter().map(|c| c.re).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const N: usize = 512;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(Signal::new(vec![0.0; 7]), Err(Error::InvalidSignal));
        assert_eq!(Signal::new(vec![0.0; 12]), Err(Error::InvalidSignal));
        assert_eq!(Signal::new(vec![f64::NAN; 8]), Err(Error::InvalidSignal));
        assert!(Signal::new(vec![0.0; 8]).is_ok());
    }

    #[test]
    fn dc_signal_has_dc_only_spectrum() {
        let f = Signal::from_fn(N, |_| 1.0).unwrap();
        let s = f.to_spectrum();
        assert!((s.coeff(0) - Complex64::new(1.0, 0.0)).norm_sqr().sqrt() < 1e-14);
        for (k, c) in s.iter_freqs() {
            if k != 0 {
                assert!(c.norm_sqr().sqrt() < 1e-14, "leak at k = {k}");
            }
        }
    }

    #[test]
    fn cosine_splits_into_symmetric_pair() {
        let f = Signal::from_fn(N, |x| (2.0 * core::f64::consts::PI * x).cos()).unwrap();
        let s = f.to_spectrum();
        assert!((s.coeff(1) - Complex64::new(0.5, 0.0)).norm_sqr().sqrt() < 1e-14);
        assert!((s.coeff(-1) - Complex64::new(0.5, 0.0)).norm_sqr().sqrt() < 1e-14);
        for (k, c) in s.iter_freqs() {
            if k.abs() != 1 {
                assert!(c.norm_sqr().sqrt() < 1e-14);
            }
        }
    }

    #[test]
    fn spectrum_round_trip_is_identity() {
        let f = Signal::random_gaussian(N, &mut rng(1)).unwrap();
        let back = Signal::from_spectrum(&f.to_spectrum()).unwrap();
        let rel = back.sub(&f).unwrap().l2_norm() / f.l2_norm();
        assert!(rel < 1e-12, "round trip error {rel:e}");

        // And the other composition order on a symmetric spectrum.
        let s = Signal::random_gaussian(N, &mut rng(2)).unwrap().to_spectrum();
        let s2 = Signal::from_spectrum(&s).unwrap().to_spectrum();
        let diff = s
            .iter_freqs()
            .zip(s2.iter_freqs())
            .map(|((_, a), (_, b))| (a - b).norm_sqr().sqrt())
            .fold(0.0f64, f64::max);
        assert!(diff < 1e-12 * s.norm());
    }

    #[test]
    fn from_spectrum_reconstructs_named_modes() {
        let c = 2.5;
        let s = Spectrum::from_fn(N, |k| {
            if k == 0 {
                Complex64::new(c, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let f = Signal::from_spectrum(&s).unwrap();
        assert!(f.values().iter().all(|v| (v - c).abs() < 1e-13));

        let s = Spectrum::from_fn(N, |k| {
            if k.abs() == 1 {
                Complex64::new(0.5, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let f = Signal::from_spectrum(&s).unwrap();
        let expected = Signal::from_fn(N, |x| (2.0 * core::f64::consts::PI * x).cos()).unwrap();
        assert!(f.sub(&expected).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn from_spectrum_rejects_asymmetric_input() {
        let s = Spectrum::from_fn(N, |k| {
            if k == 3 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        assert!(!s.is_real_symmetric());
        assert!(matches!(
            Signal::from_spectrum(&s),
            Err(Error::SymmetryViolation { .. })
        ));
    }

    #[test]
    fn l2_norm_of_named_signals() {
        let c = -1.7;
        let f = Signal::from_fn(N, |_| c).unwrap();
        assert!((f.l2_norm() - c.abs()).abs() < 1e-14);

        let f = Signal::from_fn(N, |x| (2.0 * core::f64::consts::PI * x).cos()).unwrap();
        assert!((f.l2_norm() - (0.5f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn parseval_against_direct_summation() {
        let f = Signal::random_gaussian(N, &mut rng(3)).unwrap();
        let direct: f64 = f.values().iter().map(|v| v * v).sum::<f64>() / N as f64;
        let spectral: f64 = f.to_spectrum().bins().iter().map(|c| c.norm_sqr()).sum();
        assert!((direct - spectral).abs() / direct < 1e-12);
        assert!((f.l2_norm() * f.l2_norm() - spectral).abs() / spectral < 1e-12);
    }

    #[test]
    fn convolve_with_identity_multiplier() {
        let f = Signal::random_gaussian(N, &mut rng(4)).unwrap();
        let one = Spectrum::from_fn(N, |_| Complex64::new(1.0, 0.0)).unwrap();
        let g = ti_convolve(&one, &f, true).unwrap();
        assert!(g.sub(&f).unwrap().l2_norm() < 1e-12 * f.l2_norm());
    }

    #[test]
    fn convolve_with_shift_multiplier() {
        let f = Signal::random_gaussian(N, &mut rng(5)).unwrap();
        let m: i64 = 37;
        let a = m as f64 / N as f64;
        // e^{-i w a} delays by a = m/n samples in the synthesis direction.
        let shift = Spectrum::from_fn(N, |k| {
            Complex64::new(libm::cos(omega(k) * a), -libm::sin(omega(k) * a))
        })
        .unwrap();
        let g = ti_convolve(&shift, &f, false).unwrap();
        assert!(g.sub(&f.shift(m)).unwrap().l2_norm() < 1e-11);
    }

    #[test]
    fn convolve_matches_quadrature_oracle() {
        // Direct O(n^2) circular quadrature with (1/n) weights.
        let n = 64;
        let mut r = rng(6);
        let u = Signal::random_gaussian(n, &mut r).unwrap();
        let f = Signal::random_gaussian(n, &mut r).unwrap();
        let uhat = u.to_spectrum();

        let analysis = ti_convolve(&uhat, &f, true).unwrap();
        let synthesis = ti_convolve(&uhat, &f, false).unwrap();
        for i in 0..n {
            let mut acc_a = 0.0;
            let mut acc_s = 0.0;
            for j in 0..n {
                // u^*(x) = u(-x) for real u.
                acc_a += u.values()[(j + n - i) % n] * f.values()[j];
                acc_s += u.values()[(i + n - j) % n] * f.values()[j];
            }
            assert!((analysis.values()[i] - acc_a / n as f64).abs() < 1e-10);
            assert!((synthesis.values()[i] - acc_s / n as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn convolve_rejects_size_mismatch() {
        let f = Signal::zeros(64).unwrap();
        let u = Spectrum::from_fn(128, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            ti_convolve(&u, &f, true),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn convolve_is_linear_and_bounded() {
        let mut r = rng(7);
        let f = Signal::random_gaussian(N, &mut r).unwrap();
        let g = Signal::random_gaussian(N, &mut r).unwrap();
        let u = Signal::random_gaussian(N, &mut r).unwrap().to_spectrum();

        let lhs = ti_convolve(&u, &f.scaled(2.0).add(&g).unwrap(), true).unwrap();
        let rhs = ti_convolve(&u, &f, true)
            .unwrap()
            .scaled(2.0)
            .add(&ti_convolve(&u, &g, true).unwrap())
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().l2_norm() < 1e-12 * lhs.l2_norm().max(1.0));

        let bound = u.max_abs() * f.l2_norm();
        assert!(ti_convolve(&u, &f, true).unwrap().l2_norm() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn convolve_commutes_with_shifts() {
        let mut r = rng(8);
        let f = Signal::random_gaussian(N, &mut r).unwrap();
        let u = Signal::random_gaussian(N, &mut r).unwrap().to_spectrum();
        for &m in &[1i64, 13, 255, 311] {
            let a = ti_convolve(&u, &f.shift(m), true).unwrap();
            let b = ti_convolve(&u, &f, true).unwrap().shift(m);
            assert!(a.sub(&b).unwrap().l2_norm() < 1e-12 * f.l2_norm());
        }
    }

    #[test]
    fn white_noise_statistics_and_determinism() {
        let f = Signal::zeros(N).unwrap();
        assert_eq!(f.add_white_noise(0.0, 9).values(), f.values());

        let a = f.add_white_noise(0.5, 42);
        let b = f.add_white_noise(0.5, 42);
        assert_eq!(a.values(), b.values());
        let c = f.add_white_noise(0.5, 43);
        assert_ne!(a.values(), c.values());

        // Monte-Carlo estimate of E||eta||^2 = sigma^2 under the
        // (1/n)-weighted norm: sigma = 0.03 gives 9e-4.
        let sigma = 0.03;
        let mut acc = 0.0;
        for seed in 0..1000u64 {
            let eta = f.add_white_noise(sigma, seed);
            acc += eta.l2_norm() * eta.l2_norm();
        }
        let mean_sq = acc / 1000.0;
        assert!(
            (0.0008..=0.001).contains(&mean_sq),
            "E||eta||^2 = {mean_sq:e}"
        );
    }

    #[test]
    fn projections_remove_their_components() {
        let f = Signal::random_gaussian(N, &mut rng(10)).unwrap();
        let g = f.project_zero_mean();
        assert!(g.mean().abs() < 1e-14);

        let h = g.project_zero_nyquist();
        let nyq = h.to_spectrum().coeff(-(N as i64) / 2);
        assert!(nyq.norm_sqr().sqrt() < 1e-14);
        // Mean untouched by the Nyquist projection.
        assert!(h.mean().abs() < 1e-14);
    }
}
