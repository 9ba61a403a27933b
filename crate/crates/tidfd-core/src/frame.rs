//! Translation-invariant frames as Fourier-multiplier banks.
//!
//! A bank stores one multiplier spectrum per dyadic scale label. Analysis
//! correlates a signal against every multiplier, synthesis sums the
//! scale-wise convolutions, and the frame calculus (bounds, canonical
//! dual, dual verification) reduces to pointwise work on the multiplier
//! sum `S(k) = sum_j |u_j(k)|^2`. The decimated transform subsamples the
//! scale-`j` coefficients at stride `n / 2^(j+1)`; twice-critical
//! sampling keeps alias images outside each band, so the undecimated and
//! decimated pipelines reconstruct equally well while only the former is
//! shift-equivariant.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::signal::{bin_to_k, ti_convolve, Signal, Spectrum};

/// Threshold below which a multiplier sum counts as degenerate.
const DEGENERATE_TOL: f64 = 1e-14;

/// Ordered family of Fourier multipliers, one per dyadic scale label.
#[derive(Debug, Clone)]
pub struct MultiplierBank {
    scales: Vec<i32>,
    multipliers: Vec<Spectrum>,
    n: usize,
}

impl MultiplierBank {
    pub fn new(scales: Vec<i32>, multipliers: Vec<Spectrum>) -> Result<Self> {
        if scales.is_empty() || scales.len() != multipliers.len() {
            return Err(Error::BadScaleRange);
        }
        for w in scales.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::BadScaleRange);
            }
        }
        let n = multipliers[0].len();
        for m in &multipliers {
            if m.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: m.len(),
                });
            }
        }
        Ok(Self {
            scales,
            multipliers,
            n,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    pub fn scales(&self) -> &[i32] {
        &self.scales
    }

    pub fn multiplier(&self, idx: usize) -> &Spectrum {
        &self.multipliers[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Spectrum)> {
        self.scales.iter().copied().zip(self.multipliers.iter())
    }

    /// Bank with every multiplier scaled by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let multipliers = self
            .multipliers
            .iter()
            .map(|m| {
                Spectrum::new(m.bins().iter().map(|z| z * c).collect())
                    .expect("scaling preserves validity")
            })
            .collect();
        Self {
            scales: self.scales.clone(),
            multipliers,
            n: self.n,
        }
    }

    /// Multiplier sum `S(k) = sum_j |u_j(w_k)|^2` per FFT bin.
    pub fn multiplier_sum(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.n];
        for m in &self.multipliers {
            for (slot, c) in s.iter_mut().zip(m.bins()) {
                *slot += c.norm_sqr();
            }
        }
        s
    }

    fn check_labels(&self, other_scales: &[i32]) -> Result<()> {
        if self.scales != other_scales {
            return Err(Error::LabelMismatch);
        }
        Ok(())
    }
}

/// One analysis coefficient signal per scale of a companion bank.
#[derive(Debug, Clone)]
pub struct CoefficientFamily {
    scales: Vec<i32>,
    signals: Vec<Signal>,
}

impl CoefficientFamily {
    pub fn new(scales: Vec<i32>, signals: Vec<Signal>) -> Result<Self> {
        if scales.len() != signals.len() {
            return Err(Error::LabelMismatch);
        }
        Ok(Self { scales, signals })
    }

    pub fn scales(&self) -> &[i32] {
        &self.scales
    }

    pub fn signal(&self, idx: usize) -> &Signal {
        &self.signals[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Signal)> {
        self.scales.iter().copied().zip(self.signals.iter())
    }

    /// Applies `f` to every coefficient signal.
    pub fn map(&self, mut f: impl FnMut(i32, &Signal) -> Signal) -> Self {
        let signals = self
            .scales
            .iter()
            .zip(&self.signals)
            .map(|(&j, s)| f(j, s))
            .collect();
        Self {
            scales: self.scales.clone(),
            signals,
        }
    }

    /// Norm on `l2(Lambda, L^2)`: `sqrt(sum_j ||c_j||^2)`.
    pub fn norm(&self) -> f64 {
        libm::sqrt(
            self.signals
                .iter()
                .map(|s| {
                    let v = s.l2_norm();
                    v * v
                })
                .sum::<f64>(),
        )
    }

    /// Family inner product `sum_j <c_j, d_j>`.
    pub fn inner(&self, other: &CoefficientFamily) -> Result<f64> {
        if self.scales != other.scales {
            return Err(Error::LabelMismatch);
        }
        let mut acc = 0.0;
        for (a, b) in self.signals.iter().zip(&other.signals) {
            acc += a.inner(b)?;
        }
        Ok(acc)
    }
}

/// Optimal constants of the frame inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub a: f64,
    pub b: f64,
}

/// Scale-wise subsampled analysis coefficients.
#[derive(Debug, Clone)]
pub struct DecimatedCoefficients {
    scales: Vec<i32>,
    strides: Vec<usize>,
    seqs: Vec<Vec<f64>>,
}

impl DecimatedCoefficients {
    pub fn scales(&self) -> &[i32] {
        &self.scales
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn seq(&self, idx: usize) -> &[f64] {
        &self.seqs[idx]
    }

    /// Applies `f` to every coefficient sequence.
    pub fn map(&self, mut f: impl FnMut(i32, &[f64]) -> Vec<f64>) -> Self {
        let seqs = self
            .scales
            .iter()
            .zip(&self.seqs)
            .map(|(&j, s)| f(j, s))
            .collect();
        Self {
            scales: self.scales.clone(),
            strides: self.strides.clone(),
            seqs,
        }
    }

    #[cfg(test)]
    fn truncate_seq(&mut self, idx: usize) {
        self.seqs[idx].pop();
    }
}

/// Analysis operator: `c_j = u_j^* * f` for every scale.
pub fn analysis(bank: &MultiplierBank, f: &Signal) -> Result<CoefficientFamily> {
    if bank.n() != f.len() {
        return Err(Error::SizeMismatch {
            expected: bank.n(),
            got: f.len(),
        });
    }
    let signals = bank
        .multipliers
        .iter()
        .map(|m| ti_convolve(m, f, true))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientFamily {
        scales: bank.scales.clone(),
        signals,
    })
}

/// Synthesis operator: `sum_j u_j * c_j`.
pub fn synthesis(bank: &MultiplierBank, c: &CoefficientFamily) -> Result<Signal> {
    bank.check_labels(&c.scales)?;
    let mut acc = Signal::zeros(bank.n())?;
    for (m, s) in bank.multipliers.iter().zip(&c.signals) {
        acc = acc.add(&ti_convolve(m, s, false)?)?;
    }
    Ok(acc)
}

/// Optimal frame bounds `A = min S(k)`, `B = max S(k)` over admitted
/// frequencies (`k = 0` skipped when `exclude_dc` is set).
pub fn frame_bounds(bank: &MultiplierBank, exclude_dc: bool) -> Result<FrameBounds> {
    let s = bank.multiplier_sum();
    let mut a = f64::INFINITY;
    let mut b: f64 = 0.0;
    for (bin, &v) in s.iter().enumerate() {
        if exclude_dc && bin == 0 {
            continue;
        }
        a = a.min(v);
        b = b.max(v);
    }
    if a <= DEGENERATE_TOL {
        return Err(Error::DegenerateFrame { min_sum: a });
    }
    Ok(FrameBounds { a, b })
}

/// Canonical dual bank `w_j = u_j / S` on covered frequencies. The DC
/// bin stays empty whenever the bank leaves it uncovered.
pub fn canonical_dual(bank: &MultiplierBank) -> Result<MultiplierBank> {
    frame_bounds(bank, true)?;
    let s = bank.multiplier_sum();
    let multipliers = bank
        .multipliers
        .iter()
        .map(|m| {
            let bins = m
                .bins()
                .iter()
                .zip(&s)
                .map(|(c, &sum)| {
                    if sum > DEGENERATE_TOL {
                        c / sum
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            Spectrum::new(bins).expect("dual bins stay finite")
        })
        .collect();
    Ok(MultiplierBank {
        scales: bank.scales.clone(),
        multipliers,
        n: bank.n,
    })
}

/// Max over admitted frequencies of `|sum_j w_j(k) conj(u_j(k)) - 1|`,
/// zero exactly when the banks are dual.
pub fn verify_dual(u_bank: &MultiplierBank, w_bank: &MultiplierBank) -> Result<f64> {
    u_bank.check_labels(&w_bank.scales)?;
    if u_bank.n() != w_bank.n() {
        return Err(Error::SizeMismatch {
            expected: u_bank.n(),
            got: w_bank.n(),
        });
    }
    let n = u_bank.n();
    let mut worst: f64 = 0.0;
    for bin in 1..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, w) in u_bank.multipliers.iter().zip(&w_bank.multipliers) {
            acc += w.bins()[bin] * u.bins()[bin].conj();
        }
        worst = worst.max(libm::sqrt((acc - 1.0).norm_sqr()));
    }
    Ok(worst)
}

fn log2(n: usize) -> u32 {
    n.trailing_zeros()
}

/// Ideal band-limited bank: scale `j` is the indicator of the dyadic
/// band `2^(j-1) <= |k| < 2^j`, with the Nyquist magnitude `n/2`
/// assigned to the finest scale. Scales run from `j_min` to `log2(n)-1`;
/// for `j_min > 1` a low-pass multiplier labeled `j_min - 1` covers the
/// remaining frequencies `0 < |k| < 2^(j_min-1)` so the bank stays tight
/// away from DC.
pub fn shannon_bank(n: usize, j_min: u32) -> Result<MultiplierBank> {
    if n < crate::signal::MIN_GRID || !n.is_power_of_two() {
        return Err(Error::BadScaleRange);
    }
    let l = log2(n);
    if j_min < 1 || j_min > l - 1 {
        return Err(Error::BadScaleRange);
    }

    let mut scales = Vec::new();
    let mut multipliers = Vec::new();
    if j_min > 1 {
        let cutoff = 1i64 << (j_min - 1);
        scales.push(j_min as i32 - 1);
        multipliers.push(indicator(n, move |abs_k| abs_k > 0 && abs_k < cutoff));
    }
    for j in j_min..l {
        let lo = 1i64 << (j - 1);
        let hi = 1i64 << j;
        let finest = j == l - 1;
        scales.push(j as i32);
        multipliers.push(indicator(n, move |abs_k| {
            lo <= abs_k && (abs_k < hi || (finest && abs_k == hi))
        }));
    }
    MultiplierBank::new(scales, multipliers)
}

fn indicator(n: usize, pred: impl Fn(i64) -> bool) -> Spectrum {
    Spectrum::from_fn(n, |k| {
        if pred(k.abs()) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("indicator bins are finite")
}

/// Smooth transition polynomial `nu(t) = t^4 (35 - 84t + 70t^2 - 20t^3)`
/// with `nu(0) = 0`, `nu(1) = 1` and `nu(t) + nu(1-t) = 1`.
pub fn meyer_nu(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t)
    }
}

/// Smooth band-limited bank: each octave `2^(j-1) <= |k| < 2^j`
/// crossfades scale `j` into scale `j+1` through `cos/sin(pi/2 nu(t))`,
/// so `sum_j |u_j(k)|^2 = 1` for every `k != 0` and only adjacent scales
/// overlap. The finest scale plateaus at 1 on the top octave and the
/// Nyquist bin.
pub fn meyer_bank(n: usize) -> Result<MultiplierBank> {
    if n < crate::signal::MIN_GRID || !n.is_power_of_two() {
        return Err(Error::BadScaleRange);
    }
    let l = log2(n);
    let half = core::f64::consts::FRAC_PI_2;
    let n_scales = (l - 1) as usize;
    let mut values = vec![vec![0.0f64; n]; n_scales];

    for bin in 0..n {
        let abs_k = bin_to_k(bin, n).abs();
        if abs_k == 0 {
            continue;
        }
        if abs_k == (n / 2) as i64 {
            values[n_scales - 1][bin] = 1.0;
            continue;
        }
        let oct = 63 - (abs_k as u64).leading_zeros() as i64; // floor(log2 |k|)
        let j = (oct + 1) as usize; // octave [2^(j-1), 2^j)
        let lo = 1i64 << (j - 1);
        let t = (abs_k - lo) as f64 / lo as f64;
        if j == n_scales {
            values[j - 1][bin] = 1.0;
        } else {
            values[j - 1][bin] = libm::cos(half * meyer_nu(t));
            values[j][bin] = libm::sin(half * meyer_nu(t));
        }
    }

    let scales = (1..l).map(|j| j as i32).collect();
    let multipliers = values
        .into_iter()
        .map(|v| {
            Spectrum::new(v.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .expect("meyer bins are finite")
        })
        .collect();
    MultiplierBank::new(scales, multipliers)
}

fn dyadic_stride(n: usize, scale: i32) -> Result<usize> {
    let l = log2(n) as i64;
    let j = scale as i64;
    if j < 0 || j + 1 > l {
        return Err(Error::NonDyadicBank);
    }
    Ok(n >> (j + 1) as usize)
}

/// Samples the scale-`j` analysis coefficients at stride `n / 2^(j+1)`
/// (twice-critical; the finest scale keeps every sample).
pub fn decimated_analysis(bank: &MultiplierBank, f: &Signal) -> Result<DecimatedCoefficients> {
    let strides = bank
        .scales
        .iter()
        .map(|&j| dyadic_stride(bank.n(), j))
        .collect::<Result<Vec<_>>>()?;
    let full = analysis(bank, f)?;
    let seqs = full
        .signals
        .iter()
        .zip(&strides)
        .map(|(c, &s)| c.values().iter().step_by(s).copied().collect())
        .collect();
    Ok(DecimatedCoefficients {
        scales: bank.scales.clone(),
        strides,
        seqs,
    })
}

/// Left inverse of [`decimated_analysis`]: zero-insertion upsampling,
/// scaling by the stride, and convolution against the canonical dual
/// restricted to each scale's spectral support (which rejects the alias
/// images), summed over scales.
pub fn decimated_synthesis(bank: &MultiplierBank, d: &DecimatedCoefficients) -> Result<Signal> {
    let dual = canonical_dual(bank)?;
    decimated_synthesis_with_dual(bank, &dual, d)
}

/// [`decimated_synthesis`] against an explicit dual bank; `bank` still
/// supplies the strides and the alias-rejecting support masks.
pub fn decimated_synthesis_with_dual(
    bank: &MultiplierBank,
    dual: &MultiplierBank,
    d: &DecimatedCoefficients,
) -> Result<Signal> {
    bank.check_labels(&d.scales)?;
    bank.check_labels(dual.scales())?;
    let n = bank.n();
    for (idx, &j) in d.scales.iter().enumerate() {
        let stride = dyadic_stride(n, j)?;
        if d.strides[idx] != stride || d.seqs[idx].len() != n / stride {
            return Err(Error::StrideMismatch);
        }
    }

    let mut out_bins = vec![Complex64::new(0.0, 0.0); n];
    for (idx, seq) in d.seqs.iter().enumerate() {
        let stride = d.strides[idx];
        let mut upsampled = vec![0.0; n];
        for (m, &v) in seq.iter().enumerate() {
            upsampled[m * stride] = v;
        }
        let mut bins = fft::forward_real(&upsampled);
        let support = bank.multipliers[idx].bins();
        let w = dual.multipliers[idx].bins();
        for (bin, slot) in bins.iter_mut().enumerate() {
            if support[bin].norm_sqr() > 0.0 {
                *slot *= stride as f64 * w[bin];
            } else {
                *slot = Complex64::new(0.0, 0.0);
            }
        }
        for (acc, v) in out_bins.iter_mut().zip(&bins) {
            *acc += v;
        }
    }
    let inv = fft::inverse(&out_bins);
    Signal::new(inv.iter().map(|c| c.re).collect())
}
