//! Radix-2 complex FFT for power-of-two lengths.
//!
//! The grid invariant (sample counts are powers of two) makes the plain
//! iterative Cooley-Tukey butterfly sufficient for every transform in this
//! crate. No normalization is applied here; callers own the scaling.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// In-place transform with kernel `e^{sign * 2*pi*i*jk/n}`; `sign = -1`
/// is the forward DFT, `sign = +1` the unnormalized inverse.
pub fn fft_in_place(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }

    bit_reverse_permute(buf);

    // Twiddles for the full circle, one table shared by all stages.
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| {
            let phase = sign * 2.0 * core::f64::consts::PI * (k as f64) / (n as f64);
            Complex64::new(libm::cos(phase), libm::sin(phase))
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for off in 0..len / 2 {
                let w = twiddles[off * stride];
                let a = buf[start + off];
                let b = buf[start + off + len / 2] * w;
                buf[start + off] = a + b;
                buf[start + off + len / 2] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bit_reverse_permute(buf: &mut [Complex64]) {
    let n = buf.len();
    let shift = usize::BITS - n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits().wrapping_shr(shift);
        if j > i {
            buf.swap(i, j);
        }
    }
}

/// Forward DFT of real samples, scaled by `1/n`:
/// `out[k] = (1/n) * sum_i x[i] e^{-2*pi*i*jk/n}` in FFT bin order.
pub fn forward_real(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_in_place(&mut buf, -1.0);
    let scale = 1.0 / n as f64;
    for c in buf.iter_mut() {
        *c *= scale;
    }
    buf
}

/// Unnormalized inverse DFT: `out[i] = sum_k c[k] e^{+2*pi*i*jk/n}`.
pub fn inverse(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    fft_in_place(&mut buf, 1.0);
    buf
}

/// Naive `O(n^2)` DFT with the same convention as [`forward_real`].
/// Kept public as an independent reference for tests.
pub fn naive_dft(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &v) in values.iter().enumerate() {
            let phase = -2.0 * core::f64::consts::PI * (k as f64) * (i as f64) / (n as f64);
            acc += Complex64::new(v * libm::cos(phase), v * libm::sin(phase));
        }
        *slot = acc / n as f64;
    }
    out
}
