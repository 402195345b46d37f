//! Radix-2 FFT and the chirp-z transform built on it.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// In-place unnormalized DFT, `X_k = Σ_j x_j e^{∓2πi jk/N}` (minus sign for
/// the forward direction). The length must be a power of two.
pub fn fft_pow2(data: &mut [Complex64], inverse: bool) -> Result<()> {
    let n = data.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid {
            reason: "FFT length must be a power of two",
        });
    }
    if n == 1 {
        return Ok(());
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    // Twiddles for the largest stage; smaller stages stride through them.
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64))
        .collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for chunk in data.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let t = hi[k] * twiddles[k * stride];
                hi[k] = lo[k] - t;
                lo[k] += t;
            }
        }
        len <<= 1;
    }
    Ok(())
}

/// Direct `O(N²)` DFT, `X_k = Σ_j x_j e^{-2πi jk/N}`.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| {
                    let idx = (j * k) % n;
                    v * Complex64::from_polar(1.0, -2.0 * PI * idx as f64 / n as f64)
                })
                .sum()
        })
        .collect()
}

/// Chirp-z transform `X_m = Σ_j x_j e^{-iβ j m}` for `0 ≤ m < m_out`.
///
/// Uses Bluestein's factorization `jm = (j² + m² - (m-j)²)/2` and a
/// power-of-two convolution, so any `β` and output length are allowed.
pub fn chirp_z(x: &[Complex64], m_out: usize, beta: f64) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 || m_out == 0 {
        return vec![Complex64::new(0.0, 0.0); m_out];
    }
    if m_out == n && n.is_power_of_two() {
        let turns = beta * n as f64 / (2.0 * PI);
        for (target, inverse) in [(1.0, false), (-1.0, true)] {
            if (turns - target).abs() < 1e-14 {
                let mut out = x.to_vec();
                fft_pow2(&mut out, inverse).expect("power-of-two length");
                return out;
            }
        }
    }
    let chirp = |k: usize| {
        let kf = k as f64;
        Complex64::from_polar(1.0, 0.5 * beta * kf * kf)
    };
    let size = (n + m_out - 1).next_power_of_two();
    let mut a = vec![Complex64::new(0.0, 0.0); size];
    for (j, &v) in x.iter().enumerate() {
        a[j] = v * chirp(j).conj();
    }
    let mut b = vec![Complex64::new(0.0, 0.0); size];
    for (k, slot) in b.iter_mut().enumerate().take(m_out) {
        *slot = chirp(k);
    }
    for k in 1..n {
        b[size - k] = chirp(k);
    }
    fft_pow2(&mut a, false).expect("power-of-two length");
    fft_pow2(&mut b, false).expect("power-of-two length");
    for (u, v) in a.iter_mut().zip(&b) {
        *u *= v;
    }
    fft_pow2(&mut a, true).expect("power-of-two length");
    let scale = 1.0 / size as f64;
    (0..m_out).map(|m| a[m] * scale * chirp(m).conj()).collect()
}
