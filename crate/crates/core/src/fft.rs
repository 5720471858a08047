//! Minimal iterative radix-2 FFT for the spectral transform path.
//!
//! Power-of-two lengths only; the caller zero-pads. Twiddles are computed
//! per stage by direct trig, which keeps accumulated error near machine
//! precision for the sizes used here.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::fmath as fm;

/// In-place forward transform, sign convention `exp(-i 2 pi k n / N)`.
pub(crate) fn forward(data: &mut [Complex64]) {
    transform(data, -1.0);
}

/// In-place inverse transform including the `1/N` factor.
pub(crate) fn inverse(data: &mut [Complex64]) {
    transform(data, 1.0);
    let scale = 1.0 / data.len() as f64;
    for z in data.iter_mut() {
        *z *= scale;
    }
}

fn transform(data: &mut [Complex64], sign: f64) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * TAU / len as f64;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| {
                let a = step * k as f64;
                Complex64::new(fm::cos(a), fm::sin(a))
            })
            .collect();
        for chunk in data.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((x, y), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *y * *w;
                *y = *x - t;
                *x += t;
            }
        }
        len <<= 1;
    }
}
