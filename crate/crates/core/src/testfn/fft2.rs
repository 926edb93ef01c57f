//! Two-dimensional FFT helpers on row-major complex arrays.

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// In-place unnormalized 2d transform of an `n0 x n1` row-major array.
pub fn fft2(data: &mut [Complex64], n0: usize, n1: usize, direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let row = planner.plan_fft(n1, direction);
    for r in data.chunks_exact_mut(n1) {
        row.process(r);
    }
    let col = planner.plan_fft(n0, direction);
    let mut buf = vec![Complex64::new(0.0, 0.0); n0];
    for j in 0..n1 {
        for i in 0..n0 {
            buf[i] = data[i * n1 + j];
        }
        col.process(&mut buf);
        for i in 0..n0 {
            data[i * n1 + j] = buf[i];
        }
    }
}

/// Angular frequencies of an `n`-point transform with sample spacing `h`,
/// with the Nyquist entry set to zero (it carries no odd derivative).
pub fn angular_frequencies(n: usize, h: f64) -> Vec<f64> {
    let scale = 2.0 * std::f64::consts::PI / (n as f64 * h);
    (0..n)
        .map(|k| {
            if 2 * k == n {
                0.0
            } else if k < n.div_ceil(2) {
                k as f64 * scale
            } else {
                (k as f64 - n as f64) * scale
            }
        })
        .collect()
}

/// Smallest size `>= n` whose prime factors are 2, 3 and 5.
pub fn fast_len(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut r = m;
        for p in [2, 3, 5] {
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}
