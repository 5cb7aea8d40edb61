//! Discrete Fourier transforms of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 transform. Other lengths go
//! through Bluestein's chirp-z algorithm on a power-of-two buffer of length at
//! least `2n - 1`.
//!
//! Neither direction is normalized: `inverse(forward(x)) = n·x`. This is the
//! `fft(x, inverse = TRUE)` convention used by the circulant construction.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    /// `exp(-2πik/len)` for `k < len/2`.
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        debug_assert!(len.is_power_of_two());
        let twiddles = (0..len / 2)
            .map(|k| unit(-2.0 * PI * k as f64 / len as f64))
            .collect();
        Self { len, twiddles }
    }

    fn process(&self, data: &mut [Complex64], dir: Direction) {
        let n = self.len;
        debug_assert_eq!(data.len(), n);
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                data.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let step = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let mut w = self.twiddles[k * step];
                    if dir == Direction::Inverse {
                        w = w.conj();
                    }
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    inner: Radix2,
    /// `exp(-iπk²/len)`, the forward chirp.
    chirp: Vec<Complex64>,
    /// Transformed conjugate chirp, padded, for the forward direction.
    kernel_fwd: Vec<Complex64>,
    /// Same for the inverse direction.
    kernel_inv: Vec<Complex64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let m = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(m);
        let modulus = 2 * len as u128;
        let chirp: Vec<Complex64> = (0..len)
            .map(|k| {
                // k² mod 2n keeps the angle small and exact
                let k2 = ((k as u128 * k as u128) % modulus) as f64;
                unit(-PI * k2 / len as f64)
            })
            .collect();
        let kernel = |dir: Direction| {
            let mut b = vec![Complex64::new(0.0, 0.0); m];
            for (k, c) in chirp.iter().enumerate() {
                let c = if dir == Direction::Forward { c.conj() } else { *c };
                b[k] = c;
                if k > 0 {
                    b[m - k] = c;
                }
            }
            inner.process(&mut b, Direction::Forward);
            b
        };
        let kernel_fwd = kernel(Direction::Forward);
        let kernel_inv = kernel(Direction::Inverse);
        Self {
            len,
            inner,
            chirp,
            kernel_fwd,
            kernel_inv,
        }
    }

    fn process(&self, data: &mut [Complex64], dir: Direction) {
        let m = self.inner.len;
        let chirp = |k: usize| {
            let c = self.chirp[k];
            if dir == Direction::Forward {
                c
            } else {
                c.conj()
            }
        };
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for (k, x) in data.iter().enumerate() {
            buf[k] = *x * chirp(k);
        }
        self.inner.process(&mut buf, Direction::Forward);
        let kernel = match dir {
            Direction::Forward => &self.kernel_fwd,
            Direction::Inverse => &self.kernel_inv,
        };
        for (b, k) in buf.iter_mut().zip(kernel) {
            *b *= k;
        }
        self.inner.process(&mut buf, Direction::Inverse);
        let scale = 1.0 / m as f64;
        for (k, x) in data.iter_mut().enumerate().take(self.len) {
            *x = buf[k] * chirp(k) * scale;
        }
    }
}

#[derive(Debug, Clone)]
enum Algorithm {
    Radix2(Radix2),
    Bluestein(Bluestein),
}

/// Precomputed transform of one length, reusable across calls.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    algorithm: Algorithm,
}

impl FftPlan {
    /// Plans a transform of length `len`.
    pub fn new(len: usize) -> Self {
        let algorithm = if len <= 1 || len.is_power_of_two() {
            Algorithm::Radix2(Radix2::new(len.max(1)))
        } else {
            Algorithm::Bluestein(Bluestein::new(len))
        };
        Self { len, algorithm }
    }

    /// Transform length.
    pub fn len(&self) -> usize {
        self.len
    }

    /// `true` for the zero-length plan.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place `X_k = Σ_j x_j exp(-2πijk/n)`.
    ///
    /// Panics if `data.len()` differs from the planned length.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.process(data, Direction::Forward)
    }

    /// In-place `x_j = Σ_k X_k exp(+2πijk/n)`, without the `1/n` factor.
    ///
    /// Panics if `data.len()` differs from the planned length.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.process(data, Direction::Inverse)
    }

    fn process(&self, data: &mut [Complex64], dir: Direction) {
        assert_eq!(data.len(), self.len, "buffer length does not match plan");
        if self.len <= 1 {
            return;
        }
        match &self.algorithm {
            Algorithm::Radix2(r) => r.process(data, dir),
            Algorithm::Bluestein(b) => b.process(data, dir),
        }
    }
}

/// Forward transform of a real slice.
pub fn forward_real(x: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlan::new(buf.len()).forward(&mut buf);
    buf
}

/// Unnormalized inverse transform of a real slice.
pub fn inverse_real(x: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlan::new(buf.len()).inverse(&mut buf);
    buf
}

fn unit(angle: f64) -> Complex64 {
    Complex64::new(libm::cos(angle), libm::sin(angle))
}
