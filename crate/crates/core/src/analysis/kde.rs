use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default number of evaluation points.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// Grid extends this many bandwidths past the data on both sides.
const GRID_EXTENSION: f64 = 3.0;

/// Kernel contributions beyond this many bandwidths are below `e^-32` and dropped.
const KERNEL_CUTOFF: f64 = 8.0;

/// Gaussian kernel density estimate on an equispaced grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelDensity {
    /// Evaluation points.
    pub grid: Vec<f64>,
    /// Density at each grid point.
    pub values: Vec<f64>,
    /// Kernel standard deviation.
    pub bandwidth: f64,
}

impl KernelDensity {
    /// Trapezoid-rule integral of the density over the grid.
    pub fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1]))
            .sum()
    }

    /// Grid locations of the modes, left to right.
    ///
    /// A local maximum counts as a mode when its topographic prominence is at
    /// least `min_prominence` times the global maximum, which filters the
    /// ripples a small bandwidth leaves on flat stretches.
    pub fn modes(&self, min_prominence: f64) -> Vec<f64> {
        let v = &self.values;
        let n = v.len();
        let peak = v.iter().copied().fold(0.0, f64::max);
        if n == 0 || peak <= 0.0 {
            return Vec::new();
        }
        let threshold = min_prominence * peak;
        let mut modes = Vec::new();
        let mut i = 0;
        while i < n {
            // plateau [i, j]
            let mut j = i;
            while j + 1 < n && v[j + 1] == v[i] {
                j += 1;
            }
            let left_lower = i == 0 || v[i - 1] < v[i];
            let right_lower = j + 1 == n || v[j + 1] < v[i];
            if left_lower && right_lower && prominence(v, i, j) >= threshold {
                modes.push(self.grid[(i + j) / 2]);
            }
            i = j + 1;
        }
        modes
    }
}

/// Height of the plateau `v[i..=j]` above the higher of the two saddles that
/// separate it from taller terrain (or from the grid edges).
fn prominence(v: &[f64], i: usize, j: usize) -> f64 {
    let h = v[i];
    let mut left_min = h;
    let mut k = i;
    while k > 0 && v[k - 1] <= h {
        k -= 1;
        left_min = left_min.min(v[k]);
    }
    let left_saddle = if k == 0 { left_min.min(v[0]) } else { left_min };
    let left_bounded = k > 0;

    let mut right_min = h;
    let mut k = j;
    while k + 1 < v.len() && v[k + 1] <= h {
        k += 1;
        right_min = right_min.min(v[k]);
    }
    let right_bounded = k + 1 < v.len();

    let saddle = match (left_bounded, right_bounded) {
        (true, true) => left_saddle.max(right_min),
        (true, false) => left_saddle,
        (false, true) => right_min,
        (false, false) => left_saddle.min(right_min),
    };
    h - saddle
}

/// Gaussian kernel density of `data` with standard deviation `bandwidth`,
/// on `grid_points` equispaced points spanning
/// `[min − 3·bandwidth, max + 3·bandwidth]`.
pub fn kde(data: &[f64], bandwidth: f64, grid_points: usize) -> Result<KernelDensity> {
    if data.is_empty() {
        return Err(Error::TooShort { needed: 1, found: 0 });
    }
    if !(bandwidth.is_finite() && bandwidth > 0.0) {
        return Err(Error::invalid("bandwidth", "must be finite and > 0"));
    }
    if grid_points < 2 {
        return Err(Error::invalid("grid_points", "need at least 2 grid points"));
    }
    if let Some(i) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let lo = sorted[0] - GRID_EXTENSION * bandwidth;
    let hi = sorted[sorted.len() - 1] + GRID_EXTENSION * bandwidth;
    let step = (hi - lo) / (grid_points - 1) as f64;
    let norm = 1.0 / (sorted.len() as f64 * bandwidth * libm::sqrt(2.0 * core::f64::consts::PI));
    let reach = KERNEL_CUTOFF * bandwidth;

    let grid: Vec<f64> = (0..grid_points).map(|i| lo + i as f64 * step).collect();
    let values = grid
        .iter()
        .map(|&x| {
            let start = sorted.partition_point(|&d| d < x - reach);
            let end = sorted.partition_point(|&d| d <= x + reach);
            let sum: f64 = sorted[start..end]
                .iter()
                .map(|&d| {
                    let u = (x - d) / bandwidth;
                    libm::exp(-0.5 * u * u)
                })
                .sum();
            sum * norm
        })
        .collect();
    Ok(KernelDensity {
        grid,
        values,
        bandwidth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_point_bump() {
        let k = kde(&[0.5], 0.01, 513).unwrap();
        let peak = 1.0 / (0.01 * (2.0 * core::f64::consts::PI).sqrt());
        assert!((k.values[256] - peak).abs() < 1e-9);
        assert!((k.grid[256] - 0.5).abs() < 1e-12);
        assert!((peak - 39.894_228_040_143_27).abs() < 1e-9);
        assert_eq!(k.modes(0.1), vec![k.grid[256]]);
        assert!((k.grid[0] - 0.47).abs() < 1e-12 && (k.grid[512] - 0.53).abs() < 1e-12);
    }

    #[test]
    fn symmetric_data() {
        let k = kde(&[0.2, 0.8], 0.01, 512).unwrap();
        let n = k.values.len();
        for i in 0..n {
            assert!((k.values[i] - k.values[n - 1 - i]).abs() < 1e-10);
        }
        assert_eq!(k.modes(0.1).len(), 2);
    }

    #[test]
    fn integrates_to_one() {
        let data: Vec<f64> = (0..1000).map(|i| ((i * 7919) % 1000) as f64 / 1000.0).collect();
        let k = kde(&data, 0.01, DEFAULT_GRID_POINTS).unwrap();
        assert!((k.integral() - 1.0).abs() < 0.01, "{}", k.integral());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(kde(&[], 0.01, 512).is_err());
        assert!(kde(&[1.0], 0.0, 512).is_err());
        assert!(kde(&[1.0], 0.01, 1).is_err());
        assert_eq!(kde(&[1.0, f64::NAN], 0.01, 512), Err(Error::NonFinite(1)));
    }

    #[test]
    fn ripple_is_not_a_mode() {
        let k = KernelDensity {
            grid: (0..7).map(|i| i as f64).collect(),
            values: vec![0.0, 5.0, 4.9, 4.95, 4.9, 1.0, 0.0],
            bandwidth: 1.0,
        };
        assert_eq!(k.modes(0.1), vec![1.0]);
        assert_eq!(k.modes(0.0).len(), 2);
    }
}
