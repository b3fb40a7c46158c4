//! Uniform symmetric grids and the integral-scaled discrete Fourier transform.
//!
//! The transform pair follows the non-unitary convention
//! `u^(xi) = integral u(x) exp(-i x xi) dx` and
//! `u(x) = (1/2pi) integral u^(xi) exp(i x xi) dxi`,
//! discretized by left-endpoint Riemann sums on x_n = -L + n h and
//! xi_k = pi k / L.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    half_width: f64,
    count: usize,
}

impl Grid {
    pub fn new(half_width: f64, count: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("half-width {half_width}")));
        }
        if count < 8 || !count.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "count {count} must be a power of two, at least 8"
            )));
        }
        Ok(Grid { half_width, count })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.count as f64
    }

    /// Spatial node x_n = -L + n h.
    pub fn node(&self, n: usize) -> f64 {
        debug_assert!(n < self.count);
        (n as f64 - self.count as f64 / 2.0) * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |n| self.node(n))
    }

    /// Frequency spacing pi / L.
    pub fn freq_spacing(&self) -> f64 {
        std::f64::consts::PI / self.half_width
    }

    /// Frequency xi_k = pi k / L with k = i - N/2 for storage index i.
    pub fn freq(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        (i as f64 - self.count as f64 / 2.0) * self.freq_spacing()
    }

    pub fn freqs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.freq(i))
    }

    /// Nyquist frequency pi / h.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.spacing()
    }

    /// Index of the node closest to x, clamped to the grid.
    pub fn nearest_node(&self, x: f64) -> usize {
        let raw = (x / self.spacing() + self.count as f64 / 2.0).round();
        raw.clamp(0.0, (self.count - 1) as f64) as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub grid: Grid,
    pub values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::InvalidGrid(format!(
                "{} values on a {}-node grid",
                values.len(),
                grid.count()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn zero(grid: Grid) -> Self {
        SampledFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.count()],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().map(f).collect();
        SampledFunction { grid, values }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// Indicator of [a, b], with value 1/2 at nodes landing exactly on a or b.
    pub fn indicator(grid: Grid, a: f64, b: f64) -> Self {
        let eps = grid.spacing() * 1e-12;
        Self::from_real_fn(grid, |x| {
            if (x - a).abs() <= eps || (x - b).abs() <= eps {
                0.5
            } else if x > a && x < b {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Plain (unweighted) discrete L2 norm, (h * sum |f|^2)^(1/2).
    pub fn l2_norm(&self) -> f64 {
        let h = self.grid.spacing();
        (h * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub grid: Grid,
    pub values: Vec<Complex64>,
}

impl Spectrum {
    /// Frequency attached to storage index i.
    pub fn freq(&self, i: usize) -> f64 {
        self.grid.freq(i)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Reinterpret the spectrum as samples on the frequency grid.
    ///
    /// The frequencies xi_k = -pi/h + k*dxi themselves form a valid uniform
    /// symmetric grid (half-width pi/h, N nodes), so a spectrum can be fed
    /// back into any operation expecting spatial samples.
    pub fn into_sampled(self) -> SampledFunction {
        let freq_grid = Grid::new(self.grid.nyquist(), self.grid.count())
            .expect("frequency grid inherits validity");
        SampledFunction {
            grid: freq_grid,
            values: self.values,
        }
    }
}

fn fft_in_place(values: &mut [Complex64], forward: bool) {
    let mut planner = FftPlanner::new();
    let fft = if forward {
        planner.plan_fft_forward(values.len())
    } else {
        planner.plan_fft_inverse(values.len())
    };
    fft.process(values);
}

/// value[k] = h * sum_n f(x_n) exp(-i x_n xi_k), evaluated via FFT.
///
/// With x_n = (n - N/2) h and xi_k = (k - N/2) dxi the phase splits as
/// exp(-i x_n xi_k) = (-1)^n (-1)^k exp(-2 pi i n k / N) up to the constant
/// exp(-i pi N/2) = 1 (N/2 is even for the supported N); so the spectrum is
/// h (-1)^k DFT[(-1)^n f_n][k] with k the centered storage index.
pub fn forward_transform(f: &SampledFunction) -> Spectrum {
    let n = f.grid.count();
    let h = f.grid.spacing();
    let mut buf: Vec<Complex64> = (0..n)
        .map(|j| if j % 2 == 0 { f.values[j] } else { -f.values[j] })
        .collect();
    fft_in_place(&mut buf, true);
    let values = (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            buf[i] * h * sign
        })
        .collect();
    Spectrum {
        grid: f.grid,
        values,
    }
}

/// f(x_n) = (1/2pi) * dxi * sum_k value[k] exp(i x_n xi_k); exact inverse of
/// `forward_transform` up to round-off.
pub fn inverse_transform(s: &Spectrum) -> SampledFunction {
    let n = s.grid.count();
    let h = s.grid.spacing();
    let mut buf: Vec<Complex64> = (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            s.values[i] * sign
        })
        .collect();
    fft_in_place(&mut buf, false);
    let scale = 1.0 / (n as f64 * h);
    let values = (0..n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            buf[j] * scale * sign
        })
        .collect();
    SampledFunction {
        grid: s.grid,
        values,
    }
}

pub struct Convolution {
    pub result: SampledFunction,
    /// Set when the combined numerical supports exceed half the padded
    /// window, i.e. when periodic wrap-around may pollute the result.
    pub support_warning: bool,
}

/// Support radius in nodes beyond which |f| stays below a relative floor.
fn support_extent(f: &SampledFunction) -> (usize, usize) {
    let floor = f.max_abs() * 1e-13;
    let mut lo = f.grid.count() / 2;
    let mut hi = f.grid.count() / 2;
    for (j, v) in f.values.iter().enumerate() {
        if v.norm() > floor {
            lo = lo.min(j);
            hi = hi.max(j);
        }
    }
    (lo, hi)
}

/// (f * g)(x_n) ~ integral f(y) g(x_n - y) dy via spectral multiplication on
/// a grid zero-padded to 2N.
pub fn convolve(f: &SampledFunction, g: &SampledFunction) -> Result<Convolution> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    let n = f.grid.count();
    let big = Grid::new(2.0 * f.grid.half_width(), 2 * n)?;
    let embed = |src: &SampledFunction| {
        let mut out = SampledFunction::zero(big);
        for j in 0..n {
            out.values[j + n / 2] = src.values[j];
        }
        out
    };
    let fp = forward_transform(&embed(f));
    let gp = forward_transform(&embed(g));
    let product = Spectrum {
        grid: big,
        values: fp
            .values
            .iter()
            .zip(&gp.values)
            .map(|(a, b)| a * b)
            .collect(),
    };
    let conv_big = inverse_transform(&product);
    let result = SampledFunction {
        grid: f.grid,
        values: conv_big.values[n / 2..n / 2 + n].to_vec(),
    };
    let (flo, fhi) = support_extent(f);
    let (glo, ghi) = support_extent(g);
    let width = (fhi - flo) + (ghi - glo);
    Ok(Convolution {
        result,
        support_warning: width > n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_function(grid: Grid, seed: u64) -> SampledFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SampledFunction {
            grid,
            values: (0..grid.count())
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect(),
        }
    }

    /// O(N^2) reference for the forward transform.
    fn naive_forward(f: &SampledFunction) -> Vec<Complex64> {
        let h = f.grid.spacing();
        f.grid
            .freqs()
            .map(|xi| {
                h * f
                    .grid
                    .nodes()
                    .zip(&f.values)
                    .map(|(x, v)| v * Complex64::from_polar(1.0, -x * xi))
                    .sum::<Complex64>()
            })
            .collect()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(8.0, 64).is_ok());
        assert!(Grid::new(8.0, 48).is_err());
        assert!(Grid::new(8.0, 4).is_err());
        assert!(Grid::new(0.0, 64).is_err());
        assert!(Grid::new(f64::NAN, 64).is_err());
    }

    #[test]
    fn grid_geometry() {
        let g = Grid::new(8.0, 64).unwrap();
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(g.node(0), -8.0);
        assert_eq!(g.node(32), 0.0);
        assert_abs_diff_eq!(g.freq(32), 0.0);
        assert_abs_diff_eq!(g.freq_spacing(), std::f64::consts::PI / 8.0);
        assert_eq!(g.nearest_node(0.1), 32);
        assert_eq!(g.nearest_node(-100.0), 0);
    }

    #[test]
    fn forward_matches_naive_dft() {
        let grid = Grid::new(4.0, 16).unwrap();
        let f = random_function(grid, 1);
        let fast = forward_transform(&f);
        let slow = naive_forward(&f);
        for (a, b) in fast.values.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let grid = Grid::new(6.0, 128).unwrap();
        let f = random_function(grid, 2);
        let back = inverse_transform(&forward_transform(&f));
        for (a, b) in f.values.iter().zip(&back.values) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn gaussian_transform_pair() {
        // F exp(-x^2/2) = sqrt(2 pi) exp(-xi^2/2)
        let grid = Grid::new(20.0, 1024).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp());
        let s = forward_transform(&f);
        let c = (2.0 * std::f64::consts::PI).sqrt();
        for (i, xi) in grid.freqs().enumerate() {
            if xi.abs() <= 10.0 {
                let expected = c * (-xi * xi / 2.0).exp();
                assert!((s.values[i].re - expected).abs() < 1e-8, "xi={xi}");
                assert!(s.values[i].im.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn indicator_transform_is_sinc() {
        // F chi_[-1,1] = 2 sin(xi)/xi; endpoint half-weights make the sum
        // trapezoidal, so the error is O(h^2)
        let grid = Grid::new(16.0, 4096).unwrap();
        let f = SampledFunction::indicator(grid, -1.0, 1.0);
        let s = forward_transform(&f);
        for (i, xi) in grid.freqs().enumerate() {
            if xi.abs() > 1e-9 && xi.abs() <= 20.0 {
                let expected = 2.0 * xi.sin() / xi;
                assert!((s.values[i].re - expected).abs() < 1e-3, "xi={xi}");
            }
        }
    }

    #[test]
    fn plancherel_identity_is_exact() {
        let grid = Grid::new(5.0, 64).unwrap();
        let f = random_function(grid, 3);
        let s = forward_transform(&f);
        let space_energy: f64 = grid.spacing() * f.values.iter().map(|v| v.norm_sqr()).sum::<f64>();
        let freq_energy: f64 = grid.freq_spacing() / (2.0 * std::f64::consts::PI)
            * s.values.iter().map(|v| v.norm_sqr()).sum::<f64>();
        assert!((space_energy - freq_energy).abs() < 1e-12 * space_energy);
    }

    #[test]
    fn convolution_of_indicators_is_triangle() {
        // h = 2/63 puts +-1 midway between nodes: the midpoint rule is then
        // exact for indicator integrands
        let n = 512usize;
        let grid = Grid::new(n as f64 / 63.0, n).unwrap();
        let f = SampledFunction::indicator(grid, -1.0, 1.0);
        let conv = convolve(&f, &f).unwrap();
        assert!(!conv.support_warning);
        for (x, v) in grid.nodes().zip(&conv.result.values) {
            let expected = (2.0 - x.abs()).max(0.0);
            assert!((v.re - expected).abs() < 1e-6, "x={x}: {} vs {expected}", v.re);
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn convolution_matches_double_sum() {
        let grid = Grid::new(8.0, 128).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-x * x).exp());
        let g = SampledFunction::from_real_fn(grid, |x| (-(x - 1.0) * (x - 1.0) * 2.0).exp());
        let conv = convolve(&f, &g).unwrap();
        let h = grid.spacing();
        for probe in [0usize, 17, 40, 64, 77, 100, 127] {
            let x = grid.node(probe);
            let direct: Complex64 = grid
                .nodes()
                .zip(&f.values)
                .map(|(y, fv)| {
                    let diff = x - y;
                    // g sampled at x - y when that point is on the grid
                    let idx = ((diff - grid.node(0)) / h).round();
                    if (0.0..grid.count() as f64).contains(&idx) {
                        fv * g.values[idx as usize]
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .sum::<Complex64>()
                * h;
            assert!((conv.result.values[probe] - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn convolution_wrap_warning_fires() {
        let grid = Grid::new(4.0, 64).unwrap();
        let wide = SampledFunction::from_real_fn(grid, |_| 1.0);
        let conv = convolve(&wide, &wide).unwrap();
        assert!(conv.support_warning);
    }

    #[test]
    fn spectrum_reinterprets_as_frequency_samples() {
        let grid = Grid::new(8.0, 64).unwrap();
        let s = forward_transform(&random_function(grid, 4));
        let freq_grid_half_width = grid.nyquist();
        let g = s.into_sampled();
        assert_eq!(g.grid.half_width(), freq_grid_half_width);
        assert_eq!(g.grid.count(), 64);
        assert_abs_diff_eq!(g.grid.spacing(), grid.freq_spacing());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn transform_is_linear(seed_a in 0u64..1000, seed_b in 0u64..1000, c in -5.0f64..5.0) {
            let grid = Grid::new(4.0, 32).unwrap();
            let f = random_function(grid, seed_a);
            let g = random_function(grid, seed_b);
            let combo = SampledFunction {
                grid,
                values: f.values.iter().zip(&g.values).map(|(a, b)| a + c * b).collect(),
            };
            let lhs = forward_transform(&combo);
            let ff = forward_transform(&f);
            let gg = forward_transform(&g);
            for i in 0..grid.count() {
                let rhs = ff.values[i] + c * gg.values[i];
                prop_assert!((lhs.values[i] - rhs).norm() < 1e-10);
            }
        }

        #[test]
        fn modulation_shifts_spectrum_by_whole_bins(seed in 0u64..1000, bins in 1usize..8) {
            let grid = Grid::new(4.0, 64).unwrap();
            let f = random_function(grid, seed);
            let xi0 = bins as f64 * grid.freq_spacing();
            let modulated = SampledFunction {
                grid,
                values: grid
                    .nodes()
                    .zip(&f.values)
                    .map(|(x, v)| v * Complex64::from_polar(1.0, x * xi0))
                    .collect(),
            };
            let base = forward_transform(&f);
            let shifted = forward_transform(&modulated);
            for i in bins..grid.count() {
                prop_assert!((shifted.values[i] - base.values[i - bins]).norm() < 1e-10);
            }
        }

        #[test]
        fn convolution_theorem(seed_a in 0u64..1000, seed_b in 0u64..1000) {
            // on the padded grid the transform of the convolution equals the
            // product of transforms; checked through compactly supported data
            let grid = Grid::new(8.0, 64).unwrap();
            let mut f = random_function(grid, seed_a);
            let mut g = random_function(grid, seed_b);
            for (x, v) in grid.nodes().zip(f.values.iter_mut()) {
                if x.abs() > 2.0 { *v = Complex64::new(0.0, 0.0); }
            }
            for (x, v) in grid.nodes().zip(g.values.iter_mut()) {
                if x.abs() > 2.0 { *v = Complex64::new(0.0, 0.0); }
            }
            let conv = convolve(&f, &g).unwrap();
            prop_assert!(!conv.support_warning);
            let cf = forward_transform(&conv.result);
            let ff = forward_transform(&f);
            let gg = forward_transform(&g);
            for i in 0..grid.count() {
                // spectra of the compactly supported factors multiply
                prop_assert!((cf.values[i] - ff.values[i] * gg.values[i]).norm() < 1e-8);
            }
        }
    }
}
