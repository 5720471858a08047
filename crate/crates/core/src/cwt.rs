//! Continuous wavelet transform over a geometric scale grid.
//!
//! Two interchangeable paths compute the L2-normalized transform
//!
//! ```text
//! W(a, b) = a^(-1/2) * integral of s(t) * conj(psi((t - b) / a)) dt
//! ```
//!
//! discretized as a Riemann sum over the samples:
//!
//! - [`cwt_direct`] sums a truncated wavelet kernel per translation; it is
//!   the reference the fast path is tested against.
//! - [`cwt_fft`] multiplies the zero-padded signal spectrum by
//!   `sqrt(a) * psi_hat(a w)` per scale and inverts. Padding covers both
//!   the 2N minimum and the wavelet support at the largest scale, so
//!   circular wrap-around stays below the kernel truncation error.
//!
//! L2 normalization keeps every dilated wavelet at unit energy, which is
//! what lets [`crate::ridge`] calibrate amplitudes directly from
//! `psi_hat`. Boundaries are zero-padded rather than reflected; the
//! cone-of-influence radii stored in the [`Scalogram`] mark the
//! edge-contaminated region instead.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2, TAU};

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Error;
use crate::fmath as fm;
use crate::quad::WAVELET_SUPPORT;
use crate::signal::Signal;
use crate::wavelet::{WaveletShape, SIGMA_MIN};
use crate::Result;

/// Default number of voices (scales) per octave.
pub const DEFAULT_VOICES_PER_OCTAVE: u32 = 8;

/// Geometric ladder of scales, finest first.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    scales: Vec<f64>,
    voices_per_octave: u32,
    shape_sigma: f64,
}

impl ScaleGrid {
    /// Validates and wraps an explicit scale list.
    ///
    /// Scales must be positive, strictly increasing, and spaced by
    /// `2^(1/voices_per_octave)` within 1e-12 relative.
    pub fn from_scales(scales: Vec<f64>, voices_per_octave: u32, shape_sigma: f64) -> Result<Self> {
        if voices_per_octave == 0 {
            return Err(Error::NotPositive {
                name: "voices_per_octave",
                value: 0.0,
            });
        }
        if !shape_sigma.is_finite() || shape_sigma < SIGMA_MIN {
            return Err(Error::SigmaTooSmall {
                sigma: shape_sigma,
                min: SIGMA_MIN,
            });
        }
        if scales.is_empty() {
            return Err(Error::NotPositive {
                name: "scales.len",
                value: 0.0,
            });
        }
        for &a in &scales {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::NotPositive {
                    name: "scale",
                    value: a,
                });
            }
        }
        let expected = fm::exp2(1.0 / voices_per_octave as f64);
        for pair in scales.windows(2) {
            let ratio = pair[1] / pair[0];
            if ratio.is_nan() || ratio <= 1.0 || (ratio / expected - 1.0).abs() > 1e-12 {
                return Err(Error::NotGeometric {
                    ratio,
                    voices: voices_per_octave,
                });
            }
        }
        Ok(Self {
            scales,
            voices_per_octave,
            shape_sigma,
        })
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    pub fn voices_per_octave(&self) -> u32 {
        self.voices_per_octave
    }

    /// The `sigma` the grid's scale-to-frequency map was built for.
    pub fn shape_sigma(&self) -> f64 {
        self.shape_sigma
    }
}

/// Builds the scale grid covering `[f_min, f_max]` (cycles per unit time)
/// with `voices_per_octave` scales per factor of two.
///
/// Frequencies descend from `f_max` as `f_k = f_max * 2^(-k/V)` for
/// `k = 0 ..= ceil(V log2(f_max / f_min))`, and each maps to the scale
/// `a_k = omega_p / (2 pi f_k)` where `omega_p` is the wavelet's spectral
/// peak — not the nominal `sigma` — so instantaneous-frequency estimates
/// stay unbiased at moderate `sigma`. The result is ascending in scale.
pub fn build_scale_grid(
    f_min: f64,
    f_max: f64,
    voices_per_octave: u32,
    shape: &WaveletShape,
) -> Result<ScaleGrid> {
    if !(f_min.is_finite() && f_max.is_finite() && f_min > 0.0 && f_min <= f_max) {
        return Err(Error::FrequencyBand { f_min, f_max });
    }
    let omega_p = shape.peak_frequency()?;
    let voices = voices_per_octave as f64;
    // ceil with protection against log2 landing a hair above an integer
    let x = voices * fm::log2(f_max / f_min);
    let floor = fm::floor(x);
    let k_max = if x - floor <= 1e-9 { floor } else { floor + 1.0 } as usize;
    let scales = (0..=k_max)
        .map(|k| {
            let f = f_max * fm::exp2(-(k as f64) / voices);
            omega_p / (TAU * f)
        })
        .collect();
    ScaleGrid::from_scales(scales, voices_per_octave, shape.sigma())
}

/// Distance from a signal edge within which coefficients at scale `a` are
/// edge-contaminated.
///
/// Equals `a * 2 sqrt(2) * sigma_psi`: the point where the Gaussian
/// approximation to the dilated envelope has decayed to `e^-2`.
pub fn coi_radius(a: f64, shape: &WaveletShape) -> f64 {
    a * (2.0 * SQRT_2 * shape.envelope_std())
}

/// CWT coefficients over (scale, translation), with enough metadata to
/// interpret them: the grid, the signal timing, and per-scale
/// cone-of-influence radii.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    grid: ScaleGrid,
    /// Row-major `[scale][translation]`.
    coefficients: Vec<Complex64>,
    n_translations: usize,
    dt: f64,
    t0: f64,
    coi_radii: Vec<f64>,
}

impl Scalogram {
    fn assemble(grid: ScaleGrid, rows: Vec<Vec<Complex64>>, signal: &Signal, shape: &WaveletShape) -> Self {
        let n = signal.len();
        let mut coefficients = Vec::with_capacity(rows.len() * n);
        for row in rows {
            debug_assert_eq!(row.len(), n);
            coefficients.extend(row);
        }
        let coi_radii = grid.scales().iter().map(|&a| coi_radius(a, shape)).collect();
        Self {
            grid,
            coefficients,
            n_translations: n,
            dt: signal.dt(),
            t0: signal.t0(),
            coi_radii,
        }
    }

    /// Rebuilds a scalogram from stored parts (e.g. a deserialized file).
    /// Cone-of-influence radii are recomputed from the grid's `sigma`.
    pub fn from_parts(
        grid: ScaleGrid,
        coefficients: Vec<Complex64>,
        n_translations: usize,
        dt: f64,
        t0: f64,
    ) -> Result<Self> {
        if n_translations < 2 {
            return Err(Error::SignalTooShort {
                len: n_translations,
                min: 2,
            });
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::NotPositive {
                name: "dt",
                value: dt,
            });
        }
        if coefficients.len() != grid.len() * n_translations {
            return Err(Error::SignalTooShort {
                len: coefficients.len(),
                min: grid.len() * n_translations,
            });
        }
        let shape = WaveletShape::new(grid.shape_sigma())?;
        let coi_radii = grid.scales().iter().map(|&a| coi_radius(a, &shape)).collect();
        Ok(Self {
            grid,
            coefficients,
            n_translations,
            dt,
            t0,
            coi_radii,
        })
    }

    pub fn grid(&self) -> &ScaleGrid {
        &self.grid
    }

    pub fn n_scales(&self) -> usize {
        self.grid.len()
    }

    pub fn n_translations(&self) -> usize {
        self.n_translations
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// All coefficients, row-major `[scale][translation]`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficients for one scale.
    pub fn row(&self, scale_index: usize) -> &[Complex64] {
        let n = self.n_translations;
        &self.coefficients[scale_index * n..(scale_index + 1) * n]
    }

    pub fn coefficient(&self, scale_index: usize, translation: usize) -> Complex64 {
        self.coefficients[scale_index * self.n_translations + translation]
    }

    /// Cone-of-influence radius per scale, ascending with scale.
    pub fn coi_radii(&self) -> &[f64] {
        &self.coi_radii
    }

    /// Whether the coefficient at (`scale_index`, `translation`) is far
    /// enough from both signal edges to be trusted.
    pub fn edge_ok(&self, scale_index: usize, translation: usize) -> bool {
        let radius = self.coi_radii[scale_index];
        let left = translation as f64 * self.dt;
        let right = (self.n_translations - 1 - translation) as f64 * self.dt;
        left >= radius && right >= radius
    }
}

/// Checks grid/shape agreement and the resolvability preconditions shared
/// by both transform paths; returns the wavelet peak frequency.
fn validate(signal: &Signal, grid: &ScaleGrid, shape: &WaveletShape) -> Result<f64> {
    if grid.shape_sigma() != shape.sigma() {
        return Err(Error::ShapeMismatch {
            grid_sigma: grid.shape_sigma(),
            shape_sigma: shape.sigma(),
        });
    }
    let omega_p = shape.peak_frequency()?;
    // Nyquist guard: the oscillation period at the finest scale must span
    // at least two samples, i.e. a * 2 pi / omega_p >= 2 dt.
    let guard = signal.dt() * omega_p / PI;
    let finest = grid.scales()[0];
    if finest < guard {
        return Err(Error::ScaleBelowNyquist {
            scale: finest,
            limit: guard,
        });
    }
    let limit = signal.span() / 4.0;
    let coarsest = *grid.scales().last().expect("grid is nonempty");
    if coarsest > limit {
        return Err(Error::ScaleAboveSpan {
            scale: coarsest,
            limit,
        });
    }
    Ok(omega_p)
}

fn map_scales<T, F>(scales: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        scales.par_iter().map(|&a| f(a)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        scales.iter().map(|&a| f(a)).collect()
    }
}

/// Reference transform: per-scale truncated-kernel summation.
///
/// The wavelet is cut off at ten envelope widths (`|t - b| > 10 a`),
/// bounding the truncation error by `e^-50`. Deterministic, and
/// independent of how many threads compute it.
pub fn cwt_direct(signal: &Signal, grid: &ScaleGrid, shape: &WaveletShape) -> Result<Scalogram> {
    validate(signal, grid, shape)?;
    let n = signal.len();
    let dt = signal.dt();
    let samples = signal.samples();

    let rows = map_scales(grid.scales(), |a| {
        let reach = (WAVELET_SUPPORT * a / dt) as usize;
        let kernel: Vec<Complex64> = (0..=2 * reach)
            .map(|k| {
                let offset = k as isize - reach as isize;
                shape.psi(offset as f64 * dt / a).conj()
            })
            .collect();
        let norm = dt / fm::sqrt(a);
        (0..n)
            .map(|m| {
                let lo = m.saturating_sub(reach);
                let hi = (m + reach).min(n - 1);
                let mut acc = Complex64::new(0.0, 0.0);
                for i in lo..=hi {
                    acc += samples[i] * kernel[i + reach - m];
                }
                acc * norm
            })
            .collect::<Vec<_>>()
    });
    Ok(Scalogram::assemble(grid.clone(), rows, signal, shape))
}

/// Fast transform: spectral multiplication per scale.
///
/// The signal is zero-padded to a power of two that is at least `2N` and
/// also long enough that the largest-scale wavelet cannot wrap around,
/// then each scale's row is `ifft(fft(signal) * sqrt(a) * psi_hat(a w))`.
/// Agrees with [`cwt_direct`] to a relative RMS of better than 1e-6 on
/// coefficients outside the cone of influence.
pub fn cwt_fft(signal: &Signal, grid: &ScaleGrid, shape: &WaveletShape) -> Result<Scalogram> {
    validate(signal, grid, shape)?;
    let n = signal.len();
    let dt = signal.dt();
    let coarsest = *grid.scales().last().expect("grid is nonempty");
    let wrap_guard = n + (WAVELET_SUPPORT * coarsest / dt) as usize + 1;
    let padded = wrap_guard.max(2 * n).next_power_of_two();

    let mut spectrum = vec![Complex64::new(0.0, 0.0); padded];
    for (slot, &s) in spectrum.iter_mut().zip(signal.samples()) {
        *slot = Complex64::new(s, 0.0);
    }
    crate::fft::forward(&mut spectrum);

    let d_omega = TAU / (padded as f64 * dt);
    let rows = map_scales(grid.scales(), |a| {
        let sqrt_a = fm::sqrt(a);
        let mut work: Vec<Complex64> = spectrum
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let k_signed = if k <= padded / 2 {
                    k as f64
                } else {
                    k as f64 - padded as f64
                };
                s * (sqrt_a * shape.psi_hat(a * d_omega * k_signed))
            })
            .collect();
        crate::fft::inverse(&mut work);
        work.truncate(n);
        work
    });
    Ok(Scalogram::assemble(grid.clone(), rows, signal, shape))
}
