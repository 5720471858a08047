//! The admissibility-corrected Morlet-type mother wavelet.
//!
//! The wavelet is a Gaussian-windowed complex oscillation with a
//! DC correction on the real part:
//!
//! ```text
//! psi(t; sigma) = exp(-t^2/2) * { p * [cos(sigma t) - kappa] + i q sin(sigma t) }
//! ```
//!
//! - `kappa(sigma) = exp(-sigma^2/2)` is the unique value that makes the
//!   mean of `psi` vanish, i.e. `psi_hat(0) = 0` (admissibility). A plain
//!   Gabor/Morlet wavelet fails this for moderate `sigma`.
//! - `p(sigma)` and `q(sigma)` normalize the real and imaginary parts
//!   separately to energy 1/2 each, so the full wavelet has unit L2 norm.
//! - `envelope_variance(sigma)` is the second moment of `|psi|^2`, the
//!   width used for cone-of-influence radii in [`crate::cwt`].
//!
//! For large `sigma` the correction terms die off as `exp(-sigma^2/2)` and
//! the wavelet converges to the classic Morlet `pi^(-1/4) e^(-t^2/2) e^(i
//! sigma t)`.
//!
//! Everything here is a pure closed form; the independent quadrature in
//! [`crate::quad`] re-derives each constant numerically and is run against
//! these formulas in the test suite and the `verify` CLI subcommand.

use num_complex::Complex64;

use crate::error::Error;
use crate::fmath as fm;
use crate::Result;

/// Smallest supported `sigma`.
///
/// Below this the normalization radicand `1 + 3e^(-s^2) - 4e^(-3s^2/4)`
/// is dominated by cancellation (it shrinks like `3 sigma^4 / 8`) and the
/// wavelet has lost oscillatory meaning.
pub const SIGMA_MIN: f64 = 0.25;

/// Default `sigma` for analysis pipelines: close enough to the classic
/// Morlet that the negative-frequency response is negligible.
pub const DEFAULT_SIGMA: f64 = 5.0;

/// pi^(-1/4), the Gaussian L2 normalization.
const PI_NEG_QUARTER: f64 = 0.751_125_544_464_942_5;

/// sqrt(2 pi).
const SQRT_TAU: f64 = 2.506_628_274_631_000_2;

/// Relative tolerance of the spectral-peak bisection.
const PEAK_REL_TOL: f64 = 1e-10;

fn check_sigma(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma < SIGMA_MIN {
        return Err(Error::SigmaTooSmall {
            sigma,
            min: SIGMA_MIN,
        });
    }
    Ok(())
}

/// DC-correction term `kappa(sigma) = exp(-sigma^2/2)`.
///
/// This is the unique value for which `integral of psi dt = 0`; it is also
/// the value consistent with `p`'s radicand arising from the requirement
/// `integral of |Re psi|^2 dt = 1/2`.
pub fn kappa(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(fm::exp(-0.5 * sigma * sigma))
}

/// Real-part normalization `p(sigma) = pi^(-1/4) (1 + 3e^(-s^2) - 4e^(-3s^2/4))^(-1/2)`.
///
/// The radicand is evaluated through `expm1` as
/// `u - 3v + 3uv` with `u = 1 - e^(-3s^2/4)`, `v = 1 - e^(-s^2/4)`,
/// which is algebraically identical but keeps full precision near
/// [`SIGMA_MIN`] where the direct form cancels catastrophically.
pub fn norm_p(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let s2 = sigma * sigma;
    let u = -fm::expm1(-0.75 * s2);
    let v = -fm::expm1(-0.25 * s2);
    let radicand = u - 3.0 * v + 3.0 * u * v;
    if radicand <= 0.0 {
        return Err(Error::DegenerateNormalization { sigma, radicand });
    }
    Ok(PI_NEG_QUARTER / fm::sqrt(radicand))
}

/// Imaginary-part normalization `q(sigma) = pi^(-1/4) (1 - e^(-s^2))^(-1/2)`.
pub fn norm_q(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let radicand = -fm::expm1(-sigma * sigma);
    Ok(PI_NEG_QUARTER / fm::sqrt(radicand))
}

/// Second moment of `|psi|^2`: the variance of the wavelet envelope.
///
/// ```text
/// sigma_psi^2 = (sqrt(pi)/4) { q^2 [1 + (2s^2 - 1) e^(-s^2)]
///             + p^2 { [1 + (3 - 2s^2) e^(-s^2)] - 2 (2 - s^2) e^(-3s^2/4) } }
/// ```
///
/// Tends to 1/2 (the unit-norm Gaussian's second moment) as `sigma` grows.
pub fn envelope_variance(sigma: f64) -> Result<f64> {
    let p = norm_p(sigma)?;
    let q = norm_q(sigma)?;
    let s2 = sigma * sigma;
    let e1 = fm::exp(-s2);
    let e34 = fm::exp(-0.75 * s2);
    let q_part = q * q * (1.0 + (2.0 * s2 - 1.0) * e1);
    let p_part = p * p * ((1.0 + (3.0 - 2.0 * s2) * e1) - 2.0 * (2.0 - s2) * e34);
    Ok(0.25 * fm::sqrt(core::f64::consts::PI) * (q_part + p_part))
}

/// The mother wavelet with its derived constants cached.
///
/// Immutable after construction; cheap to copy and safe to share across
/// threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletShape {
    sigma: f64,
    kappa: f64,
    p: f64,
    q: f64,
    env_var: f64,
}

impl WaveletShape {
    /// Builds the wavelet for a given center-frequency parameter `sigma`.
    ///
    /// Fails with [`Error::SigmaTooSmall`] below [`SIGMA_MIN`].
    pub fn new(sigma: f64) -> Result<Self> {
        Ok(Self {
            sigma,
            kappa: kappa(sigma)?,
            p: norm_p(sigma)?,
            q: norm_q(sigma)?,
            env_var: envelope_variance(sigma)?,
        })
    }

    /// Builds a deliberately broken wavelet whose `kappa` is scaled by
    /// `factor`.
    ///
    /// Verification hook only: with `factor != 1` the zero-mean condition
    /// fails by a computable margin, which the quadrature suite must
    /// detect. Not a valid wavelet for analysis.
    pub fn with_perturbed_kappa(sigma: f64, factor: f64) -> Result<Self> {
        let mut shape = Self::new(sigma)?;
        shape.kappa *= factor;
        Ok(shape)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn norm_p(&self) -> f64 {
        self.p
    }

    pub fn norm_q(&self) -> f64 {
        self.q
    }

    /// Envelope variance `sigma_psi^2`.
    pub fn envelope_variance(&self) -> f64 {
        self.env_var
    }

    /// Envelope standard deviation `sigma_psi`.
    pub fn envelope_std(&self) -> f64 {
        fm::sqrt(self.env_var)
    }

    /// Evaluates `psi(t)`.
    ///
    /// The real part is even in `t` and the imaginary part odd, so
    /// `psi(-t) = conj(psi(t))`.
    pub fn psi(&self, t: f64) -> Complex64 {
        let envelope = fm::exp(-0.5 * t * t);
        let c = fm::cos(self.sigma * t);
        let s = fm::sin(self.sigma * t);
        Complex64::new(
            envelope * self.p * (c - self.kappa),
            envelope * self.q * s,
        )
    }

    /// Analytic Fourier transform `psi_hat(omega) = integral of psi(t)
    /// e^(-i omega t) dt`.
    ///
    /// ```text
    /// psi_hat(w) = sqrt(2 pi) { [(p+q) G(w-s) + (p-q) G(w+s)]/2 - p kappa G(w) }
    /// ```
    ///
    /// with `G(x) = exp(-x^2/2)`. Real-valued because `Re psi` is even and
    /// `Im psi` odd; zero at `omega = 0` by the choice of `kappa`.
    pub fn psi_hat(&self, omega: f64) -> f64 {
        let dm = omega - self.sigma;
        let dp = omega + self.sigma;
        let g_m = fm::exp(-0.5 * dm * dm);
        let g_p = fm::exp(-0.5 * dp * dp);
        let g_0 = fm::exp(-0.5 * omega * omega);
        SQRT_TAU * (0.5 * ((self.p + self.q) * g_m + (self.p - self.q) * g_p) - self.p * self.kappa * g_0)
    }

    /// d(psi_hat)/d(omega), used to locate the spectral peak.
    fn psi_hat_deriv(&self, omega: f64) -> f64 {
        let dm = omega - self.sigma;
        let dp = omega + self.sigma;
        let g_m = fm::exp(-0.5 * dm * dm);
        let g_p = fm::exp(-0.5 * dp * dp);
        let g_0 = fm::exp(-0.5 * omega * omega);
        SQRT_TAU
            * (self.p * self.kappa * omega * g_0
                - 0.5 * (dm * (self.p + self.q) * g_m + dp * (self.p - self.q) * g_p))
    }

    /// Center (peak) frequency `omega_p = argmax of psi_hat over omega > 0`.
    ///
    /// Located by bisecting the derivative's sign change on
    /// `[sigma/2, 2 sigma]` to relative tolerance 1e-10. The zero- and
    /// negative-frequency corrections push the peak slightly above `sigma`
    /// for moderate `sigma`; for `sigma >= 6` the shift is below 1e-6.
    ///
    /// Fails with [`Error::NoPeakBracket`] when the derivative does not
    /// change sign on the bracket, which happens for `sigma` below roughly
    /// 0.8 where the peak escapes `[sigma/2, 2 sigma]`.
    pub fn peak_frequency(&self) -> Result<f64> {
        let mut lo = 0.5 * self.sigma;
        let mut hi = 2.0 * self.sigma;
        if !(self.psi_hat_deriv(lo) > 0.0 && self.psi_hat_deriv(hi) < 0.0) {
            return Err(Error::NoPeakBracket { lo, hi });
        }
        while hi - lo > PEAK_REL_TOL * hi {
            let mid = 0.5 * (lo + hi);
            if self.psi_hat_deriv(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed at 30 significant digits from the closed
    // forms and cross-checked against direct numerical integration; see
    // also tests/certification.rs for the quadrature runs.
    const KAPPA_1: f64 = 0.606_530_659_712_633_4;
    const KAPPA_2: f64 = 0.135_335_283_236_612_7;
    const P_1: f64 = 1.623_046_907_783_359_5;
    const P_2: f64 = 0.811_945_230_474_105_7;
    const Q_1: f64 = 0.944_740_588_432_007_7;
    const Q_2: f64 = 0.758_100_172_748_624_5;
    const ENV_VAR_1: f64 = 1.034_920_932_530_479;
    const ENV_VAR_2: f64 = 0.610_863_398_864_370_2;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "got {actual:e}, want {expected:e} within {tol:e} (diff {:e})",
            (actual - expected).abs()
        );
    }

    #[test]
    fn kappa_matches_reference() {
        assert_close(kappa(1.0).unwrap(), KAPPA_1, 1e-15);
        assert_close(kappa(2.0).unwrap(), KAPPA_2, 1e-15);
    }

    #[test]
    fn kappa_vanishes_for_large_sigma() {
        assert!(kappa(10.0).unwrap() < 1e-21);
        assert!(kappa(40.0).unwrap() < 1e-300);
    }

    #[test]
    fn kappa_rejects_small_sigma() {
        assert!(matches!(
            kappa(0.1),
            Err(Error::SigmaTooSmall { .. })
        ));
        assert!(kappa(f64::NAN).is_err());
    }

    #[test]
    fn norm_p_matches_reference() {
        assert_close(norm_p(1.0).unwrap(), P_1, 1e-14);
        assert_close(norm_p(2.0).unwrap(), P_2, 1e-14);
    }

    #[test]
    fn norm_p_limits_to_gaussian_normalization() {
        assert_close(norm_p(10.0).unwrap(), PI_NEG_QUARTER, 1e-12);
        assert_close(norm_q(10.0).unwrap(), PI_NEG_QUARTER, 1e-12);
    }

    #[test]
    fn norm_p_keeps_precision_at_sigma_min() {
        // 30-digit reference: 19.9854774236889279...; the expm1 form must
        // hold at least 10 significant digits here.
        let p = norm_p(SIGMA_MIN).unwrap();
        assert!((p / 19.985_477_423_688_928 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn norm_q_matches_reference() {
        assert_close(norm_q(1.0).unwrap(), Q_1, 1e-14);
        assert_close(norm_q(2.0).unwrap(), Q_2, 1e-14);
    }

    #[test]
    fn psi_at_zero_is_real() {
        let shape = WaveletShape::new(2.0).unwrap();
        let z = shape.psi(0.0);
        assert_close(z.re, 0.702_060_392_735_275_8, 1e-14);
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn psi_is_negligible_beyond_ten_envelope_widths() {
        for sigma in [SIGMA_MIN, 1.0, 2.0, 5.0, 10.0] {
            let shape = WaveletShape::new(sigma).unwrap();
            assert!(shape.psi(10.0).norm() < 1e-20, "sigma {sigma}");
            assert!(shape.psi(-10.0).norm() < 1e-20, "sigma {sigma}");
        }
    }

    #[test]
    fn psi_is_hermitian() {
        let shape = WaveletShape::new(3.0).unwrap();
        for i in 0..=64 {
            let t = -8.0 + 0.25 * i as f64;
            let a = shape.psi(-t);
            let b = shape.psi(t).conj();
            assert_eq!(a, b, "t = {t}");
        }
    }

    #[test]
    fn envelope_variance_matches_reference() {
        assert_close(envelope_variance(1.0).unwrap(), ENV_VAR_1, 1e-14);
        assert_close(envelope_variance(2.0).unwrap(), ENV_VAR_2, 1e-14);
    }

    #[test]
    fn envelope_variance_limits_to_half() {
        assert_close(envelope_variance(8.0).unwrap(), 0.5, 1e-6);
    }

    #[test]
    fn psi_hat_is_zero_at_dc() {
        for sigma in [0.5, 1.0, 2.0, 5.0, 8.0] {
            let shape = WaveletShape::new(sigma).unwrap();
            assert!(
                shape.psi_hat(0.0).abs() < 1e-14,
                "sigma {sigma}: {:e}",
                shape.psi_hat(0.0)
            );
        }
    }

    #[test]
    fn psi_hat_peaks_near_sigma() {
        let shape = WaveletShape::new(6.0).unwrap();
        // At omega = sigma = 6 the two correction Gaussians are ~e^-72 and
        // ~e^-36; the value collapses to sqrt(2 pi) pi^(-1/4).
        assert_close(shape.psi_hat(6.0), SQRT_TAU * PI_NEG_QUARTER, 1e-9);
    }

    #[test]
    fn psi_hat_small_at_negative_frequencies() {
        let shape = WaveletShape::new(2.0).unwrap();
        let v = shape.psi_hat(-2.0);
        assert!(v > 0.0);
        assert_close(v, 0.030_868_071_917_574_18, 1e-13);
    }

    #[test]
    fn peak_frequency_matches_dense_grid_search() {
        // Oracle: dense grid search over psi_hat with step 1e-5.
        for (sigma, grid_lo, grid_hi) in [(1.0, 1.0, 4.0), (2.0, 1.0, 4.0)] {
            let shape = WaveletShape::new(sigma).unwrap();
            let steps = ((grid_hi - grid_lo) / 1e-5) as usize;
            let mut best_w = grid_lo;
            let mut best_v = f64::NEG_INFINITY;
            for i in 0..=steps {
                let w = grid_lo + 1e-5 * i as f64;
                let v = shape.psi_hat(w);
                if v > best_v {
                    best_v = v;
                    best_w = w;
                }
            }
            let peak = shape.peak_frequency().unwrap();
            assert_close(peak, best_w, 2e-5);
        }
    }

    #[test]
    fn peak_frequency_ranges() {
        let w1 = WaveletShape::new(1.0).unwrap().peak_frequency().unwrap();
        assert!(w1 > 1.0 && w1 < 1.6, "{w1}");
        assert_close(w1, 1.398_006_902_194_282_6, 1e-8);

        let w2 = WaveletShape::new(2.0).unwrap().peak_frequency().unwrap();
        assert!(w2 > 2.0 && w2 < 2.2, "{w2}");
        assert_close(w2, 2.035_857_624_117_567_5, 1e-8);
    }

    #[test]
    fn peak_frequency_approaches_sigma() {
        let w6 = WaveletShape::new(6.0).unwrap().peak_frequency().unwrap();
        assert!((w6 - 6.0).abs() < 1e-6);
        let w10 = WaveletShape::new(10.0).unwrap().peak_frequency().unwrap();
        assert!((w10 - 10.0).abs() < 1e-9);
    }

    #[test]
    fn peak_frequency_fails_below_supported_range() {
        let shape = WaveletShape::new(0.5).unwrap();
        assert!(matches!(
            shape.peak_frequency(),
            Err(Error::NoPeakBracket { .. })
        ));
    }

    #[test]
    fn perturbed_kappa_breaks_admissibility() {
        let shape = WaveletShape::with_perturbed_kappa(2.0, 1.001).unwrap();
        assert!(shape.psi_hat(0.0).abs() > 1e-6);
    }
}
