use thiserror::Error;

/// Errors from wavelet construction, quadrature, transforms, and ridge
/// extraction.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// `sigma` is below the smallest value for which the normalization
    /// constants can be evaluated reliably.
    #[error("sigma {sigma} is below the supported minimum {min}")]
    SigmaTooSmall { sigma: f64, min: f64 },

    /// A parameter that must be a positive finite number is not.
    #[error("{name} must be positive and finite, got {value}")]
    NotPositive { name: &'static str, value: f64 },

    /// A parameter that must be finite is not.
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    /// A parameter that must be nonnegative is negative.
    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },

    /// The normalization radicand is not positive; the wavelet is
    /// degenerate at this `sigma`.
    #[error("normalization radicand {radicand} is not positive at sigma {sigma}")]
    DegenerateNormalization { sigma: f64, radicand: f64 },

    /// The spectral-peak search found no sign change of the derivative on
    /// the bracket; `sigma` is below the range the peak locator supports.
    #[error("no spectral peak bracket on [{lo}, {hi}]; sigma below supported range")]
    NoPeakBracket { lo: f64, hi: f64 },

    /// Adaptive quadrature hit its evaluation budget before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge within {evaluations} evaluations")]
    QuadratureDivergence { evaluations: u64 },

    /// Integration bounds are not an increasing finite pair.
    #[error("invalid integration interval [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },

    /// Requested tolerance is below what 64-bit floats can honor.
    #[error("tolerance {tol} is below the supported minimum {min}")]
    TolTooSmall { tol: f64, min: f64 },

    /// Moment order outside the supported range.
    #[error("moment order {k} exceeds the supported maximum {max}")]
    MomentOrder { k: u32, max: u32 },

    /// Signal shorter than the operation requires.
    #[error("signal needs at least {min} samples, got {len}")]
    SignalTooShort { len: usize, min: usize },

    /// Frequency band bounds are not ordered positive values.
    #[error("invalid frequency band: f_min {f_min}, f_max {f_max}")]
    FrequencyBand { f_min: f64, f_max: f64 },

    /// A generator frequency reaches or exceeds the Nyquist frequency.
    #[error("frequency {freq} is at or above the Nyquist frequency {nyquist}")]
    AboveNyquist { freq: f64, nyquist: f64 },

    /// A scale is too small to be resolved at the signal's sample spacing.
    #[error("scale {scale} is below the Nyquist guard {limit}")]
    ScaleBelowNyquist { scale: f64, limit: f64 },

    /// A scale is too large for the signal's span.
    #[error("scale {scale} exceeds the signal-span limit {limit}")]
    ScaleAboveSpan { scale: f64, limit: f64 },

    /// Consecutive scales do not keep the geometric ratio the grid claims.
    #[error("scale grid is not geometric: ratio {ratio} differs from 2^(1/{voices})")]
    NotGeometric { ratio: f64, voices: u32 },

    /// The scale grid and the wavelet passed alongside it disagree.
    #[error("grid was built for sigma {grid_sigma} but shape has sigma {shape_sigma}")]
    ShapeMismatch { grid_sigma: f64, shape_sigma: f64 },

    /// Too few scales for ridge extraction.
    #[error("ridge extraction needs at least {min} scales, got {len}")]
    TooFewScales { len: usize, min: usize },

    /// Every scalogram coefficient is zero; there is no ridge.
    #[error("scalogram is identically zero; no ridge to extract")]
    ZeroScalogram,

    /// The wavelet's frequency response at the evaluated argument is too
    /// small for amplitude calibration.
    #[error("wavelet response {response} at the ridge is below {floor}; outside passband")]
    OutsidePassband { response: f64, floor: f64 },
}
