//! Deterministic generators for test and demonstration signals.
//!
//! Every generator is a pure function of its spec: the same parameters
//! (including the noise seed) produce bit-identical samples on every run
//! and platform. The noise path is pinned to SplitMix64 uniforms fed
//! through a Box-Muller transform; see [`add_noise`].

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::Error;
use crate::fmath as fm;
use crate::signal::Signal;
use crate::Result;

/// Waveform families the generator knows how to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Waveform {
    /// `A cos(2 pi f t + phi)`.
    Sinusoid {
        amplitude: f64,
        frequency: f64,
        phase: f64,
    },
    /// `A cos(2 pi (f0 t + rate t^2 / 2))`; instantaneous frequency
    /// `f0 + rate * t` by construction.
    LinearChirp {
        amplitude: f64,
        start_frequency: f64,
        rate: f64,
    },
    /// `A exp(-(t - center)^2 / (2 width^2)) cos(2 pi f t)`: a tone under
    /// a Gaussian envelope.
    AmTone {
        amplitude: f64,
        frequency: f64,
        center: f64,
        width: f64,
    },
    /// `A exp(-r / decay) cos(2 pi r / (period (1 + drift r)))`: a damped
    /// oscillation whose local period stretches linearly with `r`, shaped
    /// like the ringing of a reduced radial-distribution function. With
    /// `drift = 0` and `decay = inf` this is exactly a sinusoid of period
    /// `period`.
    RdfLike {
        amplitude: f64,
        decay: f64,
        period: f64,
        drift: f64,
    },
}

impl Waveform {
    fn eval(&self, t: f64) -> f64 {
        match *self {
            Waveform::Sinusoid {
                amplitude,
                frequency,
                phase,
            } => amplitude * fm::cos(TAU * frequency * t + phase),
            Waveform::LinearChirp {
                amplitude,
                start_frequency,
                rate,
            } => amplitude * fm::cos(TAU * (start_frequency * t + 0.5 * rate * t * t)),
            Waveform::AmTone {
                amplitude,
                frequency,
                center,
                width,
            } => {
                let u = (t - center) / width;
                amplitude * fm::exp(-0.5 * u * u) * fm::cos(TAU * frequency * t)
            }
            Waveform::RdfLike {
                amplitude,
                decay,
                period,
                drift,
            } => amplitude * fm::exp(-t / decay) * fm::cos(TAU * t / (period * (1.0 + drift * t))),
        }
    }

    /// Largest instantaneous frequency over `[t0, t_end]`, for the
    /// Nyquist check.
    fn max_frequency(&self, t0: f64, t_end: f64) -> f64 {
        match *self {
            Waveform::Sinusoid { frequency, .. } | Waveform::AmTone { frequency, .. } => {
                frequency.abs()
            }
            Waveform::LinearChirp {
                start_frequency,
                rate,
                ..
            } => (start_frequency + rate * t0)
                .abs()
                .max((start_frequency + rate * t_end).abs()),
            Waveform::RdfLike { period, drift, .. } => {
                // phase = 2 pi r / (period (1 + drift r)); its derivative is
                // 2 pi / (period (1 + drift r)^2), monotone in r, so the
                // extremes sit at the endpoints.
                let f = |r: f64| {
                    let g = 1.0 + drift * r;
                    1.0 / (period * g * g)
                };
                f(t0).abs().max(f(t_end).abs())
            }
        }
    }

    fn validate(&self, t0: f64, t_end: f64) -> Result<()> {
        let check_pos = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::NotPositive { name, value: v })
            }
        };
        match *self {
            Waveform::Sinusoid {
                amplitude, phase, ..
            } => {
                if !amplitude.is_finite() {
                    return Err(Error::NotFinite {
                        name: "amplitude",
                        value: amplitude,
                    });
                }
                if !phase.is_finite() {
                    return Err(Error::NotFinite {
                        name: "phase",
                        value: phase,
                    });
                }
            }
            Waveform::LinearChirp {
                amplitude, rate, ..
            } => {
                if !amplitude.is_finite() {
                    return Err(Error::NotFinite {
                        name: "amplitude",
                        value: amplitude,
                    });
                }
                if !rate.is_finite() {
                    return Err(Error::NotFinite {
                        name: "rate",
                        value: rate,
                    });
                }
            }
            Waveform::AmTone { width, .. } => check_pos("width", width)?,
            Waveform::RdfLike {
                decay,
                period,
                drift,
                ..
            } => {
                // decay = +inf is allowed: no damping
                if decay.is_nan() || decay <= 0.0 {
                    return Err(Error::NotPositive {
                        name: "decay",
                        value: decay,
                    });
                }
                check_pos("period", period)?;
                if !drift.is_finite() {
                    return Err(Error::NotFinite {
                        name: "drift",
                        value: drift,
                    });
                }
                // the local period must stay positive over the domain
                if 1.0 + drift * t0 <= 0.0 || 1.0 + drift * t_end <= 0.0 {
                    return Err(Error::NotPositive {
                        name: "period (1 + drift r)",
                        value: (1.0 + drift * t0).min(1.0 + drift * t_end),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Full description of a generated signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub waveform: Waveform,
    /// Sample count, at least 2.
    pub n: usize,
    /// Sample spacing.
    pub dt: f64,
    /// Time of the first sample.
    pub t0: f64,
}

/// Evaluates the spec's closed form at `t_i = t0 + i dt`.
///
/// Bit-reproducible across runs for equal specs. Fails if any waveform
/// frequency reaches the Nyquist frequency `1 / (2 dt)`.
pub fn generate(spec: &GeneratorSpec) -> Result<Signal> {
    if spec.n < 2 {
        return Err(Error::SignalTooShort {
            len: spec.n,
            min: 2,
        });
    }
    if !(spec.dt.is_finite() && spec.dt > 0.0) {
        return Err(Error::NotPositive {
            name: "dt",
            value: spec.dt,
        });
    }
    if !spec.t0.is_finite() {
        return Err(Error::NotFinite {
            name: "t0",
            value: spec.t0,
        });
    }
    let t_end = spec.t0 + (spec.n - 1) as f64 * spec.dt;
    spec.waveform.validate(spec.t0, t_end)?;
    let nyquist = 0.5 / spec.dt;
    let f_max = spec.waveform.max_frequency(spec.t0, t_end);
    if f_max >= nyquist {
        return Err(Error::AboveNyquist {
            freq: f_max,
            nyquist,
        });
    }
    let samples: Vec<f64> = (0..spec.n)
        .map(|i| spec.waveform.eval(spec.t0 + i as f64 * spec.dt))
        .collect();
    Signal::new(samples, spec.dt, spec.t0)
}

/// Adds zero-mean Gaussian perturbations of root-mean-square `level`.
///
/// Pinned noise algorithm (do not change without bumping the crate
/// version): a SplitMix64 stream seeded with `seed` yields one 53-bit
/// uniform in (0, 1] per `next_uniform` call, and each sample's
/// perturbation is `level * sqrt(-2 ln u1) * cos(2 pi u2)` (Box-Muller,
/// cosine branch only). Deterministic for a fixed seed.
pub fn add_noise(signal: &Signal, level: f64, seed: u64) -> Result<Signal> {
    if !(level >= 0.0 && level.is_finite()) {
        return Err(Error::Negative {
            name: "level",
            value: level,
        });
    }
    if level == 0.0 {
        return Ok(signal.clone());
    }
    let mut rng = SplitMix64::new(seed);
    let samples: Vec<f64> = signal
        .samples()
        .iter()
        .map(|&s| s + level * rng.next_gaussian())
        .collect();
    Signal::new(samples, signal.dt(), signal.t0())
}

/// SplitMix64 (Steele, Lea, Vigna): tiny, seedable, and equidistributed
/// enough for test noise.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in (0, 1] with 53-bit resolution.
    fn next_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    fn next_gaussian(&mut self) -> f64 {
        let u1 = self.next_uniform();
        let u2 = self.next_uniform();
        fm::sqrt(-2.0 * fm::ln(u1)) * fm::cos(TAU * u2)
    }
}
