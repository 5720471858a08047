//! Uniformly sampled real time series.
//!
//! The abscissa is called "time" throughout, but nothing depends on the
//! physical meaning of the axis; radial distance works the same way.

use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

/// A finite, uniformly sampled real signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    dt: f64,
    t0: f64,
}

impl Signal {
    /// Wraps samples with their spacing `dt` and the time `t0` of the
    /// first sample. Requires at least two finite samples and positive
    /// finite `dt`.
    pub fn new(samples: Vec<f64>, dt: f64, t0: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::SignalTooShort {
                len: samples.len(),
                min: 2,
            });
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::NotPositive {
                name: "dt",
                value: dt,
            });
        }
        if !t0.is_finite() {
            return Err(Error::NotFinite {
                name: "t0",
                value: t0,
            });
        }
        if let Some(&bad) = samples.iter().find(|s| !s.is_finite()) {
            return Err(Error::NotFinite {
                name: "sample",
                value: bad,
            });
        }
        Ok(Self { samples, dt, t0 })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires len >= 2
    }

    /// Time of sample `i`.
    pub fn time_at(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    /// Time extent from first to last sample.
    pub fn span(&self) -> f64 {
        (self.samples.len() - 1) as f64 * self.dt
    }

    /// Nyquist frequency `1 / (2 dt)`.
    pub fn nyquist(&self) -> f64 {
        0.5 / self.dt
    }

    /// Returns a copy with every sample multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|s| c * s).collect(),
            dt: self.dt,
            t0: self.t0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(
            Signal::new(vec![1.0], 0.1, 0.0),
            Err(Error::SignalTooShort { .. })
        ));
        assert!(Signal::new(vec![1.0, 2.0], 0.0, 0.0).is_err());
        assert!(Signal::new(vec![1.0, 2.0], -0.5, 0.0).is_err());
        assert!(Signal::new(vec![1.0, f64::NAN], 0.1, 0.0).is_err());
        assert!(Signal::new(vec![1.0, 2.0], 0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn derived_quantities() {
        let s = Signal::new(vec![0.0; 101], 0.01, 2.0).unwrap();
        assert_eq!(s.len(), 101);
        assert_eq!(s.time_at(0), 2.0);
        assert_eq!(s.time_at(100), 3.0);
        assert!((s.span() - 1.0).abs() < 1e-15);
        assert_eq!(s.nyquist(), 50.0);
    }
}
