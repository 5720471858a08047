//! Adaptive Gauss-Kronrod quadrature.
//!
//! This is the independent numerical route used to certify the closed
//! forms in [`crate::wavelet`]: unit norm, split norms, zero mean, and the
//! envelope second moment are all integrals that this module evaluates
//! without reference to the constants under test.
//!
//! The scheme is the 15-point Kronrod extension of 7-point Gauss applied
//! per panel, with bisection of any panel whose error estimate exceeds its
//! share of the tolerance budget. Integrands are assumed finite on the
//! interval.

use alloc::vec::Vec;

use crate::error::Error;
use crate::fmath as fm;
use crate::wavelet::WaveletShape;
use crate::Result;

/// Evaluation budget before the integration is declared divergent.
pub const MAX_EVALUATIONS: u64 = 1_000_000;

/// Smallest honorable tolerance.
pub const MIN_TOL: f64 = 1e-14;

/// Default tolerance for certification runs.
pub const CERTIFICATION_TOL: f64 = 1e-12;

/// Half-width of the truncation window for wavelet integrals: the
/// Gaussian envelope is below e^-50 past ten time units, far under any
/// tolerance this module accepts.
pub const WAVELET_SUPPORT: f64 = 10.0;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    /// The integral estimate.
    pub value: f64,
    /// Accumulated per-panel error estimate; at most the requested
    /// tolerance.
    pub error_estimate: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: u64,
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) and the matching
// 7-point Gauss and 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// QUADPACK-style sharpening of the raw |Kronrod - Gauss| difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = fm::sqrt(200.0 * scaled / res_asc) * (200.0 * scaled / res_asc);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 15-point Kronrod panel; returns (value, error estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let v1 = f(center - x);
        let v2 = f(center + x);
        fv1[j] = v1;
        fv2[j] = v2;
        let sum = v1 + v2;
        if j % 2 != 0 {
            res_gauss += WG[j / 2] * sum;
        }
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (v1.abs() + v2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = rescale_error((res_kronrod - res_gauss) * half, res_abs * half, res_asc * half);
    (res_kronrod * half, err)
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
///
/// Panels are bisected until each one's error fits within its share of
/// `tol`; the returned `error_estimate` is therefore at most `tol`.
/// Integrations that still disagree after [`MAX_EVALUATIONS`] integrand
/// calls fail with [`Error::QuadratureDivergence`], which signals a
/// pathological integrand rather than a tolerance problem.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<IntegrationResult> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::BadInterval { lo, hi });
    }
    if tol.is_nan() || tol < MIN_TOL {
        return Err(Error::TolTooSmall { tol, min: MIN_TOL });
    }

    let mut pending: Vec<(f64, f64, f64)> = Vec::with_capacity(64);
    pending.push((lo, hi, tol));
    let mut value = 0.0;
    let mut error_estimate = 0.0;
    let mut evaluations: u64 = 0;

    while let Some((a, b, budget)) = pending.pop() {
        let (v, e) = qk15(&f, a, b);
        evaluations += 15;
        if e <= budget {
            value += v;
            error_estimate += e;
            continue;
        }
        if evaluations >= MAX_EVALUATIONS {
            return Err(Error::QuadratureDivergence { evaluations });
        }
        let mid = 0.5 * (a + b);
        pending.push((mid, b, 0.5 * budget));
        pending.push((a, mid, 0.5 * budget));
    }

    Ok(IntegrationResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// `integral of t^k |psi(t)|^2 dt` over the truncation window, at the
/// certification tolerance.
///
/// `k = 0` is the wavelet's total energy (1 by construction), odd `k`
/// vanish by symmetry, and `k = 2` is the envelope variance. Orders above
/// 4 would need a wider truncation window and are rejected.
pub fn wavelet_moment(shape: &WaveletShape, k: u32) -> Result<f64> {
    if k > 4 {
        return Err(Error::MomentOrder { k, max: 4 });
    }
    let result = integrate(
        |t| {
            let mut w = 1.0;
            for _ in 0..k {
                w *= t;
            }
            w * shape.psi(t).norm_sqr()
        },
        -WAVELET_SUPPORT,
        WAVELET_SUPPORT,
        CERTIFICATION_TOL,
    )?;
    Ok(result.value)
}
