//! End-to-end ridge extraction: instantaneous frequency and amplitude
//! recovery on signals with known ground truth.

use waveridge::cwt::{build_scale_grid, cwt_fft, Scalogram};
use waveridge::ridge::{extract_ridge, refine_scale, Ridge};
use waveridge::signal::Signal;
use waveridge::synth::{add_noise, generate, GeneratorSpec, Waveform};
use waveridge::wavelet::WaveletShape;
use waveridge::Error;

const TAU: f64 = std::f64::consts::TAU;
const N: usize = 4096;
const DT: f64 = 1e-3;

fn shape5() -> WaveletShape {
    WaveletShape::new(5.0).unwrap()
}

fn cosine(frequency: f64, amplitude: f64) -> Signal {
    generate(&GeneratorSpec {
        waveform: Waveform::Sinusoid {
            amplitude,
            frequency,
            phase: 0.0,
        },
        n: N,
        dt: DT,
        t0: 0.0,
    })
    .unwrap()
}

fn chirp() -> Signal {
    generate(&GeneratorSpec {
        waveform: Waveform::LinearChirp {
            amplitude: 1.0,
            start_frequency: 20.0,
            rate: 10.0,
        },
        n: N,
        dt: DT,
        t0: 0.0,
    })
    .unwrap()
}

fn chirp_scalogram(signal: &Signal) -> Scalogram {
    let shape = shape5();
    let grid = build_scale_grid(15.0, 80.0, 8, &shape).unwrap();
    cwt_fft(signal, &grid, &shape).unwrap()
}

/// Independent column-wise argmax of the ridge statistic |W|/sqrt(a).
fn exhaustive_argmax(scalogram: &Scalogram) -> Vec<usize> {
    (0..scalogram.n_translations())
        .map(|b| {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for i in 0..scalogram.n_scales() {
                let m = scalogram.coefficient(i, b).norm() / scalogram.grid().scales()[i].sqrt();
                if m > best {
                    best = m;
                    arg = i;
                }
            }
            arg
        })
        .collect()
}

#[test]
fn zero_signal_has_no_ridge() {
    let shape = shape5();
    let signal = Signal::new(vec![0.0; 512], DT, 0.0).unwrap();
    let grid = build_scale_grid(50.0, 200.0, 4, &shape).unwrap();
    let scalogram = cwt_fft(&signal, &grid, &shape).unwrap();
    assert!(matches!(
        extract_ridge(&scalogram, 0.0),
        Err(Error::ZeroScalogram)
    ));
}

#[test]
fn unpenalized_ridge_equals_exhaustive_argmax() {
    let shape = shape5();
    let grid = build_scale_grid(25.0, 100.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&cosine(52.0, 1.0), &grid, &shape).unwrap();
    let ridge = extract_ridge(&scalogram, 0.0).unwrap();
    let oracle = exhaustive_argmax(&scalogram);
    for (point, expected) in ridge.points().iter().zip(&oracle) {
        assert_eq!(point.scale_index, *expected);
    }
}

#[test]
fn cosine_ridge_is_flat_where_trusted() {
    let shape = shape5();
    let omega_p = shape.peak_frequency().unwrap();
    let grid = build_scale_grid(25.0, 100.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&cosine(50.0, 1.0), &grid, &shape).unwrap();
    let ridge = extract_ridge(&scalogram, 0.0).unwrap();
    let target = omega_p / (TAU * 50.0);
    let nearest = nearest_scale_index(&grid, target);
    let trusted: Vec<usize> = ridge
        .points()
        .iter()
        .filter(|p| p.edge_ok)
        .map(|p| p.scale_index)
        .collect();
    assert!(!trusted.is_empty());
    assert!(trusted.iter().all(|&i| i == nearest));
}

fn nearest_scale_index(grid: &waveridge::cwt::ScaleGrid, target: f64) -> usize {
    grid.scales()
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| {
            (x.ln() - target.ln())
                .abs()
                .partial_cmp(&(y.ln() - target.ln()).abs())
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap()
}

#[test]
fn ridge_follows_the_dominant_component() {
    let strong = cosine(50.0, 1.0);
    let weak = cosine(80.0, 0.3);
    let samples: Vec<f64> = strong
        .samples()
        .iter()
        .zip(weak.samples())
        .map(|(a, b)| a + b)
        .collect();
    let signal = Signal::new(samples, DT, 0.0).unwrap();

    let shape = shape5();
    let omega_p = shape.peak_frequency().unwrap();
    let grid = build_scale_grid(25.0, 100.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&signal, &grid, &shape).unwrap();
    let ridge = extract_ridge(&scalogram, 0.0).unwrap();

    let nearest = nearest_scale_index(&grid, omega_p / (TAU * 50.0));
    for point in ridge.points().iter().filter(|p| p.edge_ok) {
        assert_eq!(point.scale_index, nearest);
    }
}

#[test]
fn refined_scale_beats_the_grid() {
    // 52 cycles/unit sits between the 8-voice grid frequencies 54.53 and 50
    let shape = shape5();
    let omega_p = shape.peak_frequency().unwrap();
    let f_signal = 52.0;
    let target = omega_p / (TAU * f_signal);

    let grid = build_scale_grid(25.0, 100.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&cosine(f_signal, 1.0), &grid, &shape).unwrap();
    let col = scalogram.n_translations() / 2;
    let column: Vec<f64> = (0..scalogram.n_scales())
        .map(|i| scalogram.coefficient(i, col).norm())
        .collect();
    let idx = column
        .iter()
        .enumerate()
        .max_by(|(_, x), (_, y)| x.partial_cmp(y).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let refined = refine_scale(&column, idx, &grid);
    assert!(
        (refined / target - 1.0).abs() < 0.005,
        "refined {refined} vs target {target}"
    );
    let nearest_error = grid
        .scales()
        .iter()
        .map(|a| (a - target).abs())
        .fold(f64::INFINITY, f64::min);
    assert!((refined - target).abs() < nearest_error);

    // a 64-voice scalogram de-tilted the same way agrees on the peak
    let dense_grid = build_scale_grid(25.0, 100.0, 64, &shape).unwrap();
    let dense = cwt_fft(&cosine(f_signal, 1.0), &dense_grid, &shape).unwrap();
    let dense_idx = (0..dense.n_scales())
        .max_by(|&i, &j| {
            let x = dense.coefficient(i, col).norm() / dense_grid.scales()[i].sqrt();
            let y = dense.coefficient(j, col).norm() / dense_grid.scales()[j].sqrt();
            x.partial_cmp(&y).unwrap()
        })
        .unwrap();
    let dense_scale = dense_grid.scales()[dense_idx];
    assert!(
        (dense_scale / target - 1.0).abs() < 0.006,
        "dense-grid peak {dense_scale} vs target {target}"
    );
    assert!((refined / dense_scale - 1.0).abs() < 0.01);
}

#[test]
fn cosine_frequency_and_amplitude_recovered() {
    let shape = shape5();
    let grid = build_scale_grid(25.0, 100.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&cosine(50.0, 1.0), &grid, &shape).unwrap();
    let ridge = extract_ridge(&scalogram, 0.0).unwrap();
    let mut checked = 0;
    for point in ridge.points().iter().filter(|p| p.edge_ok) {
        assert!(
            (point.inst_freq / 50.0 - 1.0).abs() < 0.01,
            "freq {}",
            point.inst_freq
        );
        assert!(
            (point.inst_amp - 1.0).abs() < 0.01,
            "amp {}",
            point.inst_amp
        );
        assert!(point.snr_ok);
        checked += 1;
    }
    assert!(checked > 3000);
}

#[test]
fn am_tone_envelope_tracked() {
    let (center, width) = (2.048, 0.25);
    let signal = generate(&GeneratorSpec {
        waveform: Waveform::AmTone {
            amplitude: 1.0,
            frequency: 50.0,
            center,
            width,
        },
        n: N,
        dt: DT,
        t0: 0.0,
    })
    .unwrap();
    let shape = shape5();
    let grid = build_scale_grid(25.0, 100.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&signal, &grid, &shape).unwrap();
    let ridge = extract_ridge(&scalogram, 0.0).unwrap();

    let mut checked = 0;
    for (b, point) in ridge.points().iter().enumerate() {
        let t = b as f64 * DT;
        let u = (t - center) / width;
        let envelope = (-0.5 * u * u).exp();
        if envelope > 0.1 && point.edge_ok {
            assert!(
                (point.inst_amp / envelope - 1.0).abs() < 0.02,
                "t {t}: amp {} envelope {envelope}",
                point.inst_amp
            );
            checked += 1;
        }
    }
    assert!(checked > 500);

    // far tails carry no signal: flagged below the noise floor
    assert!(!ridge.points()[10].snr_ok);
    assert!(ridge.points()[N / 2].snr_ok);
}

fn chirp_frequency_errors(ridge: &Ridge) -> Vec<f64> {
    ridge
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.edge_ok)
        .map(|(b, p)| {
            let truth = 20.0 + 10.0 * (b as f64 * DT);
            (p.inst_freq / truth - 1.0).abs()
        })
        .collect()
}

#[test]
fn chirp_frequency_recovered_within_two_percent() {
    let scalogram = chirp_scalogram(&chirp());
    let ridge = extract_ridge(&scalogram, 0.0).unwrap();
    let errors = chirp_frequency_errors(&ridge);
    assert!(errors.len() > 3000);
    let worst = errors.iter().cloned().fold(0.0, f64::max);
    assert!(worst < 0.02, "worst IF error {worst:.4}");
}

#[test]
fn noisy_chirp_frequency_mostly_recovered() {
    let noisy = add_noise(&chirp(), 0.05, 20_260_808).unwrap();
    let scalogram = chirp_scalogram(&noisy);
    let ridge = extract_ridge(&scalogram, 0.5).unwrap();
    let errors = chirp_frequency_errors(&ridge);
    let good = errors.iter().filter(|e| **e < 0.05).count();
    let fraction = good as f64 / errors.len() as f64;
    assert!(fraction >= 0.95, "only {:.1}% within 5%", 100.0 * fraction);
}

#[test]
fn penalty_monotonically_smooths_the_ridge() {
    let noisy = add_noise(&chirp(), 0.05, 7).unwrap();
    let scalogram = chirp_scalogram(&noisy);
    let mut previous = f64::INFINITY;
    for lambda in [0.0, 0.1, 1.0, 10.0] {
        let ridge = extract_ridge(&scalogram, lambda).unwrap();
        let jump = ridge.total_squared_jump();
        assert!(
            jump <= previous,
            "lambda {lambda}: jump {jump} exceeds previous {previous}"
        );
        previous = jump;
    }
}

#[test]
fn amplitude_scales_with_the_signal() {
    let factor = 7.3;
    let base = chirp();
    let scaled = base.scaled(factor);
    let ridge_base = extract_ridge(&chirp_scalogram(&base), 0.0).unwrap();
    let ridge_scaled = extract_ridge(&chirp_scalogram(&scaled), 0.0).unwrap();
    for (a, b) in ridge_base.points().iter().zip(ridge_scaled.points()) {
        assert_eq!(a.scale_index, b.scale_index);
        if a.inst_amp > 0.0 {
            assert!(
                (b.inst_amp / (factor * a.inst_amp) - 1.0).abs() < 1e-9,
                "{} vs {}",
                b.inst_amp,
                factor * a.inst_amp
            );
        }
    }
}

#[test]
fn too_few_scales_is_rejected() {
    let shape = shape5();
    let grid = build_scale_grid(50.0, 50.0, 8, &shape).unwrap();
    let scalogram = cwt_fft(&cosine(50.0, 1.0), &grid, &shape).unwrap();
    assert!(matches!(
        extract_ridge(&scalogram, 0.0),
        Err(Error::TooFewScales { .. })
    ));
}

#[test]
fn negative_penalty_is_rejected() {
    let scalogram = chirp_scalogram(&chirp());
    assert!(matches!(
        extract_ridge(&scalogram, -1.0),
        Err(Error::Negative { .. })
    ));
}
