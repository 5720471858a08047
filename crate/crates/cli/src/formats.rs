//! File formats: signal CSV, scalogram binary ("WSCG"), ridge CSV, and
//! 16-bit PGM heatmaps.
//!
//! Floating-point text output uses Rust's shortest round-trip formatting,
//! so write-then-read reproduces every value bit-exactly; the scalogram
//! binary stores raw little-endian f64s. The ridge CSV is the one
//! deliberate exception: it is a terminal report fixed at 12 significant
//! digits.

use std::io::{self, Read, Write};

use waveridge::cwt::{ScaleGrid, Scalogram};
use waveridge::ridge::Ridge;
use waveridge::signal::Signal;
use waveridge::Complex64;

/// Magic bytes of the scalogram binary format.
pub const SCALOGRAM_MAGIC: [u8; 4] = *b"WSCG";
/// Current scalogram format version.
pub const SCALOGRAM_VERSION: u16 = 1;

/// Errors with the exact failure kind preserved, so the CLI can map file
/// problems to exit code 3 and content problems to exit code 2.
#[derive(Debug)]
pub enum FormatError {
    Io(io::Error),
    Parse(String),
    Domain(waveridge::Error),
}

impl From<io::Error> for FormatError {
    fn from(e: io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<waveridge::Error> for FormatError {
    fn from(e: waveridge::Error) -> Self {
        FormatError::Domain(e)
    }
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "{e}"),
            FormatError::Parse(m) => write!(f, "{m}"),
            FormatError::Domain(e) => write!(f, "{e}"),
        }
    }
}

// ---------------------------------------------------------------------
// signal CSV

/// Writes a signal as CSV: `#` comment lines carrying the provenance
/// metadata, a `t,value` header, then one row per sample.
pub fn write_signal_csv(
    w: &mut impl Write,
    signal: &Signal,
    metadata: &[(&str, String)],
) -> io::Result<()> {
    for (key, value) in metadata {
        writeln!(w, "# {key}: {value}")?;
    }
    writeln!(w, "t,value")?;
    for (i, &v) in signal.samples().iter().enumerate() {
        writeln!(w, "{},{}", signal.time_at(i), v)?;
    }
    Ok(())
}

/// Reads a signal CSV.
///
/// Accepts either `t,value` rows (the time column must be uniformly
/// spaced; `dt` is inferred) or bare one-column values, in which case
/// `fallback_dt` must supply the spacing and `fallback_t0` the origin.
/// `#` comments and a leading non-numeric header row are skipped.
pub fn read_signal_csv(
    r: &mut impl Read,
    fallback_dt: Option<f64>,
    fallback_t0: f64,
) -> Result<Signal, FormatError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;

    let mut times: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut bare = false;
    let mut saw_data = false;

    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse::<f64>().ok()).collect();
        let Some(nums) = parsed else {
            if saw_data {
                return Err(FormatError::Parse(format!(
                    "line {}: unparsable row {line:?}",
                    line_no + 1
                )));
            }
            continue; // header row
        };
        match nums.len() {
            1 => {
                if saw_data && !bare {
                    return Err(FormatError::Parse(format!(
                        "line {}: mixed one- and two-column rows",
                        line_no + 1
                    )));
                }
                bare = true;
                values.push(nums[0]);
            }
            2 => {
                if saw_data && bare {
                    return Err(FormatError::Parse(format!(
                        "line {}: mixed one- and two-column rows",
                        line_no + 1
                    )));
                }
                times.push(nums[0]);
                values.push(nums[1]);
            }
            n => {
                return Err(FormatError::Parse(format!(
                    "line {}: expected 1 or 2 columns, got {n}",
                    line_no + 1
                )))
            }
        }
        saw_data = true;
    }

    if values.len() < 2 {
        return Err(FormatError::Parse(format!(
            "need at least 2 samples, got {}",
            values.len()
        )));
    }

    if bare {
        let dt = fallback_dt.ok_or_else(|| {
            FormatError::Parse("single-column signal needs an explicit --dt".into())
        })?;
        return Ok(Signal::new(values, dt, fallback_t0)?);
    }

    let t0 = times[0];
    let n = times.len();
    let dt = (times[n - 1] - t0) / (n - 1) as f64;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(FormatError::Parse(format!("non-increasing time column (dt = {dt})")));
    }
    let tol = 1e-9 * (t0.abs() + (times[n - 1] - t0).abs() + dt);
    for (i, &t) in times.iter().enumerate() {
        let expected = t0 + i as f64 * dt;
        if (t - expected).abs() > tol {
            return Err(FormatError::Parse(format!(
                "time column is not uniform at row {}: {t} vs expected {expected}",
                i + 1
            )));
        }
    }
    Ok(Signal::new(values, dt, t0)?)
}

// ---------------------------------------------------------------------
// scalogram binary

/// Writes the "WSCG" scalogram binary: magic, version (u16), scale and
/// translation counts (u32), dt and t0 (f64), the scale list, then
/// row-major interleaved (re, im) coefficients. All numbers little-endian.
pub fn write_scalogram(w: &mut impl Write, scalogram: &Scalogram) -> io::Result<()> {
    w.write_all(&SCALOGRAM_MAGIC)?;
    w.write_all(&SCALOGRAM_VERSION.to_le_bytes())?;
    w.write_all(&(scalogram.n_scales() as u32).to_le_bytes())?;
    w.write_all(&(scalogram.n_translations() as u32).to_le_bytes())?;
    w.write_all(&scalogram.dt().to_le_bytes())?;
    w.write_all(&scalogram.t0().to_le_bytes())?;
    for &a in scalogram.grid().scales() {
        w.write_all(&a.to_le_bytes())?;
    }
    for z in scalogram.coefficients() {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a "WSCG" scalogram.
///
/// The file does not carry `sigma` or the voice count: `sigma` must come
/// from the caller (the same value used to compute the file) and the
/// voices per octave are recovered from the stored scale ratio.
pub fn read_scalogram(r: &mut impl Read, sigma: f64) -> Result<Scalogram, FormatError> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let mut cursor = 0usize;

    let take = |cursor: &mut usize, n: usize| -> Result<&[u8], FormatError> {
        let slice = bytes
            .get(*cursor..*cursor + n)
            .ok_or_else(|| FormatError::Parse("truncated scalogram file".into()))?;
        *cursor += n;
        Ok(slice)
    };

    if take(&mut cursor, 4)? != SCALOGRAM_MAGIC {
        return Err(FormatError::Parse("not a WSCG scalogram (bad magic)".into()));
    }
    let version = u16::from_le_bytes(take(&mut cursor, 2)?.try_into().unwrap());
    if version != SCALOGRAM_VERSION {
        return Err(FormatError::Parse(format!(
            "unsupported scalogram version {version}"
        )));
    }
    let n_scales = u32::from_le_bytes(take(&mut cursor, 4)?.try_into().unwrap()) as usize;
    let n_translations = u32::from_le_bytes(take(&mut cursor, 4)?.try_into().unwrap()) as usize;
    let dt = f64::from_le_bytes(take(&mut cursor, 8)?.try_into().unwrap());
    let t0 = f64::from_le_bytes(take(&mut cursor, 8)?.try_into().unwrap());

    let expected = 30 + 8 * n_scales + 16 * n_scales * n_translations;
    if bytes.len() != expected {
        return Err(FormatError::Parse(format!(
            "scalogram payload is {} bytes, header implies {expected}",
            bytes.len()
        )));
    }

    let mut scales = Vec::with_capacity(n_scales);
    for _ in 0..n_scales {
        scales.push(f64::from_le_bytes(take(&mut cursor, 8)?.try_into().unwrap()));
    }
    let voices = voices_from_scales(&scales);
    let grid = ScaleGrid::from_scales(scales, voices, sigma)?;

    let mut coefficients = Vec::with_capacity(n_scales * n_translations);
    for _ in 0..n_scales * n_translations {
        let re = f64::from_le_bytes(take(&mut cursor, 8)?.try_into().unwrap());
        let im = f64::from_le_bytes(take(&mut cursor, 8)?.try_into().unwrap());
        coefficients.push(Complex64::new(re, im));
    }
    Ok(Scalogram::from_parts(grid, coefficients, n_translations, dt, t0)?)
}

/// Recovers voices-per-octave from consecutive scale ratios.
fn voices_from_scales(scales: &[f64]) -> u32 {
    if scales.len() < 2 {
        return waveridge::cwt::DEFAULT_VOICES_PER_OCTAVE;
    }
    let ratio = scales[1] / scales[0];
    let voices = (std::f64::consts::LN_2 / ratio.ln()).round();
    if voices.is_finite() && voices >= 1.0 {
        voices as u32
    } else {
        1
    }
}

// ---------------------------------------------------------------------
// ridge CSV

/// Writes the ridge table: `b,scale,freq,amp,edge_ok,snr_ok` with floats
/// at 12 significant digits and booleans as 0/1.
pub fn write_ridge_csv(w: &mut impl Write, ridge: &Ridge, dt: f64, t0: f64) -> io::Result<()> {
    writeln!(w, "b,scale,freq,amp,edge_ok,snr_ok")?;
    for (i, p) in ridge.points().iter().enumerate() {
        let b = t0 + i as f64 * dt;
        writeln!(
            w,
            "{:.11e},{:.11e},{:.11e},{:.11e},{},{}",
            b,
            p.refined_scale,
            p.inst_freq,
            p.inst_amp,
            u8::from(p.edge_ok),
            u8::from(p.snr_ok),
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------
// PGM heatmap

/// Writes the scalogram modulus as a 16-bit binary PGM (P5): one row per
/// scale with the largest scale at the bottom, moduli mapped linearly
/// from `[0, max]` to `[0, 65535]` (big-endian pixels, per the format).
pub fn write_modulus_pgm(w: &mut impl Write, scalogram: &Scalogram) -> io::Result<()> {
    let width = scalogram.n_translations();
    let height = scalogram.n_scales();
    let max = scalogram
        .coefficients()
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    writeln!(w, "P5")?;
    writeln!(w, "{width} {height}")?;
    writeln!(w, "65535")?;
    let scale = if max > 0.0 { 65535.0 / max } else { 0.0 };
    for i in 0..height {
        for z in scalogram.row(i) {
            let pixel = (z.norm() * scale).round().clamp(0.0, 65535.0) as u16;
            w.write_all(&pixel.to_be_bytes())?;
        }
    }
    Ok(())
}

/// Writes sampled wavelet values as `t,re,im` CSV.
pub fn write_psi_csv(
    w: &mut impl Write,
    shape: &waveridge::wavelet::WaveletShape,
) -> io::Result<()> {
    writeln!(w, "t,re,im")?;
    // [-8, 8] at step 1/64
    for k in -(8 * 64)..=(8 * 64) {
        let t = k as f64 / 64.0;
        let z = shape.psi(t);
        writeln!(w, "{t},{},{}", z.re, z.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use waveridge::cwt::{build_scale_grid, cwt_fft};
    use waveridge::synth::{generate, GeneratorSpec, Waveform};
    use waveridge::wavelet::WaveletShape;

    fn sample_signal() -> Signal {
        generate(&GeneratorSpec {
            waveform: Waveform::Sinusoid {
                amplitude: 1.0,
                frequency: 50.0,
                phase: 0.25,
            },
            n: 64,
            dt: 1e-3,
            t0: 0.125,
        })
        .unwrap()
    }

    #[test]
    fn signal_csv_round_trips_exactly() {
        let signal = sample_signal();
        let mut buf = Vec::new();
        write_signal_csv(&mut buf, &signal, &[("kind", "sinusoid".into())]).unwrap();
        let restored = read_signal_csv(&mut buf.as_slice(), None, 0.0).unwrap();
        assert_eq!(restored.samples(), signal.samples());
        assert_eq!(restored.dt().to_bits(), signal.dt().to_bits());
        assert_eq!(restored.t0().to_bits(), signal.t0().to_bits());
    }

    #[test]
    fn bare_column_needs_dt() {
        let text = "1.0\n2.0\n3.0\n";
        assert!(read_signal_csv(&mut text.as_bytes(), None, 0.0).is_err());
        let signal = read_signal_csv(&mut text.as_bytes(), Some(0.5), 1.0).unwrap();
        assert_eq!(signal.samples(), &[1.0, 2.0, 3.0]);
        assert_eq!(signal.dt(), 0.5);
        assert_eq!(signal.t0(), 1.0);
    }

    #[test]
    fn nonuniform_times_are_rejected() {
        let text = "t,value\n0.0,1.0\n0.1,2.0\n0.35,3.0\n";
        assert!(matches!(
            read_signal_csv(&mut text.as_bytes(), None, 0.0),
            Err(FormatError::Parse(_))
        ));
    }

    #[test]
    fn scalogram_binary_round_trips_exactly() {
        let shape = WaveletShape::new(5.0).unwrap();
        let signal = sample_signal();
        let grid = build_scale_grid(100.0, 200.0, 4, &shape).unwrap();
        let scalogram = cwt_fft(&signal, &grid, &shape).unwrap();

        let mut buf = Vec::new();
        write_scalogram(&mut buf, &scalogram).unwrap();
        assert_eq!(&buf[0..4], b"WSCG");
        let restored = read_scalogram(&mut buf.as_slice(), 5.0).unwrap();
        assert_eq!(restored, scalogram);
    }

    #[test]
    fn corrupted_scalograms_are_rejected() {
        let garbage = b"WSCGxx";
        assert!(read_scalogram(&mut garbage.as_slice(), 5.0).is_err());
        let wrong_magic = b"NOPE\x01\x00";
        assert!(read_scalogram(&mut wrong_magic.as_slice(), 5.0).is_err());
    }

    #[test]
    fn pgm_header_and_size() {
        let shape = WaveletShape::new(5.0).unwrap();
        let signal = sample_signal();
        let grid = build_scale_grid(100.0, 200.0, 4, &shape).unwrap();
        let scalogram = cwt_fft(&signal, &grid, &shape).unwrap();
        let mut buf = Vec::new();
        write_modulus_pgm(&mut buf, &scalogram).unwrap();
        let header = format!("P5\n{} {}\n65535\n", scalogram.n_translations(), scalogram.n_scales());
        assert!(buf.starts_with(header.as_bytes()));
        assert_eq!(
            buf.len(),
            header.len() + 2 * scalogram.n_scales() * scalogram.n_translations()
        );
    }
}
