//! waveridge: synthesize oscillatory test signals, transform them with an
//! admissibility-corrected Morlet-type wavelet, extract instantaneous
//! frequency and amplitude from the scalogram ridge, and re-certify the
//! wavelet's closed forms by quadrature.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain or parse
//! error, 3 I/O error, 4 scale-resolution error, 5 degenerate input.

mod formats;
mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use formats::FormatError;
use waveridge::cwt::{build_scale_grid, cwt_direct, cwt_fft};
use waveridge::ridge::extract_ridge;
use waveridge::synth::{add_noise, generate, GeneratorSpec, Waveform};
use waveridge::wavelet::{WaveletShape, DEFAULT_SIGMA, SIGMA_MIN};
use waveridge::Error;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_RESOLUTION: u8 = 4;
const EXIT_DEGENERATE: u8 = 5;

#[derive(Parser)]
#[command(name = "waveridge", version, about, arg_required_else_help = true)]
struct Cli {
    /// Print progress details to stderr
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the wavelet constants (kappa, p, q, envelope variance, peak
    /// frequency) for a sigma; optionally dump sampled psi(t) as CSV
    Probe(ProbeArgs),
    /// Synthesize a deterministic test signal and write it as CSV
    Synth(SynthArgs),
    /// Compute the scalogram of a signal CSV and write the WSCG binary
    Cwt(CwtArgs),
    /// Extract the modulus ridge of a WSCG scalogram as a CSV table
    Ridge(RidgeArgs),
    /// Re-certify the wavelet closed forms against adaptive quadrature
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ProbeArgs {
    /// Wavelet center-frequency parameter
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    sigma: f64,
    /// Write psi sampled on [-8, 8] at step 1/64 as t,re,im CSV
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// A cos(2 pi f t + phase)
    Sinusoid,
    /// A cos(2 pi (f0 t + rate t^2 / 2))
    Chirp,
    /// Gaussian-envelope tone centered at --center with width --width
    Am,
    /// Damped oscillation with drifting period, RDF-style
    Rdf,
}

#[derive(Args)]
struct SynthArgs {
    /// Waveform family
    #[arg(long, value_enum)]
    kind: Kind,
    /// Amplitude
    #[arg(long, default_value_t = 1.0)]
    amp: f64,
    /// Frequency (sinusoid, am), cycles per unit time
    #[arg(long, default_value_t = 50.0)]
    freq: f64,
    /// Phase in radians (sinusoid)
    #[arg(long, default_value_t = 0.0)]
    phase: f64,
    /// Chirp start frequency
    #[arg(long, default_value_t = 20.0)]
    f0: f64,
    /// Chirp rate, cycles per unit time squared
    #[arg(long, default_value_t = 10.0)]
    rate: f64,
    /// Envelope center (am); defaults to the middle of the record
    #[arg(long)]
    center: Option<f64>,
    /// Envelope width (am)
    #[arg(long, default_value_t = 0.25)]
    width: f64,
    /// Exponential decay length (rdf); infinite disables damping
    #[arg(long, default_value_t = 5.0)]
    decay: f64,
    /// Base oscillation period (rdf)
    #[arg(long, default_value_t = 0.5)]
    period: f64,
    /// Linear period drift per unit distance (rdf)
    #[arg(long, default_value_t = 0.02)]
    drift: f64,
    /// Sample count
    #[arg(long, default_value_t = 4096)]
    n: usize,
    /// Sample spacing
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Time of the first sample
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    /// RMS of added Gaussian noise (0 = clean)
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Noise seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Engine {
    /// Truncated-kernel summation (reference)
    Direct,
    /// FFT path (default)
    Spectral,
}

#[derive(Args)]
struct CwtArgs {
    /// Input signal CSV
    #[arg(long)]
    input: PathBuf,
    /// Lowest analysis frequency, cycles per unit time
    #[arg(long)]
    fmin: f64,
    /// Highest analysis frequency, cycles per unit time
    #[arg(long)]
    fmax: f64,
    /// Scales per octave
    #[arg(long, default_value_t = waveridge::cwt::DEFAULT_VOICES_PER_OCTAVE)]
    voices: u32,
    /// Wavelet sigma
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    sigma: f64,
    /// Transform engine
    #[arg(long, value_enum, default_value_t = Engine::Spectral)]
    engine: Engine,
    /// Sample spacing, required for single-column input CSVs
    #[arg(long)]
    dt: Option<f64>,
    /// First-sample time for single-column input CSVs
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    /// Output WSCG path
    #[arg(long)]
    out: PathBuf,
    /// Also write a 16-bit PGM heatmap of the modulus
    #[arg(long)]
    pgm: Option<PathBuf>,
}

#[derive(Args)]
struct RidgeArgs {
    /// Input WSCG scalogram
    #[arg(long)]
    input: PathBuf,
    /// Wavelet sigma the scalogram was computed with
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    sigma: f64,
    /// Continuity penalty lambda (0 = plain per-column argmax)
    #[arg(long, default_value_t = 0.0)]
    penalty: f64,
    /// Output ridge CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated sigma values to certify
    #[arg(long, value_delimiter = ',', default_value = "1,2,5")]
    sigmas: Vec<f64>,
    /// Absolute tolerance for the quadrature identities
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Verification hook: scale kappa by this factor to confirm the suite
    /// catches a broken admissibility correction
    #[arg(long, default_value_t = 1.0, hide = true)]
    perturb_kappa: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Probe(args) => cmd_probe(args),
        Command::Synth(args) => cmd_synth(args, verbose),
        Command::Cwt(args) => cmd_cwt(args, verbose),
        Command::Ridge(args) => cmd_ridge(args, verbose),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ScaleBelowNyquist { .. } | Error::ScaleAboveSpan { .. } => EXIT_RESOLUTION,
            Error::ZeroScalogram => EXIT_DEGENERATE,
            _ => EXIT_DOMAIN,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Io(err) => Failure::new(EXIT_IO, err.to_string()),
            FormatError::Parse(m) => Failure::new(EXIT_DOMAIN, m),
            FormatError::Domain(err) => err.into(),
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn io_failure(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::new(EXIT_IO, format!("writing {}: {e}", path.display()))
}

fn cmd_probe(args: ProbeArgs) -> Result<ExitCode, Failure> {
    let shape = WaveletShape::new(args.sigma)?;
    let omega_p = shape.peak_frequency()?;
    println!("sigma            {:.14e}", shape.sigma());
    println!("kappa            {:.14e}", shape.kappa());
    println!("p                {:.14e}", shape.norm_p());
    println!("q                {:.14e}", shape.norm_q());
    println!("sigma_psi_sq     {:.14e}", shape.envelope_variance());
    println!("omega_p          {:.14e}", omega_p);
    if let Some(path) = args.out {
        let mut w = create(&path)?;
        formats::write_psi_csv(&mut w, &shape).map_err(io_failure(&path))?;
        w.flush().map_err(io_failure(&path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_synth(args: SynthArgs, verbose: bool) -> Result<ExitCode, Failure> {
    let duration = args.dt * (args.n.max(1) - 1) as f64;
    let center = args.center.unwrap_or(args.t0 + 0.5 * duration);
    let waveform = match args.kind {
        Kind::Sinusoid => Waveform::Sinusoid {
            amplitude: args.amp,
            frequency: args.freq,
            phase: args.phase,
        },
        Kind::Chirp => Waveform::LinearChirp {
            amplitude: args.amp,
            start_frequency: args.f0,
            rate: args.rate,
        },
        Kind::Am => Waveform::AmTone {
            amplitude: args.amp,
            frequency: args.freq,
            center,
            width: args.width,
        },
        Kind::Rdf => Waveform::RdfLike {
            amplitude: args.amp,
            decay: args.decay,
            period: args.period,
            drift: args.drift,
        },
    };
    let spec = GeneratorSpec {
        waveform,
        n: args.n,
        dt: args.dt,
        t0: args.t0,
    };
    let clean = generate(&spec)?;
    let signal = add_noise(&clean, args.noise, args.seed)?;

    let mut metadata: Vec<(&str, String)> = vec![("generator", "waveridge synth".into())];
    match waveform {
        Waveform::Sinusoid {
            amplitude,
            frequency,
            phase,
        } => {
            metadata.push(("kind", "sinusoid".into()));
            metadata.push(("amplitude", amplitude.to_string()));
            metadata.push(("frequency", frequency.to_string()));
            metadata.push(("phase", phase.to_string()));
        }
        Waveform::LinearChirp {
            amplitude,
            start_frequency,
            rate,
        } => {
            metadata.push(("kind", "chirp".into()));
            metadata.push(("amplitude", amplitude.to_string()));
            metadata.push(("start-frequency", start_frequency.to_string()));
            metadata.push(("rate", rate.to_string()));
        }
        Waveform::AmTone {
            amplitude,
            frequency,
            center,
            width,
        } => {
            metadata.push(("kind", "am-tone".into()));
            metadata.push(("amplitude", amplitude.to_string()));
            metadata.push(("frequency", frequency.to_string()));
            metadata.push(("center", center.to_string()));
            metadata.push(("width", width.to_string()));
        }
        Waveform::RdfLike {
            amplitude,
            decay,
            period,
            drift,
        } => {
            metadata.push(("kind", "rdf-like".into()));
            metadata.push(("amplitude", amplitude.to_string()));
            metadata.push(("decay", decay.to_string()));
            metadata.push(("period", period.to_string()));
            metadata.push(("drift", drift.to_string()));
        }
    }
    metadata.push(("n", args.n.to_string()));
    metadata.push(("dt", args.dt.to_string()));
    metadata.push(("t0", args.t0.to_string()));
    metadata.push(("noise-level", args.noise.to_string()));
    metadata.push(("noise-seed", args.seed.to_string()));
    metadata.push(("noise-algorithm", "splitmix64-boxmuller-v1".into()));

    let mut w = create(&args.out)?;
    formats::write_signal_csv(&mut w, &signal, &metadata).map_err(io_failure(&args.out))?;
    w.flush().map_err(io_failure(&args.out))?;
    if verbose {
        eprintln!(
            "wrote {} samples (dt {}) to {}",
            signal.len(),
            signal.dt(),
            args.out.display()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cwt(args: CwtArgs, verbose: bool) -> Result<ExitCode, Failure> {
    let mut input = open(&args.input)?;
    let signal = formats::read_signal_csv(&mut input, args.dt, args.t0)?;
    let shape = WaveletShape::new(args.sigma)?;
    let grid = build_scale_grid(args.fmin, args.fmax, args.voices, &shape)?;
    if verbose {
        eprintln!(
            "{} samples; {} scales in [{:e}, {:e}] ({} voices/octave, sigma {})",
            signal.len(),
            grid.len(),
            grid.scales()[0],
            grid.scales()[grid.len() - 1],
            args.voices,
            args.sigma
        );
    }
    let scalogram = match args.engine {
        Engine::Direct => cwt_direct(&signal, &grid, &shape)?,
        Engine::Spectral => cwt_fft(&signal, &grid, &shape)?,
    };

    let mut w = create(&args.out)?;
    formats::write_scalogram(&mut w, &scalogram).map_err(io_failure(&args.out))?;
    w.flush().map_err(io_failure(&args.out))?;

    if let Some(path) = args.pgm {
        let mut w = create(&path)?;
        formats::write_modulus_pgm(&mut w, &scalogram).map_err(io_failure(&path))?;
        w.flush().map_err(io_failure(&path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ridge(args: RidgeArgs, verbose: bool) -> Result<ExitCode, Failure> {
    let mut input = open(&args.input)?;
    let scalogram = formats::read_scalogram(&mut input, args.sigma)?;
    let ridge = extract_ridge(&scalogram, args.penalty)?;
    if verbose {
        let trusted = ridge.points().iter().filter(|p| p.edge_ok && p.snr_ok).count();
        eprintln!(
            "{} columns, {} trusted (edge_ok and snr_ok), penalty {}",
            ridge.len(),
            trusted,
            args.penalty
        );
    }
    let mut w = create(&args.out)?;
    formats::write_ridge_csv(&mut w, &ridge, scalogram.dt(), scalogram.t0())
        .map_err(io_failure(&args.out))?;
    w.flush().map_err(io_failure(&args.out))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    // domain-gate every sigma before any integration runs
    for &sigma in &args.sigmas {
        if !(sigma.is_finite() && sigma >= SIGMA_MIN) {
            return Err(Error::SigmaTooSmall {
                sigma,
                min: SIGMA_MIN,
            }
            .into());
        }
    }
    if args.tol.is_nan() || args.tol < 1e-14 {
        return Err(Error::TolTooSmall {
            tol: args.tol,
            min: 1e-14,
        }
        .into());
    }

    println!(
        "{:<8} {:<14} {:>12} {:>10}   status",
        "sigma", "check", "residual", "tol"
    );
    let mut all_pass = true;
    for &sigma in &args.sigmas {
        let shape = if args.perturb_kappa == 1.0 {
            WaveletShape::new(sigma)?
        } else {
            WaveletShape::with_perturbed_kappa(sigma, args.perturb_kappa)?
        };
        for check in verify::run_checks(&shape, args.tol)? {
            let tol = verify::check_tolerance(check.name, args.tol);
            let pass = check.residual < tol;
            all_pass &= pass;
            println!(
                "{:<8} {:<14} {:>12.3e} {:>10.1e}   {}",
                check.sigma,
                check.name,
                check.residual,
                tol,
                if pass { "pass" } else { "FAIL" }
            );
        }
    }
    if all_pass {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification FAILED");
        Ok(ExitCode::from(EXIT_VERIFICATION))
    }
}
