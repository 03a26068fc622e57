mod tensor_file;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use ttensor::algebra::t_product_complex;
use ttensor::localization::{gershgorin_component_count, gershgorin_discs, gershgorin_excess};
use ttensor::spectral::t_eigenvalues_complex;
use ttensor::{
    run_campaign, t_eigenvalues, t_product, CampaignConfig, GershgorinDisc, Mode,
    Overrides, ParamValue, TEigenSpectrum, TensorError, TheoremId,
};

use tensor_file::{read_tensor, write_tensor, LoadedTensor};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// Containment slack for `gershgorin`, relative to the largest disc extent.
const GERSHGORIN_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "ttensor", version, about = "Third-order tensors under the t-product")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// t-product of two tensor files.
    Tprod {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Output tensor file.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// All n*n3 t-eigenvalues with the Fourier slice each came from.
    Eig {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Seeded verification campaign for one theorem.
    #[command(after_help = theorem_registry())]
    Check {
        /// Theorem id from the registry below.
        theorem: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        n3: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = ttensor::lab::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
        mode: ModeArg,
        /// Fixed exponent r instead of the sampled one.
        #[arg(long)]
        r: Option<f64>,
        /// Fixed exponent p instead of the sampled one.
        #[arg(long)]
        p: Option<f64>,
        /// Fixed exponent q instead of the sampled one.
        #[arg(long)]
        q: Option<f64>,
        /// Fixed parameter t instead of the sampled one.
        #[arg(long)]
        t: Option<f64>,
        /// One JSON object per certificate, then a summary line.
        #[arg(long)]
        json: bool,
    },
    /// Gershgorin discs of a square tensor and t-eigenvalue containment.
    Gershgorin {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Corrected,
    Literal,
    Exploratory,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Corrected => Mode::Corrected,
            ModeArg::Literal => Mode::Literal,
            ModeArg::Exploratory => Mode::Exploratory,
        }
    }
}

fn theorem_registry() -> String {
    let mut s = String::from("Theorems:\n");
    for t in TheoremId::ALL {
        s.push_str(&format!("  {:<18} {}\n", t.as_str(), t.summary()));
    }
    s
}

/// A failed command: exit status and message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn cmd_tprod(file_a: PathBuf, file_b: PathBuf, out_path: PathBuf, out: &mut impl Write) -> Outcome {
    let a = read_tensor(&file_a).map_err(Failure::usage)?;
    let b = read_tensor(&file_b).map_err(Failure::usage)?;
    let product = match (&a, &b) {
        (LoadedTensor::Real(a), LoadedTensor::Real(b)) => LoadedTensor::Real(t_product(a, b)?),
        _ => LoadedTensor::Complex(t_product_complex(&a.to_complex(), &b.to_complex())?),
    };
    write_tensor(&out_path, &product).map_err(Failure::usage)?;
    let norm = match &product {
        LoadedTensor::Real(t) => t.frobenius_norm(),
        LoadedTensor::Complex(t) => t.frobenius_norm(),
    };
    let [n1, n2, n3] = product.dims();
    writeln!(out, "dims {n1} {n2} {n3}")?;
    writeln!(out, "frobenius_norm {norm}")?;
    Ok(0)
}

fn spectrum_of(t: &LoadedTensor) -> Result<TEigenSpectrum, Failure> {
    let spectrum = match t {
        LoadedTensor::Real(t) => t_eigenvalues(t)?,
        LoadedTensor::Complex(t) => t_eigenvalues_complex(t)?,
    };
    Ok(spectrum)
}

#[derive(Serialize)]
struct EigenEntry {
    re: f64,
    im: f64,
    slice: usize,
}

#[derive(Serialize)]
struct EigenListing {
    dims: [usize; 3],
    eigenvalues: Vec<EigenEntry>,
}

/// Descending modulus, then descending real part; ties keep slice order.
fn sorted_entries(spectrum: &TEigenSpectrum) -> Vec<EigenEntry> {
    let mut entries: Vec<EigenEntry> = spectrum
        .values
        .iter()
        .zip(&spectrum.slice_index)
        .map(|(z, &slice)| EigenEntry {
            re: z.re,
            im: z.im,
            slice,
        })
        .collect();
    entries.sort_by(|x, y| {
        let (mx, my) = (x.re.hypot(x.im), y.re.hypot(y.im));
        my.total_cmp(&mx).then(y.re.total_cmp(&x.re))
    });
    entries
}

fn cmd_eig(file: PathBuf, format: Format, out: &mut impl Write) -> Outcome {
    let t = read_tensor(&file).map_err(Failure::usage)?;
    let spectrum = spectrum_of(&t)?;
    let listing = EigenListing {
        dims: t.dims(),
        eigenvalues: sorted_entries(&spectrum),
    };
    match format {
        Format::Json => json_line(out, &listing)?,
        Format::Text => {
            writeln!(out, "{:>24} {:>24} {:>6}", "re", "im", "slice")?;
            for e in &listing.eigenvalues {
                writeln!(out, "{:>24} {:>24} {:>6}", e.re, e.im, e.slice)?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct Containment {
    re: f64,
    im: f64,
    slice: usize,
    excess: f64,
    contained: bool,
}

#[derive(Serialize)]
struct GershgorinListing {
    dims: [usize; 3],
    discs: Vec<GershgorinDisc>,
    eigenvalues: Vec<Containment>,
    components: Vec<ttensor::localization::ComponentCount>,
    all_contained: bool,
}

fn cmd_gershgorin(file: PathBuf, json: bool, out: &mut impl Write) -> Outcome {
    let t = read_tensor(&file).map_err(Failure::usage)?;
    let discs = match &t {
        LoadedTensor::Real(t) => gershgorin_discs(t)?,
        LoadedTensor::Complex(t) => gershgorin_discs(t)?,
    };
    let spectrum = spectrum_of(&t)?;
    let extent = discs.iter().map(|d| d.center.norm() + d.radius).fold(0.0, f64::max);
    let allowed = GERSHGORIN_TOL * (1.0 + extent);
    let eigenvalues: Vec<Containment> = spectrum
        .values
        .iter()
        .zip(&spectrum.slice_index)
        .map(|(&z, &slice)| {
            let excess = gershgorin_excess(&discs, z);
            Containment {
                re: z.re,
                im: z.im,
                slice,
                excess,
                contained: excess <= allowed,
            }
        })
        .collect();
    let listing = GershgorinListing {
        dims: t.dims(),
        components: gershgorin_component_count(&discs, &spectrum, t.dims()[2]),
        all_contained: eigenvalues.iter().all(|e| e.contained),
        discs,
        eigenvalues,
    };
    if json {
        json_line(out, &listing)?;
    } else {
        writeln!(out, "discs")?;
        for (i, d) in listing.discs.iter().enumerate() {
            writeln!(out, "  row {i}: center {} {:+}i, radius {}", d.center.re, d.center.im, d.radius)?;
        }
        writeln!(out, "t-eigenvalues")?;
        for e in &listing.eigenvalues {
            let verdict = if e.contained { "inside" } else { "OUTSIDE" };
            writeln!(out, "  {} {:+}i (slice {}): {verdict}, excess {}", e.re, e.im, e.slice, e.excess)?;
        }
        writeln!(out, "components")?;
        for c in &listing.components {
            writeln!(
                out,
                "  discs {:?}: {} t-eigenvalues for {} discs",
                c.discs, c.eigenvalue_count, c.disc_count
            )?;
        }
        writeln!(out, "all contained: {}", listing.all_contained)?;
    }
    Ok(if listing.all_contained { 0 } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a ttensor::CampaignSummary,
}

#[derive(Serialize)]
struct FailureLine<'a> {
    trial_failure: &'a ttensor::lab::TrialFailure,
}

fn cmd_check(config: CampaignConfig, json: bool, out: &mut impl Write) -> Outcome {
    let report = run_campaign(&config);
    let s = &report.summary;
    if json {
        for c in &report.certificates {
            json_line(out, c)?;
        }
        for f in &report.failures {
            json_line(out, &FailureLine { trial_failure: f })?;
        }
        json_line(out, &SummaryLine { summary: s })?;
    } else {
        for c in report.certificates.iter().filter(|c| !c.holds) {
            let form = c.form().unwrap_or("");
            writeln!(
                out,
                "violation: trial {} [{form}] lhs {} rhs {} margin {}",
                match c.param("stream") {
                    Some(ParamValue::Number(x)) => *x as u64,
                    _ => 0,
                },
                c.lhs,
                c.rhs,
                c.margin
            )?;
        }
        for f in &report.failures {
            writeln!(out, "error: trial {}: {}", f.trial, f.error)?;
        }
        writeln!(
            out,
            "{} ({}) n={} n3={} seed={}: {} trials, {} certificates, {} violations, {} errors",
            s.theorem_id, s.mode, config.n, config.n3, s.seed, s.trials, s.certificates, s.violations, s.errors
        )?;
        if let (Some(m), Some(t)) = (s.worst_margin, s.worst_trial) {
            writeln!(out, "worst margin {m} at trial {t}")?;
        }
    }
    Ok(report.exit_code() as u8)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("TTENSOR_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("TTENSOR_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Tprod { file_a, file_b, out: path } => cmd_tprod(file_a, file_b, path, out),
        Command::Eig { file, format } => cmd_eig(file, format, out),
        Command::Gershgorin { file, json } => cmd_gershgorin(file, json, out),
        Command::Check { theorem, n, n3, trials, seed, tol, mode, r, p, q, t, json } => {
            let theorem: TheoremId = theorem.parse().map_err(|e: TensorError| Failure::usage(e.to_string()))?;
            if n == 0 || n3 == 0 {
                return Err(Failure::usage("--n and --n3 must be positive"));
            }
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Failure::usage("--tol must be a positive number"));
            }
            let config = CampaignConfig::new(theorem, n, n3, trials, seed)
                .with_tol(tol)
                .with_mode(mode.into())
                .with_overrides(Overrides { r, p, q, t });
            cmd_check(config, json, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Ok(_), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        (Err(f), _) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
