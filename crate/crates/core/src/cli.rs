//! The `sparse-entropy` command line.
//!
//! Every subcommand prints one JSON document on stdout (stable key order) and
//! a one-line human summary on stderr. Failures print
//! `{"error": {"kind": ..., "message": ...}}` and exit with 1 (computation)
//! or 2 (usage).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::{EntropyEstimate, EntropyEstimator, ScalingParams, DEFAULT_MAX_SAMPLES};
use crate::generators::{self, spdc_density_matrix, SpdcParams};
use crate::oracle::{self, fem_exact_entropy, OracleReport};
use crate::sparse::{
    gershgorin_upper_bound, power_iteration_bound, read_matrix_market, write_matrix_market, BoundMethod,
    PowerIteration, SpectralBound, SymmetricSparseMatrix,
};

pub const DEFAULT_SEED: u64 = 1;
pub const TABLE1_SIZES: [usize; 6] = [10, 50, 100, 500, 1000, 5000];
pub const TABLE1_DEGREES: [usize; 6] = [2, 3, 3, 4, 6, 8];

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sparse-entropy", version, about = "Stochastic von Neumann entropy of sparse PSD matrices")]
pub struct RunConfig {
    /// Worker threads for sample evaluation (default: all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true, env = "SPARSE_ENTROPY_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the entropy of a matrix.
    Entropy(EntropyArgs),
    /// Exact entropy by dense diagonalization (small matrices only).
    Oracle(OracleArgs),
    /// Write a generated matrix in Matrix Market format.
    Generate(GenerateArgs),
    /// Stiffness-matrix benchmark across sizes 10..5000.
    Table1(Table1Args),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Matrix Market file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generator: fem:M, identity:M, mixed:M, zero:M, random:M[:SEED], spdc or spdc:CONFIG.
    #[arg(long)]
    pub generate: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundChoice {
    Gershgorin,
    Power,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Polynomial degree n.
    #[arg(short = 'n', long = "degree", default_value_t = 10)]
    pub degree: usize,
    /// Confidence level p.
    #[arg(short = 'p', long = "confidence", default_value_t = 0.95)]
    pub confidence: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
    /// Override gamma0 (skips the spectral bound).
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long, value_enum, default_value_t = BoundChoice::Gershgorin)]
    pub bound: BoundChoice,
    /// Estimate the entropy of A / tr(A).
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_SAMPLES)]
    pub max_samples: usize,
    /// Use a fixed number of samples instead of the adaptive rule.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Check positive semidefiniteness with the dense oracle first.
    #[arg(long)]
    pub verify_psd: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = oracle::DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Normalize to unit trace before diagonalizing.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Generator spec (see `entropy --help`).
    #[arg(long)]
    pub generate: String,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(short = 'p', long = "confidence", default_value_t = 0.95)]
    pub confidence: f64,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
}

/// What a successful run produces.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: String,
    pub summary: String,
}

/// A loaded or generated matrix with a description of where it came from.
pub struct Loaded {
    pub matrix: SymmetricSparseMatrix,
    pub source: String,
    pub warnings: Vec<String>,
}

/// Resolves `--input` / `--generate`.
pub fn load(source: &Source) -> Result<Loaded> {
    match (&source.input, &source.generate) {
        (Some(path), None) => Ok(Loaded {
            matrix: read_matrix_market(path)?,
            source: format!("file:{}", path.display()),
            warnings: Vec::new(),
        }),
        (None, Some(spec)) => generate(spec),
        _ => Err(Error::Config("exactly one of --input or --generate is required".into())),
    }
}

/// Builds a matrix from a generator spec such as `fem:100`.
pub fn generate(spec: &str) -> Result<Loaded> {
    let mut parts = spec.splitn(2, ':');
    let kind = parts.next().unwrap_or_default();
    let rest = parts.next();
    let size = |s: Option<&str>| -> Result<usize> {
        let s = s.ok_or_else(|| Error::Config(format!("generator `{kind}` needs a size, e.g. {kind}:100")))?;
        s.split(':')
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|_| Error::Config(format!("invalid size in `{spec}`")))
    };
    let mut warnings = Vec::new();
    let matrix = match kind {
        "fem" => generators::fem_matrix(size(rest)?)?,
        "identity" => generators::scaled_identity(size(rest)?, 1.0)?,
        "mixed" => generators::maximally_mixed(size(rest)?)?,
        "zero" => SymmetricSparseMatrix::zeros(size(rest)?)?,
        "random" => {
            let m = size(rest)?;
            let seed = match rest.and_then(|r| r.split(':').nth(1)) {
                Some(s) => s.parse().map_err(|_| Error::Config(format!("invalid seed in `{spec}`")))?,
                None => 0,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let spectrum: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            generators::random_psd(m, seed, &spectrum)?
        }
        "spdc" => {
            let params = match rest {
                Some(path) => SpdcParams::from_config_file(path)?,
                None => SpdcParams::default(),
            };
            let out = spdc_density_matrix(&params)?;
            warnings = out.warnings;
            out.matrix
        }
        other => return Err(Error::Config(format!("unknown generator `{other}`"))),
    };
    Ok(Loaded {
        matrix,
        source: spec.to_string(),
        warnings,
    })
}

#[derive(Serialize)]
struct EntropyReport<'a> {
    #[serde(flatten)]
    estimate: &'a EntropyEstimate,
    source: &'a str,
    power_iteration: Option<PowerIteration>,
    psd_verified: bool,
    warnings: &'a [String],
}

#[derive(Serialize)]
struct OracleOutput<'a> {
    #[serde(flatten)]
    report: &'a OracleReport,
    normalized: bool,
    source: &'a str,
    warnings: &'a [String],
}

#[derive(Serialize)]
struct GenerateOutput<'a> {
    path: String,
    dim: usize,
    nnz: usize,
    trace: f64,
    bandwidth: usize,
    source: &'a str,
    warnings: &'a [String],
}

/// One row of the stiffness-matrix benchmark.
#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub m: usize,
    pub degree: usize,
    pub samples: usize,
    pub exact_entropy: f64,
    pub estimate: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tau: f64,
    pub capped: bool,
}

#[derive(Serialize)]
struct Table1Output<'a> {
    confidence: f64,
    seed: u64,
    bound_method: &'static str,
    rows: &'a [Table1Row],
}

/// Runs the stiffness-matrix benchmark for the given `(m, n)` pairs.
pub fn table1_rows(sizes: &[usize], degrees: &[usize], confidence: f64, seed: u64) -> Result<Vec<Table1Row>> {
    if sizes.len() != degrees.len() {
        return Err(Error::Config(format!(
            "{} sizes but {} degrees",
            sizes.len(),
            degrees.len()
        )));
    }
    sizes
        .iter()
        .zip(degrees)
        .map(|(&m, &n)| {
            let a = generators::fem_matrix(m)?;
            let est = EntropyEstimator::new(&a, n).confidence(confidence).seed(seed).adaptive()?;
            let exact = fem_exact_entropy(m);
            let abs_error = (est.value - exact).abs();
            Ok(Table1Row {
                m,
                degree: n,
                samples: est.samples_used,
                exact_entropy: exact,
                estimate: est.value,
                abs_error,
                rel_error: abs_error / exact.abs(),
                tau: est.tau,
                capped: est.capped,
            })
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}

/// Executes a parsed command.
pub fn run(config: &RunConfig) -> Result<Output> {
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            pool.install(|| dispatch(&config.command))
        }
        None => dispatch(&config.command),
    }
}

fn dispatch(command: &Command) -> Result<Output> {
    match command {
        Command::Entropy(args) => run_entropy(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Generate(args) => run_generate(args),
        Command::Table1(args) => run_table1(args),
    }
}

fn run_entropy(args: &EntropyArgs) -> Result<Output> {
    let loaded = load(&args.source)?;
    let a = &loaded.matrix;
    let mut warnings = loaded.warnings.clone();

    let mut psd_verified = false;
    if args.verify_psd {
        if a.dim() <= oracle::DEFAULT_MAX_DIM {
            oracle::check_psd(&oracle::dense_spectrum(a)?)?;
            psd_verified = true;
        } else {
            warnings.push(format!(
                "--verify-psd skipped: dimension {} exceeds dense limit {}",
                a.dim(),
                oracle::DEFAULT_MAX_DIM
            ));
        }
    }

    let mut estimator = EntropyEstimator::new(a, args.degree)
        .confidence(args.confidence)
        .seed(args.seed)
        .max_samples(args.max_samples)
        .normalize(args.normalize);

    let mut power = None;
    // Zero matrices short-circuit inside the estimator and need no bound.
    if a.trace() != 0.0 {
        let bound = match (args.gamma0, args.bound) {
            (Some(g), _) => SpectralBound::user(g * args.x0)?,
            (None, BoundChoice::Gershgorin) => gershgorin_upper_bound(a),
            (None, BoundChoice::Power) => {
                let opts = PowerIteration {
                    seed: args.seed,
                    ..PowerIteration::default()
                };
                power = Some(opts);
                power_iteration_bound(a, &opts)?
            }
        };
        let scaling = match args.gamma0 {
            Some(g) => ScalingParams::new(args.x0, g, BoundMethod::UserSupplied)?,
            None => ScalingParams::from_bound(&bound, args.x0)?,
        };
        estimator = estimator.scaling(scaling);
    }

    let estimate = match args.samples {
        Some(n) => estimator.fixed(n)?,
        None => estimator.adaptive()?,
    };
    if estimate.zero_trace {
        warnings.push("zero trace: entropy of the zero matrix is 0".into());
    }
    let json = to_json(&EntropyReport {
        estimate: &estimate,
        source: &loaded.source,
        power_iteration: power,
        psd_verified,
        warnings: &warnings,
    });
    if let Some(path) = &args.output {
        std::fs::write(path, format!("{json}\n")).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    let summary = format!(
        "entropy {:.6} ± {:.6} nats (p = {}, n = {}, N = {}{})",
        estimate.value,
        estimate.tau,
        estimate.confidence,
        estimate.degree,
        estimate.samples_used,
        if estimate.capped { ", capped" } else { "" }
    );
    Ok(Output { json, summary })
}

fn run_oracle(args: &OracleArgs) -> Result<Output> {
    let loaded = load(&args.source)?;
    let matrix = if args.normalize {
        let t = loaded.matrix.trace();
        if t == 0.0 {
            return Err(Error::ZeroTrace);
        }
        let triplets: Vec<_> = loaded.matrix.triplets().map(|(i, j, v)| (i, j, v / t)).collect();
        SymmetricSparseMatrix::from_triplets(loaded.matrix.dim(), triplets)?
    } else {
        loaded.matrix
    };
    let report = oracle::oracle_report(&matrix, args.max_dim)?;
    let json = to_json(&OracleOutput {
        report: &report,
        normalized: args.normalize,
        source: &loaded.source,
        warnings: &loaded.warnings,
    });
    let summary = format!(
        "exact entropy {:.6} nats, spectrum [{:.6e}, {:.6e}]",
        report.entropy, report.min_eig, report.max_eig
    );
    Ok(Output { json, summary })
}

fn run_generate(args: &GenerateArgs) -> Result<Output> {
    let loaded = generate(&args.generate)?;
    write_matrix_market(&loaded.matrix, &args.output)?;
    let json = to_json(&GenerateOutput {
        path: args.output.display().to_string(),
        dim: loaded.matrix.dim(),
        nnz: loaded.matrix.nnz(),
        trace: loaded.matrix.trace(),
        bandwidth: loaded.matrix.bandwidth(),
        source: &loaded.source,
        warnings: &loaded.warnings,
    });
    let summary = format!(
        "wrote {} ({}x{}, {} stored entries)",
        args.output.display(),
        loaded.matrix.dim(),
        loaded.matrix.dim(),
        loaded.matrix.nnz()
    );
    Ok(Output { json, summary })
}

fn run_table1(args: &Table1Args) -> Result<Output> {
    let sizes = args.sizes.clone().unwrap_or_else(|| TABLE1_SIZES.to_vec());
    let degrees = args.degrees.clone().unwrap_or_else(|| TABLE1_DEGREES.to_vec());
    let rows = table1_rows(&sizes, &degrees, args.confidence, args.seed)?;
    let json = to_json(&Table1Output {
        confidence: args.confidence,
        seed: args.seed,
        bound_method: BoundMethod::Gershgorin.as_str(),
        rows: &rows,
    });
    let mut summary = String::from("     m   n    N         exact      estimate   rel.err       tau\n");
    for r in &rows {
        summary.push_str(&format!(
            "{:>6} {:>3} {:>4} {:>13.4} {:>13.4} {:>8.4}% {:>9.4}\n",
            r.m,
            r.degree,
            r.samples,
            r.exact_entropy,
            r.estimate,
            100.0 * r.rel_error,
            r.tau
        ));
    }
    Ok(Output {
        json,
        summary: summary.trim_end().to_string(),
    })
}

/// JSON body for an error.
pub fn error_json(kind: &str, message: &str) -> String {
    #[derive(Serialize)]
    struct Inner<'a> {
        kind: &'a str,
        message: &'a str,
    }
    #[derive(Serialize)]
    struct Outer<'a> {
        error: Inner<'a>,
    }
    to_json(&Outer {
        error: Inner { kind, message },
    })
}
