//! Flag definitions and the implementation of every subcommand.
//!
//! Deterministic report material goes to stdout or `--output`; the method
//! actually used and wall-clock timings go to stderr so that repeated runs
//! produce byte-identical reports.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use blockdet::advisor::{self, ComplexityProfile, Route};
use blockdet::blockcompute::{det_blockwise, per_blockwise};
use blockdet::blocks::decompose_matrix;
use blockdet::bpartition;
use blockdet::generator::{self, Attachment, GenSpec};
use blockdet::kernels::{det_dense, per_ryser, DEFAULT_PERMANENT_CAP};
use blockdet::{ArithmeticMode, Matrix, Scalar};

use crate::formats::{detect_format, matrix_to_json, parse_matrix, MatrixFormat};
use crate::reports;
use crate::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "blockdet",
    version,
    about = "Determinants and permanents via block decomposition of the matrix digraph"
)]
pub struct Cli {
    /// Print extra diagnostics to stderr.
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Report blocks, cut-vertices and cut-indices of the matrix digraph.
    Analyze(InputArgs),
    /// Count (and optionally list) the B-partitions.
    Bpartitions(BpartitionsArgs),
    /// Compute the determinant.
    Det(ComputeArgs),
    /// Compute the permanent.
    Per(ComputeArgs),
    /// Evaluate the cost model: route recommendation or curve CSV.
    Advise(AdviseArgs),
    /// Time blockwise against dense kernels on generated chains (CSV).
    Bench(BenchArgs),
    /// Generate a seeded block-structured matrix with its decomposition.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    DenseCsv,
    MatrixMarket,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Blockwise,
    Dense,
}

#[derive(Args)]
pub struct InputArgs {
    /// Matrix file to read.
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; `auto` infers from the extension.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct BpartitionsArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// List the partitions, not just their count.
    #[arg(long)]
    pub list: bool,
    /// Stop the listing after this many partitions.
    #[arg(long, default_value_t = 10_000)]
    pub limit: usize,
}

#[derive(Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Arithmetic family for the whole run.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Computation route; `auto` asks the cost model.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Cost-model exponent used by `--method auto`.
    #[arg(long, default_value_t = advisor::DEFAULT_EPSILON)]
    pub epsilon: f64,
}

#[derive(Args)]
pub struct AdviseArgs {
    /// Profile this matrix file (alternative to --n/--delta).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
    /// Total order for direct bound evaluation.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest block size for direct bound evaluation.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Block count for direct bound evaluation.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = advisor::DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Emit the curve CSV (`k,gamma_max,vacuous`) instead of the report.
    #[arg(long)]
    pub curve: bool,
    /// Largest block count tabulated by --curve.
    #[arg(long, default_value_t = 50)]
    pub k_max: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Generator family; `chain` is the only one built in.
    #[arg(long, default_value = "chain")]
    pub family: String,
    #[arg(long, default_value_t = 5)]
    pub blocks: usize,
    #[arg(long, default_value_t = 6)]
    pub block_size: usize,
    /// Number of seeded instances to time.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    /// First seed; instance i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenArgs {
    /// JSON generation spec (see the generator schema in the README).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Block sizes, e.g. `3,4,2` (alternative to --spec).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// chain | star | random_tree
    #[arg(long, default_value = "chain")]
    pub attachment: String,
    /// Probability of a nonzero loop on each cut-vertex.
    #[arg(long, default_value_t = 0.5)]
    pub loop_prob: f64,
    /// Probability of each extra within-block edge.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    /// Weight bounds (inclusive); zero draws are redrawn.
    #[arg(long, default_value_t = -9, allow_negative_numbers = true)]
    pub wmin: i64,
    #[arg(long, default_value_t = 9, allow_negative_numbers = true)]
    pub wmax: i64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> CliResult<()> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args, verbose),
        Command::Bpartitions(args) => cmd_bpartitions(args, verbose),
        Command::Det(args) => cmd_compute(args, Kind::Det, verbose),
        Command::Per(args) => cmd_compute(args, Kind::Per, verbose),
        Command::Advise(args) => cmd_advise(args, verbose),
        Command::Bench(args) => cmd_bench(args, verbose),
        Command::Gen(args) => cmd_gen(args, verbose),
    }
}

fn resolve_format(path: &Path, arg: FormatArg) -> CliResult<MatrixFormat> {
    match arg {
        FormatArg::Auto => detect_format(path),
        FormatArg::DenseCsv => Ok(MatrixFormat::DenseCsv),
        FormatArg::MatrixMarket => Ok(MatrixFormat::MatrixMarket),
        FormatArg::Json => Ok(MatrixFormat::Json),
    }
}

fn load(io: &InputArgs, mode: ArithmeticMode, verbose: u8) -> CliResult<Matrix> {
    let format = resolve_format(&io.input, io.format)?;
    let m = parse_matrix(&io.input, format, mode)?;
    if verbose > 0 {
        eprintln!("loaded {:?}: order {}", io.input, m.order());
    }
    Ok(m)
}

fn emit(output: Option<&PathBuf>, content: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {path:?}: {e}"))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_analyze(args: InputArgs, verbose: u8) -> CliResult<()> {
    let m = load(&args, ArithmeticMode::Exact, verbose)?;
    let d = decompose_matrix(&m);
    let json = reports::decomposition_json(&d);
    emit(
        args.output.as_ref(),
        &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()),
    )
}

fn cmd_bpartitions(args: BpartitionsArgs, verbose: u8) -> CliResult<()> {
    let m = load(&args.io, ArithmeticMode::Exact, verbose)?;
    let d = decompose_matrix(&m);
    let count = bpartition::count(&d).to_string();
    let listing = if args.list {
        let mut iter = bpartition::enumerate(&d);
        let partitions: Vec<Vec<Vec<usize>>> = iter
            .by_ref()
            .take(args.limit)
            .map(|p| p.parts.iter().map(|s| s.as_slice().to_vec()).collect())
            .collect();
        let truncated = iter.next().is_some();
        Some((partitions, truncated))
    } else {
        None
    };
    let json = reports::bpartitions_json(&count, listing);
    emit(
        args.io.output.as_ref(),
        &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()),
    )
}

#[derive(Clone, Copy)]
enum Kind {
    Det,
    Per,
}

fn cmd_compute(args: ComputeArgs, kind: Kind, verbose: u8) -> CliResult<()> {
    let mode = match args.mode {
        ModeArg::Exact => ArithmeticMode::Exact,
        ModeArg::Float => ArithmeticMode::Float,
    };
    let m = load(&args.io, mode, verbose)?;
    let route = match args.method {
        MethodArg::Blockwise => Route::Blockwise,
        MethodArg::Dense => Route::Dense,
        MethodArg::Auto => {
            let d = decompose_matrix(&m);
            let p = ComplexityProfile::from_decomposition(&d, args.epsilon);
            let (det_route, per_route) = advisor::recommend(&p);
            match kind {
                Kind::Det => det_route,
                Kind::Per => per_route,
            }
        }
    };
    let auto = matches!(args.method, MethodArg::Auto);
    let started = Instant::now();
    let value: Scalar = match (kind, route) {
        (Kind::Det, Route::Blockwise) => det_blockwise(&m),
        (Kind::Det, Route::Dense) => det_dense(&m),
        (Kind::Per, Route::Blockwise) => per_blockwise(&m)?,
        (Kind::Per, Route::Dense) => per_ryser(&m)?,
    };
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    emit(args.io.output.as_ref(), &format!("{value}\n"))?;
    eprintln!("method: {route}{}", if auto { " (auto)" } else { "" });
    eprintln!("time_ms: {elapsed_ms:.3}");
    Ok(())
}

fn cmd_advise(args: AdviseArgs, verbose: u8) -> CliResult<()> {
    let (n, delta, k, profile) = match (&args.input, args.n, args.delta) {
        (Some(path), _, _) => {
            let io = InputArgs {
                input: path.clone(),
                format: args.format,
                output: None,
            };
            let m = load(&io, ArithmeticMode::Exact, verbose)?;
            let d = decompose_matrix(&m);
            let p = ComplexityProfile::from_decomposition(&d, args.epsilon);
            (p.n, p.delta.max(1), p.k.max(1), Some(p))
        }
        (None, Some(n), Some(delta)) => (n, delta, args.k, None),
        _ => {
            return Err(CliError::Usage(
                "advise needs --input, or both --n and --delta".into(),
            ))
        }
    };

    if args.curve {
        let points = advisor::curve_points(n, delta, args.epsilon, 1..=args.k_max)?;
        let mut csv = Vec::new();
        advisor::write_curve_csv(&mut csv, &points)
            .map_err(|e| CliError::Usage(format!("cannot render curve: {e}")))?;
        return emit(args.output.as_ref(), &String::from_utf8(csv).unwrap());
    }

    let text = match &profile {
        Some(p) => reports::profile_text(p),
        None => reports::bounds_text(n, delta, k, args.epsilon)?,
    };
    emit(args.output.as_ref(), &text)
}

fn cmd_bench(args: BenchArgs, verbose: u8) -> CliResult<()> {
    if args.family != "chain" {
        return Err(CliError::Usage(format!(
            "unknown bench family {:?} (available: chain)",
            args.family
        )));
    }
    let mut rows = vec![reports::BENCH_HEADER.to_string()];
    for i in 0..args.count {
        let seed = args.seed + i as u64;
        // loops on every cut-vertex so the deep removal paths get timed too
        let spec = GenSpec {
            loop_policy: 1.0,
            density: 0.6,
            ..GenSpec::new(vec![args.block_size; args.blocks], Attachment::Chain, seed)
        };
        let (m, _) = generator::generate(&spec)?;
        let n = m.order();
        if verbose > 0 {
            eprintln!("bench instance seed={seed} n={n}");
        }

        let timed = |f: &dyn Fn(&Matrix) -> Scalar| -> (f64, Scalar) {
            let t = Instant::now();
            let v = f(&m);
            (t.elapsed().as_secs_f64() * 1e3, v)
        };
        let (ms, v) = timed(&det_blockwise);
        rows.push(reports::bench_row(&args.family, n, "det_blockwise", ms, &v));
        let (ms, v) = timed(&det_dense);
        rows.push(reports::bench_row(&args.family, n, "det_dense", ms, &v));
        if n <= DEFAULT_PERMANENT_CAP {
            let t = Instant::now();
            let v = per_blockwise(&m)?;
            let ms = t.elapsed().as_secs_f64() * 1e3;
            rows.push(reports::bench_row(&args.family, n, "per_blockwise", ms, &v));
            let t = Instant::now();
            let v = per_ryser(&m)?;
            let ms = t.elapsed().as_secs_f64() * 1e3;
            rows.push(reports::bench_row(&args.family, n, "per_dense", ms, &v));
        }
    }
    rows.push(String::new());
    emit(args.output.as_ref(), &rows.join("\n"))
}

fn parse_attachment(name: &str) -> CliResult<Attachment> {
    match name {
        "chain" => Ok(Attachment::Chain),
        "star" => Ok(Attachment::Star),
        "random_tree" => Ok(Attachment::RandomTree),
        other => Err(CliError::Usage(format!(
            "unknown attachment {other:?} (chain | star | random_tree; explicit targets need --spec)"
        ))),
    }
}

fn cmd_gen(args: GenArgs, verbose: u8) -> CliResult<()> {
    let spec = match (&args.spec, &args.sizes) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path:?}: {e}")))?;
            serde_json::from_str::<GenSpec>(&text)
                .map_err(|e| CliError::Parse(format!("{}:{}: {e}", path.display(), e.line())))?
        }
        (None, Some(sizes)) => GenSpec {
            block_sizes: sizes.clone(),
            attachment: parse_attachment(&args.attachment)?,
            loop_policy: args.loop_prob,
            weight_range: (args.wmin, args.wmax),
            density: args.density,
            seed: args.seed,
        },
        _ => {
            return Err(CliError::Usage(
                "gen needs exactly one of --spec or --sizes".into(),
            ))
        }
    };
    let (m, expected) = generator::generate(&spec)?;
    if verbose > 0 {
        eprintln!(
            "generated order {} with {} blocks",
            m.order(),
            expected.block_count()
        );
    }
    let doc = serde_json::json!({
        "matrix": matrix_to_json(&m),
        "expected_decomposition": reports::decomposition_json(&expected),
    });
    emit(
        args.output.as_ref(),
        &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
    )
}
