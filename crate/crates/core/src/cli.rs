//! Command-line front end.
//!
//! Every command writes its artifacts into `--out-dir`. Output depends only
//! on the arguments, so two identical invocations produce identical files
//! (wall-clock timing is opt-in through `--timing`).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::concept::FormalConcept;
use crate::data::{
    discretize, read_csv, read_fimi, read_ranges, read_raw_table, write_csv, ColumnRange,
    CsvOptions, GradeDistribution, LabeledMatrix,
};
use crate::error::{Error, Result};
use crate::experiment::{factorizability_experiment, FactorizabilityConfig};
use crate::factorization::{
    find_factors_with, optimal_factorization, FactorSet, FindOptions, OracleLimits, TieBreak,
};
use crate::matrix::GradedMatrix;
use crate::par::Execution;
use crate::report::{coverage_tsv, stats_tsv, FactorReport};
use crate::scale::{ParseMode, Scale, TNorm};

#[derive(Debug, Parser)]
#[command(
    name = "gradefactor",
    version,
    about = "Factor analysis of matrices with grades"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a matrix greedily; writes A.csv, B.csv, factors.json, coverage.tsv.
    Factorize(FactorizeArgs),
    /// Minimum decomposition by exhaustive search (small inputs only).
    Oracle(OracleArgs),
    /// Coverage curve of given factor matrices (or of a greedy run).
    Coverage(CoverageArgs),
    /// Rescale raw scores onto the grade scale; writes I.csv.
    Discretize(DiscretizeArgs),
    /// Greedy factor counts on random k-factorizable matrices; writes stats.tsv.
    ExperimentFactorizability(ExperimentArgs),
    /// Coverage of the first factors of a large dataset; writes coverage.tsv, factors.json.
    ExperimentCoverage(FactorizeArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InputFormat {
    Csv,
    Fimi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TNormArg {
    Lukasiewicz,
    Godel,
    Goguen,
}

impl From<TNormArg> for TNorm {
    fn from(t: TNormArg) -> Self {
        match t {
            TNormArg::Lukasiewicz => TNorm::Lukasiewicz,
            TNormArg::Godel => TNorm::Godel,
            TNormArg::Goguen => TNorm::Goguen,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TieBreakArg {
    ScanOrder,
    GradeThenIndex,
    IndexThenGrade,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::ScanOrder => TieBreak::ScanOrder,
            TieBreakArg::GradeThenIndex => TieBreak::GradeThenIndex,
            TieBreakArg::IndexThenGrade => TieBreak::IndexThenGrade,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExecutionArg {
    Sequential,
    Parallel,
}

impl From<ExecutionArg> for Execution {
    fn from(e: ExecutionArg) -> Self {
        match e {
            ExecutionArg::Sequential => Execution::Sequential,
            ExecutionArg::Parallel => Execution::Parallel,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Number of grades on the scale (2 = Boolean).
    #[arg(long, default_value_t = 5)]
    pub levels: u32,
    #[arg(long, value_enum, default_value = "lukasiewicz")]
    pub tnorm: TNormArg,
    /// Allow the product t-norm, rounding its values half-up onto the scale.
    #[arg(long)]
    pub rounded: bool,
}

impl ScaleArgs {
    pub fn scale(&self) -> Result<Scale> {
        let kind = TNorm::from(self.tnorm);
        if self.rounded {
            Scale::with_rounding(self.levels, kind)
        } else {
            Scale::new(self.levels, kind)
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: InputFormat,
    /// Reject grades that are not on the scale (default).
    #[arg(long, conflicts_with = "lenient")]
    pub strict: bool,
    /// Round off-scale grades to the nearest level.
    #[arg(long)]
    pub lenient: bool,
    /// Number of items for FIMI input (default: largest id + 1).
    #[arg(long)]
    pub items: Option<usize>,
}

impl InputArgs {
    pub fn mode(&self) -> ParseMode {
        if self.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        }
    }

    pub fn load(&self, scale: Scale) -> Result<LabeledMatrix> {
        match self.format {
            InputFormat::Csv => read_csv(
                &self.input,
                scale,
                CsvOptions {
                    mode: self.mode(),
                    ..CsvOptions::default()
                },
            ),
            InputFormat::Fimi => {
                let m = read_fimi(&self.input, self.items)?;
                // FIMI data is Boolean; keep the requested t-norm
                let boolean = Scale::with_rounding(2, scale.kind())?;
                Ok(LabeledMatrix::unlabeled(m.with_scale(boolean)?))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scale: ScaleArgs,
    #[arg(long, value_enum, default_value = "scan-order")]
    pub tie_break: TieBreakArg,
    /// Stop after this many factors.
    #[arg(long)]
    pub max_factors: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "parallel")]
    pub execution: ExecutionArg,
    /// Record elapsed time in factors.json (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scale: ScaleArgs,
    #[arg(long, default_value_t = OracleLimits::default().max_closures)]
    pub max_closures: u64,
    #[arg(long, default_value_t = OracleLimits::default().max_search_nodes)]
    pub max_nodes: u64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scale: ScaleArgs,
    /// Object-factor matrix; requires --b.
    #[arg(long, requires = "b")]
    pub a: Option<PathBuf>,
    /// Factor-attribute matrix; requires --a.
    #[arg(long, requires = "a")]
    pub b: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "scan-order")]
    pub tie_break: TieBreakArg,
    #[arg(long)]
    pub max_factors: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    /// Raw scores (CSV with optional header and label column).
    #[arg(long)]
    pub input: PathBuf,
    /// Minimum and maximum rows (default: the columns' own ranges).
    #[arg(long)]
    pub ranges: Option<PathBuf>,
    #[command(flatten)]
    pub scale: ScaleArgs,
    #[arg(long, conflicts_with = "lenient")]
    pub strict: bool,
    /// Clamp values outside the ranges instead of failing.
    #[arg(long)]
    pub lenient: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub scale: ScaleArgs,
    /// Intended factor counts.
    #[arg(long, value_delimiter = ',', default_value = "5,7,9,11,13,15")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Matrix size (rows = columns).
    #[arg(long, default_value_t = 20)]
    pub size: usize,
    /// Grade weights w0,w1,... (default: uniform).
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "scan-order")]
    pub tie_break: TieBreakArg,
    #[arg(long, value_enum, default_value = "parallel")]
    pub execution: ExecutionArg,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

fn factor_labels(k: usize) -> Vec<String> {
    (1..=k).map(|l| format!("F{l}")).collect()
}

/// Write A.csv, B.csv, factors.json and coverage.tsv for a factor set.
fn write_factor_artifacts(
    dir: &Path,
    data: &LabeledMatrix,
    factors: &FactorSet,
    mut report: FactorReport,
) -> Result<()> {
    let ctx = &data.matrix;
    let (a, b) = factors.factor_matrices();
    if factors.is_complete() && a.compose(&b)? != *ctx {
        return Err(Error::Config(
            "internal error: A ∘ B does not reproduce the input".into(),
        ));
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let labels = factor_labels(factors.len());
    write_csv(
        &LabeledMatrix {
            matrix: a,
            row_labels: data.row_labels.clone(),
            col_labels: data.row_labels.as_ref().map(|_| labels.clone()),
        },
        dir.join("A.csv"),
    )?;
    write_csv(
        &LabeledMatrix {
            matrix: b,
            row_labels: data.col_labels.as_ref().map(|_| labels),
            col_labels: data.col_labels.clone(),
        },
        dir.join("B.csv"),
    )?;
    report.row_labels = data.row_labels.clone();
    report.col_labels = data.col_labels.clone();
    write_file(dir, "factors.json", &report.to_json()?)?;
    write_file(
        dir,
        "coverage.tsv",
        &coverage_tsv(
            &factors.coverage_curve(ctx)?,
            &factors.nonzero_coverage_curve(ctx)?,
        ),
    )?;
    Ok(())
}

fn run_factorize(name: &str, args: &FactorizeArgs, default_max: Option<usize>) -> Result<String> {
    let data = args.input.load(args.scale.scale()?)?;
    let tie_break = TieBreak::from(args.tie_break);
    let opts = FindOptions::default()
        .with_tie_break(tie_break)
        .with_execution(args.execution.into())
        .with_max_factors(args.max_factors.or(default_max));
    let started = Instant::now();
    let factors = find_factors_with(&data.matrix, &opts);
    let elapsed = started.elapsed();
    let mut report = FactorReport::new(name, &data.matrix, &factors)?;
    report.tie_break = Some(tie_break.name().to_string());
    report.truncated = !factors.is_complete();
    if args.timing {
        report.elapsed_ms = Some(elapsed.as_millis());
    }
    write_factor_artifacts(&args.out_dir, &data, &factors, report)?;
    Ok(format!(
        "{} factors for a {}x{} matrix ({})",
        factors.len(),
        data.matrix.rows(),
        data.matrix.cols(),
        if factors.is_complete() {
            "exact"
        } else {
            "truncated, not exact"
        }
    ))
}

fn run_oracle(args: &OracleArgs) -> Result<String> {
    let data = args.input.load(args.scale.scale()?)?;
    let limits = OracleLimits {
        max_closures: args.max_closures,
        max_search_nodes: args.max_nodes,
    };
    let factors = optimal_factorization(&data.matrix, limits, Execution::Parallel)?;
    let report = FactorReport::new("oracle", &data.matrix, &factors)?;
    write_factor_artifacts(&args.out_dir, &data, &factors, report)?;
    Ok(format!("k={}", factors.len()))
}

fn factors_from_matrices(
    ctx: &GradedMatrix,
    a: &GradedMatrix,
    b: &GradedMatrix,
) -> Result<FactorSet> {
    if a.rows() != ctx.rows() || b.cols() != ctx.cols() || a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{} and B is {}x{} for a {}x{} input",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            ctx.rows(),
            ctx.cols()
        )));
    }
    let concepts = (0..a.cols())
        .map(|l| FormalConcept::new(ctx, a.column_set(l), b.row_set(l)))
        .collect::<Result<Vec<_>>>()?;
    FactorSet::from_concepts(ctx, concepts)
}

fn run_coverage(args: &CoverageArgs) -> Result<String> {
    let scale = args.scale.scale()?;
    let data = args.input.load(scale)?;
    let ctx = &data.matrix;
    let factors = match (&args.a, &args.b) {
        (Some(a), Some(b)) => {
            let opts = CsvOptions {
                mode: args.input.mode(),
                ..CsvOptions::default()
            };
            let a = read_csv(a, *ctx.scale(), opts)?.matrix;
            let b = read_csv(b, *ctx.scale(), opts)?.matrix;
            factors_from_matrices(ctx, &a, &b)?
        }
        _ => {
            let opts = FindOptions::default()
                .with_tie_break(args.tie_break.into())
                .with_max_factors(args.max_factors);
            find_factors_with(ctx, &opts)
        }
    };
    let curve = factors.coverage_curve(ctx)?;
    write_file(
        &args.out_dir,
        "coverage.tsv",
        &coverage_tsv(&curve, &factors.nonzero_coverage_curve(ctx)?),
    )?;
    let shown: Vec<String> = curve
        .iter()
        .map(|r| format!("{:.2}", *r.numer() as f64 / *r.denom() as f64))
        .collect();
    Ok(shown.join(" "))
}

fn run_discretize(args: &DiscretizeArgs) -> Result<String> {
    let scale = args.scale.scale()?;
    let table = read_raw_table(&args.input)?;
    let ranges = match &args.ranges {
        Some(p) => read_ranges(p)?,
        None => ColumnRange::of_table(&table),
    };
    let mode = if args.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    };
    let m = discretize(&table, &ranges, scale, mode)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| Error::io(&args.out_dir, e))?;
    let path = args.out_dir.join("I.csv");
    write_csv(
        &LabeledMatrix {
            matrix: m,
            row_labels: Some(table.row_labels.clone()),
            col_labels: Some(table.col_labels.clone()),
        },
        &path,
    )?;
    Ok(format!("wrote {}", path.display()))
}

fn run_experiment(args: &ExperimentArgs) -> Result<String> {
    let scale = args.scale.scale()?;
    if args.trials == 0 {
        return Err(Error::Config("--trials must be at least 1".into()));
    }
    let mut cfg = FactorizabilityConfig::new(scale, args.k.clone(), args.trials, args.seed);
    cfg.rows = args.size;
    cfg.cols = args.size;
    cfg.tie_break = args.tie_break.into();
    cfg.execution = args.execution.into();
    if let Some(d) = &args.dist {
        cfg.distribution = GradeDistribution::parse(&scale, d)?;
    }
    let stats = factorizability_experiment(&cfg)?;
    let table = stats_tsv(scale.kind().name(), &stats);
    write_file(&args.out_dir, "stats.tsv", &table)?;
    Ok(table.trim_end().to_string())
}

/// Run a parsed command; returns a one-line summary for the terminal.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Factorize(args) => run_factorize("factorize", args, None),
        Command::ExperimentCoverage(args) => run_factorize("experiment-coverage", args, Some(50)),
        Command::Oracle(args) => run_oracle(args),
        Command::Coverage(args) => run_coverage(args),
        Command::Discretize(args) => run_discretize(args),
        Command::ExperimentFactorizability(args) => run_experiment(args),
    }
}
