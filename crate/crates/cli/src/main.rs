//! `simcat`: evaluate, tabulate and audit similarity and distance measures.
//!
//! Exit codes: 0 success, 1 audit verdict disagrees with the expected
//! metric status, 2 usage or parse error (including unknown measures),
//! 3 precondition error raised by a measure.

mod input;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use simcat_core::audit::{self, DomainSpec};
use simcat_core::{
    evaluate, lookup, registry_list, Family, InputKind, MeasureError, MetricClaim, Operand, Outcome,
};

use input::{operand, read_file, read_rows, ParamArgs, RowFormat};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Measure(MeasureError),
    /// A measure error at a matrix cell.
    Cell {
        row: usize,
        col: usize,
        error: MeasureError,
    },
    /// A malformed row of a data file.
    Row {
        row: usize,
        error: Box<CliError>,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Measure(MeasureError::UnknownMeasure(_)) => 2,
            CliError::Measure(_) | CliError::Cell { .. } => 3,
            CliError::Row { error, .. } => error.exit_code(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Measure(e) => format!("{}: {e}", e.kind()),
            CliError::Cell { row, col, error } => {
                format!("row {row}, column {col}: {}: {error}", error.kind())
            }
            CliError::Row { row, error } => format!("row {row}: {}", error.message()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "simcat",
    version,
    about = "Similarity and distance measures with a metric-axiom audit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one measure on two inputs.
    Eval(EvalArgs),
    /// Pairwise distance matrix of the rows of a file, as CSV.
    Matrix(MatrixArgs),
    /// Randomized check of the metric axioms for one measure.
    Audit(AuditArgs),
    /// List registered measures.
    List(ListArgs),
    /// Check cross-measure identities on random inputs.
    Relations(RelationsArgs),
}

#[derive(Clone, Copy, Debug)]
enum Precision {
    Full,
    Significant(usize),
}

fn parse_precision(s: &str) -> Result<Precision, String> {
    match s {
        "full" => Ok(Precision::Full),
        n => match n.parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(Precision::Significant(d)),
            _ => Err("expected `full` or a digit count 1..=17".into()),
        },
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Measure id or alias.
    measure: String,
    /// First input: comma-separated numbers, or raw text for string measures.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Second input.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// First input as a normalized PDF.
    #[arg(long, conflicts_with_all = ["a", "a_hist"])]
    a_pdf: Option<String>,
    #[arg(long, conflicts_with_all = ["b", "b_hist"])]
    b_pdf: Option<String>,
    /// First input as histogram counts; needs --normalize.
    #[arg(long, conflicts_with = "a")]
    a_hist: Option<String>,
    #[arg(long, conflicts_with = "b")]
    b_hist: Option<String>,
    /// Divide histogram counts by their total.
    #[arg(long)]
    normalize: bool,
    /// Strings, one per line; the first two lines are compared.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    file: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    /// Significant digits, or `full`.
    #[arg(long, default_value = "6", value_parser = parse_precision)]
    precision: Precision,
    /// Emit one JSON record.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MatrixArgs {
    measure: String,
    /// One input per line (numbers comma-separated; strings verbatim).
    #[arg(long)]
    file: PathBuf,
    /// Rows are histogram counts to normalize.
    #[arg(long)]
    normalize: bool,
    /// Tabulate similarities instead of distances.
    #[arg(long)]
    similarity: bool,
    /// Compute rows concurrently; the output is byte-identical.
    #[arg(long)]
    parallel: bool,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value = "6", value_parser = parse_precision)]
    precision: Precision,
    /// Write the CSV here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    measure: String,
    /// Sample space, e.g. `vector:nonneg`, `pdf:dim=5`, `string:alphabet=ab:len=5`.
    /// Defaults to a domain matched to the measure.
    #[arg(long)]
    domain: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, env = "SIMCAT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = audit::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Metric status to compare against instead of the registered claim.
    #[arg(long, value_parser = ["metric", "semi-metric", "not-metric", "unknown"])]
    expect: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ListArgs {
    /// Only this family (e.g. `entropy`, `chi2`).
    #[arg(long)]
    family: Option<String>,
    /// One JSON descriptor per line.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RelationsArgs {
    #[arg(long, env = "SIMCAT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Audit(a) => cmd_audit(a),
        Command::List(a) => cmd_list(a),
        Command::Relations(a) => cmd_relations(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn format_value(x: f64, precision: Precision) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    match precision {
        Precision::Full => format!("{x}"),
        Precision::Significant(_) if x == 0.0 || x.is_nan() => format!("{x}"),
        Precision::Significant(d) => {
            let rounded: f64 = format!("{:.*e}", d - 1, x)
                .parse()
                .expect("float round-trips");
            format!("{rounded}")
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
enum InputRecord {
    Vector(Vec<f64>),
    Pdf(Vec<f64>),
    String(String),
}

impl From<&Operand> for InputRecord {
    fn from(op: &Operand) -> Self {
        match op {
            Operand::Vector(v) => InputRecord::Vector(v.to_vec()),
            Operand::Pdf(p) => InputRecord::Pdf(p.to_vec()),
            Operand::Text(s) => InputRecord::String(s.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Inputs {
    a: InputRecord,
    b: InputRecord,
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    measure: &'static str,
    inputs: Inputs,
    inputs_digest: String,
    params: &'a ParamArgs,
    #[serde(skip_serializing_if = "Option::is_none")]
    similarity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<serde_json::Value>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn row_format(kind: InputKind, normalize: bool) -> RowFormat {
    match (kind, normalize) {
        (InputKind::String, _) => RowFormat::Text,
        (_, true) => RowFormat::Histogram,
        _ => RowFormat::Vector,
    }
}

fn eval_operands(
    args: &EvalArgs,
    kind: InputKind,
    params: &simcat_core::Params,
) -> Result<(Operand, Operand), CliError> {
    if kind == InputKind::String {
        let (a, b) = match (&args.file, &args.a, &args.b) {
            (Some(path), _, _) => {
                let text = read_file(path)?;
                let mut lines = text.lines();
                match (lines.next(), lines.next()) {
                    (Some(a), Some(b)) => (a.to_string(), b.to_string()),
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{} needs two lines",
                            path.display()
                        )))
                    }
                }
            }
            (None, Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => {
                return Err(CliError::Usage(
                    "string measures need --a and --b, or --file".into(),
                ))
            }
        };
        return Ok((
            operand(kind, RowFormat::Text, &a)?,
            operand(kind, RowFormat::Text, &b)?,
        ));
    }
    let one = |plain: &Option<String>,
               pdf: &Option<String>,
               hist: &Option<String>,
               name: &str|
     -> Result<Option<Operand>, CliError> {
        match (plain, pdf, hist) {
            (Some(v), None, None) => operand(kind, RowFormat::Vector, v).map(Some),
            (None, Some(v), None) => operand(kind, RowFormat::Pdf, v).map(Some),
            (None, None, Some(v)) if args.normalize => {
                operand(kind, RowFormat::Histogram, v).map(Some)
            }
            (None, None, Some(_)) => {
                Err(CliError::Usage(format!("--{name}-hist needs --normalize")))
            }
            (None, None, None) => Ok(None),
            _ => Err(CliError::Usage(format!(
                "give one of --{name}, --{name}-pdf, --{name}-hist"
            ))),
        }
    };
    let a = one(&args.a, &args.a_pdf, &args.a_hist, "a")?
        .ok_or_else(|| CliError::Usage("missing input a".into()))?;
    let b = match one(&args.b, &args.b_pdf, &args.b_hist, "b")? {
        Some(b) => b,
        // Distance from the sample mean.
        None if kind == InputKind::DatasetVector => match &params.covariance {
            Some(model) => Operand::Vector(model.mean().clone()),
            None => return Err(CliError::Usage("mahalanobis needs --dataset".into())),
        },
        None => return Err(CliError::Usage("missing input b".into())),
    };
    Ok((a, b))
}

fn cmd_eval(args: EvalArgs) -> Result<u8, CliError> {
    let desc = lookup(&args.measure)?;
    let params = args.params.to_params()?;
    let (a, b) = eval_operands(&args, desc.input_kind, &params)?;
    let outcome = evaluate(desc.id, &a, &b, &params)?;

    if args.json {
        let inputs = Inputs {
            a: (&a).into(),
            b: (&b).into(),
        };
        let inputs_digest = sha256_hex(
            serde_json::to_string(&inputs)
                .expect("inputs serialize")
                .as_bytes(),
        );
        let distance = outcome.extended_distance().map(|d| {
            if d.is_finite() {
                serde_json::json!(d)
            } else {
                serde_json::json!("inf")
            }
        });
        let record = EvalRecord {
            measure: desc.id,
            inputs,
            inputs_digest,
            params: &args.params,
            similarity: outcome.similarity(),
            distance,
        };
        println!(
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        );
        return Ok(0);
    }
    let f = |x| format_value(x, args.precision);
    match outcome {
        Outcome::Distance(d) => println!("{}", f(d)),
        Outcome::Similarity(s) => println!("similarity {}", f(s)),
        Outcome::Pair(p) => println!("similarity {}\ndistance {}", f(p.similarity), f(p.distance)),
        Outcome::NoConversion => println!("no conversion (distance inf)"),
    }
    Ok(0)
}

fn cmd_matrix(args: MatrixArgs) -> Result<u8, CliError> {
    let desc = lookup(&args.measure)?;
    let format = row_format(desc.input_kind, args.normalize);
    let rows = read_rows(&args.file, format)?
        .iter()
        .enumerate()
        .map(|(row, raw)| {
            operand(desc.input_kind, format, raw).map_err(|e| CliError::Row {
                row,
                error: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut params = args.params.to_params()?;
    if desc.input_kind == InputKind::DatasetVector && params.covariance.is_none() {
        // Without --dataset, the rows themselves are the sample.
        let sample = simcat_core::DataSample::new(
            rows.iter()
                .map(|r| match r {
                    Operand::Vector(v) => v.to_vec(),
                    Operand::Pdf(p) => p.to_vec(),
                    Operand::Text(_) => unreachable!("numeric rows"),
                })
                .collect(),
        )?;
        let inversion = if args.params.pinv {
            simcat_core::chi_square::Inversion::Pseudo
        } else {
            simcat_core::chi_square::Inversion::Exact
        };
        params.covariance = Some(std::sync::Arc::new(
            simcat_core::chi_square::estimate_covariance(&sample, inversion)?,
        ));
    }

    let cell = |i: usize, j: usize| -> Result<f64, MeasureError> {
        let o = evaluate(desc.id, &rows[i], &rows[j], &params)?;
        let v = if args.similarity {
            o.similarity()
        } else {
            o.extended_distance()
        };
        v.ok_or_else(|| MeasureError::SimilarityOnly(desc.id.to_string()))
    };
    let row = |i: usize| -> Vec<Result<f64, MeasureError>> {
        (0..rows.len()).map(|j| cell(i, j)).collect()
    };
    let table: Vec<Vec<Result<f64, MeasureError>>> = if args.parallel {
        (0..rows.len()).into_par_iter().map(row).collect()
    } else {
        (0..rows.len()).map(row).collect()
    };

    let mut csv = String::new();
    for (i, cells) in table.into_iter().enumerate() {
        let line = cells
            .into_iter()
            .enumerate()
            .map(|(j, c)| {
                c.map(|v| format_value(v, args.precision))
                    .map_err(|error| CliError::Cell {
                        row: i,
                        col: j,
                        error,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        csv.push_str(&line.join(","));
        csv.push('\n');
    }
    match &args.output {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = std::io::stdout().lock().write_all(csv.as_bytes());
        }
    }
    Ok(0)
}

fn cmd_audit(args: AuditArgs) -> Result<u8, CliError> {
    let desc = lookup(&args.measure)?;
    let domain = match &args.domain {
        Some(spec) => spec
            .parse::<DomainSpec>()
            .map_err(|e| CliError::Usage(e.to_string()))?,
        None => DomainSpec::default_for(desc),
    };
    let report = audit::audit(desc.id, &domain, args.trials, args.seed, args.tol)?;
    let expected = args
        .expect
        .as_deref()
        .and_then(MetricClaim::from_tag)
        .unwrap_or(desc.claimed_metric);
    let ok = audit::consistent(expected, report.observed);
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
        if args.expect.is_some() {
            println!(
                "expected: {expected}; {}",
                if ok { "matches" } else { "MISMATCH" }
            );
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_list(args: ListArgs) -> Result<u8, CliError> {
    let family = match &args.family {
        None => None,
        Some(tag) => Some(Family::from_tag(tag).ok_or_else(|| {
            let known: Vec<_> = Family::ALL.iter().map(|f| f.tag()).collect();
            CliError::Usage(format!(
                "unknown family {tag:?}; one of {}",
                known.join(", ")
            ))
        })?),
    };
    let rows: Vec<_> = registry_list()
        .into_iter()
        .filter(|d| family.is_none_or(|f| d.family == f))
        .collect();
    let mut out = String::new();
    if args.json {
        for d in rows {
            out.push_str(&serde_json::to_string(d).expect("descriptor serializes"));
            out.push('\n');
        }
    } else {
        let _ = writeln!(
            out,
            "{:<30} {:<21} {:<15} {:<11} range",
            "id", "family", "input", "claim"
        );
        for d in rows {
            let _ = writeln!(
                out,
                "{:<30} {:<21} {:<15} {:<11} {}",
                d.id, d.family, d.input_kind, d.claimed_metric, d.value_range
            );
        }
    }
    print!("{out}");
    Ok(0)
}

fn cmd_relations(args: RelationsArgs) -> Result<u8, CliError> {
    let report = audit::relation_suite(args.seed, args.trials);
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        print!("{report}");
    }
    Ok(0)
}
