//! `algrr` — exact characteristic-class and algebroid-cohomology CLI.
//!
//! Every subcommand prints either a short human-readable summary or, with
//! `--json`, exactly one canonical JSON record on standard output. Errors
//! go to standard error. Exit codes: `0` the computation succeeded and
//! every checked property holds; `1` the computation succeeded but the
//! checked property fails (identity falsified, positivity obstructed,
//! invalid presentation); `2` usage, I/O, schema, or validation errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use algrr_core::canonical::{
    matrix_value, rational_value, record, series_value, to_canonical_string,
};
use algrr_core::{
    algebroid_rr_index, average_euler, cohomology_dims, connes_comparison, eval_class_expr,
    foliated_rr_index, koszul_differential, load_bundle_table, load_descriptor, nijenhuis_check,
    parse_class_expr, positivity_obstruction, print_class_expr, verify_rr_identity_perturbed,
    AlgebroidError, DescriptorError, IdentityReport, NijenhuisReport, ProblemDescriptor,
    RawPrefactor, ValidationReport,
};

#[derive(Parser)]
#[command(
    name = "algrr",
    version,
    about = "Exact Riemann-Roch identity checks, characteristic-class expansions, \
             Lie algebroid cohomology, and index evaluation",
    propagate_version = true
)]
struct Cli {
    /// Emit one canonical JSON record on stdout instead of human text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Riemann-Roch curvature identity for a rank-K bundle.
    VerifyIdentity(VerifyIdentityArgs),
    /// Expand a class expression as a truncated series in Chern generators.
    Expand(ExpandArgs),
    /// Cohomology dimensions of a presented algebroid complex.
    Cohomology(FileArg),
    /// Evaluate an index descriptor (algebroid-index or foliated-index).
    Index(IndexArgs),
    /// Weighted average Euler characteristic of a foliation descriptor.
    Euler(FileArg),
    /// Validate a presentation (bracket axioms, flatness prerequisites,
    /// and the complex-structure integrability test when one is given).
    Check(FileArg),
    /// Positivity obstruction for a tangential line bundle.
    Positivity(FileArg),
    /// Compare the two index-prefactor conventions at leaf dimension K.
    CompareConnes(CompareConnesArgs),
}

#[derive(Args)]
struct VerifyIdentityArgs {
    /// Identity-check descriptor file (alternative to --rank/--cutoff).
    #[arg(conflicts_with_all = ["rank", "cutoff"], value_name = "FILE")]
    file: Option<String>,
    /// Rank of the formal bundle.
    #[arg(long, required_unless_present = "file")]
    rank: Option<u32>,
    /// Truncation degree (default: ALGRR_CUTOFF_DEFAULT, else 2*rank).
    #[arg(long)]
    cutoff: Option<u32>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Class expression, e.g. "ch(E)*td(T)".
    expr: String,
    /// JSON bundle table: {"bundles": [{"name": "E", "rank": 1}, ...]}.
    #[arg(long, value_name = "FILE")]
    bundles: String,
    /// Truncation degree (default: ALGRR_CUTOFF_DEFAULT).
    #[arg(long)]
    cutoff: Option<u32>,
}

#[derive(Args)]
struct FileArg {
    /// Problem descriptor file.
    file: String,
}

#[derive(Args)]
struct IndexArgs {
    /// Index descriptor file (kind algebroid-index or foliated-index).
    file: String,
    /// Also report the symbolic raw-form prefactor.
    #[arg(long)]
    raw_prefactor: bool,
}

#[derive(Args)]
struct CompareConnesArgs {
    /// Real dimension of the complex leaves (even, positive).
    #[arg(long)]
    k: u32,
}

/// An operational failure: message for stderr plus the exit code (always
/// 2 — mathematical "checked and false" outcomes are not errors and are
/// reported through normal output with exit code 1).
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 2,
        }
    }

    fn checked(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 1,
        }
    }
}

macro_rules! fail_from {
    ($ty:ty) => {
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::usage(e.to_string())
            }
        }
    };
}

fail_from!(DescriptorError);
fail_from!(algrr_core::ParseError);
fail_from!(algrr_core::EvalError);
fail_from!(algrr_core::BundleError);
fail_from!(algrr_core::SeriesError);
fail_from!(algrr_core::IndexError);

impl From<AlgebroidError> for Failure {
    fn from(e: AlgebroidError) -> Self {
        match e {
            // A structurally well-formed input whose mathematics fails the
            // check: report it as a negative verdict, not an operator error.
            AlgebroidError::InvalidPresentation { .. }
            | AlgebroidError::NotFlat { .. }
            | AlgebroidError::NotAlmostComplex => Failure::checked(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new(cli.json);
    match run(&cli.command, &mut out) {
        Ok(code) => {
            out.flush();
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Collects the single result record (JSON mode) or human lines; nothing
/// is printed until the command finishes, so a late failure leaves stdout
/// empty.
struct Output {
    json: bool,
    record: Option<Value>,
    lines: Vec<String>,
}

impl Output {
    fn new(json: bool) -> Self {
        Output {
            json,
            record: None,
            lines: Vec::new(),
        }
    }

    fn emit(&mut self, record: Value, lines: Vec<String>) {
        self.record = Some(record);
        self.lines = lines;
    }

    fn flush(&self) {
        if self.json {
            if let Some(r) = &self.record {
                println!("{}", to_canonical_string(r));
            }
        } else {
            for line in &self.lines {
                println!("{line}");
            }
        }
    }
}

fn run(command: &Command, out: &mut Output) -> Result<u8, Failure> {
    match command {
        Command::VerifyIdentity(args) => verify_identity(args, out),
        Command::Expand(args) => expand(args, out),
        Command::Cohomology(args) => cohomology(&args.file, out),
        Command::Index(args) => index(args, out),
        Command::Euler(args) => euler(&args.file, out),
        Command::Check(args) => check(&args.file, out),
        Command::Positivity(args) => positivity(&args.file, out),
        Command::CompareConnes(args) => compare_connes(args.k, out),
    }
}

/// `ALGRR_CUTOFF_DEFAULT`, when set, must parse as a positive integer.
fn env_cutoff() -> Result<Option<u32>, Failure> {
    match std::env::var("ALGRR_CUTOFF_DEFAULT") {
        Ok(text) => match text.trim().parse::<u32>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::usage(format!(
                "ALGRR_CUTOFF_DEFAULT must be a positive integer, got `{text}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn require_cutoff(flag: Option<u32>) -> Result<u32, Failure> {
    if let Some(c) = flag {
        if c < 1 {
            return Err(Failure::usage("--cutoff must be at least 1"));
        }
        return Ok(c);
    }
    env_cutoff()?.ok_or_else(|| {
        Failure::usage("no truncation degree: pass --cutoff or set ALGRR_CUTOFF_DEFAULT")
    })
}

fn verify_identity(args: &VerifyIdentityArgs, out: &mut Output) -> Result<u8, Failure> {
    let (rank, cutoff, perturb) = match &args.file {
        Some(path) => match load_descriptor(path)? {
            ProblemDescriptor::IdentityCheck {
                rank,
                cutoff,
                perturb,
            } => (rank, cutoff, perturb),
            other => {
                return Err(Failure::usage(format!(
                    "descriptor kind `{}` is not identity-check",
                    other.kind()
                )))
            }
        },
        None => {
            let rank = args.rank.expect("clap enforces --rank without FILE");
            if rank < 1 {
                return Err(Failure::usage("--rank must be at least 1"));
            }
            let cutoff = match args.cutoff {
                Some(c) => c,
                None => env_cutoff()?.unwrap_or(2 * rank),
            };
            (rank, cutoff, None)
        }
    };
    if cutoff < rank {
        return Err(Failure::usage(format!(
            "cutoff {cutoff} is below the rank {rank}; the Euler class has degree {rank}"
        )));
    }
    let report = verify_rr_identity_perturbed(rank, cutoff, perturb)?;
    let IdentityReport {
        rank,
        cutoff,
        holds,
        first_discrepancy,
    } = &report;
    let discrepancy_value = match first_discrepancy {
        None => Value::Null,
        Some(d) => record(
            "discrepancy",
            vec![
                ("monomial", Value::String(d.monomial.clone())),
                ("lhs", rational_value(&d.lhs)),
                ("rhs", rational_value(&d.rhs)),
            ],
        ),
    };
    let rec = record(
        "identity-report",
        vec![
            ("rank", Value::from(*rank)),
            ("cutoff", Value::from(*cutoff)),
            ("holds", Value::Bool(*holds)),
            ("first_discrepancy", discrepancy_value),
        ],
    );
    let line = match first_discrepancy {
        None => format!("rank {rank}, cutoff {cutoff}: identity holds"),
        Some(d) => format!(
            "rank {rank}, cutoff {cutoff}: identity fails at {} (left {}, right {})",
            d.monomial, d.lhs, d.rhs
        ),
    };
    out.emit(rec, vec![line]);
    Ok(if report.holds { 0 } else { 1 })
}

fn expand(args: &ExpandArgs, out: &mut Output) -> Result<u8, Failure> {
    let cutoff = require_cutoff(args.cutoff)?;
    let ctx = load_bundle_table(&args.bundles)?;
    let ast = parse_class_expr(&args.expr)?;
    let series = eval_class_expr(&ast, &ctx, cutoff)?;
    let rec = record(
        "series",
        vec![
            ("expr", Value::String(print_class_expr(&ast))),
            ("cutoff", Value::from(cutoff)),
            ("terms", series_value(&series)),
        ],
    );
    out.emit(rec, vec![series.to_string()]);
    Ok(0)
}

fn cohomology(path: &str, out: &mut Output) -> Result<u8, Failure> {
    let (pres, rep) = match load_descriptor(path)? {
        ProblemDescriptor::Cohomology {
            presentation,
            representation,
        } => (presentation, representation),
        other => {
            return Err(Failure::usage(format!(
                "descriptor kind `{}` is not cohomology",
                other.kind()
            )))
        }
    };
    let dims = cohomology_dims(&pres, &rep)?;
    let n = pres.dim();
    let mut differentials = Vec::with_capacity(n);
    for k in 0..n {
        differentials.push(matrix_value(&koszul_differential(&pres, &rep, k)?));
    }
    let rec = record(
        "cohomology",
        vec![
            ("dim", Value::from(n as u64)),
            ("fiber_rank", Value::from(rep.fiber_dim() as u64)),
            (
                "dims",
                Value::Array(dims.iter().map(|d| Value::from(*d as u64)).collect()),
            ),
            ("differentials", Value::Array(differentials)),
        ],
    );
    let rendered = dims
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    out.emit(rec, vec![format!("cohomology dimensions: {rendered}")]);
    Ok(0)
}

fn index(args: &IndexArgs, out: &mut Output) -> Result<u8, Failure> {
    let descriptor = load_descriptor(&args.file)?;
    let (problem, value, prefactor) = match descriptor {
        ProblemDescriptor::AlgebroidIndex {
            ctx,
            g,
            e,
            p,
            functional,
            cutoff,
        } => {
            let idx = algebroid_rr_index(&ctx, &g, &e, p, &functional, cutoff)?;
            ("algebroid-index", idx.value, idx.raw_prefactor)
        }
        ProblemDescriptor::FoliatedIndex {
            foliation,
            bundle,
            p,
            normalize,
        } => {
            let value = foliated_rr_index(&foliation, &bundle, p, normalize)?;
            let prefactor = RawPrefactor {
                rank: foliation.leaf_dim(),
            };
            ("foliated-index", value, prefactor)
        }
        other => {
            return Err(Failure::usage(format!(
                "descriptor kind `{}` is not an index problem",
                other.kind()
            )))
        }
    };
    let mut fields = vec![
        ("problem", Value::String(problem.to_string())),
        ("value", rational_value(&value)),
    ];
    if args.raw_prefactor {
        fields.push(("raw_prefactor", Value::String(prefactor.to_string())));
    }
    let rec = record("index", fields);
    let line = if args.raw_prefactor {
        format!("index = {value} (raw prefactor {prefactor})")
    } else {
        format!("index = {value}")
    };
    out.emit(rec, vec![line]);
    Ok(0)
}

fn euler(path: &str, out: &mut Output) -> Result<u8, Failure> {
    let foliation = match load_descriptor(path)? {
        ProblemDescriptor::Euler { foliation } => foliation,
        other => {
            return Err(Failure::usage(format!(
                "descriptor kind `{}` is not euler",
                other.kind()
            )))
        }
    };
    let value = average_euler(&foliation)?;
    let rec = record("average-euler", vec![("value", rational_value(&value))]);
    out.emit(rec, vec![format!("average euler characteristic = {value}")]);
    Ok(0)
}

fn pairs_value(pairs: &[(usize, usize)]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|(i, j)| Value::Array(vec![Value::from(*i as u64), Value::from(*j as u64)]))
            .collect(),
    )
}

fn check(path: &str, out: &mut Output) -> Result<u8, Failure> {
    let (pres, _rep) = match load_descriptor(path)? {
        ProblemDescriptor::Cohomology {
            presentation,
            representation,
        } => (presentation, representation),
        other => {
            return Err(Failure::usage(format!(
                "descriptor kind `{}` is not a presentation (cohomology) descriptor",
                other.kind()
            )))
        }
    };
    let report = pres.validate();
    let mut lines = vec![report.to_string()];
    let mut ok = report.is_valid();

    // With an almost-complex endomorphism present, run the torsion test;
    // without one, validation alone decides the verdict.
    let complex_value = if ok && pres.complex_structure().is_some() {
        match nijenhuis_check(&pres) {
            Ok(nj) => {
                lines.push(describe_nijenhuis(&nj));
                ok = ok && nj.integrable;
                nijenhuis_value(&nj, true)
            }
            Err(AlgebroidError::NotAlmostComplex) => {
                lines.push("endomorphism does not square to -identity".to_string());
                ok = false;
                record(
                    "complex-structure",
                    vec![
                        ("almost_complex", Value::Bool(false)),
                        ("integrable", Value::Bool(false)),
                        ("violation", Value::Null),
                        ("bigrading", Value::Null),
                    ],
                )
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        Value::Null
    };

    let ValidationReport {
        antisymmetry_violations,
        jacobi_violations,
        anchor_violations,
    } = &report;
    let jacobi = Value::Array(
        jacobi_violations
            .iter()
            .map(|(i, j, k)| {
                Value::Array(vec![
                    Value::from(*i as u64),
                    Value::from(*j as u64),
                    Value::from(*k as u64),
                ])
            })
            .collect(),
    );
    let rec = record(
        "check-report",
        vec![
            ("valid", Value::Bool(ok)),
            (
                "antisymmetry_violations",
                pairs_value(antisymmetry_violations),
            ),
            ("jacobi_violations", jacobi),
            ("anchor_violations", pairs_value(anchor_violations)),
            ("complex_structure", complex_value),
        ],
    );
    out.emit(rec, lines);
    Ok(if ok { 0 } else { 1 })
}

fn describe_nijenhuis(nj: &NijenhuisReport) -> String {
    match (&nj.violation, &nj.bigrading) {
        (None, Some((p, q))) => {
            format!("complex structure integrable; top-degree bigrading ({p}, {q})")
        }
        (None, None) => "complex structure integrable".to_string(),
        (Some(((a, b), _)), _) => {
            format!("complex structure not integrable: torsion at generator pair ({a}, {b})")
        }
    }
}

fn nijenhuis_value(nj: &NijenhuisReport, almost_complex: bool) -> Value {
    let violation = match &nj.violation {
        None => Value::Null,
        Some(((a, b), torsion)) => record(
            "torsion",
            vec![
                (
                    "pair",
                    Value::Array(vec![Value::from(*a as u64), Value::from(*b as u64)]),
                ),
                (
                    "vector",
                    Value::Array(torsion.iter().map(rational_value).collect()),
                ),
            ],
        ),
    };
    let bigrading = match nj.bigrading {
        None => Value::Null,
        Some((p, q)) => Value::Array(vec![Value::from(p as u64), Value::from(q as u64)]),
    };
    record(
        "complex-structure",
        vec![
            ("almost_complex", Value::Bool(almost_complex)),
            ("integrable", Value::Bool(nj.integrable)),
            ("violation", violation),
            ("bigrading", bigrading),
        ],
    )
}

fn positivity(path: &str, out: &mut Output) -> Result<u8, Failure> {
    let (foliation, bundle) = match load_descriptor(path)? {
        ProblemDescriptor::Positivity { foliation, bundle } => (foliation, bundle),
        other => {
            return Err(Failure::usage(format!(
                "descriptor kind `{}` is not positivity",
                other.kind()
            )))
        }
    };
    let report = positivity_obstruction(&foliation, &bundle)?;
    let rec = record(
        "positivity",
        vec![
            ("verdict", Value::String(report.verdict.to_string())),
            ("witness", rational_value(&report.witness)),
        ],
    );
    out.emit(
        rec,
        vec![format!(
            "verdict: {} (witness {})",
            report.verdict, report.witness
        )],
    );
    Ok(match report.verdict {
        algrr_core::PositivityVerdict::NotPositive => 1,
        algrr_core::PositivityVerdict::Inconclusive => 0,
    })
}

fn compare_connes(k: u32, out: &mut Output) -> Result<u8, Failure> {
    let report = connes_comparison(k)?;
    let rec = record(
        "connes-comparison",
        vec![
            ("k", Value::from(report.k)),
            (
                "algebroid_side",
                Value::String(report.algebroid_side.to_string()),
            ),
            ("connes_side", Value::String(report.connes_side.to_string())),
            ("holds", Value::Bool(report.holds)),
            ("ratio", Value::String(report.ratio.to_string())),
        ],
    );
    let line = format!(
        "k = {}: normalized side {} vs measured side {}: {} (index ratio {})",
        report.k,
        report.algebroid_side,
        report.connes_side,
        if report.holds { "equal" } else { "DIFFER" },
        report.ratio
    );
    out.emit(rec, vec![line]);
    Ok(if report.holds { 0 } else { 1 })
}
