//! `dlower`: classify double lowering data, print operator matrices, run the
//! q-Racah identity suite and generate seeded corpora.
//!
//! Exit codes: 0 success, 1 bad input, 2 two computations that must agree
//! did not (or an identity failed).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use double_lowering::corpus::{self, CorpusConfig, CorpusKind};
use double_lowering::data::RawData;
use double_lowering::lowering::{
    delta_inv_series, delta_series, is_double_lowering_via_dual_expansion, is_double_lowering_via_expansion,
};
use double_lowering::qracah::{full_suite, Operators};
use double_lowering::{
    candidate_psi, classify, delta, delta_inv, lowering_space, Basis, Classification, Data, IdentityReport, Matrix,
    Poly, QRacahParams, Scalar, Verdict,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dlower", version, about = "Exact double lowering computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify each data set and compare with the brute-force dimension.
    Classify(InputArgs),
    /// Run every cross-check available for each data set.
    Verify(InputArgs),
    /// Print bases and operator matrices for a data file or q-Racah parameters.
    Matrices(MatricesArgs),
    /// Run the q-Racah identity suite.
    QracahSuite(QRacahArgs),
    /// Generate a seeded random corpus of data sets.
    GenCorpus(CorpusArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args)]
struct InputArgs {
    /// JSON file holding one `{"a": [...], "b": [...]}` object or an array of them.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct QRacahArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct MatricesArgs {
    #[arg(long, conflicts_with_all = ["q", "a", "b", "n"])]
    input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["a", "b", "n"])]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Basis for the q-Racah operators: tau, eta, w, wprime or monomial.
    #[arg(long, default_value = "tau")]
    basis: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    min_n: usize,
    /// Restrict to these kinds (repeatable). Default: all.
    #[arg(long)]
    kind: Vec<String>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

enum Failure {
    Input(String),
    Disagreement(String),
}

type CliResult = Result<(), Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    // Usage errors are input errors; clap's own code 2 is reserved for disagreements.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Classify(args) => cmd_classify(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Matrices(args) => cmd_matrices(&args),
        Command::QracahSuite(args) => cmd_qracah_suite(&args),
        Command::GenCorpus(args) => cmd_gen_corpus(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Reads one data object or an array of them. The second value is true for
/// a single object.
fn read_data(path: &Path) -> Result<(Vec<Data>, bool), Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(input_err)?;
    let (raws, single) = match value {
        Value::Array(items) => (items, false),
        other => (vec![other], true),
    };
    let data = raws
        .into_iter()
        .enumerate()
        .map(|(idx, v)| {
            let located = |e: &dyn std::fmt::Display| input_err(if single { e.to_string() } else { format!("entry {idx}: {e}") });
            let raw: RawData = serde_json::from_value(v).map_err(|e| located(&e))?;
            Data::new(raw.a, raw.b).map_err(|e| located(&e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((data, single))
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct ClassifyOutcome {
    index: usize,
    classification: Classification,
    dim: usize,
    agree: bool,
}

fn classify_one(index: usize, d: &Data) -> ClassifyOutcome {
    let classification = classify(d);
    let dim = lowering_space(d).dim;
    let agree = dim <= 1 && (classification.verdict == Verdict::DoubleLowering) == (dim == 1);
    ClassifyOutcome { index, classification, dim, agree }
}

fn cmd_classify(args: &InputArgs) -> CliResult {
    let (data, single) = read_data(&args.input)?;
    let outcomes: Vec<ClassifyOutcome> = data.par_iter().enumerate().map(|(i, d)| classify_one(i, d)).collect();
    match args.format {
        Format::Json if single => print_json(&outcomes[0]),
        Format::Json => print_json(&outcomes),
        Format::Text => {
            for o in &outcomes {
                let mut line = format!("{}: {} cases=[{}]", o.index, o.classification.verdict, o.classification.tags().join(", "));
                if let Some(t) = o.classification.theta() {
                    line.push_str(&format!(" theta={t}"));
                }
                if let Some(t) = o.classification.triple() {
                    line.push_str(&format!(" beta={} gamma={} rho={}", t.beta, t.gamma, t.rho));
                }
                println!("{line} dim={} agree={}", o.dim, o.agree);
            }
        }
    }
    let bad: Vec<usize> = outcomes.iter().filter(|o| !o.agree).map(|o| o.index).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("classification and brute-force dimension differ on entries {bad:?}")))
    }
}

/// A yes/no check; failures point at entry `(0, 0)`.
fn flag(name: &str, ok: bool) -> IdentityReport {
    IdentityReport::indexed(name, (!ok).then_some(0))
}

fn verify_one(d: &Data) -> Vec<IdentityReport> {
    let solution = lowering_space(d);
    let dl = classify(d).verdict == Verdict::DoubleLowering;
    let psi = candidate_psi(d).matrix;
    let dl_mat = delta(d).matrix;
    let dl_inv = delta_inv(d).matrix;
    // psi lowers eta with the same coefficients iff it is diagonal-shift in eta coordinates too.
    let lowers_eta = &(&dl_inv * &psi) * &dl_mat == psi;
    let mut out = vec![
        flag("lowering_space_dimension_at_most_one", solution.dim <= 1),
        flag("classification_matches_brute_force", dl == (solution.dim == 1)),
        flag("eta_expansion_matches_classification", is_double_lowering_via_expansion(d) == dl),
        flag("tau_expansion_matches_classification", is_double_lowering_via_dual_expansion(d) == dl),
        flag("normalized_map_lowers_eta_iff_double_lowering", lowers_eta == dl),
    ];
    if dl {
        if let Some(found) = &solution.psi {
            out.push(IdentityReport::matrices("brute_force_map_equals_normalized_map", &found.matrix, &psi));
        }
        out.push(IdentityReport::matrices("delta_equals_series", &dl_mat, &delta_series(d).matrix));
        out.push(IdentityReport::matrices("delta_inverse_equals_series", &dl_inv, &delta_inv_series(d).matrix));
        out.push(IdentityReport::matrices("delta_commutes_with_map", &(&dl_mat * &psi), &(&psi * &dl_mat)));
    }
    out
}

#[derive(Serialize)]
struct VerifyOutcome {
    index: usize,
    reports: Vec<IdentityReport>,
}

fn print_reports(reports: &[IdentityReport], prefix: &str) {
    for r in reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        match r.first_mismatch {
            Some((i, j)) => println!("{prefix}{status} {} at ({i}, {j})", r.identity),
            None => println!("{prefix}{status} {}", r.identity),
        }
    }
}

fn cmd_verify(args: &InputArgs) -> CliResult {
    let (data, single) = read_data(&args.input)?;
    let outcomes: Vec<VerifyOutcome> =
        data.par_iter().enumerate().map(|(index, d)| VerifyOutcome { index, reports: verify_one(d) }).collect();
    match args.format {
        Format::Json if single => print_json(&outcomes[0].reports),
        Format::Json => print_json(&outcomes),
        Format::Text => {
            for o in &outcomes {
                print_reports(&o.reports, &format!("{}: ", o.index));
            }
        }
    }
    let failed: usize = outcomes.iter().map(|o| o.reports.iter().filter(|r| !r.passed()).count()).sum();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("{failed} checks failed")))
    }
}

fn parse(name: &str, text: &str) -> Result<Scalar, Failure> {
    text.parse::<Scalar>().map_err(|e| input_err(format!("--{name}: {e}")))
}

fn params(q: &str, a: &str, b: &str, n: usize) -> Result<QRacahParams, Failure> {
    QRacahParams::new(parse("q", q)?, parse("a", a)?, parse("b", b)?, n).map_err(input_err)
}

fn rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.to_rows()
}

fn print_matrix(name: &str, m: &Matrix) {
    println!("{name}:");
    for r in m.to_rows() {
        println!("  [{}]", join(&r));
    }
}

fn print_polys(name: &str, polys: &[Poly]) {
    println!("{name}:");
    for (i, p) in polys.iter().enumerate() {
        println!("  {i}: {p:?}");
    }
}

fn cmd_matrices(args: &MatricesArgs) -> CliResult {
    match (&args.input, &args.q, &args.a, &args.b, args.n) {
        (Some(path), ..) => matrices_for_data(path, args.format),
        (None, Some(q), Some(a), Some(b), Some(n)) => {
            let p = params(q, a, b, n)?;
            let basis: Basis = args.basis.parse().map_err(input_err)?;
            matrices_for_params(&p, basis, args.format)
        }
        _ => Err(input_err("give either --input or all of --q, --a, --b, --n")),
    }
}

fn matrices_for_data(path: &Path, format: Format) -> CliResult {
    let (data, single) = read_data(path)?;
    let items: Vec<Value> = data
        .iter()
        .map(|d| {
            let psi = lowering_space(d).psi.map(|p| rows(&p.matrix));
            json!({
                "a": d.a(),
                "b": d.b(),
                "vartheta": d.vartheta().0,
                "tau": d.tau_basis(),
                "eta": d.eta_basis(),
                "delta": rows(&delta(d).matrix),
                "delta_inverse": rows(&delta_inv(d).matrix),
                "psi": psi,
            })
        })
        .collect();
    match format {
        Format::Json if single => print_json(&items[0]),
        Format::Json => print_json(&items),
        Format::Text => {
            for (idx, d) in data.iter().enumerate() {
                println!("entry {idx}");
                println!("vartheta: [{}]", join(&d.vartheta().0));
                print_polys("tau", &d.tau_basis());
                print_polys("eta", &d.eta_basis());
                print_matrix("delta", &delta(d).matrix);
                print_matrix("delta_inverse", &delta_inv(d).matrix);
                match lowering_space(d).psi {
                    Some(p) => print_matrix("psi", &p.matrix),
                    None => println!("psi: none"),
                }
            }
        }
    }
    Ok(())
}

fn matrices_for_params(p: &QRacahParams, basis: Basis, format: Format) -> CliResult {
    let ops = Operators::new(p).map_err(input_err)?;
    let named = [
        ("psi", &ops.psi),
        ("k", &ops.k),
        ("k_inverse", &ops.k_inv),
        ("b", &ops.b),
        ("b_inverse", &ops.b_inv),
        ("m", &ops.m),
        ("m_inverse", &ops.m_inv),
    ];
    let mut mats = Vec::new();
    for (name, m) in named {
        mats.push((name, ops.in_basis(m, basis).map_err(input_err)?.matrix));
    }
    let a = double_lowering::qracah::a_matrix(p, basis).map_err(input_err)?.matrix;
    mats.push(("a", a));
    let polys = ops.basis_polys(basis);
    match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("params".into(), json!(p));
            obj.insert("basis".into(), json!(basis));
            obj.insert("polynomials".into(), json!(polys));
            for (name, m) in &mats {
                obj.insert((*name).into(), json!(rows(m)));
            }
            print_json(&obj);
        }
        Format::Text => {
            println!("q={} a={} b={} N={} basis={basis}", p.q, p.a, p.b, p.n);
            print_polys("polynomials", &polys);
            for (name, m) in &mats {
                print_matrix(name, m);
            }
        }
    }
    Ok(())
}

fn cmd_qracah_suite(args: &QRacahArgs) -> CliResult {
    let p = params(&args.q, &args.a, &args.b, args.n)?;
    let reports = full_suite(&p).map_err(input_err)?;
    match args.format {
        Format::Json => print_json(&reports),
        Format::Text => print_reports(&reports, ""),
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.identity.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("identities failed: {}", failed.join(", "))))
    }
}

fn cmd_gen_corpus(args: &CorpusArgs) -> CliResult {
    if args.count == 0 {
        return Err(input_err("--count must be at least 1"));
    }
    let kinds = args.kind.iter().map(|k| k.parse::<CorpusKind>()).collect::<Result<Vec<_>, _>>().map_err(input_err)?;
    let config = CorpusConfig { seed: args.seed, count: args.count, min_n: args.min_n, max_n: args.max_n, kinds };
    let entries = corpus::generate(&config).map_err(input_err)?;
    let text = match args.format {
        Format::Json => corpus::to_json(&entries) + "\n",
        Format::Text => entries
            .iter()
            .map(|e| format!("{} a=[{}] b=[{}]\n", e.kind, join(e.data.a()), join(e.data.b())))
            .collect(),
    };
    match &args.output {
        Some(path) => fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
