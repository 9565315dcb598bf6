//! `pathcomplete`: decide path-completeness of Lyapunov inequality graphs,
//! build counterexamples, verify certificates and bound joint spectral radii.
//!
//! Exit codes: 0 success (path-complete / verified), 1 negative verdict,
//! 2 error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pathcomplete::completeness::{brute_force_path_complete_with, check_path_complete_with};
use pathcomplete::jsr::{jsr_bounds, JsrConfig, ScalingBound};
use pathcomplete::synth::{synthesize_conic_with, synthesize_ellipsoidal_with};
use pathcomplete::verify::{verify_certificate, Direction, Strictness, VerifyOptions};
use pathcomplete::{
    reduce_universality, Certificate, CounterexampleBundle, EllipsoidalCertificate, Family,
    LabeledGraph, MatrixSet, Nfa, NodeMap, Vector,
};

#[derive(Parser)]
#[command(name = "pathcomplete", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format on standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Conic,
    Ellipsoidal,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Conic => Family::Conic,
            FamilyArg::Ellipsoidal => Family::Ellipsoidal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Pre,
    Post,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrictnessArg {
    NonStrict,
    OnSupport,
    Strict,
}

#[derive(Subcommand)]
enum Command {
    /// Decide path-completeness; prints a shortest missing word if any.
    Check(CheckArgs),
    /// Build an unstable family with a certificate for a graph that is not path-complete.
    Synthesize(SynthArgs),
    /// Check a certificate against a graph and a matrix family.
    Verify(VerifyArgs),
    /// Brute-force joint spectral radius bounds, and γ* for a path-complete graph.
    Jsr(JsrArgs),
    /// Turn an automaton into a graph that is path-complete iff the automaton is universal.
    Reduce(ReduceArgs),
}

#[derive(Args)]
struct CheckArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = pathcomplete::completeness::DEFAULT_SUBSET_CAP)]
    cap_subsets: usize,
    /// Also enumerate all words up to this length as a cross-check.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = pathcomplete::completeness::DEFAULT_WORD_CAP)]
    cap_words: u64,
}

#[derive(Args)]
struct SynthArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = FamilyArg::Conic)]
    family: FamilyArg,
    /// Bundle destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = pathcomplete::completeness::DEFAULT_SUBSET_CAP)]
    cap_subsets: usize,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    /// Matrix family: a JSON array of matrices, or a counterexample bundle.
    #[arg(long)]
    matrices: PathBuf,
    /// Certificate: a map from node names to vectors or matrices, or a
    /// bundle. Defaults to the matrices file.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Certificate family; read from the bundle when omitted.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, value_enum, default_value_t = DirectionArg::Pre)]
    direction: DirectionArg,
    #[arg(long, value_enum, default_value_t = StrictnessArg::NonStrict)]
    strictness: StrictnessArg,
    #[arg(long, default_value_t = pathcomplete::linalg::DEFAULT_PD_TOL)]
    tol: f64,
    /// Check every edge of the letter-expanded graph.
    #[arg(long)]
    expand: bool,
}

#[derive(Args)]
struct JsrArgs {
    /// Matrix family: a JSON array of matrices, or a counterexample bundle.
    matrices: PathBuf,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Path-complete graph for the conic scaling bound γ*.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = pathcomplete::jsr::DEFAULT_SCALING_TOL)]
    tol: f64,
    #[arg(long, default_value_t = pathcomplete::jsr::DEFAULT_ITER_CAP)]
    iter_cap: usize,
    #[arg(long, default_value_t = pathcomplete::jsr::WORD_CAP)]
    cap_words: u64,
}

#[derive(Args)]
struct ReduceArgs {
    nfa: PathBuf,
    /// Graph destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn load_graph(path: &Path) -> Result<LabeledGraph> {
    LabeledGraph::from_json(&read(path)?).with_context(|| format!("cannot load graph {}", path.display()))
}

fn is_bundle(v: &Value) -> bool {
    v.get("matrices").is_some() && v.get("family").is_some()
}

fn load_matrices(path: &Path) -> Result<MatrixSet> {
    let mut v = parse_json(path)?;
    if is_bundle(&v) {
        v = v["matrices"].take();
    }
    serde_json::from_value(v).with_context(|| format!("cannot load matrices from {}", path.display()))
}

fn load_certificate(path: &Path, family: Option<Family>) -> Result<Certificate> {
    let v = parse_json(path)?;
    let (family, body) = if is_bundle(&v) {
        let bundle: CounterexampleBundle =
            serde_json::from_value(v).with_context(|| format!("malformed bundle {}", path.display()))?;
        let family = family.unwrap_or(bundle.family);
        let body = match family {
            Family::Conic => bundle.conic_certificate.map(Certificate::Conic),
            Family::Ellipsoidal => bundle.ellipsoidal_certificate.map(Certificate::Ellipsoidal),
        };
        (family, body)
    } else {
        let family = family.ok_or_else(|| anyhow!("--family is required for a bare certificate file"))?;
        let body = match family {
            Family::Conic => Certificate::Conic(serde_json::from_value::<NodeMap<Vector>>(v)?),
            Family::Ellipsoidal => Certificate::Ellipsoidal(serde_json::from_value::<EllipsoidalCertificate>(v)?),
        };
        (family, Some(body))
    };
    body.ok_or_else(|| anyhow!("{} has no {family:?} certificate", path.display()))
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json value")),
        Format::Text => println!("{}", text()),
    }
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{content}\n")).with_context(|| format!("cannot write {}", path.display())),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn check(args: CheckArgs, format: Format) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let result = check_path_complete_with(&g, args.cap_subsets)?;
    let verdict = result.verdict;
    if let Some(depth) = args.depth {
        let oracle = brute_force_path_complete_with(&g, depth, args.cap_words)?;
        let agrees = match (&verdict.missing_word, &oracle.missing_word) {
            (Some(w), Some(o)) => w == o,
            (Some(w), None) => w.len() > depth,
            (None, found) => found.is_none(),
        };
        if !agrees {
            bail!("enumeration up to length {depth} disagrees with the subset construction");
        }
    }
    emit(format, &serde_json::to_value(&verdict)?, || match &verdict.missing_word {
        None => "path-complete".into(),
        Some(w) => format!("not path-complete; missing word {w}"),
    });
    Ok(if verdict.complete { 0 } else { 1 })
}

fn synthesize(args: SynthArgs, format: Format) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let family = Family::from(args.family);
    let outcome = match family {
        Family::Conic => synthesize_conic_with(&g, args.cap_subsets).map(|c| {
            (CounterexampleBundle::from_conic(&g, &c), Certificate::Conic(c.certificate))
        }),
        Family::Ellipsoidal => synthesize_ellipsoidal_with(&g, args.cap_subsets).map(|c| {
            (CounterexampleBundle::from_ellipsoidal(&g, &c), Certificate::Ellipsoidal(c.certificate))
        }),
    };
    let (bundle, cert) = match outcome {
        Err(pathcomplete::Error::PathComplete) => {
            eprintln!("graph is path-complete; every family satisfying it is stable");
            return Ok(1);
        }
        other => other?,
    };
    let opts = VerifyOptions {
        strictness: Strictness::Strict,
        tol: 0.0,
        expand: true,
        ..VerifyOptions::default()
    };
    let report = verify_certificate(&g, &bundle.matrices, &cert, opts)?;
    if !report.overall {
        bail!("synthesized certificate failed verification");
    }
    match &args.out {
        Some(path) => {
            write_or_print(Some(path), &bundle.to_json())?;
            let summary = json!({
                "family": bundle.family,
                "missing_word": bundle.missing_word,
                "dimension": bundle.matrices.dim(),
                "out": path.display().to_string(),
            });
            emit(format, &summary, || {
                format!(
                    "{} counterexample of dimension {} from missing word {}, written to {}",
                    match family {
                        Family::Conic => "conic",
                        Family::Ellipsoidal => "ellipsoidal",
                    },
                    bundle.matrices.dim(),
                    bundle.missing_word,
                    path.display()
                )
            });
        }
        None => write_or_print(None, &bundle.to_json())?,
    }
    Ok(0)
}

fn verify(args: VerifyArgs, format: Format) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let s = load_matrices(&args.matrices)?;
    let cert_path = args.cert.as_deref().unwrap_or(&args.matrices);
    let cert = load_certificate(cert_path, args.family.map(Family::from))?;
    let opts = VerifyOptions {
        direction: match args.direction {
            DirectionArg::Pre => Direction::Pre,
            DirectionArg::Post => Direction::Post,
        },
        strictness: match args.strictness {
            StrictnessArg::NonStrict => Strictness::NonStrict,
            StrictnessArg::OnSupport => Strictness::OnSupport,
            StrictnessArg::Strict => Strictness::Strict,
        },
        tol: args.tol,
        expand: args.expand,
    };
    let report = verify_certificate(&g, &s, &cert, opts)?;
    emit(format, &serde_json::to_value(&report)?, || {
        let mut lines: Vec<String> = report
            .edges
            .iter()
            .map(|e| {
                format!(
                    "{} -> {} {}: {} (slack {})",
                    e.from,
                    e.to,
                    e.label,
                    if e.holds { "holds" } else { "FAILS" },
                    e.slack
                )
            })
            .collect();
        lines.extend(report.nodes.iter().filter(|n| !n.holds).map(|n| format!("{}: not positive", n.node)));
        lines.push(format!("overall: {}", if report.overall { "verified" } else { "not verified" }));
        lines.join("\n")
    });
    Ok(if report.overall { 0 } else { 1 })
}

fn jsr(args: JsrArgs, format: Format) -> Result<u8> {
    let s = load_matrices(&args.matrices)?;
    let g = args.graph.as_deref().map(load_graph).transpose()?;
    let config = JsrConfig {
        word_cap: args.cap_words,
        tol: args.tol,
        iter_cap: args.iter_cap,
    };
    let bounds = jsr_bounds(&s, args.depth, g.as_ref(), &config)?;
    emit(format, &serde_json::to_value(&bounds)?, || {
        let mut text = format!(
            "t = {}\nlower = {} (word {})\nupper = {} (∞-norm)",
            bounds.t, bounds.lower, bounds.lower_witness, bounds.upper
        );
        match bounds.gamma_star {
            Some(ScalingBound::Bound(x)) => text.push_str(&format!("\ngamma* = {x}")),
            Some(ScalingBound::Inconclusive { lower, upper }) => {
                text.push_str(&format!("\ngamma* inconclusive in [{lower}, {upper}]"))
            }
            None => {}
        }
        text
    });
    Ok(0)
}

fn reduce(args: ReduceArgs) -> Result<u8> {
    let n = Nfa::from_json(&read(&args.nfa)?).with_context(|| format!("cannot load automaton {}", args.nfa.display()))?;
    write_or_print(args.out.as_deref(), &reduce_universality(&n).to_json())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(a) => check(a, cli.format),
        Command::Synthesize(a) => synthesize(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
        Command::Jsr(a) => jsr(a, cli.format),
        Command::Reduce(a) => reduce(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
