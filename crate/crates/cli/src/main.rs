use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use raag_core::{
    cross_check, cyclic_cover_truncation, dual_splitting, euler_raag, format_q, is_chordal,
    is_fibered, l2_betti_group, l2_polytope, norm_ball, parse_character, parse_complex, run_suite,
    thurston_norm, thurston_norm_real, Character, Error, FlagComplex, SuiteConfig,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "raag",
    version,
    about = "Thurston norm, L²-invariants and splittings of right-angled Artin groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chordality, coherence, one-endedness, cut ranks, χ and L²-Betti numbers.
    Analyze(ComplexArg),
    /// Fibering test for a rational character.
    Fibering(Pair),
    /// Thurston norm of a character.
    Norm {
        #[command(flatten)]
        pair: Pair,
        /// Read the character as real (floating-point) values.
        #[arg(long)]
        real: bool,
    },
    /// The L²-polytope as a zonotope.
    Polytope(ComplexArg),
    /// Dual splitting of an integral character.
    Split {
        #[command(flatten)]
        pair: Pair,
        /// Also report the cyclic-cover truncation at this level.
        #[arg(long, value_name = "K")]
        truncate: Option<usize>,
    },
    /// Cross-check one pair, or run the invariant suite.
    Verify(VerifyArgs),
    /// Unit ball of the Thurston norm.
    Ball(ComplexArg),
}

#[derive(Args)]
struct ComplexArg {
    #[arg(long, value_name = "FILE")]
    complex: PathBuf,
}

#[derive(Args)]
struct Pair {
    #[arg(long, value_name = "FILE")]
    complex: PathBuf,
    #[arg(long = "char", value_name = "FILE")]
    character: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_name = "FILE", requires = "character", conflicts_with_all = ["suite", "samples", "max_n", "seed"])]
    complex: Option<PathBuf>,
    #[arg(long = "char", value_name = "FILE", requires = "complex")]
    character: Option<PathBuf>,
    /// Suite configuration JSON.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["samples", "max_n", "seed"])]
    suite: Option<PathBuf>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

enum Failure {
    Usage(&'static str, String),
    Input(Error),
    Domain(Error),
    SuiteFailed(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input(e)
        } else {
            Failure::Domain(e)
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage("io", format!("{}: {e}", path.display())))
}

fn clique_cap() -> Result<Option<usize>, Failure> {
    match std::env::var("RAAG_CLIQUE_CAP") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Failure::Usage(
                "usage",
                format!("RAAG_CLIQUE_CAP must be a natural number, got `{v}`"),
            )
        }),
        Err(_) => Ok(None),
    }
}

fn load_complex(path: &Path) -> Result<FlagComplex, Failure> {
    let l = parse_complex(&read(path)?).map_err(Failure::Input)?;
    Ok(match clique_cap()? {
        Some(cap) => l.with_clique_cap(cap),
        None => l,
    })
}

fn load_character(path: &Path) -> Result<Character, Failure> {
    parse_character(&read(path)?).map_err(Failure::Input)
}

fn load_real_character(path: &Path) -> Result<BTreeMap<String, f64>, Failure> {
    let text = read(path)?;
    let bad = |m: String| {
        Failure::Input(Error::Parse {
            location: path.display().to_string(),
            message: m,
        })
    };
    let doc: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let values = doc
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing `values` object".into()))?;
    values
        .iter()
        .map(|(k, v)| {
            let x = match v {
                Value::Number(n) => n.as_f64(),
                Value::String(s) => raag_core::parse_q(s).map(|r| {
                    use num_traits::ToPrimitive;
                    r.to_f64().unwrap_or(f64::NAN)
                }),
                _ => None,
            };
            x.map(|x| (k.clone(), x))
                .ok_or_else(|| bad(format!("values.{k}: not a number")))
        })
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn analyze(args: &ComplexArg) -> Outcome {
    let l = load_complex(&args.complex)?;
    let witness = is_chordal(&l);
    let connected = l.is_connected();
    let one_ended = connected && l.vertex_count() >= 2;
    let cut_ranks: Option<BTreeMap<String, usize>> = (l.vertex_count() >= 2).then(|| {
        (0..l.vertex_count())
            .map(|v| {
                (
                    l.name(v).to_string(),
                    l.cut_rank_index(v).expect("≥ 2 vertices"),
                )
            })
            .collect()
    });
    let max_i = l.f_vector()?.len();
    let betti: Vec<String> = l2_betti_group(&l, max_i)?.iter().map(format_q).collect();
    Ok(json!({
        "vertices": l.vertex_count(),
        "edges": l.edge_count(),
        "chordality": to_value(&witness),
        "coherent": witness.verdict,
        "connected": connected,
        "one_ended": one_ended,
        "cut_ranks": cut_ranks,
        "euler_characteristic": euler_raag(&l)?.to_string(),
        "l2_betti": betti,
    }))
}

fn fibering(pair: &Pair) -> Outcome {
    let l = load_complex(&pair.complex)?;
    let phi = load_character(&pair.character)?;
    Ok(to_value(&is_fibered(&l, &phi)?))
}

fn norm(pair: &Pair, real: bool) -> Outcome {
    let l = load_complex(&pair.complex)?;
    if real {
        let phi = load_real_character(&pair.character)?;
        return Ok(json!({ "norm": thurston_norm_real(&l, &phi)? }));
    }
    let phi = load_character(&pair.character)?;
    Ok(json!({ "norm": format_q(&thurston_norm(&l, &phi)?) }))
}

fn polytope(args: &ComplexArg) -> Outcome {
    let l = load_complex(&args.complex)?;
    Ok(l2_polytope(&l)?.to_json())
}

fn split(pair: &Pair, truncate: Option<usize>) -> Outcome {
    let l = load_complex(&pair.complex)?;
    let phi = load_character(&pair.character)?;
    let (g, report) = dual_splitting(&l, &phi)?;
    let mut out = json!({
        "graph_of_groups": g.to_json(),
        "report": to_value(&report),
    });
    if let Some(k) = truncate {
        out["truncation"] = to_value(&cyclic_cover_truncation(&g, k)?);
    }
    Ok(out)
}

fn verify(args: &VerifyArgs) -> Outcome {
    if let (Some(c), Some(p)) = (&args.complex, &args.character) {
        let l = load_complex(c)?;
        let phi = load_character(p)?;
        return Ok(cross_check(&l, &phi)?.to_json());
    }
    let config = match &args.suite {
        Some(path) => serde_json::from_str(&read(path)?).map_err(|e| {
            Failure::Input(Error::Parse {
                location: path.display().to_string(),
                message: e.to_string(),
            })
        })?,
        None => {
            let d = SuiteConfig::default();
            SuiteConfig {
                samples: args.samples.unwrap_or(d.samples),
                max_n: args.max_n.unwrap_or(d.max_n),
                seed: args.seed.unwrap_or(d.seed),
                inject_non_chordal: false,
            }
        }
    };
    let report = run_suite(&config);
    let value = json!({ "ok": report.ok(), "report": to_value(&report) });
    if report.ok() {
        Ok(value)
    } else {
        Err(Failure::SuiteFailed(value))
    }
}

fn ball(args: &ComplexArg) -> Outcome {
    let l = load_complex(&args.complex)?;
    Ok(norm_ball(&l)?.to_json())
}

fn error_document(kind: &str, detail: String, cycle: Option<&[String]>) -> Value {
    let mut err = json!({ "kind": kind, "detail": detail });
    if let Some(c) = cycle {
        err["cycle"] = json!(c);
    }
    json!({ "error": err })
}

fn emit(doc: &Value) {
    println!("{}", serde_json::to_string(doc).expect("serialisable"));
}

fn report_error(e: &Error) -> Value {
    let cycle = match e {
        Error::NotChordal { cycle } => Some(cycle.as_slice()),
        _ => None,
    };
    error_document(e.kind(), e.to_string(), cycle)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            emit(&error_document("usage", e.kind().to_string(), None));
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Fibering(p) => fibering(p),
        Command::Norm { pair, real } => norm(pair, *real),
        Command::Polytope(a) => polytope(a),
        Command::Split { pair, truncate } => split(pair, *truncate),
        Command::Verify(v) => verify(v),
        Command::Ball(a) => ball(a),
    };
    match outcome {
        Ok(doc) => {
            emit(&doc);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(kind, msg)) => {
            eprintln!("raag: {msg}");
            emit(&error_document(kind, msg, None));
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            eprintln!("raag: {e}");
            emit(&report_error(&e));
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("raag: {e}");
            emit(&report_error(&e));
            ExitCode::from(1)
        }
        Err(Failure::SuiteFailed(doc)) => {
            eprintln!("raag: invariant suite reported failures");
            emit(&doc);
            ExitCode::from(1)
        }
    }
}
