//! `nilbound` command-line interface: every subcommand reads inline
//! arguments, writes canonical JSON (sorted keys, exact integers) to
//! stdout or `--out`, and reports domain errors as a JSON object on
//! stderr with exit code 1. Usage errors exit 2.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use nilbound::diameter::{bfs_coverage, truncated_generators, BfsOptions, TruncationSpec};
use nilbound::error::{Error, Result};
use nilbound::nilpotent::{verify_power_shift, Engine, QuotientSpec};
use nilbound::rewrite::{verify_certificate, GeneratingSet, Rewriter, SccSection};
use nilbound::surface::{christoffel, scc_section, SurfaceSpec};
use nilbound::symplectic::decompose;
use nilbound::words::{format_word, generalized_commutator, parse_word, FreeWord};

#[derive(Parser)]
#[command(name = "nilbound", version, about = "Exact nilpotent-quotient toolkit")]
struct Cli {
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reserved; every operation is deterministic
    #[arg(long, global = true, hide = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputKind {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Collect a word into its Mal'cev normal form
    Collect {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        class: usize,
        /// Word text, e.g. "a^2 b^-1" ("1" for the identity)
        word: String,
    },
    /// Basis sizes per weight (Witt numbers)
    Witt {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        class: usize,
    },
    /// Check the power-shift identity for the given commutator arguments
    Powershift {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Commutator entries as word texts (class is their count)
        args: Vec<String>,
    },
    /// Decompose an integer vector into at most two symplectic-orbit terms
    Sympdec {
        /// JSON array of even length, e.g. "[4,7,0,5]"
        vector: String,
    },
    /// The Christoffel word of slope (p, q)
    Christoffel {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Write a homology class as a product of at most 2g curves
    Section {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 1)]
        punctures: usize,
        /// JSON array of length 2g
        h: String,
    },
    /// Certified bounded rewriting over the curve generating set
    Rewrite {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long)]
        class: usize,
        word: String,
    },
    /// BFS coverage of a coordinate box under truncated curve generators
    Diameter {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long)]
        class: usize,
        /// Christoffel height cut |p| + |q| <= H
        #[arg(long)]
        height: u64,
        /// Probe all normal forms with coordinates in [-M, M]
        #[arg(long)]
        box_radius: u64,
        #[arg(long)]
        max_radius: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 5_000_000)]
        max_states: u64,
        #[arg(long, value_enum, default_value_t = OutputKind::Json)]
        output: OutputKind,
        /// Include wall-clock milliseconds in the JSON report
        #[arg(long)]
        timing: bool,
    },
}

/// Exact integer as JSON: a number while it fits in the double-safe range,
/// a decimal string beyond it.
fn jint(v: &BigInt) -> Value {
    const SAFE: i64 = (1 << 53) - 1;
    match i64::try_from(v) {
        Ok(x) if x.abs() <= SAFE => json!(x),
        _ => json!(v.to_string()),
    }
}

fn jints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(jint).collect())
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_vector(s: &str) -> Result<Vec<BigInt>> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad JSON array: {e}")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
    arr.iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Parse(format!("non-integer entry: {n}"))),
            Value::String(s) => parse_bigint(s),
            other => Err(Error::Parse(format!("non-integer entry: {other}"))),
        })
        .collect()
}

fn run(cmd: &Cmd) -> Result<String> {
    match cmd {
        Cmd::Collect { rank, class, word } => {
            let w = parse_word(word, *rank)?;
            let engine = Engine::shared(QuotientSpec::new(*rank, *class));
            let nf = engine.collect(&w)?;
            let labels: Vec<String> =
                (0..engine.basis().len()).map(|i| engine.basis().label(i)).collect();
            Ok(json!({
                "rank": rank,
                "class": class,
                "exponents": jints(&nf.exponents),
                "labels": labels,
            })
            .to_string())
        }
        Cmd::Witt { rank, class } => {
            let engine = Engine::shared(QuotientSpec::new(*rank, *class));
            Ok(json!(engine.basis().sizes_per_weight()).to_string())
        }
        Cmd::Powershift { rank, k, args } => {
            if args.is_empty() {
                return Err(Error::EmptyArgumentList);
            }
            let words: Vec<FreeWord> = args
                .iter()
                .map(|a| parse_word(a, *rank))
                .collect::<Result<_>>()?;
            let k = parse_bigint(k)?;
            let m = words.len();
            let holds = verify_power_shift(&words, &k)?;
            let lhs = generalized_commutator(&words)?.pow(&k);
            let mut shifted = words.clone();
            shifted[0] = shifted[0].pow(&k);
            let delta = generalized_commutator(&shifted)?
                .invert()
                .multiply(&lhs)?;
            let res_m = Engine::shared(QuotientSpec::new(*rank, m)).collect(&delta)?;
            let res_m1 = Engine::shared(QuotientSpec::new(*rank, m + 1)).collect(&delta)?;
            Ok(json!({
                "class": m,
                "holds": holds,
                "k": jint(&k),
                "residual_class_m": jints(&res_m.exponents),
                "residual_class_m_plus_1": jints(&res_m1.exponents),
            })
            .to_string())
        }
        Cmd::Sympdec { vector } => {
            let v = parse_vector(vector)?;
            if v.is_empty() || v.len() % 2 != 0 {
                return Err(Error::BadMatrixShape);
            }
            let dec = decompose(&v);
            let terms: Vec<Value> = dec
                .terms
                .iter()
                .map(|m| {
                    json!({
                        "matrix": (0..m.rows)
                            .map(|i| Value::Array(
                                (0..m.cols).map(|j| jint(&m[(i, j)])).collect(),
                            ))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({
                "terms": terms,
                "v": jints(&dec.target),
                "verified": dec.verify(),
            })
            .to_string())
        }
        Cmd::Christoffel { p, q } => {
            let (p, q) = (parse_bigint(p)?, parse_bigint(q)?);
            let w = christoffel(&p, &q)?;
            Ok(json!({
                "p": jint(&p),
                "q": jint(&q),
                "word": format_word(&w),
            })
            .to_string())
        }
        Cmd::Section { genus, punctures, h } => {
            let spec = SurfaceSpec::new(*genus, *punctures);
            let h = parse_vector(h)?;
            let curves = scc_section(&h, spec)?;
            let items: Vec<Value> = curves
                .iter()
                .map(|c| {
                    json!({
                        "handle": c.handle,
                        "slope": [jint(&c.slope.0), jint(&c.slope.1)],
                        "word": format_word(&c.word),
                    })
                })
                .collect();
            Ok(json!({ "curves": items, "h": jints(&h) }).to_string())
        }
        Cmd::Rewrite { genus, class, word } => {
            let spec = SurfaceSpec::new(*genus, 1);
            let rank = spec.rank();
            let w = parse_word(word, rank)?;
            let seed: Vec<FreeWord> = (0..rank)
                .map(|i| FreeWord::generator(i, rank))
                .collect::<Result<_>>()?;
            let gens = GeneratingSet::new(rank, seed)?;
            let mut rw = Rewriter::new(gens, SccSection::new(spec));
            let cert = rw.rewrite(&w, *class)?;
            let verified = verify_certificate(&cert, rw.gens(), 2 * genus);
            let indices: Vec<i64> = cert
                .output
                .iter()
                .map(|&(i, inv)| {
                    let s = i as i64 + 1;
                    if inv { -s } else { s }
                })
                .collect();
            let generators: Vec<String> =
                rw.gens().elements().iter().map(format_word).collect();
            Ok(json!({
                "bound": jint(&cert.bound),
                "class": cert.class,
                "generators": generators,
                "indices": indices,
                "input": format_word(&cert.input),
                "output_word": format_word(&cert.output_word),
                "s_length": cert.s_length,
                "verified": verified,
            })
            .to_string())
        }
        Cmd::Diameter {
            genus,
            class,
            height,
            box_radius,
            max_radius,
            threads,
            max_states,
            output,
            timing,
        } => {
            let surface = SurfaceSpec::new(*genus, 1);
            let spec = QuotientSpec::new(surface.rank(), *class);
            let trunc = TruncationSpec::all_handles(*height, surface);
            let gens = truncated_generators(spec, &trunc, surface)?;
            let opts = BfsOptions {
                max_states: *max_states,
                threads: *threads,
                timing: *timing,
            };
            let report =
                bfs_coverage(&gens, spec, *box_radius, *max_radius, *height, &opts)?;
            Ok(match output {
                OutputKind::Json => report.to_json().to_string(),
                OutputKind::Csv => report.to_csv().trim_end().to_string(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(text) => {
            let text = format!("{text}\n");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("{}", json!({ "error": e.to_string() }));
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
