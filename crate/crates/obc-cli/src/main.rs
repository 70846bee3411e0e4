//! `obc`: normal forms, dimensions, matrix functors and verification suites from the
//! command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use obc_core::cyclotomic::{cyclo_dim, CycloData, CycloError, CycloReducer, GenSet};
use obc_core::diagrams::{expr_compose, parse_expr, print_expr, DiagramError, Expr, Word};
use obc_core::normalform::{dim_filtered, enumerate_keys, nm_compose, DotBounds, NormalError, NormalMorphism, Normalizer};
use obc_core::qrep::{central_element_matrix, module_matrix, phi_eval, psi_eval, QGen, QnContext, QrepError, SuperMatrix};
use obc_core::scalars::GRat;
use obc_core::suites::{self, Report};
use obc_core::verma::{top_component, Truncation, Verma, VermaError};

const SUITES: &[&str] = &[
    "obc-relations",
    "aobc-relations",
    "slides",
    "bubbles",
    "sergeev",
    "walled",
    "affine-sergeev",
    "schur-weyl",
    "verma-lemmas",
    "central",
    "cyclo",
    "integrality",
    "oracle-fuzz",
];

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Qrep(#[from] QrepError),
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "obc", version, about = "Exact computations in the oriented Brauer-Clifford supercategories")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug, Clone)]
struct Opts {
    /// Diagram expression; repeat for `compose` (applied right to left)
    #[arg(long, global = true)]
    expr: Vec<String>,
    #[arg(long, global = true)]
    expr_file: Vec<PathBuf>,
    /// Source word, e.g. `du`
    #[arg(long, global = true)]
    src: Option<String>,
    #[arg(long, global = true)]
    dst: Option<String>,
    /// Rank of q(n)
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Cyclotomic polynomial, e.g. `t^2-3`
    #[arg(long, global = true)]
    f: Option<String>,
    /// Comma separated z'_1, z'_2, ... or `formal`
    #[arg(long, global = true)]
    fprime: Option<String>,
    /// Bound on the total number of closed dots (and bubble degree)
    #[arg(long, global = true)]
    max_dots: Option<u32>,
    /// Bound on closed dots per strand
    #[arg(long, global = true)]
    per_strand: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Word of the module tensored on the right in `psi`
    #[arg(long, global = true, default_value = "")]
    module: String,
    /// Index of the central element z_k
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    /// Generating set used for the cyclotomic ideal
    #[arg(long, global = true, default_value_t = 1)]
    set: u8,
    /// Cap on matrix dimension
    #[arg(long, global = true)]
    max_dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Normal form of an expression
    Normalize,
    /// Dimension of a Hom space
    Dim,
    /// Normal form of the composite of the given expressions
    Compose,
    /// Matrix of the Phi functor
    Phi,
    /// Matrix of the Psi functor on V^src (x) module
    Psi,
    /// Psi on V^r (x) M for the generic Verma module M, applied to v_r..v_1 (x) u^
    Psim,
    /// Matrix of z_k and its supercommutators with q(n)
    Central,
    /// Reduction in, or dimension of, a cyclotomic quotient
    Cyclo,
    /// Run a verification suite
    Verify {
        #[arg(long)]
        suite: String,
    },
}

/// What a verb produces: a result payload plus checks that decide the exit code.
struct Outcome {
    verb: String,
    result: Value,
    text: String,
    report: Report,
    keys: usize,
    steps: u64,
}

impl Outcome {
    fn new(verb: &str, result: Value, text: String) -> Outcome {
        Outcome { verb: verb.into(), result, text, report: Report::new(verb), keys: 0, steps: 0 }
    }
}

fn word(s: &str) -> Result<Word, CliError> {
    Ok(s.parse::<Word>()?)
}

fn exprs(o: &Opts) -> Result<Vec<Expr>, CliError> {
    let mut out = Vec::new();
    for s in &o.expr {
        out.push(parse_expr(s)?);
    }
    for p in &o.expr_file {
        let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
        out.push(parse_expr(&text)?);
    }
    Ok(out)
}

fn one_expr(o: &Opts) -> Result<Expr, CliError> {
    let mut es = exprs(o)?;
    match es.len() {
        1 => Ok(es.remove(0)),
        0 => Err(CliError::Usage("an expression is required (--expr or --expr-file)".into())),
        k => Err(CliError::Usage(format!("expected one expression, got {k}"))),
    }
}

fn context(o: &Opts, default_n: usize) -> Result<QnContext, CliError> {
    let ctx = QnContext::new(o.n.unwrap_or(default_n))?;
    Ok(match o.max_dim {
        Some(cap) => ctx.with_cap(cap),
        None => ctx,
    })
}

fn matrix_text(m: &SuperMatrix) -> String {
    let mut out = format!("{} x {} matrix, {} nonzero entries\n", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.entries() {
        out.push_str(&format!("  [{r}, {c}] = {v}\n"));
    }
    out
}

fn normal_text(m: &NormalMorphism) -> String {
    if m.is_zero() {
        return "0".into();
    }
    print_expr(&m.to_expr())
}

fn parse_rat(s: &str) -> Result<GRat, CliError> {
    s.trim().parse::<GRat>().map_err(|e| CliError::Usage(format!("bad coefficient {s:?}: {e}")))
}

fn cyclo_data(o: &Opts) -> Result<CycloData, CliError> {
    let f = o.f.as_deref().ok_or_else(|| CliError::Usage("--f is required".into()))?;
    let f = CycloData::parse_poly(f)?;
    let zprime = match o.fprime.as_deref() {
        None | Some("formal") => None,
        Some(list) => Some(list.split(',').map(parse_rat).collect::<Result<Vec<_>, _>>()?),
    };
    Ok(CycloData::from_f(&f, zprime)?)
}

fn normalize_verb(o: &Opts) -> Result<Outcome, CliError> {
    let e = one_expr(o)?;
    let nz = Normalizer::new();
    let m = nz.normalize(&e)?;
    let mut out = Outcome::new("normalize", m.to_json(), normal_text(&m));
    out.keys = m.len();
    out.steps = nz.steps();
    Ok(out)
}

fn compose_verb(o: &Opts) -> Result<Outcome, CliError> {
    let es = exprs(o)?;
    if es.len() < 2 {
        return Err(CliError::Usage("compose needs at least two expressions".into()));
    }
    let nz = Normalizer::new();
    let mut acc = nz.normalize(es.last().expect("nonempty"))?;
    for e in es.iter().rev().skip(1) {
        // type check before normalizing the left factor
        expr_compose(e, &acc.to_expr())?;
        acc = nm_compose(&nz, &nz.normalize(e)?, &acc)?;
    }
    let mut out = Outcome::new("compose", acc.to_json(), normal_text(&acc));
    out.keys = acc.len();
    out.steps = nz.steps();
    Ok(out)
}

fn dim_verb(o: &Opts) -> Result<Outcome, CliError> {
    let src = word(o.src.as_deref().unwrap_or(""))?;
    let dst = word(o.dst.as_deref().unwrap_or(o.src.as_deref().unwrap_or("")))?;
    let (d, how) = if o.f.is_some() {
        (cyclo_dim(&src, &dst, &cyclo_data(o)?, o.max_dots)?, "cyclotomic")
    } else if let Some(l) = o.per_strand {
        (enumerate_keys(&src, &dst, DotBounds::per_strand(l))?.len(), "per-strand")
    } else {
        (dim_filtered(&src, &dst, o.max_dots.unwrap_or(0))?, "filtered")
    };
    let mut out = Outcome::new("dim", json!({ "src": src.to_string(), "dst": dst.to_string(), "bound": how, "dim": d }), d.to_string());
    out.keys = d;
    Ok(out)
}

fn phi_verb(o: &Opts) -> Result<Outcome, CliError> {
    let m = phi_eval(&context(o, 2)?, &one_expr(o)?)?;
    Ok(Outcome::new("phi", m.to_json(), matrix_text(&m)))
}

fn psi_verb(o: &Opts) -> Result<Outcome, CliError> {
    let m = psi_eval(&context(o, 2)?, &one_expr(o)?, &word(&o.module)?)?;
    Ok(Outcome::new("psi", m.to_json(), matrix_text(&m)))
}

fn psim_verb(o: &Opts) -> Result<Outcome, CliError> {
    let e = one_expr(o)?;
    let n = o.n.unwrap_or(3);
    let r = e.src().len();
    if e.src() != &Word::ups(r) || r > n {
        return Err(CliError::Usage(format!("psim needs an expression on up^r with r <= n, got source {}", e.src())));
    }
    let degree = o.max_dots.unwrap_or(5);
    let m = Verma::new(n, Truncation::new(degree, 2 * degree + 4))?;
    let v = m.psi_m(&e, &m.standard_input(r));
    let render = |v: &obc_core::qrep::TVec<obc_core::verma::VBasis>| -> Vec<Value> {
        v.iter().map(|((idx, b), c)| json!({ "v": idx, "sym": b.sym.to_string(), "h": b.h, "coeff": c.to_string() })).collect()
    };
    let top = top_component(&v);
    let text = top.iter().map(|((idx, b), c)| format!("{c} v{idx:?} (x) {} h{:?}", b.sym, b.h)).collect::<Vec<_>>().join("\n");
    let mut out = Outcome::new("psim", json!({ "n": n, "r": r, "value": render(&v), "top": render(&top) }), text);
    out.report.check("truncation not reached", !m.truncation_hit(), format!("degree bound {degree}"));
    Ok(out)
}

fn central_verb(o: &Opts) -> Result<Outcome, CliError> {
    let ctx = context(o, 2)?;
    let a = word(o.src.as_deref().unwrap_or("u"))?;
    let z = central_element_matrix(&ctx, o.k, &a)?;
    let mut out = Outcome::new("central", json!({ "k": o.k, "word": a.to_string(), "matrix": z.to_json() }), matrix_text(&z));
    for g in QGen::all(ctx.n) {
        let comm = z.supercommutator(&module_matrix(&ctx, g, &a)?)?;
        let name = format!("{}{}_{}{}", if g.odd { "f" } else { "e" }, if g.tilde { "~" } else { "" }, g.i + 1, g.j + 1);
        out.report.check(format!("[z_{}, {name}] = 0", o.k), comm.is_zero(), "");
    }
    Ok(out)
}

fn cyclo_verb(o: &Opts) -> Result<Outcome, CliError> {
    let data = cyclo_data(o)?;
    if o.expr.is_empty() && o.expr_file.is_empty() {
        return dim_verb(o);
    }
    let set = match o.set {
        1 => GenSet::Set1,
        2 => GenSet::Set2,
        s => return Err(CliError::Usage(format!("--set must be 1 or 2, got {s}"))),
    };
    let red = CycloReducer::new(data.clone(), set);
    let m = red.normalize(&one_expr(o)?)?;
    let mut out = Outcome::new("cyclo", json!({ "data": data.to_json(), "morphism": m.to_json() }), m.to_string());
    out.keys = m.terms().len();
    Ok(out)
}

fn ns(o: &Opts) -> Vec<usize> {
    o.n.map_or_else(|| vec![1, 2, 3], |n| vec![n])
}

fn verify_verb(o: &Opts, suite: &str) -> Result<Outcome, CliError> {
    let seed = o.seed.unwrap_or(0);
    let report = match suite {
        "obc-relations" => suites::relations::obc_relations(&ns(o)),
        "aobc-relations" => suites::relations::aobc_relations(&ns(o)),
        "slides" => suites::relations::slides(&ns(o)),
        "bubbles" => suites::relations::bubbles(&ns(o)),
        "sergeev" => suites::algebras::sergeev(o.r.unwrap_or(3)),
        "walled" => suites::algebras::walled(o.r.unwrap_or(4)),
        "affine-sergeev" => suites::algebras::affine_sergeev(o.r.unwrap_or(3)),
        "schur-weyl" => match (o.r, o.n) {
            (Some(r), Some(n)) => suites::representations::schur_weyl(&[(r, n)], &[])?,
            _ => suites::representations::schur_weyl(&[(1, 1), (2, 2), (2, 3), (3, 3)], &[(2, 1), (3, 2)])?,
        },
        "verma-lemmas" => suites::verma::verma_suite(o.n.unwrap_or(3), o.r.unwrap_or(2))?,
        "central" => suites::representations::central(&ns(o))?,
        "cyclo" => suites::cyclo::cyclo_suite(seed, o.count.unwrap_or(50)),
        "integrality" => suites::fuzz::integrality(seed, o.count.unwrap_or(100)),
        "oracle-fuzz" => suites::fuzz::oracle_fuzz(seed, o.count.unwrap_or(200), o.n.unwrap_or(2)),
        other => return Err(CliError::Usage(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    let text = report.to_string();
    let mut out = Outcome::new("verify", json!({ "suite": suite }), text);
    out.report = report;
    Ok(out)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let o = &cli.opts;
    match &cli.verb {
        Verb::Normalize => normalize_verb(o),
        Verb::Dim => dim_verb(o),
        Verb::Compose => compose_verb(o),
        Verb::Phi => phi_verb(o),
        Verb::Psi => psi_verb(o),
        Verb::Psim => psim_verb(o),
        Verb::Central => central_verb(o),
        Verb::Cyclo => cyclo_verb(o),
        Verb::Verify { suite } => verify_verb(o, suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            match cli.opts.format {
                Format::Json => println!("{}", json!({ "status": "error", "error": e.to_string() })),
                Format::Text => eprintln!("error: {e}"),
            }
            return ExitCode::from(2);
        }
    };
    let passed = out.report.passed();
    let mut buf = String::new();
    match cli.opts.format {
        Format::Json => {
            let doc = json!({
                "verb": out.verb,
                "status": if passed { "pass" } else { "fail" },
                "result": out.result,
                "checks": out.report.checks,
                "notes": out.report.notes,
                "seed": cli.opts.seed,
                "counters": { "keys": out.keys, "rewrite_steps": out.steps },
                "timing_ms": start.elapsed().as_millis() as u64,
            });
            buf = serde_json::to_string_pretty(&doc).expect("json");
        }
        Format::Text => {
            buf.push_str(out.text.trim_end());
            if out.verb != "verify" {
                for c in &out.report.checks {
                    buf.push_str(&format!("\n{} {}", if c.passed { "ok  " } else { "FAIL" }, c.label));
                }
            }
        }
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{buf}");
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
