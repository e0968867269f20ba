//! Command-line front end: construct twisted generalized Reed-Solomon codes,
//! analyze arbitrary generator/parity-check inputs, re-derive the embedded
//! reference examples, and run bounded searches for LCD instances.
//!
//! Exit codes: 0 success, 1 reproduction mismatch, 2 validation failure
//! (the error name leads on stderr), 3 enumeration/resource guard.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use twistlcd_core::analysis::{analyze, AnalysisOptions};
use twistlcd_core::constructor::{search, validate, SearchConfig, TheoremId, TheoremSpec};
use twistlcd_core::error::Error;
use twistlcd_core::fixtures::{fixtures, run_fixture};
use twistlcd_core::gf::{field_new, Fe, FieldCtx};
use twistlcd_core::linalg::{split_prime_power, FMatrix};
use twistlcd_core::symfun::EvalPoints;
use twistlcd_core::twisted::{code_from_params, LinearCode, TwistedParams};

#[derive(Parser)]
#[command(
    name = "twistlcd",
    version,
    about = "Construct and analyze (*)-(L,P)-twisted generalized Reed-Solomon codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a params file or flags; print its table and matrices
    Construct(ConstructArgs),
    /// Analyze a code given a params file or a plain-text matrix file
    Analyze(AnalyzeArgs),
    /// Re-derive the embedded reference examples and diff every value
    Reproduce(ReproduceArgs),
    /// Bounded deterministic search for LCD instances of the four theorems
    Search(SearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    /// The matrix checks the code: analyze its kernel
    Parity,
    /// The matrix generates the code directly
    Generator,
}

#[derive(Args)]
struct ConstructArgs {
    /// JSON parameter file (alternative to the individual flags)
    #[arg(long)]
    params: Option<PathBuf>,
    /// Field as q or p^m, e.g. 61 or 3^4
    #[arg(long)]
    field: Option<String>,
    /// Certify the parameters against one theorem (t41, t42, t43, t44)
    #[arg(long)]
    theorem: Option<String>,
    /// Code length (the points become the ascending roots of x^n - lambda)
    #[arg(long)]
    n: Option<usize>,
    /// Code dimension
    #[arg(long)]
    k: Option<usize>,
    /// Twist degree; defaults to one less than the eta length
    #[arg(long)]
    ell: Option<usize>,
    /// Split parameter r (theorems t42/t44 only)
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<i64>,
    /// Comma-separated twist coefficients, e.g. 1,2,3,4
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Comma-separated column multipliers, e.g. 2,1,1,1
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also print the parity-check matrix
    #[arg(long)]
    dump_matrices: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// JSON params file, or a matrix file in the "rows cols q" text format
    #[arg(long)]
    params: Option<PathBuf>,
    /// How to interpret a matrix file
    #[arg(long, value_enum, default_value_t = Role::Parity)]
    role: Role,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Corrupt the first expectation on purpose (harness self-test)
    #[arg(long, hide = true)]
    tamper: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Field as q or p^m
    #[arg(long)]
    field: String,
    /// Length or inclusive length range, e.g. 7 or 7..12
    #[arg(long)]
    n: String,
    /// Dimension or inclusive dimension range
    #[arg(long)]
    k: String,
    /// Comma-separated theorems to try; defaults to all four
    #[arg(long)]
    theorem: Option<String>,
    /// Seed for the column-multiplier sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate-evaluation budget (hard cap 10^6)
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `twistlcd construct | head`)
    // instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::TooLargeToEnumerate(_) | Error::BudgetExceeded(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let opts = analysis_options()?;
    match cli.command {
        Command::Construct(a) => cmd_construct(a, &opts),
        Command::Analyze(a) => cmd_analyze(a, &opts),
        Command::Reproduce(a) => cmd_reproduce(a, &opts),
        Command::Search(a) => cmd_search(a, opts),
    }
}

/// The enumeration guards, overridable via TWISTLCD_GUARD.
fn analysis_options() -> Result<AnalysisOptions, Error> {
    match std::env::var("TWISTLCD_GUARD") {
        Ok(s) => {
            let g: u64 = s.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("TWISTLCD_GUARD must be an integer, got {:?}", s))
            })?;
            Ok(AnalysisOptions::with_guard(g))
        }
        Err(_) => Ok(AnalysisOptions::default()),
    }
}

fn parse_field(s: &str) -> Result<Arc<FieldCtx>, Error> {
    let s = s.trim();
    if let Some((p, m)) = s.split_once('^') {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad characteristic in field spec {s:?}")))?;
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad degree in field spec {s:?}")))?;
        field_new(p, m)
    } else {
        let q: u64 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad field spec {s:?}")))?;
        let (p, m) = split_prime_power(q)?;
        field_new(p, m)
    }
}

fn parse_i64_list(s: &str, what: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad {what} entry {:?}", t.trim())))
        })
        .collect()
}

fn parse_range(s: &str, what: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::InvalidInput(format!("bad {what} range {s:?}; expected N or LO..HI"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let n: usize = s.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn fes(ctx: &Arc<FieldCtx>, vals: &[i64]) -> Vec<Fe> {
    vals.iter().map(|&x| ctx.from_int(x)).collect()
}

/// JSON parameter file. `q` may be a number or a string ("61", "3^4").
/// With explicit `alphas` the points are taken verbatim; otherwise `n` and
/// `lambda` are required and the points are the ascending roots of xⁿ − λ.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    q: QVal,
    #[serde(default)]
    n: Option<usize>,
    k: usize,
    #[serde(default)]
    lambda: Option<i64>,
    eta: Vec<i64>,
    v: Vec<i64>,
    #[serde(default)]
    alphas: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QVal {
    Num(u64),
    Str(String),
}

fn parse_params_text(text: &str) -> Result<(TwistedParams, bool), Error> {
    let pf: ParamsFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad params file: {e}")))?;
    let ctx = match &pf.q {
        QVal::Num(q) => {
            let (p, m) = split_prime_power(*q)?;
            field_new(p, m)?
        }
        QVal::Str(s) => parse_field(s)?,
    };
    let eta = fes(&ctx, &pf.eta);
    let v = fes(&ctx, &pf.v);
    let lambda = pf.lambda.map(|l| ctx.from_int(l));
    if let Some(alphas) = &pf.alphas {
        if let Some(n) = pf.n {
            if n != alphas.len() {
                return Err(Error::InvalidInput(format!(
                    "n = {} disagrees with {} alphas",
                    n,
                    alphas.len()
                )));
            }
        }
        let pts = EvalPoints::new(fes(&ctx, alphas))?;
        Ok((TwistedParams::new(pts, pf.k, eta, v, lambda)?, true))
    } else {
        let n = pf
            .n
            .ok_or_else(|| Error::InvalidInput("n is required unless alphas are given".into()))?;
        let lambda = lambda
            .ok_or_else(|| Error::InvalidInput("lambda is required unless alphas are given".into()))?;
        Ok((TwistedParams::from_lambda(&ctx, n, pf.k, eta, v, lambda)?, false))
    }
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// Certification metadata attached to a constructed code.
struct Certified {
    which: TheoremId,
    r: Option<usize>,
    condition: Option<Fe>,
}

fn resolve_construct(a: &ConstructArgs) -> Result<(TwistedParams, Option<Certified>), Error> {
    let (params, explicit_alphas) = if let Some(path) = &a.params {
        parse_params_text(&read_file(path)?)?
    } else {
        let field = a
            .field
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--field is required without --params".into()))?;
        let ctx = parse_field(field)?;
        let n = a
            .n
            .ok_or_else(|| Error::InvalidInput("--n is required without --params".into()))?;
        let k = a
            .k
            .ok_or_else(|| Error::InvalidInput("--k is required without --params".into()))?;
        let lambda = a
            .lambda
            .ok_or_else(|| Error::InvalidInput("--lambda is required without --params".into()))?;
        let eta = parse_i64_list(
            a.eta
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("--eta is required without --params".into()))?,
            "eta",
        )?;
        let v = parse_i64_list(
            a.v.as_deref()
                .ok_or_else(|| Error::InvalidInput("--v is required without --params".into()))?,
            "v",
        )?;
        let params = TwistedParams::from_lambda(
            &ctx,
            n,
            k,
            fes(&ctx, &eta),
            fes(&ctx, &v),
            ctx.from_int(lambda),
        )?;
        (params, false)
    };

    if let Some(ell) = a.ell {
        if ell != params.ell() {
            return Err(Error::InvalidInput(format!(
                "--ell {} disagrees with eta length {} (ℓ + 1)",
                ell,
                params.eta().len()
            )));
        }
    }

    let certified = match &a.theorem {
        None => {
            if a.r.is_some() {
                return Err(Error::InvalidInput("--r only applies with --theorem".into()));
            }
            None
        }
        Some(name) => {
            let which: TheoremId = name.parse()?;
            if explicit_alphas {
                return Err(Error::InvalidInput(
                    "theorem certification requires lambda-derived points, not explicit alphas"
                        .into(),
                ));
            }
            let lambda = params
                .lambda()
                .cloned()
                .expect("lambda-derived params carry lambda");
            let spec = validate(
                params.ctx(),
                which,
                params.n(),
                params.k(),
                params.ell(),
                lambda,
                params.eta().to_vec(),
                params.v().to_vec(),
                a.r,
            )?;
            Some(Certified {
                which,
                r: spec.r(),
                condition: spec.condition_value().cloned(),
            })
        }
    };
    Ok((params, certified))
}

/// The four table rows (α, Σ, 1+Σ, v·(1+Σ)) as element codes.
fn twist_table(params: &TwistedParams) -> Result<[Vec<u64>; 4], Error> {
    let n = params.n();
    let mut alphas = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut header = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    for j in 1..=n {
        alphas.push(params.points().alphas()[j - 1].value());
        sigma.push(params.twist_sigma(j)?.value());
        let h = params.twist_column_header(j)?;
        scaled.push((params.v()[j - 1].clone() * h.clone()).value());
        header.push(h.value());
    }
    Ok([alphas, sigma, header, scaled])
}

fn join(row: &[u64]) -> String {
    row.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn matrix_rows(m: &FMatrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).value()).collect())
        .collect()
}

fn cmd_construct(a: ConstructArgs, _opts: &AnalysisOptions) -> Result<u8, Error> {
    let (params, certified) = resolve_construct(&a)?;
    let [alphas, sigma, header, scaled] = twist_table(&params)?;
    let g = params.generator_matrix();
    let h = params.parity_check_matrix();

    match a.format {
        Format::Table => {
            println!(
                "GF({}), n = {}, k = {}, ell = {}",
                params.ctx().order(),
                params.n(),
                params.k(),
                params.ell()
            );
            if let Some(lam) = params.lambda() {
                println!("lambda = {lam}");
            }
            if let Some(c) = &certified {
                let mut line = format!("certified {}", c.which);
                if let Some(r) = c.r {
                    line.push_str(&format!(", r = {r}"));
                }
                if let Some(cond) = &c.condition {
                    line.push_str(&format!(", condition = {cond}"));
                }
                println!("{line}");
            }
            println!("alpha    | {}", join(&alphas));
            println!("sigma    | {}", join(&sigma));
            println!("1+sigma  | {}", join(&header));
            println!("v-scaled | {}", join(&scaled));
            println!("generator matrix:");
            print!("{}", g.to_text());
            if a.dump_matrices {
                println!("parity-check matrix:");
                print!("{}", h.to_text());
            }
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "q": params.ctx().order(),
                "n": params.n(),
                "k": params.k(),
                "ell": params.ell(),
                "lambda": params.lambda().map(|l| l.value()),
                "eta": params.eta().iter().map(|e| e.value()).collect::<Vec<_>>(),
                "v": params.v().iter().map(|e| e.value()).collect::<Vec<_>>(),
                "alphas": alphas,
                "table": {"sigma": sigma, "header": header, "scaled": scaled},
                "g": matrix_rows(&g),
            });
            if let Some(c) = &certified {
                obj["theorem"] = c.which.as_str().into();
                obj["r"] = serde_json::json!(c.r);
                obj["condition"] = serde_json::json!(c.condition.as_ref().map(|x| x.value()));
            }
            if a.dump_matrices {
                obj["h"] = serde_json::json!(matrix_rows(&h));
            }
            println!("{obj}");
        }
    }
    Ok(0)
}

fn cmd_analyze(a: AnalyzeArgs, opts: &AnalysisOptions) -> Result<u8, Error> {
    let path = a
        .params
        .ok_or_else(|| Error::InvalidInput("--params FILE is required".into()))?;
    let text = read_file(&path)?;
    let code = if text.trim_start().starts_with('{') {
        let (params, _) = parse_params_text(&text)?;
        code_from_params(&params)?
    } else {
        let m = FMatrix::from_text(&text)?;
        match a.role {
            Role::Parity => LinearCode::new(m.nullspace_basis())?,
            Role::Generator => LinearCode::new(m)?,
        }
    };
    let report = analyze(&code, opts)?;
    match a.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        ),
        Format::Table => {
            println!(
                "[{}, {}, {}] over GF({})",
                report.n,
                report.k,
                report.d,
                code.ctx().order()
            );
            println!("class: {}", report.mds_class);
            println!(
                "lcd: {} (stack-rank {}, gram {}, hull {})",
                report.lcd, report.lcd_evidence[0], report.lcd_evidence[1], report.lcd_evidence[2]
            );
            println!("hull dimension: {}", report.hull_dim);
            if let Some(dd) = report.d_dual {
                println!("dual distance: {dd}");
            }
        }
    }
    Ok(0)
}

fn cmd_reproduce(a: ReproduceArgs, opts: &AnalysisOptions) -> Result<u8, Error> {
    let mut fxs = fixtures();
    if a.tamper {
        fxs[0].expected_d = 10;
    }
    let mut reports = Vec::with_capacity(fxs.len());
    for fx in &fxs {
        reports.push(run_fixture(fx, opts)?);
    }
    let mut first_fail: Option<(String, String)> = None;
    if a.format == Format::Table {
        for rep in &reports {
            let verdict = if rep.pass() { "PASS" } else { "FAIL" };
            let mut line = format!(
                "{} {:8} {} {} {}",
                verdict,
                rep.name,
                rep.report.params_string(),
                rep.report.mds_class,
                if rep.report.lcd { "LCD" } else { "not LCD" }
            );
            if let Some(m) = rep.mismatches.first() {
                line.push_str(&format!("  ({m})"));
            }
            println!("{line}");
        }
    } else {
        let payload: Vec<_> = reports.iter().map(|r| &r.report).collect();
        println!(
            "{}",
            serde_json::to_string(&payload).expect("reports serialize")
        );
    }
    for rep in &reports {
        if let Some(m) = rep.mismatches.first() {
            first_fail = Some((rep.name.clone(), m.clone()));
            break;
        }
    }
    if let Some((name, mismatch)) = first_fail {
        eprintln!("{name}: {mismatch}");
        return Ok(1);
    }
    Ok(0)
}

fn spec_summary(spec: &TheoremSpec) -> String {
    let p = spec.params();
    let mut s = format!(
        "{} GF({}) lambda={} eta={} v={}",
        spec.which(),
        p.ctx().order(),
        p.lambda().map(|l| l.value()).unwrap_or(0),
        p.eta().iter().map(|e| e.value().to_string()).collect::<Vec<_>>().join(","),
        p.v().iter().map(|e| e.value().to_string()).collect::<Vec<_>>().join(","),
    );
    if let Some(r) = spec.r() {
        s.push_str(&format!(" r={r}"));
    }
    s
}

fn cmd_search(a: SearchArgs, opts: AnalysisOptions) -> Result<u8, Error> {
    let ctx = parse_field(&a.field)?;
    let theorems = match &a.theorem {
        None => TheoremId::all().to_vec(),
        Some(list) => list
            .split(',')
            .map(|t| t.trim().parse::<TheoremId>())
            .collect::<Result<Vec<_>, _>>()?,
    };
    let mut cfg = SearchConfig::new(
        parse_range(&a.n, "--n")?,
        parse_range(&a.k, "--k")?,
        theorems,
    );
    cfg.budget = a.budget;
    cfg.seed = a.seed;
    cfg.opts = opts;
    let out = search(&ctx, &cfg)?;
    match a.format {
        Format::Json => {
            for hit in &out.hits {
                println!("{}", hit.record());
            }
        }
        Format::Table => {
            for hit in &out.hits {
                println!(
                    "{} {} {}",
                    hit.report.params_string(),
                    hit.report.mds_class,
                    spec_summary(&hit.spec)
                );
            }
            println!(
                "hits: {}  evaluated: {}  truncated: {}",
                out.hits.len(),
                out.evaluated,
                out.truncated
            );
        }
    }
    eprintln!(
        "search evaluated {} candidates, {} hits{}",
        out.evaluated,
        out.hits.len(),
        if out.truncated { " (budget exhausted)" } else { "" }
    );
    Ok(0)
}
