//! `ctrat`: telescopers, Hermite reduction and diagonals of bivariate
//! rational functions from the command line.

mod bench;
mod json;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use ctrat::bench::{patterns, Pattern};
use ctrat::deadline;
use ctrat::diag::{self, Substitution};
use ctrat::hermite::{self, Engine};
use ctrat::parser::{parse_diffop, parse_rfunc, print_canonical};
use ctrat::telescope::{self, verify_certificate, verify_telescoper, Method, Options, Telescoper};

const GRAMMAR: &str = "\
Expressions use integers, the variables x and y, + - * / ^ and parentheses.
Multiplication must be explicit: write x*y, not xy. Exponents are
non-negative integer literals. Operators (for `verify --op`) are written in
x and Dx with x to the left of Dx, e.g. \"(1 - 4*x)*Dx - 2\".";

#[derive(Parser)]
#[command(name = "ctrat", version, about = "Creative telescoping for bivariate rational functions", after_help = GRAMMAR)]
struct Cli {
    /// Print compact JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Solver {
    /// Telescoping method: hermite, az, lipshitz or cubic.
    #[arg(long, default_value = "hermite")]
    method: String,
    /// Hermite reduction engine: classic, ho or evalinterp.
    #[arg(long, default_value = "ho")]
    engine: String,
    /// Skip the evaluated lower bound on the order.
    #[arg(long)]
    no_lower_bound: bool,
    /// Seed of the randomized dependence checks.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Give up after this many seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

impl Solver {
    fn options(&self) -> Result<Options> {
        let engine = engine(&self.engine)?;
        let method = Method::from_name(&self.method, engine)
            .ok_or_else(|| anyhow!("unknown method {:?} (hermite, az, lipshitz, cubic)", self.method))?;
        Ok(Options { method, lower_bound: !self.no_lower_bound, seed: self.seed })
    }

    fn limit(&self) -> Option<Duration> {
        self.timeout.map(Duration::from_secs_f64)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Hermite reduction f = D_y(g) + r with r proper and squarefree in y.
    Reduce {
        expr: String,
        #[arg(long, default_value = "ho")]
        engine: String,
    },
    /// Telescoper L and certificate g with L(f) = D_y(g).
    Telescope {
        expr: String,
        #[command(flatten)]
        solver: Solver,
        /// Expand the certificate into a single rational function.
        #[arg(long)]
        normalize: bool,
        /// Check L(f) = D_y(g) exactly.
        #[arg(long)]
        verify: bool,
    },
    /// Annihilator of the diagonal of a rational power series.
    Diagonal {
        expr: String,
        /// Series terms for the check (default 2 (order + deg_x) + 10).
        #[arg(long)]
        terms: Option<usize>,
        /// Substitution: y_xy for f(y, x/y)/y, yx_x for f(y/x, x)/x.
        #[arg(long, default_value = "y_xy")]
        subst: String,
        #[command(flatten)]
        solver: Solver,
        /// Also check the telescoping identity of the substituted function.
        #[arg(long)]
        verify: bool,
    },
    /// Random instances by denominator factorization pattern.
    Bench(BenchArgs),
    /// Check L(f) = D_y(g) for a given operator and certificate.
    Verify {
        expr: String,
        /// Operator, e.g. "(x)*Dx + (1)".
        #[arg(long, requires = "cert", conflicts_with = "from")]
        op: Option<String>,
        /// Certificate g.
        #[arg(long, requires = "op")]
        cert: Option<String>,
        /// JSON output of `telescope` ("-" for standard input).
        #[arg(long)]
        from: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Target bidegree of the denominators, "dx,dy".
    #[arg(long, default_value = "3,3")]
    target: String,
    /// Highest multiplicity in the patterns.
    #[arg(long, default_value_t = 5)]
    max_mult: usize,
    /// "all", or patterns such as "(1,1)^2 (3,3)^1" separated by ';'.
    #[arg(long, default_value = "all")]
    patterns: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per pattern, with seeds seed, seed + 1, ...
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Approximate digits of the expanded coefficients (small if absent).
    #[arg(long)]
    digits: Option<usize>,
    /// Comma separated methods.
    #[arg(long, default_value = "hermite,az")]
    methods: String,
    #[arg(long, default_value = "ho")]
    engine: String,
    /// Per instance and method budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    /// Include certificate normalization in the hermite timings.
    #[arg(long)]
    normalize: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, env = "CTRAT_WORKERS")]
    workers: Option<usize>,
    /// Print the rows as CSV.
    #[arg(long)]
    csv: bool,
}

/// Command output: the JSON document and whether every check passed.
struct Report {
    value: Value,
    ok: bool,
    text: Option<String>,
}

fn engine(name: &str) -> Result<Engine> {
    Engine::from_name(name).ok_or_else(|| anyhow!("unknown engine {name:?} (classic, ho, evalinterp)"))
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn timed<T>(limit: Option<Duration>, f: impl FnOnce() -> ctrat::Result<T>) -> Result<(T, Duration)> {
    let t0 = Instant::now();
    let v = deadline::with_deadline(limit, f)?;
    Ok((v, t0.elapsed()))
}

fn reduce(expr: &str, engine_name: &str) -> Result<Report> {
    let f = parse_rfunc(expr)?;
    let e = engine(engine_name)?;
    let ((g, r), el) = timed(None, || hermite::reduce_rfunc(&f, e))?;
    let ok = g.dy().add(&r) == f;
    let value = json!({
        "input": print_canonical(&f),
        "engine": e.name(),
        "g": print_canonical(&g),
        "r": print_canonical(&r),
        "verified": ok,
        "stats": { "elapsed_ms": ms(el) },
    });
    Ok(Report { value, ok, text: None })
}

/// Certificates of the non-Hermite methods that are a multiple of a single
/// rational function.
fn is_plain(t: &Telescoper, method: Method) -> bool {
    let c = &t.certificate;
    !matches!(method, Method::Hermite(_)) && c.terms.len() == 1 && c.terms[0].order == 0
}

fn telescope_cmd(expr: &str, solver: &Solver, normalize: bool, verify: bool) -> Result<Report> {
    let f = parse_rfunc(expr)?;
    let opts = solver.options()?;
    let (t, _) = timed(solver.limit(), || telescope::telescope(&f, &opts))?;
    let mut out = Map::new();
    out.insert("input".into(), json!(print_canonical(&f)));
    json::operator_fields(&t.op, &mut out);
    let mut stats = json::stats(&t.stats);
    let normalized = if normalize || is_plain(&t, opts.method) {
        let (g, el) = timed(solver.limit(), || t.certificate.normalize())?;
        stats["normalize_ms"] = json!(ms(el));
        Some(g)
    } else {
        None
    };
    let cert = match &normalized {
        Some(g) => json!({ "form": "normalized", "g": print_canonical(g) }),
        None => json::certificate_sum(&t.certificate),
    };
    out.insert("certificate".into(), cert);
    let mut ok = true;
    let verified = if verify {
        let t0 = Instant::now();
        let v = match &normalized {
            Some(g) => verify_telescoper(&f, &t.op, g),
            None => deadline::with_deadline(solver.limit(), || verify_certificate(&f, &t.op, &t.certificate))?,
        };
        stats["verify_ms"] = json!(ms(t0.elapsed()));
        ok = v;
        Some(v)
    } else {
        None
    };
    out.insert("verified".into(), json!(verified));
    out.insert("stats".into(), stats);
    Ok(Report { value: Value::Object(out), ok, text: None })
}

fn diagonal_cmd(expr: &str, terms: Option<usize>, subst: &str, solver: &Solver, verify: bool) -> Result<Report> {
    let f = parse_rfunc(expr)?;
    let variant =
        Substitution::from_name(subst).ok_or_else(|| anyhow!("unknown substitution {subst:?} (y_xy, yx_x)"))?;
    let opts = solver.options()?;
    let ((g, t), el) = timed(solver.limit(), || diag::diagonal_telescoper(&f, variant, &opts))?;
    let op = &t.op;
    let n = terms.unwrap_or_else(|| diag::verification_terms(op));
    let required = diag::required_terms(op);
    if n < required {
        bail!("--terms {n} is too small for this operator: at least {required} terms are needed");
    }
    let s = diag::diagonal_series(&f, n)?;
    let check = diag::ode_check(op, &s)?;
    let mut out = Map::new();
    out.insert("input".into(), json!(print_canonical(&f)));
    out.insert("subst".into(), json!(variant.name()));
    out.insert("substituted".into(), json!(print_canonical(&g)));
    json::operator_fields(op, &mut out);
    out.insert("terms".into(), json!(n));
    out.insert("series".into(), Value::Array(s.coefficients.iter().map(json::rat).collect()));
    out.insert("ode_check".into(), json!(check));
    let mut stats = json::stats(&t.stats);
    stats["elapsed_ms"] = json!(ms(el));
    let mut ok = check;
    let verified = if verify {
        let v = deadline::with_deadline(solver.limit(), || verify_certificate(&g, op, &t.certificate))?;
        ok &= v;
        Some(v)
    } else {
        None
    };
    out.insert("verified".into(), json!(verified));
    out.insert("stats".into(), stats);
    Ok(Report { value: Value::Object(out), ok, text: None })
}

fn parse_target(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("target must be \"dx,dy\""))?;
    Ok((a.trim().parse().context("bad target")?, b.trim().parse().context("bad target")?))
}

fn bench_cmd(a: &BenchArgs) -> Result<Report> {
    let target = parse_target(&a.target)?;
    let pats = if a.patterns.trim() == "all" {
        patterns(target, a.max_mult)
    } else {
        a.patterns
            .split(';')
            .map(|s| Pattern::parse(s).ok_or_else(|| anyhow!("bad pattern {s:?}")))
            .collect::<Result<Vec<_>>>()?
    };
    let e = engine(&a.engine)?;
    let methods = a
        .methods
        .split(',')
        .map(|m| Method::from_name(m.trim(), e).ok_or_else(|| anyhow!("unknown method {m:?}")))
        .collect::<Result<Vec<_>>>()?;
    let workers = a.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if let Some(d) = a.digits {
        if d == 0 {
            bail!("--digits must be positive");
        }
    }
    let cfg = bench::BenchConfig {
        patterns: pats,
        seed: a.seed,
        seeds: a.seeds,
        digits: a.digits,
        methods,
        timeout: Duration::from_secs_f64(a.timeout),
        normalize: a.normalize,
        workers,
    };
    let rows = bench::run(&cfg);
    let ok = rows.iter().all(|r| matches!(r.status, bench::Status::Verified | bench::Status::Timeout))
        && bench::order_mismatches(&rows).is_empty();
    let value = json!({
        "target": [target.0, target.1],
        "patterns": cfg.patterns.len(),
        "seed": a.seed,
        "seeds": a.seeds,
        "digits": a.digits,
        "methods": cfg.methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "rows": rows.iter().map(bench::row_json).collect::<Vec<_>>(),
        "summary": bench::summary_json(&cfg, &rows),
    });
    let text = if a.csv { Some(bench::csv(&rows)?) } else { None };
    Ok(Report { value, ok, text })
}

fn verify_cmd(expr: &str, op: Option<&str>, cert: Option<&str>, from: Option<&PathBuf>) -> Result<Report> {
    let f = parse_rfunc(expr)?;
    let (l, c) = match (op, cert, from) {
        (Some(op), Some(cert), None) => (parse_diffop(op)?, json::Certificate::Normalized(parse_rfunc(cert)?)),
        (None, None, Some(path)) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
            };
            let v: Value = serde_json::from_str(&text).context("invalid JSON")?;
            (json::read_operator(&v["L"])?, json::read_certificate(&v["certificate"])?)
        }
        _ => bail!("give either --op and --cert, or --from"),
    };
    let t0 = Instant::now();
    let ok = match &c {
        json::Certificate::Normalized(g) => verify_telescoper(&f, &l, g),
        json::Certificate::Sum(s) => verify_certificate(&f, &l, s)?,
    };
    let mut out = Map::new();
    out.insert("input".into(), json!(print_canonical(&f)));
    json::operator_fields(&l, &mut out);
    out.insert("verified".into(), json!(ok));
    out.insert("stats".into(), json!({ "elapsed_ms": ms(t0.elapsed()) }));
    Ok(Report { value: Value::Object(out), ok, text: None })
}

fn text_of(v: &Value) -> String {
    let Value::Object(m) = v else { return v.to_string() };
    let mut out = String::new();
    for (k, v) in m {
        if matches!(k.as_str(), "L" | "rows") {
            continue;
        }
        let s = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}: {s}\n"));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match &cli.cmd {
        Cmd::Reduce { expr, engine } => reduce(expr, engine),
        Cmd::Telescope { expr, solver, normalize, verify } => telescope_cmd(expr, solver, *normalize, *verify),
        Cmd::Diagonal { expr, terms, subst, solver, verify } => diagonal_cmd(expr, *terms, subst, solver, *verify),
        Cmd::Bench(a) => bench_cmd(a),
        Cmd::Verify { expr, op, cert, from } => verify_cmd(expr, op.as_deref(), cert.as_deref(), from.as_ref()),
    };
    match report {
        Ok(r) => {
            if cli.pretty {
                println!("{}", serde_json::to_string_pretty(&r.value).unwrap());
            } else if cli.json {
                println!("{}", r.value);
            } else if let Some(t) = &r.text {
                print!("{t}");
            } else {
                print!("{}", text_of(&r.value));
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
