//! Benchmark runner: random instances per denominator pattern, every
//! result verified before its timing is reported.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use ctrat::bench::{gen_instance, BenchInstance, Pattern};
use ctrat::deadline;
use ctrat::telescope::{self, verify_certificate, Method, Options};
use ctrat::Error;

pub struct BenchConfig {
    pub patterns: Vec<Pattern>,
    pub seed: u64,
    pub seeds: u64,
    pub digits: Option<usize>,
    pub methods: Vec<Method>,
    pub timeout: Duration,
    pub normalize: bool,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Failed,
    Timeout,
    Error(String),
}

impl Status {
    fn name(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::Timeout => "timeout",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub index: usize,
    pub pattern: Pattern,
    pub seed: u64,
    pub method: &'static str,
    pub status: Status,
    pub order: Option<usize>,
    pub deg_x: Option<usize>,
    pub cert_form: &'static str,
    pub wall_ms: Option<f64>,
    pub verify_ms: Option<f64>,
}

impl Row {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }
}

fn run_one(index: usize, inst: &BenchInstance, method: Method, cfg: &BenchConfig) -> Row {
    let f = inst.f();
    let hermite = matches!(method, Method::Hermite(_));
    let mut row = Row {
        index,
        pattern: inst.pattern.clone(),
        seed: inst.seed,
        method: method.name(),
        status: Status::Timeout,
        order: None,
        deg_x: None,
        cert_form: if hermite && !cfg.normalize { "sum" } else { "normalized" },
        wall_ms: None,
        verify_ms: None,
    };
    let start = Instant::now();
    let result = deadline::with_deadline(Some(cfg.timeout), || {
        let t = telescope::telescope(&f, &Options { method, ..Default::default() })?;
        if cfg.normalize {
            t.certificate.normalize()?;
        }
        Ok(t)
    });
    let wall = start.elapsed();
    let t = match result {
        Ok(t) => t,
        Err(Error::Timeout) => return row,
        Err(e) => {
            row.status = Status::Error(e.to_string());
            return row;
        }
    };
    row.order = Some(t.op.order());
    row.deg_x = Some(t.op.deg_x());
    let vstart = Instant::now();
    match deadline::with_deadline(Some(cfg.timeout), || verify_certificate(&f, &t.op, &t.certificate)) {
        Ok(true) => {
            row.status = Status::Verified;
            row.wall_ms = Some(wall.as_secs_f64() * 1e3);
            row.verify_ms = Some(vstart.elapsed().as_secs_f64() * 1e3);
        }
        Ok(false) => row.status = Status::Failed,
        Err(Error::Timeout) => row.status = Status::Timeout,
        Err(e) => row.status = Status::Error(e.to_string()),
    }
    row
}

/// Run every `(pattern, seed)` instance with every method. Instances are
/// distributed over `cfg.workers` threads; rows come back in instance
/// order.
pub fn run(cfg: &BenchConfig) -> Vec<Row> {
    let jobs: Vec<(Pattern, u64)> =
        cfg.patterns.iter().flat_map(|p| (cfg.seed..cfg.seed + cfg.seeds).map(move |s| (p.clone(), s))).collect();
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<(usize, Vec<Row>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.clamp(1, jobs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((p, s)) = jobs.get(i) else { break };
                let inst = gen_instance(p, *s, cfg.digits);
                let rows: Vec<Row> = cfg.methods.iter().map(|&m| run_one(i, &inst, m, cfg)).collect();
                out.lock().unwrap().push((i, rows));
            });
        }
    });
    let mut out = out.into_inner().unwrap();
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().flat_map(|(_, r)| r).collect()
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 })
}

/// Instances where two minimal methods both verified with different orders.
pub fn order_mismatches(rows: &[Row]) -> Vec<usize> {
    let mut bad = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        let j = rows[i..].iter().position(|r| r.index != rows[i].index).map_or(rows.len(), |k| i + k);
        let orders: Vec<usize> = rows[i..j]
            .iter()
            .filter(|r| r.verified() && matches!(r.method, "hermite" | "az"))
            .filter_map(|r| r.order)
            .collect();
        if orders.windows(2).any(|w| w[0] != w[1]) {
            bad.push(rows[i].index);
        }
        i = j;
    }
    bad
}

pub fn row_json(r: &Row) -> Value {
    let mut v = json!({
        "index": r.index,
        "pattern": r.pattern.to_string(),
        "seed": r.seed,
        "method": r.method,
        "status": r.status.name(),
        "verified": r.verified(),
        "order": r.order,
        "deg_x": r.deg_x,
        "cert_form": r.cert_form,
        "wall_ms": r.wall_ms,
        "verify_ms": r.verify_ms,
    });
    if let Status::Error(e) = &r.status {
        v["error"] = json!(e);
    }
    v
}

pub fn summary_json(cfg: &BenchConfig, rows: &[Row]) -> Value {
    let mut by_method = serde_json::Map::new();
    for m in &cfg.methods {
        let mine: Vec<&Row> = rows.iter().filter(|r| r.method == m.name()).collect();
        let count = |s: &str| mine.iter().filter(|r| r.status.name() == s).count();
        by_method.insert(
            m.name().into(),
            json!({
                "verified": count("verified"),
                "failed": count("failed"),
                "timeout": count("timeout"),
                "error": count("error"),
                "median_wall_ms": median(mine.iter().filter_map(|r| r.wall_ms).collect()),
            }),
        );
    }
    json!({ "by_method": by_method, "order_mismatches": order_mismatches(rows) })
}

pub fn csv(rows: &[Row]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "pattern", "seed", "method", "status", "order", "deg_x", "cert_form", "wall_ms", "verify_ms"])?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.index.to_string(),
            r.pattern.to_string(),
            r.seed.to_string(),
            r.method.to_string(),
            r.status.name().to_string(),
            opt(r.order.map(|v| v.to_string())),
            opt(r.deg_x.map(|v| v.to_string())),
            r.cert_form.to_string(),
            opt(r.wall_ms.map(|v| format!("{v:.3}"))),
            opt(r.verify_ms.map(|v| format!("{v:.3}"))),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctrat::bench::patterns;
    use ctrat::hermite::Engine;

    fn config(workers: usize) -> BenchConfig {
        BenchConfig {
            patterns: patterns((2, 2), 5),
            seed: 42,
            seeds: 1,
            digits: None,
            methods: vec![Method::Hermite(Engine::HorowitzOstrogradsky), Method::Az],
            timeout: Duration::from_secs(60),
            normalize: false,
            workers,
        }
    }

    #[test]
    fn small_bench_verifies_and_agrees() {
        let cfg = config(1);
        let rows = run(&cfg);
        assert_eq!(rows.len(), 2 * cfg.patterns.len());
        assert!(rows.iter().all(Row::verified));
        assert!(order_mismatches(&rows).is_empty());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let strip = |rows: Vec<Row>| -> Vec<Value> {
            rows.iter()
                .map(|r| {
                    let mut v = row_json(r);
                    v["wall_ms"] = Value::Null;
                    v["verify_ms"] = Value::Null;
                    v
                })
                .collect()
        };
        assert_eq!(strip(run(&config(1))), strip(run(&config(3))));
    }
}
