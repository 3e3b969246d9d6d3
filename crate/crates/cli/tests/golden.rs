//! Golden JSON outputs of the command line tool. Keys ending in `_ms` are
//! timings and are removed before comparison. Run with `UPDATE_GOLDEN=1`
//! to rewrite the files.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn ctrat(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ctrat")).args(args).arg("--json").output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = if text.trim().is_empty() { Value::Null } else { serde_json::from_str(&text).unwrap() };
    (v, code)
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.retain(|k, _| !k.ends_with("_ms"));
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn golden(name: &str, args: &[&str]) -> Value {
    let (mut v, code) = ctrat(args);
    assert_eq!(code, 0, "{name}: exit code");
    strip_timings(&mut v);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, expected, "{name} differs from its golden file");
    v
}

#[test]
fn telescope_hermite() {
    let v = golden("telescope_hermite", &["telescope", "1/(1-x*y)", "--method", "hermite", "--verify"]);
    assert_eq!(v["L"], serde_json::json!([["1"], ["0", "1"]]));
    assert_eq!(v["certificate"]["form"], "sum");
    assert_eq!(v["verified"], true);
}

#[test]
fn telescope_az_normalized() {
    let v = golden("telescope_az", &["telescope", "(x+y)/((x+1)*(y^2-x))", "--method", "az", "--verify"]);
    assert_eq!(v["certificate"]["form"], "normalized");
    assert_eq!(v["order"], 2);
}

#[test]
fn telescope_cubic() {
    let v = golden("telescope_cubic", &["telescope", "1/(x-y)", "--method", "cubic", "--verify"]);
    assert_eq!(v["verified"], true);
}

#[test]
fn telescope_trivial() {
    let v = golden("telescope_trivial", &["telescope", "1/y^2"]);
    assert_eq!(v["L"], serde_json::json!([["1"]]));
    assert_eq!(v["order"], 0);
}

#[test]
fn reduce_engines_agree() {
    let v = golden("reduce", &["reduce", "1/(y^2*(y-1))"]);
    assert_eq!(v["g"], "1/y");
    assert_eq!(v["r"], "1/(y^2 - y)");
    for e in ["classic", "evalinterp"] {
        let (mut w, code) = ctrat(&["reduce", "1/(y^2*(y-1))", "--engine", e]);
        assert_eq!(code, 0);
        strip_timings(&mut w);
        assert_eq!((&w["g"], &w["r"]), (&v["g"], &v["r"]), "{e}");
    }
    let (w, _) = ctrat(&["reduce", "y/(y^2-1)"]);
    assert_eq!(w["g"], "0");
    assert_eq!(w["r"], w["input"]);
}

#[test]
fn diagonal_central_binomials() {
    let v = golden("diagonal", &["diagonal", "1/(1-x-y)", "--terms", "30"]);
    assert_eq!(v["L"], serde_json::json!([["2"], ["-1", "4"]]));
    assert_eq!(v["ode_check"], true);
    assert_eq!(v["series"][29], "30067266499541040");
}

#[test]
fn diagonal_family_member() {
    for subst in ["y_xy", "yx_x"] {
        let (v, code) = ctrat(&["diagonal", "1/(1-x-y-x*y*(1-x^1))", "--terms", "40", "--subst", subst, "--verify"]);
        assert_eq!(code, 0, "{subst}");
        assert_eq!(v["ode_check"], true);
        assert_eq!(v["verified"], true);
    }
}

#[test]
fn bench_small() {
    let v = golden("bench", &["bench", "--target", "2,2", "--seed", "42", "--workers", "2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2 * v["patterns"].as_u64().unwrap() as usize);
    assert!(rows.iter().all(|r| r["verified"] == true));
    assert_eq!(v["summary"]["order_mismatches"], serde_json::json!([]));
}

#[test]
fn verify_round_trip() {
    let f = "(x+y)^2/((x+1)*(y^2-x))";
    let out = Command::new(env!("CARGO_BIN_EXE_ctrat")).args(["telescope", f, "--json"]).output().unwrap();
    let path = std::env::temp_dir().join(format!("ctrat-verify-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let (v, code) = ctrat(&["verify", f, "--from", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!((code, &v["verified"]), (0, &Value::Bool(true)));
    let (v, code) = ctrat(&["verify", "1/(1-x*y)", "--op", "x*Dx + 1", "--cert", "1/(x*y-1)"]);
    assert_eq!((code, &v["verified"]), (1, &Value::Bool(false)));
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["telescope", "1/(x y)"][..],
        &["telescope", "1/0"],
        &["diagonal", "1/(x-y)"],
        &["telescope", "0"],
        &["reduce", "1/y", "--engine", "fast"],
        &["diagonal", "1/(1-x-y)", "--terms", "2"],
    ] {
        assert_eq!(ctrat(args).1, 2, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["telescope", "y/((x^2+y^2)*(1-x*y)^2)", "--normalize"];
    let (mut a, _) = ctrat(&args);
    let (mut b, _) = ctrat(&args);
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(a.to_string(), b.to_string());
}
