use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn circord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn klein() -> Value {
    json!({"type": "finite_table", "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]})
}

fn cyclic(m: usize) -> Value {
    let table: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| (i + j) % m).collect())
        .collect();
    json!({"type": "finite_table", "table": table})
}

fn surd(d: u64, shift: i64) -> Value {
    json!({"terms": [[1, shift.to_string()], [d, "1"]]})
}

#[test]
fn eval_finite_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let order = write(
        dir.path(),
        "o.json",
        &json!({"type": "finite_rotation", "m": 4, "k": 1}),
    );
    let o = circord(&["eval", "--order", s(&order), "--triple", "[0,1,2]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "+1\n");
    let o = circord(&["eval", "--order", s(&order), "--triple", "[0,2,1]"]);
    assert_eq!(stdout(&o), "-1\n");
}

#[test]
fn enumerate_cyclic_counts() {
    let o = circord(&["enumerate", "--cyclic", "4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(
        v["orders"][1],
        json!({"type": "finite_rotation", "m": 4, "k": 3})
    );
}

#[test]
fn enumerate_table_group() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &cyclic(5));
    let o = circord(&["enumerate", "--group", s(&g)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 4);
}

#[test]
fn klein_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "klein.json", &klein());
    let cert = dir.path().join("cert.json");
    let o = circord(&[
        "search",
        "--group",
        s(&g),
        "--mode",
        "co",
        "--max-radius",
        "2",
        "--out",
        s(&cert),
    ]);
    assert_eq!(code(&o), 10, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["mode"], "co");
    assert_eq!(v["minimized"], true);

    let o = circord(&["verify-cert", "--cert", s(&cert), "--group", s(&g)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    // a minimal certificate becomes satisfiable without any one clause
    let mut weak = v.clone();
    weak["clauses"].as_array_mut().unwrap().pop();
    let weak = write(dir.path(), "weak.json", &weak);
    assert_eq!(code(&circord(&["verify-cert", "--cert", s(&weak)])), 1);

    // the certificate names its group
    let other = write(dir.path(), "z4.json", &cyclic(4));
    assert_eq!(
        code(&circord(&[
            "verify-cert",
            "--cert",
            s(&cert),
            "--group",
            s(&other)
        ])),
        2
    );
}

#[test]
fn z2_linear_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "z2.json", &cyclic(2));
    let o = circord(&[
        "search",
        "--group",
        s(&g),
        "--mode",
        "lo",
        "--max-radius",
        "1",
    ]);
    assert_eq!(code(&o), 10);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["clauses"].as_array().unwrap().len(), 1);
}

#[test]
fn cyclic_search_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "z5.json", &cyclic(5));
    let o = circord(&["search", "--group", s(&g), "--max-radius", "2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "inconclusive_sat_up_to");
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "klein.json", &klein());
    let a = circord(&["search", "--group", s(&g)]);
    let b = circord(&["search", "--group", s(&g), "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn schema_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        &json!({"type": "rotation", "n": 1, "m": 0, "theta": [{"terms": [[2, "x"]]}], "k": 0}),
    );
    let o = circord(&["validate", "--order", s(&bad)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("theta[0]"), "{err}");

    let o = circord(&["validate", "--order", s(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&circord(&["frobnicate"])), 2);
}

#[test]
fn validate_flags_a_broken_table() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "z5.json", &cyclic(5));
    let o = circord(&["enumerate", "--group", s(&g)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let good = write(dir.path(), "good.json", &v["orders"][0]);
    assert_eq!(
        code(&circord(&[
            "validate",
            "--order",
            s(&good),
            "--radius",
            "1"
        ])),
        0
    );

    // flip c(e, 1, 2) and c(e, 2, 1) together, keeping antisymmetry
    let mut t = v["orders"][0].clone();
    for p in t["pairs"].as_array_mut().unwrap() {
        let (a, b) = (p[0]["idx"].as_u64().unwrap(), p[1]["idx"].as_u64().unwrap());
        if (a, b) == (1, 2) || (a, b) == (2, 1) {
            p[2] = json!(-p[2].as_i64().unwrap());
        }
    }
    let broken = write(dir.path(), "broken.json", &t);
    let o = circord(&["validate", "--order", s(&broken), "--radius", "1"]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn realize_z4() {
    let dir = tempfile::tempdir().unwrap();
    let order = write(
        dir.path(),
        "o.json",
        &json!({"type": "finite_rotation", "m": 4, "k": 1}),
    );
    let o = circord(&["realize", "--order", s(&order), "--count", "4"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "element,position_numerator,position_denominator");
    let positions: Vec<String> = rows[1..]
        .iter()
        .map(|r| {
            let f: Vec<&str> = r.rsplitn(3, ',').collect();
            format!("{}/{}", f[1], f[0])
        })
        .collect();
    // ball order is 0, 1, 3, 2
    assert_eq!(positions, vec!["0/1", "1/2", "3/4", "5/8"]);
    assert!(
        rows[4].starts_with("\"{\"\"vec\"\":[],\"\"t\"\":2}\""),
        "{}",
        rows[4]
    );

    let a = circord(&[
        "realize",
        "--order",
        s(&order),
        "--count",
        "4",
        "--format",
        "svg",
    ]);
    let b = circord(&[
        "realize",
        "--order",
        s(&order),
        "--count",
        "4",
        "--format",
        "svg",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("<line").count(), 4);

    // json output is itself an order that agrees with the input
    let j = circord(&[
        "realize",
        "--order",
        s(&order),
        "--count",
        "4",
        "--format",
        "json",
    ]);
    let map = write(
        dir.path(),
        "map.json",
        &serde_json::from_str(&stdout(&j)).unwrap(),
    );
    let g = write(
        dir.path(),
        "z4.json",
        &json!({"type": "fg_abelian", "rank": 0, "torsion": 4}),
    );
    let o = circord(&[
        "eval",
        "--order",
        s(&map),
        "--group",
        s(&g),
        "--triple",
        "[0,1,2]",
    ]);
    assert_eq!(stdout(&o), "+1\n");
    assert_eq!(
        code(&circord(&["realize", "--order", s(&order), "--count", "5"])),
        2
    );
}

#[test]
fn reduce_modular_group_triple() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "g.json",
        &json!({"type": "free_product", "left": cyclic(2), "right": cyclic(3)}),
    );
    let a = json!({"word": [["L", {"idx": 1}]]});
    let b = json!({"word": [["R", {"idx": 1}]]});
    let ab = json!({"word": [["L", {"idx": 1}], ["R", {"idx": 1}]]});
    let triple = serde_json::to_string(&json!([a, b, ab])).unwrap();
    let o = circord(&["reduce", "--group", s(&g), "--triple", &triple]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let tr: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        tr["minimal"],
        json!([{"word": []}, {"word": [["L", {"idx": 1}]]}, {"word": [["R", {"idx": 1}]]}])
    );

    let r = circord(&[
        "reduce",
        "--group",
        s(&g),
        "--triple",
        &triple,
        "--random",
        "--seed",
        "3",
    ]);
    let tr2: Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(tr["minimal"], tr2["minimal"]);

    let bad =
        serde_json::to_string(&json!([{"word": [["L", {"idx": 1}], ["L", {"idx": 1}]]}, b, ab]))
            .unwrap();
    let o = circord(&["reduce", "--group", s(&g), "--triple", &bad]);
    // loose words are normalized on input: LL cancels to the identity
    assert_eq!(code(&o), 0);
}

#[test]
fn lex_eval_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    let order = json!({
        "type": "lex_free_product",
        "group": {"type": "free_product", "left": cyclic(2), "right": cyclic(3)},
        "left": {"type": "finite_rotation", "m": 2, "k": 1},
        "right": {"type": "finite_rotation", "m": 3, "k": 1},
    });
    let order = write(dir.path(), "lex.json", &order);
    let g = json!({"word": [["L", {"idx": 1}]]});
    let h = json!({"word": [["R", {"idx": 1}]]});
    let e = json!({"word": []});
    let triple = serde_json::to_string(&json!([e, g, h])).unwrap();
    let o = circord(&["--trace", "eval", "--order", s(&order), "--triple", &triple]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "+1\n");
    let trace: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(trace["steps"], json!([]));
    assert_eq!(
        code(&circord(&[
            "validate",
            "--order",
            s(&order),
            "--radius",
            "3"
        ])),
        0
    );
}

#[test]
fn density_and_archimedean() {
    let dir = tempfile::tempdir().unwrap();
    let order = json!({
        "type": "intertwined",
        "n": 2,
        "m": 0,
        "kernel": [[1, 0], [0, 2]],
        "lin": {"type": "translation", "x": [{"terms": [[2, "1"]]}, {"terms": [[3, "1"]]}]},
        "quotient_order": {"type": "finite_rotation", "m": 2, "k": 1},
    });
    let order = write(dir.path(), "b.json", &order);
    let o = circord(&["density", "--order", s(&order), "--radius", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rot: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rot["type"], "rotation");
    let rot = write(dir.path(), "rot.json", &rot);
    assert_eq!(
        code(&circord(&["validate", "--order", s(&rot), "--radius", "2"])),
        0
    );

    let o = circord(&[
        "archimedean",
        "--order",
        s(&order),
        "--g",
        r#"{"vec":[1,0]}"#,
        "--h",
        r#"{"vec":[0,1]}"#,
        "--limit",
        "50",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, json!({"none_up_to": {"n": 50}}));

    let rotation =
        json!({"type": "rotation", "n": 2, "m": 0, "theta": [surd(2, -1), surd(3, -1)], "k": 0});
    let rotation = write(dir.path(), "r.json", &rotation);
    let o = circord(&[
        "archimedean",
        "--order",
        s(&rotation),
        "--g",
        r#"{"vec":[1,0]}"#,
        "--h",
        r#"{"vec":[0,1]}"#,
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["witness"]["n"].as_u64().unwrap() <= 100);

    // powers of one element are rejected
    let o = circord(&[
        "archimedean",
        "--order",
        s(&rotation),
        "--g",
        r#"{"vec":[1,1]}"#,
        "--h",
        r#"{"vec":[2,2]}"#,
    ]);
    assert_eq!(code(&o), 2);
}
