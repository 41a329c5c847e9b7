use bruhat_polytopes::cli::{run, Outcome};
use serde_json::Value;
use std::process::Command;

fn bip(args: &str) -> Outcome {
    run(std::iter::once("bip").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let out = bip(&format!("--format json {args}"));
    let text = if out.stdout.is_empty() { &out.stderr } else { &out.stdout };
    (out.code, serde_json::from_str(text).unwrap_or_else(|e| panic!("{args}: {e}\n{text}")))
}

fn results(args: &str) -> Value {
    let (code, doc) = json(args);
    assert_eq!(code, 0, "{args}: {doc}");
    doc["results"].clone()
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn interval_elements() {
    let r = results("interval 1324 2431");
    assert_eq!(r["size"], 8);
    assert_eq!(strs(&r["elements"]).len(), 8);
    assert_eq!(r["rank"], 3);
}

#[test]
fn interval_lift_witness() {
    let r = results("interval 2143 3241 --lift");
    assert_eq!(r["lift"]["t"], serde_json::json!([2, 4]));
    assert_eq!(r["lift"]["ut"], "2341");
    assert_eq!(r["lift"]["vt"], "3142");
}

#[test]
fn incomparable_pair_is_a_domain_error() {
    let out = bip("interval 2431 1324");
    assert_eq!(out.code, 3);
    assert!(out.stdout.is_empty());
    assert_eq!(out.stderr.trim_end().lines().count(), 1);
    assert!(out.stderr.contains("u not ≤ v"), "{}", out.stderr);

    let (code, doc) = json("interval 2431 1324");
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "domain");
}

#[test]
fn parse_failures_are_usage_errors() {
    for args in ["interval 12x4 1324", "interval 1224 1324", "interval 1324", "polytope 123 1234 --dim", "frobnicate", "check all --n 9"] {
        let out = bip(args);
        assert_eq!(out.code, 2, "{args}: {}", out.stderr);
        assert_eq!(out.stderr.trim_end().lines().count(), 1, "{args}: {}", out.stderr);
    }
    let (code, doc) = json("rpoly 1324 4231 --generalized 2-4");
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "usage");
}

#[test]
fn polytope_dimension() {
    let r = results("polytope 1234 1432 --dim");
    assert_eq!(r["dimension"]["dimension"], 2);
    assert_eq!(r["dimension"]["partition"], serde_json::json!([[1], [2, 3, 4]]));
    assert!(bip("polytope 1234 1432").stdout.contains('2'));
}

#[test]
fn polytope_inequalities() {
    let r = results("polytope 1324 2431 --ineq");
    let ineq = &r["inequalities"];
    assert_eq!(ineq["inequalities"].as_array().unwrap().len(), 14);
    assert_eq!(ineq["equalities"][0]["coeffs"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(ineq["equalities"][0]["rhs"], 10);
}

#[test]
fn polytope_faces_include_the_example_face() {
    let out = bip("polytope 1243 4132 --faces");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("f-vector [8, 12, 6, 1]"));
    assert!(out.stdout.contains("[2143, 4132]"));
}

#[test]
fn rpoly_examples() {
    let r = results("rpoly 21345 53421");
    assert_eq!(r["r"]["coeffs"], serde_json::json!([1, -4, 7, -8, 8, -8, 7, -4, 1]));
    assert!(r["r"]["polynomial"].as_str().unwrap().starts_with("q^8 - 4q^7 + "));
    assert_eq!(results("rpoly 1234 1234")["r"]["polynomial"], "1");
    assert_eq!(results("rpoly 2134 1234")["r"]["polynomial"], "0");
}

#[test]
fn generalized_requires_inversion_minimal() {
    let out = bip("rpoly 1324 4231 --generalized 2,4");
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("inversion-minimal"), "{}", out.stderr);
    assert!(out.stderr.contains("[3,4]"), "{}", out.stderr);
    assert_eq!(bip("rpoly 21345 53421 --generalized (1,3)").code, 0);
}

#[test]
fn parabolic_rejects_non_minimal_v() {
    let out = bip("parabolic 1234 4321 --J 1,3");
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("try 4231"), "{}", out.stderr);
    // 4231 has descents at positions 1 and 3, both outside J = {2}
    let out = bip("parabolic 1234 4231 --J 2 --vertices");
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("try 2413"), "{}", out.stderr);
}

#[test]
fn parabolic_grassmannian_points_are_indicators() {
    let r = results("parabolic 1234 2413 --J 2 --vertices");
    let points = r["points"].as_array().unwrap();
    assert!(!points.is_empty());
    for p in points {
        let p: Vec<i64> = p.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert!(p.iter().all(|&x| x == 0 || x == 1), "{p:?}");
        assert_eq!(p.iter().sum::<i64>(), 2);
    }
}

#[test]
fn parabolic_remark_pair() {
    let a = results("parabolic 1234 4231 --J 1,3 --vertices");
    let b = results("parabolic 1324 4231 --J 1,3 --vertices");
    assert_eq!(a["points"], b["points"]);
}

#[test]
fn parabolic_full_flag_matches_vertices() {
    let points = results("parabolic 1234 2134 --J 1,2,3 --vertices")["points"].clone();
    let vertices: Vec<Vec<usize>> = serde_json::from_value(results("polytope 1234 2134 --vertices")["vertices"].clone()).unwrap();
    let mut mapped: Vec<Vec<i64>> = vertices
        .iter()
        .map(|z| {
            let mut inv = vec![0; z.len()];
            for (i, &x) in z.iter().enumerate() {
                inv[x - 1] = i + 1;
            }
            inv.iter().map(|&x| (z.len() - x) as i64).collect()
        })
        .collect();
    mapped.sort();
    let mut got: Vec<Vec<i64>> = serde_json::from_value(points).unwrap();
    got.sort();
    assert_eq!(got, mapped);
}

#[test]
fn parabolic_faces_check() {
    let out = bip("parabolic 1234 4231 --J 1,3 --faces-check");
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn check_all_s4_passes() {
    let out = bip("check all --n 4");
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.trim_end().ends_with("all properties hold"));
    assert!(out.stdout.contains("face-criterion-vs-lp"));
}

#[test]
fn check_output_is_deterministic_and_jobs_invariant() {
    let a = bip("--format json check rpoly --n 5 --sample 200 --seed 7");
    let b = bip("--format json check rpoly --n 5 --sample 200 --seed 7 --jobs 4");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let c = bip("--format json check rpoly --n 5 --sample 200 --seed 8");
    assert_ne!(a.stdout, c.stdout);

    let x = bip("--jobs 1 check lifting --n 4");
    let y = bip("--jobs 3 check lifting --n 4");
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn json_keys_are_sorted() {
    let out = bip("--format json interval 1324 2431 --lift");
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    fn walk(v: &Value) {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                let mut sorted = keys.clone();
                sorted.sort();
                assert_eq!(keys, sorted);
                m.values().for_each(walk);
            }
            Value::Array(a) => a.iter().for_each(walk),
            _ => {}
        }
    }
    walk(&doc);
    assert_eq!(doc["command"], "interval");
    assert!(doc.get("timing").is_none());
    assert_eq!(out.stdout, bip("--format json interval 1324 2431 --lift").stdout);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_bip");
    let status = |args: &[&str]| Command::new(exe).args(args).output().unwrap();
    let ok = status(&["rpoly", "1234", "1234"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "R = 1");
    assert_eq!(status(&["interval", "nope", "1324"]).status.code(), Some(2));
    assert_eq!(status(&["interval", "2431", "1324"]).status.code(), Some(3));
}
