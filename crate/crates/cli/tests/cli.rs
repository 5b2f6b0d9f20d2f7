use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use normalis_core::io::PointSetFile;
use normalis_core::verify::random_planar;
use serde_json::Value;
use tempfile::TempDir;

fn normalis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normalis"))
        .args(args)
        .env_remove("NORMALIS_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = normalis(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn point_count(path: &Path) -> usize {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["points"].as_array().unwrap().len()
}

fn analyze_json(path: &Path, graph: &str) -> Value {
    let o = normalis(&["analyze", path.to_str().unwrap(), "--graph", graph, "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn generators_write_expected_sizes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(point_count(&generate(&dir, "layered", &["layered", "--k", "4", "--m", "2"])), 24);
    assert_eq!(point_count(&generate(&dir, "cube", &["cube"])), 8);
    assert_eq!(point_count(&generate(&dir, "ne", &["near-extremal", "--n", "100"])), 100);
    assert_eq!(point_count(&generate(&dir, "fig2", &["fig2"])), 7);
    assert_eq!(point_count(&generate(&dir, "sym", &["symmetric-circle", "--angles", "0,50,-70"])), 6);
    assert_eq!(point_count(&generate(&dir, "five", &["five-point", "--offset", "10"])), 5);
}

#[test]
fn bad_generator_parameters_exit_2() {
    let o = normalis(&["generate", "layered", "--k", "5", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k must be even"));
    assert_eq!(normalis(&["generate", "regular-polygon"]).status.code(), Some(2));
    assert_eq!(normalis(&["generate", "regular-polygon", "--n", "2"]).status.code(), Some(2));
    assert_eq!(normalis(&["generate", "teapot"]).status.code(), Some(2));
}

#[test]
fn octagon_double_normals() {
    let dir = TempDir::new().unwrap();
    let oct = generate(&dir, "oct", &["regular-polygon", "--n", "8"]);
    let doc = analyze_json(&oct, "dn");
    assert_eq!(doc["edge_count"], 12);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);
    assert_eq!(doc["census"]["red"], 8);
    assert_eq!(doc["census"]["blue"], 4);

    let o = normalis(&["analyze", oct.to_str().unwrap(), "--graph", "dn", "--format", "svg"]);
    let svg = stdout(&o);
    assert_eq!(svg.matches(r#"class="edge"#).count(), 12);
    assert_eq!(svg.matches("stroke-dasharray").count(), 8);
    assert_eq!(svg.matches(r#"class="edge blue""#).count(), 4);
}

#[test]
fn cube_gabriel_and_delaunay() {
    let dir = TempDir::new().unwrap();
    let cube = generate(&dir, "cube", &["cube"]);
    assert_eq!(analyze_json(&cube, "gabriel")["edge_count"], 24);
    assert_eq!(analyze_json(&cube, "dn")["edge_count"], 28);
    let del = analyze_json(&cube, "delaunay");
    assert_eq!(del["edge_count"], 12);
    assert_eq!(del["census"]["faces"]["4"], 6);
    let o = normalis(&["analyze", cube.to_str().unwrap(), "--graph", "delaunay", "--format", "off"]);
    assert!(stdout(&o).starts_with("OFF\n8 6 12\n"));
}

#[test]
fn svg_and_json_edge_counts_agree() {
    let dir = TempDir::new().unwrap();
    let inputs = [
        (generate(&dir, "fig2", &["fig2"]), "dn"),
        (generate(&dir, "rh", &["rhombicuboctahedron"]), "dn"),
        (generate(&dir, "lay", &["layered", "--k", "6", "--m", "2"]), "gabriel"),
        (generate(&dir, "five", &["five-point"]), "dn-strict"),
    ];
    for (path, graph) in &inputs {
        let json_count = analyze_json(path, graph)["edge_count"].as_u64().unwrap() as usize;
        let o = normalis(&["analyze", path.to_str().unwrap(), "--graph", graph, "--format", "svg"]);
        assert_eq!(stdout(&o).matches(r#"class="edge"#).count(), json_count, "{path:?} {graph}");
    }
}

#[test]
fn wrong_space_exits_3_and_parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let oct = generate(&dir, "oct", &["regular-polygon", "--n", "8"]);
    let o = normalis(&["analyze", oct.to_str().unwrap(), "--graph", "delaunay"]);
    assert_eq!(o.status.code(), Some(3));
    let o = normalis(&["verify", oct.to_str().unwrap(), "--theorem", "t3"]);
    assert_eq!(o.status.code(), Some(3));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"space\": \"plane\",\n  \"points\": [[0, 0], [1 0]]\n}\n").unwrap();
    let o = normalis(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = normalis(&["analyze", oct.to_str().unwrap(), "--graph", "dn", "--format", "off"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let dir = TempDir::new().unwrap();
    let rh = generate(&dir, "rh", &["rhombicuboctahedron"]);
    let o = normalis(&["verify", rh.to_str().unwrap(), "--theorem", "t3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["equality"], true);

    let oct = generate(&dir, "oct", &["regular-polygon", "--n", "8"]);
    let o = normalis(&["verify", oct.to_str().unwrap(), "--theorem", "t1", "--json"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["equality"], true);
    assert!(r["characterization"].as_array().unwrap().iter().all(|p| p["holds"] == true));

    let random = dir.path().join("random.json");
    let file = PointSetFile::from_point_set(&random_planar(11, 5), Value::Null);
    std::fs::write(&random, file.to_json()).unwrap();
    let o = normalis(&["verify", random.to_str().unwrap(), "--theorem", "t1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Pass"));
}

#[test]
fn violations_exit_1() {
    // with a wide boundary band every side of a pentagon passes as a double normal
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("pentagon.json");
    std::fs::write(
        &path,
        r#"{"space": "plane", "points": [[1.0, 0.0], [0.309017, 0.951057], [-0.809017, 0.587785],
            [-0.809017, -0.587785], [0.309017, -0.951057]]}"#,
    )
    .unwrap();
    let run = |tol: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_normalis"));
        c.args(["verify", path.to_str().unwrap(), "--theorem", "t1", "--json"]);
        match tol {
            Some(t) => c.env("NORMALIS_TOL", t),
            None => c.env_remove("NORMALIS_TOL"),
        };
        c.output().unwrap()
    };
    assert_eq!(run(None).status.code(), Some(0));
    let o = run(Some("0.35"));
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"], "fail");
    assert!(r["witness"].is_array());
}

#[test]
fn bad_tolerance_env_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_normalis"))
        .args(["generate", "cube"])
        .env("NORMALIS_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_examples() {
    let dir = TempDir::new().unwrap();
    let best = dir.path().join("best.json");
    for (space, n, budget, want) in [("plane", "8", "20000", 12), ("sphere", "8", "50000", 28), ("plane", "3", "100", 3)] {
        let o = normalis(&[
            "search", "--space", space, "--n", n, "--budget", budget, "--seed", "1", "--json", "-o",
            best.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(s["best_n"], want, "{space} n={n}");
        let again = analyze_json(&best, "dn");
        assert_eq!(again["edge_count"], want);
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "a", &["near-extremal", "--n", "24"]);
    let b = generate(&dir, "b", &["near-extremal", "--n", "24"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let x = normalis(&["analyze", a.to_str().unwrap(), "--graph", "gabriel"]);
    let y = normalis(&["analyze", a.to_str().unwrap(), "--graph", "gabriel"]);
    assert_eq!(x.stdout, y.stdout);
    let s1 = normalis(&["search", "--space", "sphere", "--n", "6", "--budget", "500", "--seed", "4", "--json"]);
    let s2 = normalis(&["search", "--space", "sphere", "--n", "6", "--budget", "500", "--seed", "4", "--json"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn files_round_trip_through_the_cli() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "rh", &["rhombicuboctahedron"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let file = PointSetFile::parse(&text).unwrap();
    assert_eq!(file.to_json(), text);
}
