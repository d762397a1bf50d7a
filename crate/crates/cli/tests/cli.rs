use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use addemu_core::{generate, load_edge_list, load_weighted_edge_list};

fn addemu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addemu"))
        .args(args)
        .output()
        .expect("spawn addemu")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_cycle_writes_edge_list_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c8.txt");
    let run = addemu(&["build", "--gen", "cycle:8", "--levels", "1", "--out", p(&out)]);
    assert!(run.status.success(), "{}", stderr(&run));

    let h = load_weighted_edge_list(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(h.n(), 8);
    assert!(h.edge_count() >= 7);

    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c8.txt.json")).unwrap()).unwrap();
    assert_eq!(sidecar["schema"], 1);
    let prov = &sidecar["provenance"];
    let total: u64 = ["spanner", "small_cluster", "recursive", "greedy"]
        .iter()
        .map(|k| prov[k].as_u64().unwrap())
        .sum();
    assert_eq!(total, h.edge_count() as u64);
    assert!(sidecar.get("timings_ms").is_none());
}

#[test]
fn build_then_verify_at_default_bound_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.txt");
    let report = dir.path().join("report.json");
    let base = ["--gen", "grid:12:12", "--levels", "2", "--seed", "4"];
    let run = addemu(&[&["build"][..], &base, &["--out", p(&out)]].concat());
    assert!(run.status.success(), "{}", stderr(&run));
    let run = addemu(
        &[&["verify"][..], &base, &["--emulator", p(&out), "--report", p(&report)]].concat(),
    );
    assert!(run.status.success(), "{}", stderr(&run));
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["schema"], 1);
    assert_eq!(rep["violating_pairs"], 0);
    assert_eq!(rep["pairs_checked"], 144 * 143 / 2);
    assert!(rep["edge_counts"].is_object());
}

#[test]
fn verify_below_actual_error_fails_naming_pair() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    // Level 0 on a cycle is a spanning path: pair (0, n-1) has error n-2.
    let run = addemu(&[
        "verify", "--gen", "cycle:10", "--levels", "0", "--bound", "3", "--report", p(&report),
    ]);
    assert_eq!(run.status.code(), Some(1), "{}", stderr(&run));
    let err = stderr(&run);
    assert!(err.contains("verification failed"), "{err}");
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let first = &rep["first_violation"];
    assert!(err.contains(&format!("({}, {})", first["u"], first["v"])), "{err}");
    assert_eq!(rep["max_additive_error"], 8);
}

#[test]
fn bench_emits_three_rows_with_density() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let run = addemu(&[
        "bench", "--family", "er:256:0.03125", "--sizes", "256,512,1024", "--out", p(&csv),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    let header: Vec<&str> = lines[0].split(',').collect();
    let col = header.iter().position(|h| *h == "density").unwrap();
    for row in &lines[1..] {
        let density: f64 = row.split(',').nth(col).unwrap().parse().unwrap();
        assert!(density > 0.0);
    }
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("bench.json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 3);
    assert_eq!(json["density_ratios"].as_array().unwrap().len(), 2);
}

#[test]
fn gen_round_trips_through_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["er:100:0.05", "grid:3:3", "cycle:6", "tree:50", "geo:80:0.2"] {
        let out = dir.path().join("g.txt");
        let run = addemu(&["gen", spec, "--seed", "9", "--out", p(&out)]);
        assert!(run.status.success(), "{}", stderr(&run));
        let loaded = load_edge_list(&fs::read_to_string(&out).unwrap()).unwrap();
        let direct = generate(spec, 9).unwrap();
        assert_eq!(loaded.n(), direct.n(), "{spec}");
        assert_eq!(loaded.edges().collect::<Vec<_>>(), direct.edges().collect::<Vec<_>>(), "{spec}");
    }
}

#[test]
fn build_from_input_file_matches_generator() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(addemu(&["gen", "er:150:0.04", "--seed", "2", "--out", p(&graph)]).status.success());
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let common = ["--levels", "2", "--seed", "2"];
    assert!(addemu(&[&["build", "--input", p(&graph), "--out", p(&a)][..], &common].concat()).status.success());
    assert!(addemu(&[&["build", "--gen", "er:150:0.04", "--out", p(&b)][..], &common].concat()).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn repeated_runs_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut artifacts = Vec::new();
    for (i, threads) in ["1", "4", "4"].iter().enumerate() {
        let out = dir.path().join(format!("h{i}.txt"));
        let report = dir.path().join(format!("r{i}.json"));
        let args = ["--gen", "geo:200:0.12", "--levels", "3", "--seed", "7", "--threads", threads];
        assert!(addemu(&[&["build"][..], &args, &["--out", p(&out)]].concat()).status.success());
        let run = addemu(&[&["verify"][..], &args, &["--emulator", p(&out), "--report", p(&report)]].concat());
        assert!(run.status.success(), "{}", stderr(&run));
        artifacts.push([
            fs::read(&out).unwrap(),
            fs::read(dir.path().join(format!("h{i}.txt.json"))).unwrap(),
            fs::read(&report).unwrap(),
        ]);
    }
    assert!(artifacts.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn usage_errors_exit_nonzero() {
    let both = addemu(&["build", "--gen", "cycle:5", "--input", "x.txt", "--out", "y.txt"]);
    assert!(!both.status.success());
    let unknown = addemu(&["gen", "hypercube:4", "--out", "z.txt"]);
    assert!(!unknown.status.success());
    assert!(stderr(&unknown).contains("hypercube"), "{}", stderr(&unknown));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1\n1 x\n").unwrap();
    let run = addemu(&["build", "--input", p(&bad), "--out", p(&dir.path().join("o.txt"))]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("line 2"), "{}", stderr(&run));
}
