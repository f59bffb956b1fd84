use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_edgekernel"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("edgekernel-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = "p ecs 3 3 2 0\ne 1 2\ne 2 3\ne 1 3\n";

#[test]
fn solve_triangle_with_two_colors_is_no() {
    let f = scratch("tri.txt", TRIANGLE);
    let o = run(&["solve", f.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "no (min_weak=1)");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_reports_yes_within_budget() {
    let f = scratch("tri1.txt", &TRIANGLE.replace("2 0\n", "2 1\n"));
    let o = run(&["solve", f.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "yes (min_weak=1)");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn low_degree_ecs_kernelizes_to_empty_yes() {
    let f = scratch("low.txt", "p ecs 5 3 3 2\ne 1 2\ne 2 3\ne 4 5\n");
    let o = run(&["kernelize", f.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("p ecs 0 0 3 2"));
    let stats: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(stats["decision"], "yes");
    for key in [
        "kind", "c", "k_in", "k_out", "n_in", "m_in", "n_out", "m_out", "deletion_set_size", "bound", "bound_holds",
        "decision", "rules",
    ] {
        assert!(stats.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--kind", "el-ecs", "--n", "9", "--p", "0.4", "--c", "3", "--k", "2", "--seed", "11", "--lists"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p el-ecs 9 "));
}

#[test]
fn kernelize_output_pipes_back_in_unchanged() {
    for (kind, param) in [("ecs", "xi"), ("ecs", "coc"), ("mstc", "xi"), ("el-ecs", "xi"), ("el-mstc", "xi")] {
        for seed in 0..5 {
            let s = seed.to_string();
            let g = run(&["gen", "--kind", kind, "--n", "12", "--p", "0.3", "--c", "3", "--k", "3", "--seed", &s, "--lists"]);
            let f = scratch(&format!("{kind}-{param}-{seed}.txt"), &stdout(&g));
            let once = run(&["kernelize", f.to_str().unwrap(), "--param", param, "--json"]);
            assert!(once.status.success());
            let k1 = scratch(&format!("{kind}-{param}-{seed}.k1"), &stdout(&once));
            let twice = run(&["kernelize", k1.to_str().unwrap(), "--param", param, "--json"]);
            assert!(twice.status.success());
            assert_eq!(stdout(&twice), stdout(&once), "{kind} {param} seed {seed}");
            let stats: serde_json::Value = serde_json::from_slice(&twice.stderr).unwrap();
            let decided = stats["decision"] != "open";
            assert!(decided || stats["rules"].as_array().unwrap().is_empty(), "{stats}");
        }
    }
}

#[test]
fn kernelize_writes_out_file_and_trace() {
    let f = scratch("tr.txt", "p ecs 4 4 2 0\ne 1 2\ne 1 3\ne 1 4\ne 2 3\n");
    let out = f.with_extension("out");
    let o = run(&["kernelize", f.to_str().unwrap(), "--trace", "--json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let stats: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(stats["trace"].is_array());
    assert!(fs::read_to_string(&out).unwrap().starts_with("p ecs "));
}

#[test]
fn verify_labelings() {
    let f = scratch("vtri.txt", TRIANGLE);
    let good = scratch("good.lab", "c 1 2 1\nc 2 3 2\nc 1 3 0\n");
    let bad = scratch("bad.lab", "c 1 2 1\nc 2 3 1\nc 1 3 2\n");
    let o = run(&["verify", f.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "valid, over budget (weak=1, k=0)");
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify", f.to_str().unwrap(), bad.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("invalid"));
    assert_eq!(o.status.code(), Some(1));
    let f1 = scratch("vtri1.txt", &TRIANGLE.replace("2 0\n", "2 1\n"));
    let o = run(&["verify", f1.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "valid (weak=1, k=1)");
    assert!(o.status.success());
}

#[test]
fn check_bounds_passes_on_random_files() {
    for kind in ["ecs", "mstc", "el-ecs", "el-mstc"] {
        let g = run(&["gen", "--kind", kind, "--n", "30", "--p", "0.2", "--c", "4", "--k", "5", "--seed", "3"]);
        let f = scratch(&format!("cb-{kind}.txt"), &stdout(&g));
        let o = run(&["check-bounds", f.to_str().unwrap()]);
        assert!(o.status.success(), "{kind}: {}", stdout(&o));
    }
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["solve", "/nonexistent/file"]).status.code(), Some(2));
    let dup = scratch("dup.txt", "p ecs 2 2 1 0\ne 1 2\ne 2 1\n");
    let o = run(&["solve", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let f = scratch("p.txt", TRIANGLE);
    assert_eq!(run(&["kernelize", f.to_str().unwrap(), "--param", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["kernelize", f.to_str().unwrap(), "--param", "edge-coloring"]).status.code(), Some(0));
    let mstc = scratch("m.txt", "p mstc 2 1 1 0\ne 1 2\n");
    assert_eq!(run(&["kernelize", mstc.to_str().unwrap(), "--param", "coc"]).status.code(), Some(2));
    let big = run(&["gen", "--kind", "ecs", "--n", "20", "--p", "0.9", "--c", "3", "--seed", "1"]);
    let bf = scratch("big.txt", &stdout(&big));
    assert_eq!(run(&["solve", bf.to_str().unwrap(), "--limit", "10"]).status.code(), Some(2));
}

#[test]
fn suite_reports_json_lines() {
    let o = run(&["suite", "--kind", "mstc", "--c", "2,3", "--trials", "6", "--n-max", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["failures"], 0);
    assert_eq!(text.lines().count(), 13);
}
