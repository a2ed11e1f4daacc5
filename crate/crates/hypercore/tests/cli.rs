//! End-to-end checks of the `hypercore` binary surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypercore"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "hypercore {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypercore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_modular5(path: &Path) {
    let out = run_ok(&["gen", "modular", "--p", "5"]);
    std::fs::write(path, &out.stdout).unwrap();
}

#[test]
fn gen_modular_census_and_core_round_trip() {
    let file = tmp_path("z5.h3");
    write_modular5(&file);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("h3 15 25\n"));
    assert!(text.trim_end().ends_with("part 0 0 0 0 0 1 1 1 1 1 2 2 2 2 2"));

    // The construction is linear: census 0, no pigeonhole witnesses.
    let census = stdout_json(&run_ok(&["census", file.to_str().unwrap()]));
    assert_eq!(census["pair_census"], 0);
    assert!(census["k221"].is_null());
    assert!(census["six_core"].is_null());
    assert!(census["c4"].is_null());

    let none = stdout_json(&run_ok(&[
        "core",
        file.to_str().unwrap(),
        "--kmax",
        "8",
    ]));
    assert_eq!(none["status"], "none");
    assert!(none["certificate"].is_null());
    assert!(none["nodes_expanded"].as_u64().unwrap() > 0);

    let nine = stdout_json(&run_ok(&[
        "core",
        file.to_str().unwrap(),
        "--kmax",
        "9",
    ]));
    assert_eq!(nine["status"], "found");
    assert_eq!(nine["certificate"]["vertices"].as_array().unwrap().len(), 9);
}

#[test]
fn config_and_c63_commands() {
    let file = tmp_path("z5-config.h3");
    write_modular5(&file);
    let cfg = stdout_json(&run_ok(&[
        "config",
        file.to_str().unwrap(),
        "--k",
        "9",
        "--l",
        "6",
    ]));
    assert_eq!(cfg["status"], "found");
    assert!(cfg["witness"]["edges"].as_array().unwrap().len() >= 6);

    let c63 = stdout_json(&run_ok(&["c63", file.to_str().unwrap(), "--count-only"]));
    let count = c63["count"].as_u64().unwrap();
    assert!(count > 0);
    let full = stdout_json(&run_ok(&["c63", file.to_str().unwrap()]));
    assert_eq!(full["configs"].as_array().unwrap().len() as u64, count);
}

#[test]
fn strip_sample_and_cycle_methods() {
    let file = tmp_path("dense.h3");
    let out = run_ok(&[
        "gen", "random", "--n", "10", "--m", "500", "--seed", "7",
    ]);
    std::fs::write(&file, &out.stdout).unwrap();

    let strip = stdout_json(&run_ok(&[
        "core", file.to_str().unwrap(), "--kmax", "30", "--method", "strip",
    ]));
    assert_eq!(strip["status"], "found");

    let sample = stdout_json(&run_ok(&[
        "core", file.to_str().unwrap(), "--kmax", "30", "--method", "sample", "--seed", "3",
    ]));
    assert!(sample["sample_size"].as_u64().unwrap() > 0);

    let cycle = stdout_json(&run_ok(&[
        "core", file.to_str().unwrap(), "--kmax", "30", "--method", "cycle",
    ]));
    assert_eq!(cycle["status"], "found");
    assert!(cycle["cycle_len"].as_u64().unwrap() >= 2);
}

#[test]
fn gen_avoid_certifies_and_bes14_runs() {
    let file = tmp_path("avoid.h3");
    let out = run_ok(&[
        "gen", "avoid", "--n", "15", "--k", "6", "--l", "3", "--m", "8", "--seed", "2",
    ]);
    std::fs::write(&file, &out.stdout).unwrap();
    let cfg = stdout_json(&run_ok(&[
        "config", file.to_str().unwrap(), "--k", "6", "--l", "3",
    ]));
    assert_eq!(cfg["status"], "none");

    let tri = tmp_path("tri.h3");
    let out = run_ok(&[
        "gen", "random", "--n", "20", "--m", "250", "--seed", "5",
    ]);
    std::fs::write(&tri, &out.stdout).unwrap();
    // The random host is not linear; bes14 must reject it cleanly.
    let reject = bin()
        .args(["bes14", tri.to_str().unwrap(), "--seed", "1"])
        .output()
        .unwrap();
    assert!(!reject.status.success());
    assert!(String::from_utf8_lossy(&reject.stderr).contains("linear"));
}

#[test]
fn core15_runs_on_linear_input() {
    let file = tmp_path("fig5.h3");
    let edges = [
        [0usize, 1, 2],
        [0, 3, 4],
        [1, 3, 5],
        [4, 6, 7],
        [5, 6, 8],
        [7, 8, 9],
        [0, 9, 16],
        [0, 10, 11],
        [9, 10, 12],
        [11, 13, 14],
        [12, 13, 15],
        [1, 14, 15],
    ];
    let mut text = format!("h3 17 {}\n", edges.len());
    for e in edges {
        text.push_str(&format!("{} {} {}\n", e[0], e[1], e[2]));
    }
    std::fs::write(&file, text).unwrap();
    let out = stdout_json(&run_ok(&["core15", file.to_str().unwrap()]));
    assert_eq!(out["status"], "found");
    assert!(out["certificate"]["vertices"].as_array().unwrap().len() <= 15);
}

#[test]
fn gen_group_consumes_grp_tables() {
    let table = tmp_path("z4.grp");
    std::fs::write(
        &table,
        "grp 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n",
    )
    .unwrap();
    let out = run_ok(&["gen", "group", "--table", table.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("h3 12 16\n"));
}

#[test]
fn table_emits_identical_reports_across_processes() {
    let out_a = tmp_path("report-a.csv");
    let out_b = tmp_path("report-b.csv");
    for out in [&out_a, &out_b] {
        run_ok(&[
            "table",
            "--kmin", "4",
            "--kmax", "9",
            "--n", "4",
            "--seeds", "1,2",
            "--budget", "500000",
            "--out", out.to_str().unwrap(),
        ]);
    }
    let csv_a = std::fs::read(&out_a).unwrap();
    let csv_b = std::fs::read(&out_b).unwrap();
    assert!(!csv_a.is_empty());
    assert_eq!(csv_a, csv_b, "reports must be bit-identical across runs");
    let json_a = std::fs::read(out_a.with_extension("json")).unwrap();
    let json_b = std::fs::read(out_b.with_extension("json")).unwrap();
    assert_eq!(json_a, json_b);
    let text = String::from_utf8(csv_a).unwrap();
    assert!(text.lines().count() >= 7);
    assert!(text.contains("conditional-on-BES"));
}
