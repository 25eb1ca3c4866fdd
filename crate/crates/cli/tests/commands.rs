// Copyright 2026 The groupfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn groupfair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupfair"))
        .args(args)
        .env_remove("GROUPFAIR_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

const BEHIND: &str = r#"{
  "agent_values": [[1, 1], [1, 1], [1, 1]],
  "allocator_values": [3, 3],
  "groups": [[0], [1, 2]],
  "schema_version": "groupfair-instance/1"
}"#;

#[test]
fn solve_identical_selects_draft_and_match() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.gfi");
    let g = groupfair(&["gen", "--class", "identical", "--n", "5", "--m", "9", "--k", "2", "--seed", "7", "--out", &inst]);
    assert_eq!(g.status.code(), Some(0));
    let out = path(&dir, "a.gfa");
    let s = groupfair(&["solve", "--in", &inst, "--out", &out]);
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
    let text = stdout(&s);
    assert!(text.starts_with("report-version: 1\n"));
    assert!(text.contains("algorithm: dm"));
    assert!(text.contains("EF1: true"));
    assert!(text.contains("CGEQ1: true"));
    let c = groupfair(&["check", "--in", &inst, "--alloc", &out]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn check_reports_cgeq1_witness() {
    let dir = TempDir::new().unwrap();
    let inst = put(&dir, "i.gfi", BEHIND);
    let alloc = put(
        &dir,
        "a.gfa",
        r#"{"schema_version": "groupfair-allocation/1", "bundles": [[], [0], [1]]}"#,
    );
    let c = groupfair(&["check", "--in", &inst, "--alloc", &alloc]);
    assert_eq!(c.status.code(), Some(1));
    let text = stdout(&c);
    assert!(
        text.contains("CGEQ1: false  witness: group G1 falls behind group G2 after removing o1: 0 < 3"),
        "{text}"
    );
}

#[test]
fn solve_with_wrong_algorithm_is_a_precondition_error() {
    let dir = TempDir::new().unwrap();
    let inst = put(
        &dir,
        "b.gfi",
        r#"{"schema_version": "groupfair-instance/1", "groups": [[0], [1]],
            "agent_values": [[3, 1], [1, 3]], "allocator_values": [0, 1]}"#,
    );
    let s = groupfair(&["solve", "--in", &inst, "--algo", "sps"]);
    assert_eq!(s.status.code(), Some(3));
    assert!(stderr(&s).contains("ordered"));
}

#[test]
fn auto_on_general_instance_names_the_open_question() {
    let dir = TempDir::new().unwrap();
    let inst = put(
        &dir,
        "g.gfi",
        r#"{"schema_version": "groupfair-instance/1", "groups": [[0], [1]],
            "agent_values": [[3, 1], [1, 3]], "allocator_values": [1, 1]}"#,
    );
    let s = groupfair(&["solve", "--in", &inst]);
    assert_eq!(s.status.code(), Some(3));
    let err = stderr(&s);
    assert!(err.contains("no guaranteed algorithm") && err.contains("open question"), "{err}");
}

#[test]
fn trace_file_carries_group_sequence() {
    let dir = TempDir::new().unwrap();
    let row = |s: u64| {
        let vals: Vec<String> = (0..12u64).map(|j| (s * (12 - j)).to_string()).collect();
        format!("[{}]", vals.join(", "))
    };
    let rows: Vec<String> = (1..=12).map(row).collect();
    let text = format!(
        r#"{{"schema_version": "groupfair-instance/1",
            "groups": [[0, 5, 9], [1, 4, 7, 10], [2, 3, 6, 8, 11]],
            "agent_values": [{}], "allocator_values": {}}}"#,
        rows.join(", "),
        row(1)
    );
    let inst = put(&dir, "f.gfi", &text);
    let trace = path(&dir, "t.txt");
    let s = groupfair(&["solve", "--in", &inst, "--algo", "sps", "--trace", &trace]);
    assert_eq!(s.status.code(), Some(0));
    let groups: Vec<String> = fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(2).unwrap().to_owned())
        .collect();
    assert_eq!(
        groups.join(" "),
        "G1 G2 G3 G3 G2 G1 G3 G2 G3 G1 G2 G3"
    );
}

#[test]
fn oracle_found_none_and_cap() {
    let dir = TempDir::new().unwrap();
    let one = put(
        &dir,
        "one.gfi",
        r#"{"schema_version": "groupfair-instance/1", "groups": [[0], [1]],
            "agent_values": [[1], [1]], "allocator_values": [1]}"#,
    );
    assert_eq!(groupfair(&["oracle", "--in", &one, "--require", "CGEQ"]).status.code(), Some(1));
    let found = groupfair(&["oracle", "--in", &one, "--require", "CGEQ1"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("result: found"));
    let capped = groupfair(&["oracle", "--in", &one, "--cap", "1"]);
    assert_eq!(capped.status.code(), Some(4));
    let env = Command::new(env!("CARGO_BIN_EXE_groupfair"))
        .args(["oracle", "--in", &one])
        .env("GROUPFAIR_ENUM_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(4));
}

#[test]
fn cgmms_construct_attains_value() {
    let dir = TempDir::new().unwrap();
    let inst = put(
        &dir,
        "b.gfi",
        r#"{"schema_version": "groupfair-instance/1", "groups": [[0], [1, 2, 3]],
            "agent_values": [[4, 3, 2, 1], [1, 2, 3, 4], [2, 2, 2, 2], [5, 0, 5, 0]],
            "allocator_values": [1, 1, 1, 0]}"#,
    );
    let out = path(&dir, "c.gfa");
    let c = groupfair(&["cgmms", "--in", &inst, "--construct", "--out", &out]);
    assert_eq!(c.status.code(), Some(0), "{}", stderr(&c));
    let text = stdout(&c);
    assert!(text.contains("cgmms: 2/3 (0.666667)"), "{text}");
    assert!(text.contains("attained: 2/3"));
    assert!(text.contains("EF1: true"));
    assert!(fs::read_to_string(&out).unwrap().contains("\"value\": \"2/3\""));
    let ch = groupfair(&["check", "--in", &inst, "--alloc", &out, "--require", "EF1,CGMMS"]);
    assert_eq!(ch.status.code(), Some(0), "{}", stdout(&ch));
}

#[test]
fn cgmms_on_general_allocator_is_exhaustive() {
    let dir = TempDir::new().unwrap();
    let inst = put(
        &dir,
        "g.gfi",
        r#"{"schema_version": "groupfair-instance/1", "groups": [[0], [1]],
            "agent_values": [[1, 1, 1], [1, 1, 1]], "allocator_values": [3, 3, 3]}"#,
    );
    let c = groupfair(&["cgmms", "--in", &inst]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("method: exhaustive\ncgmms: 3 (3.000000)"));
    assert_eq!(groupfair(&["cgmms", "--in", &inst, "--construct"]).status.code(), Some(3));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = put(
        &dir,
        "bad.gfi",
        r#"{"schema_version": "groupfair-instance/1", "groups": [[0, 3], [1, 2, 3]],
            "agent_values": [[1], [1], [1], [1]], "allocator_values": [1]}"#,
    );
    let s = groupfair(&["solve", "--in", &bad]);
    assert_eq!(s.status.code(), Some(2));
    assert!(stderr(&s).contains("agent 3"));
    let missing = groupfair(&["solve", "--in", "/nonexistent/file.gfi"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let a = groupfair(&["gen", "--class", "ordered", "--n", "4", "--m", "6", "--k", "2", "--seed", "0x99"]);
    let b = groupfair(&["gen", "--class", "ordered", "--n", "4", "--m", "6", "--k", "2", "--seed", "153"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn search_log_is_reproducible_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let run = |jobs: &str, name: &str| {
        let log = path(&dir, name);
        let o = groupfair(&[
            "search", "--n-range", "2..3", "--m-range", "2..5", "--budget", "400", "--seed", "11",
            "--jobs", jobs, "--no-timing", "--log", &log,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stderr(&o).contains("no counterexample found"));
        fs::read(Path::new(&log)).unwrap()
    };
    let one = run("1", "a.log");
    let four = run("4", "b.log");
    assert_eq!(one, four);
    let text = String::from_utf8(one).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("verdict=EXISTS")).count(), 400);
    assert!(text.ends_with("# checked=400 exists=400 none=0 skipped=0\n"));
}

#[test]
fn bench_prints_table() {
    let o = groupfair(&["bench", "--suite", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() >= 7);
}
