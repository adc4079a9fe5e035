// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gridroute::{generate, FamilyKind, FamilySpec, Grid, Permutation};
use gridroute_cli::bench::{median, read_csv, BenchmarkRow, CSV_HEADER};
use gridroute_cli::io::{write_json, PermFile, ScheduleFile};

fn gridroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridroute"))
        .args(args)
        .env("GRIDROUTE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_perm(dir: &Path, name: &str, pi: &Permutation) -> PathBuf {
    let p = dir.join(name);
    write_json(&p, &PermFile::from_permutation(pi)).unwrap();
    p
}

fn uniform(m: usize, n: usize, seed: u64) -> Permutation {
    generate(Grid::new(m, n).unwrap(), &FamilySpec::new(FamilyKind::Uniform, seed)).unwrap()
}

#[test]
fn identity_routes_to_empty_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let perm = write_perm(dir.path(), "id.json", &Permutation::identity(Grid::new(4, 4).unwrap()));
    let out = dir.path().join("s.json");
    let o = gridroute(&["route", "--grid", "4x4", "--perm", s(&perm), "--algo", "local", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{o:?}");
    assert!(stdout(&o).contains("depth=0"));
    let f: ScheduleFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((f.depth, f.swaps, f.layers.len()), (0, 0, 0));
    assert_eq!(f.algorithm, "local");
}

#[test]
fn every_algorithm_output_passes_verify() {
    let dir = tempfile::tempdir().unwrap();
    let perm = write_perm(dir.path(), "p.json", &uniform(8, 8, 3));
    for algo in ["local", "naive", "ats"] {
        let out = dir.path().join(format!("{algo}.json"));
        let o = gridroute(&["route", "--grid", "8x8", "--perm", s(&perm), "--algo", algo, "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{algo}: {o:?}");
        let v = gridroute(&["verify", "--grid", "8x8", "--perm", s(&perm), "--schedule", s(&out)]);
        assert_eq!(code(&v), 0, "{algo}: {v:?}");
    }
    let out = dir.path().join("flags.json");
    let o = gridroute(&[
        "route", "--grid", "8x8", "--perm", s(&perm), "--no-transpose", "--no-fallback", "--compact", "--out", s(&out),
    ]);
    assert_eq!(code(&o), 0, "{o:?}");
    assert!(stdout(&o).contains("local/direct"));
}

#[test]
fn route_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let dup = dir.path().join("dup.json");
    std::fs::write(&dup, r#"{"rows":2,"cols":2,"perm":[0,0,1,2]}"#).unwrap();
    assert_eq!(code(&gridroute(&["route", "--grid", "2x2", "--perm", s(&dup), "--out", s(&out)])), 3);
    assert!(!out.exists());
    let ok = write_perm(dir.path(), "ok.json", &uniform(2, 2, 1));
    assert_eq!(code(&gridroute(&["route", "--grid", "3x3", "--perm", s(&ok), "--out", s(&out)])), 2);
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(code(&gridroute(&["route", "--grid", "2x2", "--perm", s(&junk), "--out", s(&out)])), 2);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = Grid::new(2, 2).unwrap();
    let swap_top = Permutation::from_indices(g, vec![1, 0, 2, 3]).unwrap();
    let perm = write_perm(dir.path(), "p.json", &swap_top);
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"rows":2,"cols":2,"algorithm":"local","layers":[[[[0,0],[0,1]]]],"depth":1,"swaps":1}"#).unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"rows":2,"cols":2,"algorithm":"local","layers":[],"depth":0,"swaps":0}"#).unwrap();
    let diagonal = dir.path().join("diag.json");
    std::fs::write(&diagonal, r#"{"rows":2,"cols":2,"algorithm":"x","layers":[[[[0,0],[1,1]]]],"depth":1,"swaps":1}"#).unwrap();
    let truncated = dir.path().join("trunc.json");
    std::fs::write(&truncated, r#"{"rows":2,"cols":2,"layers":[[[[0,0],"#).unwrap();

    let run = |sched: &Path| gridroute(&["verify", "--grid", "2x2", "--perm", s(&perm), "--schedule", s(sched)]);
    assert_eq!(code(&run(&good)), 0);
    let o = run(&empty);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(0,0)"), "{}", stdout(&o));
    assert_eq!(code(&run(&diagonal)), 1);
    assert_eq!(code(&run(&truncated)), 2);

    let bad_perm = dir.path().join("bad.json");
    std::fs::write(&bad_perm, r#"{"rows":2,"cols":2,"perm":[0,1,2,4]}"#).unwrap();
    let o = gridroute(&["verify", "--grid", "2x2", "--perm", s(&bad_perm), "--schedule", s(&good)]);
    assert_eq!(code(&o), 3);
}

fn bench(dir: &Path, name: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.join(name);
    let mut args = vec!["bench", "--out", s(&out)];
    args.extend_from_slice(extra);
    let o = gridroute(&args);
    (o, out)
}

fn median_depth(rows: &[BenchmarkRow], algo: &str) -> f64 {
    let mut d: Vec<f64> = rows.iter().filter(|r| r.algorithm == algo).map(|r| r.depth as f64).collect();
    median(&mut d)
}

#[test]
fn bench_writes_one_row_per_trial_and_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--grids", "4x4,8x8", "--families", "uniform", "--trials", "20", "--seed", "11", "--algos", "local,ats"];
    let (o, out) = bench(dir.path(), "a.csv", &args);
    assert_eq!(code(&o), 0, "{o:?}");
    assert!(stdout(&o).contains("seed=11") && stdout(&o).contains("rng=chacha8"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    let rows = read_csv(&out).unwrap();
    assert_eq!(rows.len(), 80);
    assert_eq!((rows[0].grid_m, rows[0].seed, rows[0].algorithm.as_str()), (4, 11, "local"));
    assert_eq!(rows[79].seed, 30);

    let big: Vec<_> = rows.iter().filter(|r| r.grid_m == 8).cloned().collect();
    assert!(median_depth(&big, "local") <= median_depth(&big, "ats"));

    let (o2, out2) = bench(dir.path(), "b.csv", &args);
    assert_eq!(code(&o2), 0);
    let strip = |rows: Vec<BenchmarkRow>| rows.into_iter().map(|r| BenchmarkRow { time_us: 0, ..r }).collect::<Vec<_>>();
    assert_eq!(strip(rows), strip(read_csv(&out2).unwrap()));
}

#[test]
fn bench_identity_family_has_zero_depth_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let plots = dir.path().join("plots");
    let (o, out) = bench(
        dir.path(),
        "id.csv",
        &["--grids", "3x3,5x4", "--families", "identity", "--trials", "3", "--plot", s(&plots)],
    );
    assert_eq!(code(&o), 0, "{o:?}");
    let rows = read_csv(&out).unwrap();
    assert_eq!(rows.len(), 2 * 3 * 3);
    assert!(rows.iter().all(|r| r.depth == 0 && r.depth_compacted == 0 && r.swaps == 0));
    for f in ["depth.svg", "time.svg"] {
        let svg = std::fs::read_to_string(plots.join(f)).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("qubits"));
    }
}

#[test]
fn bench_reads_toml_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("b.toml");
    std::fs::write(&cfg, "grids = [\"4x4\"]\nfamilies = [\"block_local:2x2\", \"overlapping_block:2x2:1\"]\ntrials = 2\nseed = 5\nalgos = [\"naive\"]\n").unwrap();
    let (o, out) = bench(dir.path(), "c.csv", &["--config", s(&cfg)]);
    assert_eq!(code(&o), 0, "{o:?}");
    let rows = read_csv(&out).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.algorithm == "naive"));
    assert_eq!(rows[0].family, "block_local:2x2");
}

#[test]
fn bench_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = bench(dir.path(), "x.csv", &["--grids", "2x2", "--families", "block_local:3x3"]);
    assert_eq!(code(&o), 2);
    assert!(!out.exists());
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "grids = 4").unwrap();
    assert_eq!(code(&bench(dir.path(), "y.csv", &["--config", s(&cfg)]).0), 2);
    assert_eq!(code(&bench(dir.path(), "z.csv", &["--grids", "4x4", "--trials", "0"]).0), 2);
}
