use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tanglegram::generators::{gen_random, GenShape};
use tanglegram::record::{crossings_of_orders, instance_to_json, ResultRecord};
use tanglegram::render::{count_segment_intersections, inter_segments};
use tanglegram::{count_crossings, Layout, TanglegramInstance};
use tempfile::TempDir;

fn tangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_instance(dir: &TempDir, name: &str, inst: &TanglegramInstance) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, instance_to_json(inst)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn planar_instance() -> TanglegramInstance {
    let base = gen_random(16, GenShape::Complete, 1).unwrap();
    let swaps: Vec<bool> = (0..base.left().inner_count()).map(|k| k % 3 == 1).collect();
    TanglegramInstance::new(base.left().clone(), base.left().reordered(&swaps)).unwrap()
}

#[test]
fn count_prints_crossings() {
    let dir = TempDir::new().unwrap();
    let inst = gen_random(12, GenShape::RandomBinary, 4).unwrap();
    let p = write_instance(&dir, "i.json", &inst);
    let layout = Layout::new(
        (0..inst.left().inner_count()).map(|k| k % 2 == 0).collect(),
        vec![false; inst.right().inner_count()],
    );
    let lp = dir.path().join("l.json");
    fs::write(&lp, serde_json::to_string(&layout).unwrap()).unwrap();
    let o = tangle(&["count", "-i", s(&p), "--layout", s(&lp)]);
    assert!(o.status.success());
    let want = count_crossings(&inst, &layout).unwrap();
    assert_eq!(stdout(&o).trim(), want.to_string());
}

#[test]
fn fpt_planar_and_infeasible() {
    let dir = TempDir::new().unwrap();
    let p = write_instance(&dir, "i.json", &planar_instance());
    let o = tangle(&["fpt", "-i", s(&p), "-k", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: ResultRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec.crossings, 0);

    let hard = write_instance(
        &dir,
        "h.json",
        &gen_random(8, GenShape::Complete, 3).unwrap(),
    );
    let o = tangle(&["fpt", "-i", s(&hard), "-k", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn approx_svg_matches_reported_crossings() {
    let dir = TempDir::new().unwrap();
    for seed in 0..5 {
        let inst = gen_random(16 + seed as usize, GenShape::RandomBinary, seed).unwrap();
        let p = write_instance(&dir, "i.json", &inst);
        let svg = dir.path().join("out.svg");
        let o = tangle(&["approx", "-i", s(&p), "--svg", s(&svg), "--json"]);
        assert!(o.status.success());
        let rec: ResultRecord = serde_json::from_str(&stdout(&o)).unwrap();
        let drawn =
            count_segment_intersections(&inter_segments(&fs::read_to_string(&svg).unwrap()));
        assert_eq!(drawn, rec.crossings);
        assert_eq!(
            crossings_of_orders(&rec.left_order, &rec.right_order).unwrap(),
            rec.crossings
        );
    }
}

#[test]
fn json_output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let p = write_instance(
        &dir,
        "i.json",
        &gen_random(8, GenShape::Complete, 9).unwrap(),
    );
    let runs: [&[&str]; 7] = [
        &["count", "--json"],
        &["approx", "--json"],
        &["exact", "--json"],
        &["opt", "--method", "fpt", "--json"],
        &["opt", "--method", "exact", "--json"],
        &["dual", "--method", "exact", "--json"],
        &["dual", "--method", "local", "--restarts", "3", "--json"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["-i", s(&p)]);
        let a = tangle(&full);
        let b = tangle(&full);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!stdout(&a).contains("elapsed_ms"));
    }
    let o = tangle(&["exact", "-i", s(&p), "--json", "--timing"]);
    assert!(stdout(&o).contains("elapsed_ms"));
}

#[test]
fn dual_reports_identity() {
    let dir = TempDir::new().unwrap();
    let p = write_instance(
        &dir,
        "i.json",
        &gen_random(20, GenShape::RandomBinary, 2).unwrap(),
    );
    let o = tangle(&["dual", "-i", s(&p), "--method", "local", "--json"]);
    let rec: ResultRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec.identity_holds, Some(true));
    assert_eq!(
        rec.cut_weight.unwrap() + rec.crossings,
        rec.total_pairs.unwrap()
    );
}

#[test]
fn output_file() {
    let dir = TempDir::new().unwrap();
    let p = write_instance(
        &dir,
        "i.json",
        &gen_random(6, GenShape::RandomBinary, 2).unwrap(),
    );
    let out = dir.path().join("r.json");
    let o = tangle(&["exact", "-i", s(&p), "-o", s(&out)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let rec: ResultRecord = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rec.method, "exact");
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"left\": \"(a,b;\", \"right\": \"(a,b);\"}").unwrap();
    let o = tangle(&["count", "-i", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax"));

    assert_eq!(
        tangle(&["count", "-i", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(tangle(&["count", "--frobnicate"]).status.code(), Some(2));

    let p = write_instance(
        &dir,
        "i.json",
        &gen_random(10, GenShape::RandomBinary, 0).unwrap(),
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_tangle"))
        .args(["count", "-i", s(&p)])
        .env("TANGLE_MAX_N", "9")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));

    let incomplete = write_instance(
        &dir,
        "c.json",
        &gen_random(6, GenShape::RandomBinary, 0).unwrap(),
    );
    assert_eq!(
        tangle(&["fpt", "-i", s(&incomplete), "-k", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn generators() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("k3.txt");
    fs::write(&graph, "1 2\n2 3\n3 1\n").unwrap();
    let o = tangle(&[
        "gen",
        "minuncut",
        "--graph",
        s(&graph),
        "--wa",
        "177147",
        "--wb",
        "2187",
        "--second",
        "2,3",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["canonical_crossings"], 181522);

    let exp = dir.path().join("exp.json");
    let o = tangle(&[
        "gen",
        "minuncut",
        "--graph",
        s(&graph),
        "--wa",
        "3",
        "--wb",
        "2",
        "--expand",
        "-o",
        s(&exp),
    ]);
    assert!(o.status.success());
    let o = tangle(&["count", "-i", s(&exp)]);
    assert!(o.status.success());

    let tight = dir.path().join("t.json");
    assert!(tangle(&["gen", "tight", "--m", "2", "-o", s(&tight)])
        .status
        .success());
    let o = tangle(&["opt", "-i", s(&tight), "--json"]);
    let rec: ResultRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec.crossings, 4);

    let a = tangle(&[
        "gen", "random", "--n", "16", "--seed", "5", "--shape", "complete",
    ]);
    let b = tangle(&[
        "gen", "random", "--n", "16", "--seed", "5", "--shape", "complete",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(tangle(&["gen", "tight", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = TempDir::new().unwrap();
    let inst = gen_random(9, GenShape::RandomBinary, 1).unwrap();
    let p = write_instance(&dir, "i.json", &inst);
    let o = tangle(&["render", "-i", s(&p)]);
    assert!(o.status.success());
    let svg = stdout(&o);
    assert!(svg.starts_with("<?xml"));
    assert_eq!(
        count_segment_intersections(&inter_segments(&svg)),
        count_crossings(&inst, &Layout::identity(&inst)).unwrap()
    );
}
