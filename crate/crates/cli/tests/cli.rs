use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lrc_cli::formats::{MatrixFile, PlanFile};

fn lrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lrc-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&d).unwrap();
    d
}

fn construct(dir: &Path, plan: &str) -> (PathBuf, Output) {
    let plan_path = dir.join("plan.json");
    let out_path = dir.join("code.txt");
    fs::write(&plan_path, plan).unwrap();
    let o = lrc(&["construct", "--plan", plan_path.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    (out_path, o)
}

#[test]
fn extend_one_construct_writes_ten_four() {
    let dir = scratch("e1");
    let (path, o) = construct(&dir, r#"{"field":{"p":13,"m":1},"family":"ExtendOne","case":"multiplicative","r":2,"s":3,"t":2}"#);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("13 10 4\n"));
    assert!(stdout(&o).contains("PASS subgroup"));
    let mf = MatrixFile::parse(&text).unwrap();
    assert_eq!(mf.to_text(), text);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn modified_plan_has_length_q_plus_two() {
    let dir = scratch("mod");
    let (path, o) = construct(&dir, r#"{"field":{"p":7,"m":1},"family":"ModExtendOne","r":3,"s":2,"t":2}"#);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(fs::read_to_string(path).unwrap().starts_with("7 9 6\n"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn oversized_s_names_the_bound() {
    let dir = scratch("bad");
    let (path, o) = construct(&dir, r#"{"field":{"p":13,"m":1},"family":"ExtendOne","r":2,"s":4,"t":2}"#);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("s ≤ ⌊(q+1−2r)/(r+1)⌋"));
    assert!(!path.exists());
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = scratch("verify");
    let (path, _) = construct(&dir, r#"{"field":{"p":13,"m":1},"family":"Base","r":2,"s":3,"t":2}"#);
    let p = path.to_str().unwrap();
    let o = lrc(&["verify", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("classification: optimal, d = 5 = bound 5"));
    let json = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["distance"]["d_exact"], 5);

    let o = lrc(&["verify", p, "--budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("inconclusive (bounded)"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_rl_one_prints_case_four_predicate() {
    let dir = scratch("rl");
    let (path, _) = construct(&dir, r#"{"field":{"p":13,"m":1},"family":"RLOne","r":2,"s":3,"t":2}"#);
    let o = lrc(&["verify", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("case-4 predicate"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn garbage_matrix_is_invalid() {
    let dir = scratch("garbage");
    let p = dir.join("x.txt");
    fs::write(&p, "not a matrix\n").unwrap();
    assert_eq!(lrc(&["verify", p.to_str().unwrap()]).status.code(), Some(3));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn repair_demo_transcripts() {
    let dir = scratch("repair");
    let (path, _) = construct(&dir, r#"{"field":{"p":13,"m":1},"family":"ExtendAll","r":2,"s":2,"t":2}"#);
    let p = path.to_str().unwrap();
    let one = lrc(&["repair-demo", p, "--erase", "0"]);
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).contains("round trip: exact"));
    let two = lrc(&["repair-demo", p, "--erase", "0,1", "--seed", "9"]);
    assert_eq!(two.status.code(), Some(0));
    let cross = lrc(&["repair-demo", p, "--erase", "0,3"]);
    assert_eq!(cross.status.code(), Some(3));
    assert!(stdout(&cross).contains("one repair group"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn table_and_params() {
    let t = stdout(&lrc(&["table", "--q", "64"]));
    for row in ["[57,3t,59-4t]", "[66,4t,68-5t]", "[68,3t,71-5t]", "[79,2t+1,79-3t]", "[73,3t-2,77-4t]"] {
        assert!(t.contains(row), "{row}");
    }
    let p = stdout(&lrc(&["params", "--q", "64"]));
    assert!(p.contains("extend-one r list: {1,2,3,4,5,6,7,8,9,11,12,13,15,17,20}"));
    let p7 = stdout(&lrc(&["params", "--q", "7"]));
    assert!(p7.contains("modified r list: {1,3,7}"));
    assert_eq!(lrc(&["table", "--q", "6"]).status.code(), Some(3));
}

#[test]
fn plan_file_round_trips() {
    let plan = PlanFile::parse(r#"{"field":{"p":13,"m":1},"family":"EBase","curve":[0,0,0,0,2],"recipe":{"kind":"zeta3"},"s":3,"t":2}"#)
        .unwrap();
    let text = plan.to_json();
    assert_eq!(PlanFile::parse(&text).unwrap().to_json(), text);
}
