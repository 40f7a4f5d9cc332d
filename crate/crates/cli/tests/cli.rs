use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use symext::{Certificate, Partition};

fn symext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = symext(&all);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parts(v: &Value) -> Vec<usize> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn analyze_reports_block_and_signatures() {
    let (v, code) = json(&["analyze", "4,2,1", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(parts(&v["core"]), vec![1]);
    assert_eq!(v["weight"], 2);
    assert_eq!(v["signatures"][0]["eps"], 2);
    assert_eq!(v["signatures"][0]["phi"], 1);
    assert_eq!(v["signatures"].as_array().unwrap().len(), 3);
    assert_eq!(parts(&v["regularization"]), vec![4, 2, 1]);
    let m = symext::bijections::mullineux(&"4,2,1".parse().unwrap(), 3).unwrap();
    assert_eq!(parts(&v["mullineux"]), m.into_parts());
}

#[test]
fn verify_tables_matches() {
    let out = symext(&["verify-tables", "--max-weight", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "Table I: 66/66 match; Table II: 4/4 match"
    );
}

#[test]
fn verify_tables_reads_data_directory() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    let out = symext(&["verify-tables", "--data", dir]);
    assert_eq!(out.status.code(), Some(0));

    let tmp = std::env::temp_dir().join(format!("symext-tables-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let mut t1: Vec<Value> =
        serde_json::from_str(&std::fs::read_to_string(format!("{dir}/table1.json")).unwrap())
            .unwrap();
    t1.pop();
    std::fs::write(tmp.join("table1.json"), serde_json::to_string(&t1).unwrap()).unwrap();
    std::fs::copy(format!("{dir}/table2.json"), tmp.join("table2.json")).unwrap();
    let out = symext(&["verify-tables", "--data", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Table I: 65/65 match"));
    assert!(stdout(&out).contains("Table I extra"));
    std::fs::remove_dir_all(tmp).ok();
}

#[test]
fn certificate_fields_in_documented_order() {
    let out = symext(&["certify", "2,1", "--p", "3", "--json"]);
    let s = stdout(&out);
    let at = |k: &str| s.find(&format!("\"{k}\":")).unwrap();
    assert!(at("p") < at("start") && at("start") < at("steps"));
    assert!(at("steps") < at("terminal") && at("terminal") < at("status"));
}

#[test]
fn certify_trivial_case() {
    let out = symext(&["certify", "2,1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.starts_with("CERTIFIED"));
    assert!(s.contains("T-WEIGHT"));
}

#[test]
fn certificate_json_shape_and_validation() {
    let (v, code) = json(&[
        "certify",
        "10,5,4,3,1,1",
        "--p",
        "3",
        "--rules",
        "t-specht,t-small,r-reflect,r-trick1",
    ]);
    assert_eq!(code, 0);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["p", "start", "status", "steps", "terminal"]);
    assert_eq!(v["status"], "CERTIFIED");
    assert_eq!(v["terminal"]["rule"], "T-SPECHT");
    assert_eq!(
        parts(&v["terminal"]["params"]["nu"]),
        vec![9, 4, 2, 2, 1, 1, 1, 1, 1]
    );
    let c: Certificate = serde_json::from_value(v.clone()).unwrap();
    assert!(symext::validate(&c));

    let run_validate = |text: String| {
        let mut child = Command::new(env!("CARGO_BIN_EXE_symext"))
            .args(["validate", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
        child.wait_with_output().unwrap().status.code()
    };
    assert_eq!(run_validate(v.to_string()), Some(0));
    let mut bad = v.clone();
    bad["terminal"]["params"]["eps"] = 1.into();
    assert_eq!(run_validate(bad.to_string()), Some(1));
}

#[test]
fn unknown_exits_one() {
    let out = symext(&["certify", "4,2,1", "--p", "3", "--rules", "r-reflect"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("UNKNOWN"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["certify", "2,1", "--p", "2"],
        vec!["certify", "2,1", "--p", "4"],
        vec!["certify", "2,x", "--p", "3"],
        vec!["certify", "1,2", "--p", "3"],
        vec!["certify", "2,1"],
        vec!["analyze", "3", "--p", "9"],
        vec!["certify", "1,1,1", "--p", "3"],
        vec!["certify", "2,1", "--p", "3", "--rules", "t-bogus"],
        vec![
            "enumerate-block",
            "--core",
            "3",
            "--weight",
            "1",
            "--p",
            "3",
        ],
        vec![
            "zigzag-dim",
            "--p",
            "3",
            "--m",
            "1",
            "--d",
            "2",
            "--generators",
        ],
        vec!["frobnicate"],
    ] {
        assert_eq!(symext(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn survey_certifies_every_partition() {
    let (v, code) = json(&["survey", "--p", "3", "--n", "21"]);
    assert_eq!(code, 0);
    let total = v["total"].as_u64().unwrap() as usize;
    assert_eq!(total, symext::regular_partitions_of(21, 3).len());
    assert_eq!(v["certified"].as_u64().unwrap() as usize, total);
    assert!(v.get("certificates").is_none());
}

#[test]
fn survey_samples_reproducibly() {
    let run = |seed: &str| {
        json(&[
            "survey",
            "--p",
            "5",
            "--n",
            "20",
            "--sample",
            "10",
            "--seed",
            seed,
            "--certificates",
        ])
        .0["certificates"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| parts(&c["start"]))
            .collect::<Vec<_>>()
    };
    let a = run("11");
    assert_eq!(a.len(), 10);
    assert_eq!(a, run("11"));
    assert_ne!(a, run("12"));
}

#[test]
fn survey_respects_thread_variable() {
    let one = Command::new(env!("CARGO_BIN_EXE_symext"))
        .args([
            "survey",
            "--p",
            "5",
            "--n",
            "16",
            "--json",
            "--certificates",
        ])
        .env("SYMEXT_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_symext"))
        .args([
            "survey",
            "--p",
            "5",
            "--n",
            "16",
            "--json",
            "--certificates",
        ])
        .env("SYMEXT_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_symext"))
        .args(["regularize", "1,1,1", "--p", "3"])
        .env("SYMEXT_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bijections_emit_input_output_p() {
    let (v, code) = json(&["regularize", "6,1^5", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(parts(&v["input"]), vec![6, 1, 1, 1, 1, 1]);
    assert_eq!(parts(&v["output"]), vec![6, 2, 1, 1, 1]);
    assert_eq!(v["p"], 5);
    let (v, code) = json(&["mullineux", "5,2", "--p", "3"]);
    assert_eq!(code, 0);
    let out: Partition = serde_json::from_value(v["output"].clone()).unwrap();
    let (back, _) = json(&["mullineux", &out.to_text(), "--p", "3"]);
    assert_eq!(parts(&back["output"]), vec![5, 2]);
}

#[test]
fn emitted_partitions_parse_back() {
    let (v, _) = json(&[
        "enumerate-block",
        "--core",
        "1",
        "--weight",
        "2",
        "--p",
        "3",
    ]);
    let members = v["partitions"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, members.len());
    for m in members {
        let l: Partition = serde_json::from_value(m.clone()).unwrap();
        assert_eq!(l.to_text().parse::<Partition>().unwrap(), l);
        assert_eq!(serde_json::to_value(&l).unwrap(), *m);
    }
    let text = stdout(&symext(&[
        "enumerate-block",
        "--core",
        "1",
        "--weight",
        "2",
        "--p",
        "3",
        "--regular",
    ]));
    for line in text.lines() {
        let l: Partition = line.parse().unwrap();
        assert!(l.is_p_regular(3));
    }
}

#[test]
fn specht_irreducible_with_witness() {
    let (v, code) = json(&["specht-irreducible", "9,4,2,2,1^5", "--p", "3", "--witness"]);
    assert_eq!(code, 0);
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["witness"]["kind"], "runners");
    let (v, _) = json(&["specht-irreducible", "2,1", "--p", "3", "--witness"]);
    assert_eq!(v["irreducible"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn zigzag_dimensions() {
    let (v, code) = json(&["zigzag-dim", "--p", "3", "--m", "1", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], 6);
    assert!(v.get("by_degree").is_none());
    let (v, _) = json(&[
        "zigzag-dim",
        "--p",
        "3",
        "--m",
        "2",
        "--d",
        "2",
        "--by-degree",
        "--generators",
    ]);
    assert_eq!(v["by_degree"]["0"], 36);
    assert_eq!(v["generators"]["count"], 4);
}
