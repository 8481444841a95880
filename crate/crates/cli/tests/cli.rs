use std::path::Path;
use std::process::{Command, Output};

use lsqlab::survey::{classify_range, csv, Checkpoint};

fn lsqlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsqlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lsqlab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn single_query_verbs() {
    assert_eq!(stdout(&["mink", "55"]), "55 8\n");
    assert_eq!(stdout(&["fgamma", "2"]), "2 23\n");
    assert_eq!(stdout(&["reps", "0"]), "0 0 0 0\n");
    assert_eq!(stdout(&["reps", "55"]), "1 1 2 7\n1 2 5 5\n1 3 3 6\n");
    assert_eq!(stdout(&["count", "4"]), "4 24\n");
    assert_eq!(stdout(&["analyze", "78", "--witness"]), "78 5 2 4 true\n0 2 5 7\n2 3 4 7\n");
    assert_eq!(stdout(&["mink", "10", "--witness"]), "10 4\n0 0 1 3\n1 1 2 2\n");
    assert_eq!(stdout(&["inb", "14"]), "14 true\n");
    assert_eq!(stdout(&["inb", "12"]), "12 false\n");
    assert_eq!(stdout(&["cap", "4"]), "4 16 24\n");
    assert_eq!(stdout(&["cap", "55", "--denom", "8"]), "55 576 576\n");
    assert_eq!(stdout(&["sylvester", "3"]), "3 119\n");
    assert_eq!(stdout(&["f4", "3"]), "3 184\n");
    assert_eq!(stdout(&["f4", "2", "--factor", "64"]), "2 55\n");
}

#[test]
fn jacobi_verify_reports_ok() {
    for limit in ["1", "300", "5000"] {
        assert_eq!(stdout(&["jacobi-verify", limit]), format!("OK {limit}\n"));
    }
}

#[test]
fn exit_status_classes() {
    let out = lsqlab(&["mink", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n"));

    let out = lsqlab(&["fgamma", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = lsqlab(&["mink", "55", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let out = lsqlab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = lsqlab(&["sweep", "--to", "10", "--checkpoint", "x.ckpt"]);
    assert_eq!(out.status.code(), Some(2));

    let out = lsqlab(&["sweep", "--to", "200000"]);
    assert_eq!(out.status.code(), Some(1));

    // a classification file whose rows contradict the invariants
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "n,min_k,l_max,squarefree\n1,1,1,true\n2,5,1,true\n").unwrap();
    let out = lsqlab(&["table1", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_then_table1_matches_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let kclass = dir.path().join("kclass.csv");
    let table1 = dir.path().join("table1.csv");
    stdout(&["sweep", "--from", "1", "--to", "3000", "--threads", "3", "--out", path_str(&kclass)]);
    stdout(&["table1", "--input", path_str(&kclass), "--out", path_str(&table1)]);
    let direct = stdout(&["table1", "--from", "1", "--to", "3000"]);

    let (rows, summary) = classify_range(1, 3000, 2).unwrap();
    let kclass_text = std::fs::read_to_string(&kclass).unwrap();
    assert_eq!(kclass_text, csv::kclass_csv(&rows));
    let want = csv::table1_csv(&summary.rows());
    assert_eq!(std::fs::read_to_string(&table1).unwrap(), want);
    assert_eq!(direct, want);

    // stdout form of sweep matches the file
    assert_eq!(stdout(&["sweep", "--to", "3000"]), kclass_text);
}

#[test]
fn sweep_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let kclass = dir.path().join("kclass.csv");
    let ckpt = dir.path().join("sweep.ckpt");
    let reference = stdout(&["sweep", "--to", "9000"]);

    // pretend an earlier run stopped after 4096 integers
    let partial: String = reference
        .lines()
        .take(4097)
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&kclass, &partial).unwrap();
    let (rows, summary) = classify_range(1, 4096, 1).unwrap();
    assert_eq!(rows.len(), 4096);
    Checkpoint {
        last_n: 4096,
        classes: summary.classes,
    }
    .write(&ckpt)
    .unwrap();

    stdout(&[
        "sweep", "--to", "9000", "--out", path_str(&kclass), "--checkpoint", path_str(&ckpt),
    ]);
    assert_eq!(std::fs::read_to_string(&kclass).unwrap(), reference);
    assert!(std::fs::read_to_string(&ckpt).unwrap().contains("last_n=9000\n"));

    std::fs::write(&ckpt, "lsqlab-ckpt v2\nlast_n=0\n").unwrap();
    let out = lsqlab(&["sweep", "--to", "9000", "--out", path_str(&kclass), "--checkpoint", path_str(&ckpt)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn emitted_csv_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("kclass", vec!["sweep", "--to", "500"]),
        ("table1", vec!["table1", "--to", "500"]),
        ("table2", vec!["table2", "2", "3", "7", "30"]),
        ("fig1", vec!["fig1", "2", "5", "20"]),
    ];
    for (name, args) in files {
        let path = dir.path().join(format!("{name}.csv"));
        let mut args = args.clone();
        args.extend(["--out", path_str(&path)]);
        stdout(&args);
        let text = std::fs::read_to_string(&path).unwrap();
        let again = match name {
            "kclass" => csv::kclass_csv(&csv::parse_kclass(&text, &path).unwrap()),
            "table1" => csv::table1_csv(&csv::parse_table1(&text, &path).unwrap()),
            "table2" => csv::table2_csv(&csv::parse_table2(&text, &path).unwrap()),
            _ => csv::fig1_csv(&csv::parse_fig1(&text, &path).unwrap()),
        };
        assert_eq!(again, text, "{name}");
        assert!(text.lines().all(|l| l == l.trim_end()));
    }
    assert_eq!(
        std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap(),
        "n,f_gamma,f_four,bound46,bound64\n2,23,55,184,256\n5,201,736,1150,1600\n20,2764,11776,18400,25600\n"
    );
}
