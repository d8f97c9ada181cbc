use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use motivic_steenrod::anss::Chart;

fn motivic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = motivic(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    motivic(args).status.code().unwrap()
}

const D3: &str = "# d3 demo\nclass a s=3 f=1\nclass b s=2 f=4\nd 3 a b\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn basis_listings() {
    assert_eq!(
        stdout(&["basis", "--algebra", "A", "--stem", "1", "--weight", "0"]),
        "t0\n"
    );
    assert_eq!(
        stdout(&["basis", "--algebra", "A", "--stem", "0", "--weight", "-1"]),
        "t\n"
    );
    assert_eq!(
        stdout(&["basis", "--algebra", "A", "--stem", "6", "--weight", "3"]),
        "x1^3\nx2\n"
    );
    assert_eq!(
        stdout(&["basis", "--algebra", "A1", "--stem", "7", "--weight", "3"]),
        ""
    );
}

#[test]
fn arithmetic() {
    assert_eq!(stdout(&["mul", "--algebra", "A", "t0", "t0"]), "t*x1\n");
    assert_eq!(stdout(&["mul", "--algebra", "E1", "t0", "t0"]), "0\n");
    assert_eq!(stdout(&["comul", "--algebra", "A", "t1"]), "t1|1 + x1|t0 + 1|t1\n");
    assert_eq!(stdout(&["dualmul", "Sq2", "Sq2"]), "t*dual(t0*t1)\n");
    assert_eq!(stdout(&["dualmul", "Sq1", "Sq1"]), "0\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["basis", "--algebra", "Q7", "--stem", "1", "--weight", "0"]), 2);
    assert_eq!(code(&["mul", "--algebra", "A", "t0 + t"]), 2);
    assert_eq!(code(&["mul", "--algebra", "A", "t0 +"]), 2);
    assert_eq!(code(&["dualmul", "Sq3"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["truncate", "--input", "/nonexistent/chart", "--weight", "0"]), 2);
    // the full algebra has no finite resolution here
    assert_eq!(
        code(&["resolve", "--algebra", "A", "--max-stem", "4", "--max-f", "2"]),
        1
    );
    assert_eq!(code(&["comul", "--algebra", "H_BP", "x1"]), 1);
}

#[test]
fn truncate_and_motivic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "d3.txt", D3);
    let truncated = stdout(&["truncate", "--input", &input, "--weight", "3"]);
    assert!(truncated.starts_with("# zero region: s + f < 6\n"));
    let parsed = Chart::parse(&truncated).unwrap();
    assert_eq!(parsed, Chart::parse(D3).unwrap().truncate(3).unwrap());
    assert_eq!(
        stdout(&["truncate", "--input", &input, "--weight", "-4"])
            .lines()
            .count(),
        4
    );

    let tsv = stdout(&["motivic", "--input", &input]);
    assert!(tsv.lines().any(|l| l == "2\t4\t3\t1\t0"), "{tsv}");

    let bad = write(dir.path(), "bad.txt", "class a s=1 f=1\nd 3 a zz\n");
    assert_eq!(code(&["motivic", "--input", &bad]), 2);
}

#[test]
fn empty_chart_gives_empty_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "empty.txt", "# nothing\n");
    assert_eq!(stdout(&["truncate", "--input", &input, "--weight", "2"]), "");
    assert_eq!(stdout(&["motivic", "--input", &input]), "");
}

#[test]
fn resolve_with_oracle() {
    let e0 = stdout(&["resolve", "--algebra", "E0", "--max-stem", "4", "--max-f", "8"]);
    let rows: Vec<&str> = e0.lines().skip(1).collect();
    // the bound is on internal stem s + f
    assert_eq!(rows.len(), 5);
    for (f, row) in rows.iter().enumerate() {
        assert_eq!(*row, format!("0\t{f}\t0\t1"));
    }
    let out = motivic(&[
        "resolve",
        "--algebra",
        "A1",
        "--max-stem",
        "10",
        "--max-f",
        "6",
        "--oracle",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle: ok"));
}

#[test]
fn resumed_resolution_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let args = |ck: &str, tsv: &str, svg: &str| {
        vec![
            "resolve".to_string(),
            "--algebra".into(),
            "A2".into(),
            "--max-stem".into(),
            "12".into(),
            "--max-f".into(),
            "5".into(),
            "--checkpoint".into(),
            ck.into(),
            "--output".into(),
            tsv.into(),
            "--svg".into(),
            svg.into(),
        ]
    };
    let run = |v: Vec<String>| {
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        assert!(motivic(&refs).status.success());
    };
    run(args(&p("full.ck"), &p("full.tsv"), &p("full.svg")));

    let mut partial = args(&p("resumed.ck"), &p("resumed.tsv"), &p("resumed.svg"));
    partial.extend(["--stop-after".to_string(), "3".to_string()]);
    run(partial);
    assert!(!dir.path().join("resumed.tsv").exists());
    let out = {
        let v = args(&p("resumed.ck"), &p("resumed.tsv"), &p("resumed.svg"));
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        motivic(&refs)
    };
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("resumed from"));

    for (a, b) in [
        ("full.tsv", "resumed.tsv"),
        ("full.svg", "resumed.svg"),
        ("full.ck", "resumed.ck"),
    ] {
        assert_eq!(fs::read(p(a)).unwrap(), fs::read(p(b)).unwrap(), "{a} vs {b}");
    }

    // a checkpoint for another algebra is refused
    let out = motivic(&[
        "resolve",
        "--algebra",
        "A1",
        "--max-stem",
        "12",
        "--max-f",
        "5",
        "--checkpoint",
        &p("full.ck"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ladder_certificates() {
    let all = stdout(&["ladder", "--step", "all", "--max-stem", "24"]);
    assert!(all.ends_with("CERTIFIED A//A(2) through stem 24\n"), "{all}");
    let ko = stdout(&["ladder", "--step", "ko", "--max-stem", "20"]);
    assert!(ko.ends_with("CERTIFIED A//A(1) through stem 20\n"), "{ko}");
    let trivial = stdout(&["ladder", "--step", "all", "--max-stem", "0"]);
    assert!(trivial.ends_with("CERTIFIED A//A(2) through stem 0\n"));
    let one = stdout(&["ladder", "--step", "3", "--max-stem", "12"]);
    assert!(one.starts_with("step G-A2 ") && !one.contains("CERTIFIED"));
    assert_eq!(code(&["ladder", "--step", "E5-Z"]), 2);
}

#[test]
fn svg_outputs_are_deterministic_and_styled() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "d3.txt", D3);
    let config = write(dir.path(), "style.toml", "torsion = \"#123456\"\n");
    let svg = |name: &str| {
        let path = dir.path().join(name);
        let out = motivic(&[
            "--config",
            &config,
            "motivic",
            "--input",
            &input,
            "--svg",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        fs::read_to_string(path).unwrap()
    };
    let a = svg("a.svg");
    assert_eq!(a, svg("b.svg"));
    assert!(a.contains("#123456"));

    let bad = write(dir.path(), "bad.toml", "torsion = 3\n");
    assert_eq!(code(&["--config", &bad, "motivic", "--input", &input]), 2);

    let trunc = dir.path().join("t.svg");
    assert!(motivic(&[
        "truncate",
        "--input",
        &input,
        "--weight",
        "3",
        "--svg",
        trunc.to_str().unwrap()
    ])
    .status
    .success());
    assert!(fs::read_to_string(trunc).unwrap().contains("<polygon"));
}
