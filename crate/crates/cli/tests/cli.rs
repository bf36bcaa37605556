use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mutvis_cli::edgelist::{parse_edge_list, read_edge_list};
use mutvis_core::oracle::mu_bruteforce;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mutvis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "edges"))
        .collect();
    files.sort();
    files
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, text).unwrap();
    path
}

fn golden(name: &str) -> String {
    golden_dir().join(name).to_str().unwrap().to_string()
}

#[test]
fn golden_documents_match() {
    let files = golden_files();
    assert!(files.len() >= 30);
    for f in files {
        let out = bin(&["mu", "--json", f.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{f:?}");
        let pinned = fs::read_to_string(f.with_extension("json")).unwrap();
        assert_eq!(stdout(&out), pinned, "{f:?}");
    }
}

#[test]
fn golden_mu_matches_oracle() {
    for f in golden_files() {
        let g = read_edge_list(&f).unwrap();
        if g.n() > 12 || !g.is_connected() {
            continue;
        }
        let doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(f.with_extension("json")).unwrap()).unwrap();
        assert_eq!(doc["mu"], mu_bruteforce(&g, 12).unwrap().0, "{f:?}");
    }
}

#[test]
fn mu_sets_pass_check() {
    for f in golden_files() {
        let path = f.to_str().unwrap();
        let set = stdout(&bin(&["mu", "--set-only", path]));
        let mut args = vec!["check", path];
        args.extend(set.split_whitespace());
        assert_eq!(bin(&args).status.code(), Some(0), "{f:?}");
    }
}

#[test]
fn mu_plain_and_set_only() {
    let p4 = golden("path-4.edges");
    assert_eq!(stdout(&bin(&["mu", &p4])), "2\n");
    assert_eq!(stdout(&bin(&["mu", "--set-only", &p4])), "0 3\n");
    assert_eq!(stdout(&bin(&["mu", &golden("k23.edges")])), "4\n");
    let timed = stdout(&bin(&["mu", "--json", "--timings", &p4]));
    for key in ["decompose_ms", "orient_ms", "algorithm_ms"] {
        assert!(timed.contains(key));
    }
}

#[test]
fn disconnected_input_warns() {
    let out = bin(&["mu", &golden("disconnected.edges")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3\n");
    assert!(stderr(&out).contains("disconnected"));
    let out = bin(&["decompose", &golden("disconnected.edges")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("largest"));
}

#[test]
fn non_dh_and_parse_errors() {
    let c5 = scratch("c5.edges", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = bin(&["mu", c5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not distance-hereditary"));
    assert!(stderr(&out).contains('5'));
    let bad = scratch("bad.edges", "0 1\n1 two\n");
    assert_eq!(bin(&["mu", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bin(&["mu", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(
        bin(&["decompose", c5.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn check_examples() {
    let p4 = golden("path-4.edges");
    assert_eq!(bin(&["check", &p4, "0", "3"]).status.code(), Some(0));
    let out = bin(&["check", &p4, "0,1,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("0 3"));
    assert_eq!(bin(&["check", &p4, "0", "9"]).status.code(), Some(2));
    assert_eq!(bin(&["check", &p4, "zero"]).status.code(), Some(2));
    let k5 = scratch("k5.edges", &stdout(&bin(&["gen", "clique", "5"])));
    assert_eq!(
        bin(&["check", k5.to_str().unwrap(), "0", "1", "2", "3", "4"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn oracle_examples() {
    let c5 = scratch("oracle-c5.edges", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = bin(&["oracle", c5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("mu: 3\n"));
    assert!(stdout(&bin(&["oracle", &golden("cycle-4.edges")])).starts_with("mu: 3\n"));
    assert!(stdout(&bin(&["oracle", &golden("k33.edges")])).starts_with("mu: 4\n"));
    let out = bin(&["oracle", "--cap", "4", &golden("k33.edges")]);
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_mutvis"))
        .args(["oracle", &golden("k33.edges")])
        .env("MUTVIS_ORACLE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn decompose_examples() {
    let dot = stdout(&bin(&["decompose", "--dot", &golden("k23.edges")]));
    assert_eq!(dot.matches("subgraph cluster_").count(), 2);
    let dot = stdout(&bin(&["decompose", &golden("clique-4.edges")]));
    assert_eq!(dot.matches("subgraph cluster_").count(), 1);
    assert!(!dot.contains("style=bold"));
    let p6 = scratch("p6.edges", &stdout(&bin(&["gen", "path", "6"])));
    let tree = stdout(&bin(&["decompose", "--tree", p6.to_str().unwrap()]));
    assert!(tree.starts_with("graph tree"));
    assert_eq!(tree.matches(" -- ").count(), 3);
}

#[test]
fn gen_round_trips() {
    let out = stdout(&bin(&["gen", "path", "4"]));
    let g = parse_edge_list(&out).unwrap();
    assert_eq!((g.n(), g.m()), (4, 3));
    let tail = parse_edge_list(&stdout(&bin(&["gen", "tail-gadget"]))).unwrap();
    assert_eq!((tail.n(), tail.m()), (7, 14));
    let a = bin(&["gen", "random", "--n", "50", "--seed", "7"]);
    let b = bin(&["gen", "random", "--n", "50", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let expected =
        mutvis_core::generators::random_dh(&mutvis_core::generators::ExpansionSpec::new(7, 50))
            .unwrap();
    assert_eq!(parse_edge_list(&stdout(&a)).unwrap(), expected);
    assert_eq!(bin(&["gen", "cycle", "6"]).status.code(), Some(2));
    assert_eq!(bin(&["gen", "random", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn bench_tables() {
    let out = bin(&["bench"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);
    let out = bin(&["bench", "100", "300", "--runs", "1", "--seed", "4"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().trim_start().starts_with("300"));
}
