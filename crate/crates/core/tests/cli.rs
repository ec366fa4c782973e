use std::io::Write;
use std::process::{Command, Output};

use hypermap::hypergraph::{parse_records, Hypergraph, VertexSet};

fn hypermap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Hypergraph> {
    parse_records(&stdout(o)).unwrap().into_iter().map(|r| r.hypergraph).collect()
}

#[test]
fn sample_lower_closure_gives_complexes() {
    let o = hypermap(&["sample", "--expr", "down($0)", "--vertices", "a,b,c", "--p", "const:0.5", "--seed", "7", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let hs = records(&o);
    assert_eq!(hs.len(), 3);
    assert!(hs.iter().all(Hypergraph::is_complex));
    let text = stdout(&o);
    assert!(text.starts_with("# generator:"));
    assert_eq!(text.matches("# seed=7 model=down($0)@const:0.5 trial=").count(), 3);
}

#[test]
fn sample_with_certain_edges_gives_the_full_hypergraph() {
    let o = hypermap(&["sample", "--expr", "$0", "--vertices", "a,b,c", "--p", "const:1", "--trials", "4"]);
    let v = VertexSet::parse_list("a,b,c").unwrap();
    assert!(records(&o).iter().all(|h| *h == Hypergraph::full(v.clone())));
}

#[test]
fn sample_join_lives_on_the_union() {
    let o = hypermap(&["sample", "--expr", "$0 * $1", "--vertices", "a,b;c,d", "--p", "const:0.5;const:0.5", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0));
    for h in records(&o) {
        assert_eq!(h.vertices().labels(), ["a", "b", "c", "d"]);
    }
}

#[test]
fn sample_is_deterministic() {
    let args = ["sample", "--model", "q", "--vertices", "a,b,c", "--p", "const:0.3", "--seed", "11", "--trials", "20"];
    assert_eq!(hypermap(&args).stdout, hypermap(&args).stdout);
    assert!(records(&hypermap(&args)).iter().all(Hypergraph::is_independence));
}

#[test]
fn verify_exit_codes() {
    let o = hypermap(&["verify", "--check", "thm1.1-all", "--vertices", "a,b,c", "--p", "const:0.5", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.starts_with("PASS thm1.1-part-")));

    // Two listed values in the worked example omit edges their definition
    // requires, so the fixture check fails.
    let o = hypermap(&["verify", "--check", "example-2.1-fixtures"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 2);

    let o = hypermap(&["verify", "--check", "thm3.5-part-1", "--vertices", "a,b,c,d,e", "--p", "const:0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound exceeded"));

    assert_eq!(hypermap(&["verify", "--check", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn verify_tolerance_override() {
    let o = hypermap(&["verify", "--check", "cor1.2-join-1", "--tol", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hypermap(&["verify", "--check", "cor1.2-join-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_reads_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"# vertices: v'0 v'1 v'2 v'3\nv'0,v'1\nv'0,v'1,v'2\n\n").unwrap();
    let path = f.path().to_str().unwrap();
    let o = hypermap(&["eval", "--expr", "iup($0)", "--input", path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "# vertices: v'0 v'1 v'2 v'3\nv'0,v'1\nv'0,v'1,v'2\nv'0,v'1,v'3\nv'0,v'1,v'2,v'3\n\n"
    );
    let o = hypermap(&["eval", "--expr", "$0 * $1", "--input", path]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(hypermap(&["eval", "--expr", "$0", "--input", "/nonexistent/h.txt"]).status.code(), Some(2));
}

#[test]
fn enumerate_complexes_on_two_vertices() {
    let o = hypermap(&["enumerate", "--vertices", "a,b", "--class", "complex"]);
    let got: Vec<Vec<Vec<String>>> = records(&o).iter().map(Hypergraph::label_sets).collect();
    let s = |v: &[&[&str]]| v.iter().map(|e| e.iter().map(|x| x.to_string()).collect()).collect::<Vec<Vec<String>>>();
    assert_eq!(
        got,
        [s(&[]), s(&[&["a"]]), s(&[&["b"]]), s(&[&["a"], &["b"]]), s(&[&["a"], &["a", "b"], &["b"]])]
    );
    assert_eq!(records(&hypermap(&["enumerate", "--vertices", "a,b,c"])).len(), 128);
}

#[test]
fn dist_prints_uniform_table() {
    let o = hypermap(&["dist", "--model", "pbar", "--vertices", "a,b", "--p", "const:0.5"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    for (i, line) in text.lines().enumerate() {
        assert_eq!(line, format!("{i}\t0.125"));
    }
    let full = hypermap(&["dist", "--expr", "down($0)", "--vertices", "a,b", "--format", "full"]);
    let text = stdout(&full);
    assert_eq!(text.matches("# index=").count(), 8);
    assert!(text.contains("# index=0 mass=0.25"));
}

#[test]
fn usage_errors() {
    assert_eq!(hypermap(&[]).status.code(), Some(2));
    assert_eq!(hypermap(&["sample", "--vertices", "a"]).status.code(), Some(2));
    assert_eq!(hypermap(&["sample", "--expr", "$0 &", "--vertices", "a"]).status.code(), Some(2));
    assert_eq!(hypermap(&["sample", "--expr", "$0", "--vertices", "a", "--p", "const:2"]).status.code(), Some(2));
    assert_eq!(hypermap(&["--help"]).status.code(), Some(0));
}
