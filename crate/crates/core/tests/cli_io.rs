mod common;

use common::*;
use dicut::cli::run_command_with;
use dicut::error::Error;
use dicut::graph::{Mode, WeightedDigraph};
use dicut::io::{parse_graph_str, validate_record, write_graph, ResultRecord};
use dicut::rng::seeded;
use proptest::prelude::*;
use rand::Rng;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("dicut").chain(args.iter().copied());
    let code = run_command_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_parse_round_trips(seed in any::<u64>(), vertex in any::<bool>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(1..=12);
        let m = if n == 1 { 0 } else { rng.gen_range(0..=3 * n) };
        let arcs = loose_arcs(n, m, &mut rng);
        let g = if vertex {
            WeightedDigraph::vertex_weighted((0..n).map(|_| rng.gen_range(1..=1000)).collect(), arcs).unwrap()
        } else {
            WeightedDigraph::edge_weighted(n, arcs.into_iter().map(|(u, v)| (u, v, rng.gen_range(1..=1000)))).unwrap()
        };
        let file = parse_graph_str(&write_graph(&g, None), false).unwrap();
        prop_assert_eq!(&file.graph, &g);
        prop_assert!(!file.lifted);
        // Edge files have no vertex lines, so named isolated vertices cannot be written.
        let isolated = (0..n).any(|v| g.out_degree(v) + g.in_degree(v) == 0);
        if !vertex && isolated {
            return Ok(());
        }
        let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
        let named = parse_graph_str(&write_graph(&g, Some(&labels)), false).unwrap();
        prop_assert_eq!(named.graph.edges().len(), g.m());
        for e in g.edges() {
            let (t, h) = (named.id_of(&labels[e.tail]).unwrap(), named.id_of(&labels[e.head]).unwrap());
            prop_assert!(named.graph.has_edge(t, h));
        }
    }
}

#[test]
fn rejects_bad_files() {
    let cases = [
        ("p edge 2 1\na 0 0 1\n", "self-loop"),
        ("p edge 2 1\na 0 1 0\n", "weight"),
        ("p edge 2 1\na 0 1 2000000000000\n", "weight"),
        ("p vert 2 1\nv 0 1\na 0 1\n", "line"),
        ("p edge 2 2\na 0 1 1\n", "line"),
        ("a 0 1 1\n", "line"),
    ];
    for (text, needle) in cases {
        let err = parse_graph_str(text, false).unwrap_err();
        assert!(err.to_string().contains(needle), "{text:?}: {err}");
    }
    assert!(matches!(parse_graph_str("p edge 2 1\na 0 0 1\n", false), Err(Error::SelfLoop { line: Some(2), .. })));
}

#[test]
fn zero_vertex_weights_need_the_flag() {
    let text = "p vert 3 2\nv 0 0\nv 1 2\nv 2 1\na 0 1\na 1 2\n";
    assert!(parse_graph_str(text, false).is_err());
    let file = parse_graph_str(text, true).unwrap();
    assert!(file.lifted);
    assert_eq!(file.graph.mode(), Mode::VertexWeighted);
    assert_eq!(file.original.vertex_weights(), &[0, 2, 1]);
}

#[test]
fn cli_exit_codes_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write_tmp(&dir, "e.txt", "p edge 3 3\na 0 1 2\na 1 2 3\na 2 0 1\n");
    let k3 = write_tmp(&dir, "k3.txt", "p vert 3 6\nv 0 1\nv 1 1\nv 2 1\na 0 1\na 1 0\na 0 2\na 2 0\na 1 2\na 2 1\n");
    let junk = write_tmp(&dir, "junk.txt", "p edge 3\n");

    let (code, out, _) = run(&["edge-rooted", &edge, "--root", "2", "--json"]);
    assert_eq!(code, 0);
    let record: ResultRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(record.kind, "edge-rooted");
    assert_eq!(record.value, 2);
    validate_record(&record, &parse_graph_str(&std::fs::read_to_string(&edge).unwrap(), false).unwrap()).unwrap();

    let (code, _, err) = run(&["vertex-global", &k3]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "));
    assert_eq!(run(&["edge-rooted", &junk, "--root", "0"]).0, 1);
    assert_eq!(run(&["edge-rooted", &edge, "--root", "9"]).0, 1);
    assert_eq!(run(&["vertex-global", &edge]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);

    let (code, out, _) = run(&["brute", &edge, "--kind", "edge-global"]);
    assert_eq!(code, 0);
    assert!(out.contains("brute-edge-global"));
}

#[test]
fn cli_injection() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write_tmp(&dir, "e.txt", "p edge 3 3\na 0 1 2\na 1 2 3\na 2 0 1\n");
    let good = write_tmp(&dir, "good.json", r#"{"optEstimate": 2, "nu": 2, "terminals": ["0"]}"#);
    let bad = write_tmp(&dir, "bad.json", r#"{"optEstimate": 3, "nu": 2, "terminals": ["0"]}"#);
    let (code, out, _) = run(&["edge-rooted", &edge, "--root", "2", "--inject", &good, "--json"]);
    assert_eq!(code, 0);
    let record: ResultRecord = serde_json::from_str(&out).unwrap();
    assert_eq!((record.value, record.repeats), (2, 1));
    assert_eq!(run(&["edge-rooted", &edge, "--root", "2", "--inject", &bad]).0, 1);
    assert_eq!(run(&["edge-global", &edge, "--inject", &good]).0, 1);
}

#[test]
fn bench_csv_is_reproducible() {
    let args = ["bench", "--sizes", "5,7", "--trials", "3", "--seed", "4", "--repeats", "8"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a.lines().count(), 7);
    assert!(a.lines().next().unwrap().starts_with("instance,family,problem"));
    assert_eq!(run(&args).1, a);
    let (code, empty, _) = run(&["bench", "--sizes", ""]);
    assert_eq!(code, 0);
    assert_eq!(empty.lines().count(), 1);
}
