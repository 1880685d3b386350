use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypercx_cli::formats::{emit_complex, emit_graph, parse_complex_str, parse_graph_file, parse_graph_str};
use hypercx_core::{Graph, SimplicialComplex};
use proptest::prelude::*;

const C4: &str = "a: b d\nb: c\nc: d\nd:\n";
const C5: &str = "a: b e\nb: c\nc: d\nd: e\ne:\n";
const K23: &str = "a: c d e\nb: c d e\n";
const P3_SQUARE_P3: &str = "00: 01 10\n01: 02 11\n02: 12\n10: 11 20\n11: 12 21\n12: 22\n20: 21\n21: 22\n22:\n";
const A_C4: &str = "vertex a 0\nvertex b 0\nvertex c 0\nvertex d 0\nedge a b\nedge b c\nedge c d\nedge d a\n";

fn file(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn hypercx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercx")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn raag_compare_distinguishes_c4_from_c5() {
    let d = tempfile::tempdir().unwrap();
    let (a, b) = (file(&d, "C4.g", C4), file(&d, "C5.g", C5));
    let o = hypercx(&["raag-compare", s(&a), s(&b), "--invariant", "join"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict distinguished: not quasi-isometric"), "{text}");
    assert!(text.contains("[signature C5.g]\n  H~_0 = 0\n  H~_1 = Z^1\n"));
    assert!(o.stderr.is_empty());
    let same = hypercx(&["raag-compare", s(&b), s(&b), "--invariant", "commensurability"]);
    assert!(stdout(&same).contains("verdict not distinguished by this invariant"));
    // link(a) lies in star(c) in C4
    let flag = hypercx(&["raag-compare", s(&a), s(&b), "--invariant", "flag"]);
    assert_eq!(flag.status.code(), Some(2));
    assert!(flag.stdout.is_empty());
    assert_eq!(hypercx(&["raag-compare", s(&a), s(&b), "--invariant", "volume"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let d = tempfile::tempdir().unwrap();
    let g = file(&d, "prism.g", P3_SQUARE_P3);
    let args = ["qm-analyze", s(&g), "--complex", "contact", "--complex", "crossing", "--pairs"];
    let first = hypercx(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, hypercx(&args).stdout);
    let out = d.path().join("report.txt");
    let written = hypercx(&["--out", s(&out), "qm-verify", s(&g)]);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, stdout(&hypercx(&["qm-verify", s(&g)])));
    assert!(text.lines().any(|l| l.starts_with("input prism.g sha256 ")));
    assert!(text.ends_with("exit 0\n"));
}

#[test]
fn k23_fails_validation() {
    let d = tempfile::tempdir().unwrap();
    let g = file(&d, "k23.g", K23);
    let o = hypercx(&["qm-verify", s(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail validation :: graph is not quasi-median: induced K_2,3"));
    let a = hypercx(&["qm-analyze", s(&g)]);
    assert_eq!(a.status.code(), Some(1));
    assert!(stdout(&a).contains("quasi-median fail"));
}

#[test]
fn contiguity_of_p3_square_p3_is_tetrahedron_skeleton() {
    let d = tempfile::tempdir().unwrap();
    let g = file(&d, "prism.g", P3_SQUARE_P3);
    let emit = d.path().join("out");
    let o = hypercx(&["qm-analyze", s(&g), "--complex", "contiguity", "--emit-dir", s(&emit)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let section: Vec<&str> = text.lines().skip_while(|l| *l != "[complex contiguity]").skip(1).take_while(|l| l.starts_with("  ")).collect();
    assert!(section.contains(&"  vertices 4"));
    let faces: Vec<&&str> = section.iter().filter(|l| l.starts_with("  face ")).collect();
    assert_eq!(faces.len(), 4);
    assert!(faces.iter().all(|f| f.matches(" | ").count() == 2));
    let k = parse_complex_str(&std::fs::read_to_string(emit.join("contiguity.complex")).unwrap()).unwrap();
    assert_eq!(k.dimension(), Some(2));
    assert_eq!(k.maximal_faces().len(), 4);
    let dot = std::fs::read_to_string(emit.join("contiguity.dot")).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 6);
}

#[test]
fn parse_errors_exit_two_with_line_numbers() {
    let d = tempfile::tempdir().unwrap();
    let lp = file(&d, "loop.g", "a: b\nb: b\n");
    let o = hypercx(&["qm-verify", s(&lp)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("loop"), "{err}");
    let empty = file(&d, "empty.g", "");
    assert!(String::from_utf8_lossy(&hypercx(&["qm-verify", s(&empty)]).stderr).contains("no vertices"));
    let bad = file(&d, "bad.p", "vertex a 1\n");
    assert_eq!(hypercx(&["gp-cic", s(&bad)]).status.code(), Some(2));
    let missing = d.path().join("missing.g");
    assert_eq!(hypercx(&["qm-verify", s(&missing)]).status.code(), Some(2));
    let split = file(&d, "split.g", "a:\nb:\n");
    assert_eq!(hypercx(&["qm-analyze", s(&split)]).status.code(), Some(2));
    assert_eq!(hypercx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hypercx(&["gen-corpus", "--count", "2"]).status.code(), Some(2));
}

#[test]
fn face_guard_exits_three() {
    let d = tempfile::tempdir().unwrap();
    let g = file(&d, "prism.g", P3_SQUARE_P3);
    let o = Command::new(env!("CARGO_BIN_EXE_hypercx"))
        .args(["qm-analyze", s(&g), "--complex", "contiguity"])
        .env("HYPERCX_FACE_GUARD", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("homology unavailable :: face enumeration exceeded the guard"));
    let flag = hypercx(&["--face-guard", "3", "qm-analyze", s(&g), "--complex", "contiguity"]);
    assert_eq!(flag.status.code(), Some(3));
    let verify = hypercx(&["qm-verify", s(&g), "--face-guard", "3"]);
    assert_eq!(verify.status.code(), Some(3), "{}", stdout(&verify));
}

#[test]
fn family_from_file() {
    let d = tempfile::tempdir().unwrap();
    let g = file(&d, "c4.g", C4);
    let fam = file(&d, "halves.txt", "a b c d\n");
    let o = hypercx(&["qm-verify", s(&g), "--family", s(&fam), "--family", "prisms"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("pass c.file-halves.relcont-model"), "{text}");
    assert!(text.contains("param family prisms"));
    let path = file(&d, "path.g", "a: b\nb: c\n");
    let not_gated = file(&d, "ends.txt", "a c\n");
    let o = hypercx(&["qm-verify", s(&path), "--family", s(&not_gated)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not gated"));
}

#[test]
fn gp_cic_fragments_and_balls() {
    let d = tempfile::tempdir().unwrap();
    let p = file(&d, "ac4.p", A_C4);
    let emit = d.path().join("frag.complex");
    let o = hypercx(&["gp-cic", s(&p), "--family", "maximal-joins", "--radius", "2", "--max-dim", "2", "--emit", s(&emit)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[fragment]\n  cosets 1\n"));
    assert_eq!(parse_complex_str(&std::fs::read_to_string(&emit).unwrap()).unwrap().vertex_count(), 1);
    let cliques = hypercx(&["gp-cic", s(&p), "--family", "maximal-cliques", "--radius", "1", "--max-dim", "2"]);
    assert_eq!(cliques.status.code(), Some(0));
    assert!(!stdout(&cliques).contains("cosets 1\n"));
    let inf = hypercx(&["gp-cic", s(&p), "--ball", "2"]);
    assert_eq!(inf.status.code(), Some(2));
    let fin = file(&d, "p3.p", "vertex a 2\nvertex b 3\nvertex c 2\nedge a b\nedge b c\n");
    let ball = hypercx(&["gp-cic", s(&fin), "--ball", "4"]);
    assert_eq!(ball.status.code(), Some(0), "{}", stdout(&ball));
    assert!(stdout(&ball).contains("  status pass\n"));
}

#[test]
fn gen_corpus_writes_parseable_graphs() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("corpus");
    let args = ["gen-corpus", "--seed", "4", "--count", "4", "--max-vertices", "60", "--out-dir", s(&dir), "--verify"];
    let o = hypercx(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(o.stdout, hypercx(&args).stdout);
    let text = stdout(&o);
    assert!(text.contains("  verified 4\n  failures 0\n"));
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 4);
    for f in files {
        let g = parse_graph_file(&f).unwrap();
        assert!(g.is_connected() && g.len() <= 60);
        assert_eq!(emit_graph(&g), std::fs::read_to_string(&f).unwrap());
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| bits[u * n + v]).collect();
            Graph::from_index_edges((0..n).map(|i| format!("v{i}")).collect(), &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph_text_round_trips(g in arb_graph()) {
        let back = parse_graph_str(&emit_graph(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert!(back.are_isomorphic(&g, 12).unwrap().is_some());
    }

    #[test]
    fn complex_text_round_trips(faces in proptest::collection::vec(proptest::collection::btree_set(0u8..8, 0..5), 0..8)) {
        let k = SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().map(|v| format!("x {v}")).collect::<Vec<_>>()));
        let text = emit_complex(&k);
        prop_assert!(parse_complex_str(&text).unwrap().same_faces(&k));
        prop_assert_eq!(emit_complex(&parse_complex_str(&text).unwrap()), text);
    }
}
