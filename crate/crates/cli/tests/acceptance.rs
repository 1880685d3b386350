//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with timing.
//! Exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hypercx_core::complexes::{hyperplane_complex, hyperplane_label, HyperplaneComplexKind};
use hypercx_core::graph_products::{
    bounded_elements, cic_fragment, conjugate_parabolic_intersection, in_conjugate, invert, multiply, qm_ball,
    verify_ball, GPPresentation, NormalForm, SupportFamily,
};
use hypercx_core::homology::{boundary_matrices, euler_characteristic, homology, IntegerMatrix};
use hypercx_core::qm::generate;
use hypercx_core::{Graph, QMGraph, SimplicialComplex, VertexSet};
use hypercx_harness::{expand, raag_verdict, run_corpus, CorpusReport, CorpusSpec, Invariant, Status, TheoremReport};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(number: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(l) = limit {
        if took > l {
            o.ok = false;
            o.detail.push_str(&format!("; over the {l:?} budget"));
        }
    }
    println!("{} {number:>2} {title} :: {} [{took:.2?}]", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    o.ok
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).expect("temp file");
    p
}

fn criterion_raag() -> Outcome {
    let (c4, c5) = (Graph::cycle(4), Graph::cycle(5));
    let v = match raag_verdict(&c4, &c5, Invariant::Join) {
        Ok(v) => v,
        Err(e) => return outcome(false, e.to_string()),
    };
    let [s4, s5] = &v.signatures;
    let c5_circle = s5.groups.iter().enumerate().all(|(k, g)| {
        g.torsion.is_empty() && g.betti == usize::from(k == 1)
    }) && s5.groups.len() > 1;
    let dir = tempfile::tempdir().expect("tempdir");
    let a = write_temp(&dir, "C4.g", "a: b d\nb: c\nc: d\nd:\n");
    let b = write_temp(&dir, "C5.g", "a: b e\nb: c\nc: d\nd: e\ne:\n");
    let out = Command::new(env!("CARGO_BIN_EXE_hypercx"))
        .args(["raag-compare", a.to_str().unwrap(), b.to_str().unwrap(), "--invariant", "join"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let cli_ok = out.status.code() == Some(0) && text.contains("verdict distinguished");
    outcome(
        s4.is_trivial() && c5_circle && v.distinguished() && cli_ok,
        format!("C4 reduced Betti {:?}, C5 reduced Betti {:?}, {}; CLI exit {:?}", s4.betti(), s5.betti(), v.statement(), out.status.code()),
    )
}

fn criterion_contiguity() -> Outcome {
    let p3 = QMGraph::new(Graph::path(3)).expect("path");
    let x = generate::product(&[&p3, &p3]).expect("product");
    let k = match hyperplane_complex(&x, HyperplaneComplexKind::Contiguity) {
        Ok(k) => k,
        Err(e) => return outcome(false, e.to_string()),
    };
    let labels: Vec<String> = x.hyperplane_ids().map(hyperplane_label).collect();
    let mut expected: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    for skip in 0..labels.len() {
        expected.insert(labels.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, l)| l.clone()).collect());
    }
    let betti = homology(&k, false).map(|h| h.betti()).unwrap_or_default();
    outcome(
        labels.len() == 4 && k.face_set() == expected && betti == vec![1, 0, 1],
        format!("{} hyperplanes, {} maximal faces, Betti {betti:?}", labels.len(), k.maximal_faces().len()),
    )
}

/// Cut vertices by deletion and a connectivity test.
fn has_cut_vertex(g: &Graph) -> bool {
    g.vertices().any(|v| {
        let rest: VertexSet = g.vertices().filter(|&w| w != v).collect();
        !rest.is_empty() && !g.is_connected_within(&rest)
    })
}

struct Tally {
    pass: usize,
    fail: Vec<String>,
    skipped: usize,
}

fn tally<'a>(reports: impl Iterator<Item = &'a TheoremReport>, matches: impl Fn(&str) -> bool) -> Tally {
    let mut t = Tally { pass: 0, fail: Vec::new(), skipped: 0 };
    for r in reports {
        for c in r.checks.iter().filter(|c| matches(&c.id)) {
            match c.status {
                Status::Pass => t.pass += 1,
                Status::Skipped => t.skipped += 1,
                Status::Fail => t.fail.push(format!("{} {} {}", r.subject, c.id, c.witness)),
            }
        }
    }
    t
}

fn tally_line(t: &Tally) -> String {
    let first = t.fail.first().map(|f| format!("; first failure {f}")).unwrap_or_default();
    format!("{} pass, {} fail, {} skipped{first}", t.pass, t.fail.len(), t.skipped)
}

struct Corpus {
    report: CorpusReport,
    cut: BTreeSet<String>,
    sizes: Vec<(String, usize)>,
    took: Duration,
}

fn corpus() -> Corpus {
    let spec = CorpusSpec::default();
    let start = Instant::now();
    let report = run_corpus(&spec);
    let took = start.elapsed();
    let mut cut = BTreeSet::new();
    let mut sizes = Vec::new();
    for e in expand(&spec).into_iter().flatten() {
        if has_cut_vertex(e.graph.graph()) {
            cut.insert(e.name.clone());
        }
        sizes.push((e.name, e.graph.len()));
    }
    Corpus { report, cut, sizes, took }
}

fn criterion_contact(c: &Corpus) -> Outcome {
    let n = c.report.reports().count();
    let t = tally(c.report.reports(), |id| id == "a.contact-acyclic" || id == "f.contact-graph-connected");
    let max = c.sizes.iter().map(|s| s.1).max().unwrap_or(0);
    let unverified = c.report.entries.len() - n;
    outcome(
        n >= 50 && unverified == 0 && t.fail.is_empty() && t.skipped == 0 && c.took < Duration::from_secs(600) && max <= 200,
        format!("{n} graphs up to {max} vertices, corpus run {:.2?}; {}", c.took, tally_line(&t)),
    )
}

fn criterion_crossing(c: &Corpus) -> Outcome {
    let t = tally(c.report.reports(), |id| id == "b.crossing-model" || id == "f.crossing-graph-iff-2-connected");
    outcome(
        c.cut.len() >= 10 && t.fail.is_empty() && t.skipped == 0,
        format!("{} graphs with cut vertices; {}", c.cut.len(), tally_line(&t)),
    )
}

fn criterion_relative(c: &Corpus) -> Outcome {
    let ids = |id: &str| {
        ["canonical-star", "whole"].iter().any(|f| {
            id == format!("c.{f}.relcont-model") || id == format!("c.{f}.local-homology") || id == format!("c.{f}.local-connected")
        })
    };
    let two_connected = c.report.reports().filter(|r| !c.cut.contains(&r.subject));
    let t = tally(two_connected, ids);
    let graphs = c.report.reports().filter(|r| !c.cut.contains(&r.subject)).count();
    outcome(
        t.fail.is_empty() && t.skipped == 0 && t.pass == graphs * 6,
        format!("{graphs} 2-connected graphs; {}", tally_line(&t)),
    )
}

fn criterion_skewering(c: &Corpus) -> Outcome {
    let t = tally(c.report.reports(), |id| id.starts_with("d.") && id.ends_with(".skewering"));
    outcome(t.fail.is_empty() && t.pass > 0, tally_line(&t))
}

fn criterion_axioms(c: &Corpus) -> Outcome {
    let t = tally(c.report.reports(), |id| id.starts_with("e."));
    let small = c.sizes.iter().filter(|s| s.1 <= 30).count();
    let brute = tally(c.report.reports(), |id| id == "e.prism-brute-force");
    outcome(
        t.fail.is_empty() && brute.pass == small && t.skipped == c.sizes.len() - small,
        format!("{}; prism brute force on {} graphs with at most 30 vertices", tally_line(&t), brute.pass),
    )
}

/// Rank over the field with `p` elements, or over the rationals when `p == 0`.
fn rank(m: &IntegerMatrix, p: i128) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .to_dense()
        .iter()
        .map(|r| r.iter().map(|x| i128::try_from(x.clone()).expect("small entries")).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let norm = |x: i128| if p == 0 { x } else { x.rem_euclid(p) };
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| norm(a[i][c]) != 0) else { continue };
        a.swap(r, pr);
        let piv = norm(a[r][c]);
        for i in 0..rows {
            let f = norm(a[i][c]);
            if i == r || f == 0 {
                continue;
            }
            let pivot_row = a[r].clone();
            for (x, &y) in a[i].iter_mut().zip(&pivot_row) {
                *x = norm(piv * *x - f * y);
            }
            if p == 0 {
                let g = a[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    a[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn simplex_boundary(k: usize) -> SimplicialComplex {
    let all: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
    SimplicialComplex::from_faces((0..=k).map(|skip| all.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect::<Vec<_>>()))
}

fn rp2() -> SimplicialComplex {
    let faces = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]];
    SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
}

fn criterion_homology() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &mut dyn FnMut() -> bool| {
        let s = Instant::now();
        let r = f();
        slowest = slowest.max(s.elapsed());
        r
    };
    for k in 1..=5 {
        let sphere = timed(&mut || {
            let h = homology(&simplex_boundary(k), true).expect("sphere homology");
            h.groups.iter().enumerate().all(|(d, g)| g.torsion.is_empty() && g.betti == usize::from(d == k - 1))
                && h.groups.len() == k
        });
        if !sphere {
            ok = false;
            notes.push(format!("boundary of the {k}-simplex"));
        }
    }
    let rp = timed(&mut || {
        let k = rp2();
        let ds = boundary_matrices(&k, 2).expect("boundaries");
        let n1 = ds[1].cols();
        let b1 = |p| n1 - rank(&ds[1], p) - rank(&ds[2], p);
        let h = homology(&k, false).expect("homology");
        b1(0) == 0 && b1(2) == 1 && b1(3) == 0 && h.groups[1].torsion == vec![BigInt::from(2)] && h.groups[1].betti == 0
    });
    if !rp {
        ok = false;
        notes.push("projective plane".into());
    }
    let mut complexes = 0;
    let spec = CorpusSpec::default();
    for e in expand(&spec).into_iter().flatten() {
        for kind in [HyperplaneComplexKind::Contact, HyperplaneComplexKind::Crossing, HyperplaneComplexKind::Contiguity] {
            let Ok(k) = hyperplane_complex(&e.graph, kind) else { continue };
            complexes += 1;
            let same = timed(&mut || match (euler_characteristic(&k), homology(&k, false)) {
                (Ok(chi), Ok(h)) => chi == h.euler_characteristic(),
                _ => false,
            });
            if !same {
                ok = false;
                notes.push(format!("euler characteristic of {kind:?} on {}", e.name));
            }
        }
    }
    outcome(
        ok && slowest < Duration::from_secs(1),
        format!(
            "spheres k<=5, projective plane H1 = Z/2 (rational rank 0, F2 rank 1), euler characteristic on {complexes} corpus complexes; slowest {slowest:.2?}{}",
            if notes.is_empty() { String::new() } else { format!("; failures {}", notes.join(", ")) }
        ),
    )
}

fn subsets(n: usize) -> Vec<VertexSet> {
    (1u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn conj(p: &GPPresentation, g: &NormalForm, y: &NormalForm) -> NormalForm {
    multiply(p, &multiply(p, g, y).expect("product"), &invert(p, g)).expect("product")
}

/// Both inclusions on exponent-bounded elements: the computed conjugate of
/// `<Ξ>` lies in both inputs, and every sampled element of the first input
/// that lies in the second lies in the computed one.
fn intersection_oracle(p: &GPPresentation, g: &NormalForm, l1: &VertexSet, h: &NormalForm, l2: &VertexSet) -> Result<(), String> {
    let (q, xi) = conjugate_parabolic_intersection(p, g, l1, h, l2).map_err(|e| e.to_string())?;
    let fmt = |x: &NormalForm| p.format(x);
    let member = |x: &NormalForm, c: &NormalForm, l: &VertexSet| in_conjugate(p, x, c, l).map_err(|e| e.to_string());
    for y in bounded_elements(p, &xi, 2, 2) {
        let x = conj(p, &q, &y);
        if !member(&x, g, l1)? || !member(&x, h, l2)? {
            return Err(format!("{} escapes an input conjugate", fmt(&x)));
        }
    }
    for y in bounded_elements(p, l1, 2, 2) {
        let x = conj(p, g, &y);
        if member(&x, h, l2)? && !member(&x, &q, &xi)? {
            return Err(format!("{} missing from the computed intersection", fmt(&x)));
        }
    }
    Ok(())
}

fn ball_presentations() -> Vec<(&'static str, GPPresentation)> {
    let p = |g: Graph, o: Vec<u64>| GPPresentation::new(g, o).expect("presentation");
    vec![
        ("P3 orders 2,3,2", p(Graph::path(3), vec![2, 3, 2])),
        ("C4 order 2", p(Graph::cycle(4), vec![2; 4])),
        ("C5 order 2", p(Graph::cycle(5), vec![2; 5])),
        ("P4 orders 2,3,2,3", p(Graph::path(4), vec![2, 3, 2, 3])),
        ("K3 order 3", p(Graph::complete(3), vec![3; 3])),
        ("two points order 2", p(Graph::new(&["a", "b"], &[]).expect("graph"), vec![2, 2])),
    ]
}

fn criterion_graph_products() -> Outcome {
    let pres = [
        ("A(P4)", GPPresentation::raag(Graph::path(4))),
        ("A(C5)", GPPresentation::raag(Graph::cycle(5))),
        ("(2,3,2)", GPPresentation::new(Graph::path(3), vec![2, 3, 2]).expect("presentation")),
    ];
    let mut instances = 0;
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, p) in &pres {
        let elems = bounded_elements(p, &p.graph().all_vertices(), 3, 2);
        let sets = subsets(p.graph().len());
        for _ in 0..400 {
            let g = &elems[rng.gen_range(0..elems.len())];
            let h = &elems[rng.gen_range(0..elems.len())];
            let l1 = &sets[rng.gen_range(0..sets.len())];
            let l2 = &sets[rng.gen_range(0..sets.len())];
            instances += 1;
            if let Err(e) = intersection_oracle(p, g, l1, h, l2) {
                failures.push(format!("{name}: g={} h={} :: {e}", p.format(g), p.format(h)));
            }
        }
    }
    let c4 = GPPresentation::raag(Graph::cycle(4));
    let mut single = true;
    for radius in 0..=3 {
        match cic_fragment(&c4, &SupportFamily::MaximalJoins, radius, 3, 1) {
            Ok(f) => single &= f.vertices.len() == 1 && f.complex(&c4).vertex_count() == 1,
            Err(e) => {
                single = false;
                failures.push(format!("A(C4) fragment radius {radius}: {e}"));
            }
        }
    }
    let mut balls = 0;
    for (name, p) in ball_presentations() {
        match qm_ball(&p, 4).and_then(|b| verify_ball(&p, &b)) {
            Ok(r) if r.passed() => balls += 1,
            Ok(r) => failures.push(format!("ball {name}: {r:?}")),
            Err(e) => failures.push(format!("ball {name}: {e}")),
        }
    }
    outcome(
        instances >= 1000 && failures.is_empty() && single && balls >= 5,
        format!(
            "{instances} intersection instances, A(C4) fragment single vertex at radii 0..=3: {single}, {balls} balls of radius 4 pass{}",
            failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_not_reproduced() -> Outcome {
    outcome(
        true,
        "not reproduced: hyperbolicity and quasi-tree constants; homotopy equivalences beyond homology and component counts; \
         statements about infinite complexes beyond wedge-stable signatures and finite labelled fragments",
    )
}

fn main() {
    let mut all = true;
    let second = Some(Duration::from_secs(1));
    all &= run(1, "join verdict for C4 and C5", second, criterion_raag);
    all &= run(2, "contiguity complex of P3xP3 is the tetrahedron 2-skeleton", second, criterion_contiguity);
    let c = corpus();
    all &= run(3, "contact complexes connected and acyclic", None, || criterion_contact(&c));
    all &= run(4, "crossing complex matches the block model", None, || criterion_crossing(&c));
    all &= run(5, "relative contact model and local complexes", None, || criterion_relative(&c));
    all &= run(6, "skewering matches relative contact", None, || criterion_skewering(&c));
    all &= run(7, "axiom battery", None, || criterion_axioms(&c));
    all &= run(8, "homology engine", None, criterion_homology);
    all &= run(9, "graph-product calculus", Some(Duration::from_secs(300)), criterion_graph_products);
    all &= run(10, "scope", None, criterion_not_reproduced);
    println!("acceptance {}", if all { "pass" } else { "fail" });
    if !all {
        std::process::exit(1);
    }
}
