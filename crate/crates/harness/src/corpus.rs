//! Deterministic corpora of quasi-median graphs and their aggregate reports.

use hypercx_core::graph::Graph;
use hypercx_core::qm::generate::{self, RandomSpec};
use hypercx_core::{QMGraph, QmError};
use rayon::prelude::*;

use crate::report::{Status, TheoremReport};
use crate::verify::{verify_graph, FamilyChoice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    /// Number of seeded random amalgams.
    pub random_count: usize,
    pub max_vertices: usize,
    /// Include the fixed list (paths, stars, triangle chains, Hamming graphs, products, trees).
    pub include_fixed: bool,
    pub families: Vec<FamilyChoice>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 0,
            random_count: 36,
            max_vertices: 200,
            include_fixed: true,
            families: vec![FamilyChoice::CanonicalStar, FamilyChoice::Whole, FamilyChoice::MaximalPrisms],
        }
    }
}

impl CorpusSpec {
    pub fn empty() -> Self {
        CorpusSpec { random_count: 0, include_fixed: false, ..CorpusSpec::default() }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: QMGraph,
}

fn fixed_graphs() -> Vec<(String, Result<QMGraph, QmError>)> {
    let q = |g: Graph| QMGraph::new(g);
    let mut out: Vec<(String, Result<QMGraph, QmError>)> = Vec::new();
    for n in 2..=6 {
        out.push((format!("path-{n}"), q(Graph::path(n))));
    }
    for k in [3, 4] {
        let edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
        out.push((format!("star-{k}"), Graph::from_index_edges((0..=k).map(|i| i.to_string()).collect(), &edges).map_err(QmError::from).and_then(q)));
    }
    for k in 1..=4 {
        out.push((format!("triangle-chain-{k}"), generate::triangle_chain(k)));
    }
    for sizes in [&[2][..], &[3], &[4], &[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 3, 2], &[3, 3, 2]] {
        let name = sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("x");
        out.push((format!("hamming-{name}"), generate::hamming(sizes)));
    }
    let path = |n: usize| QMGraph::new(Graph::path(n)).expect("paths are connected");
    let products: [(&str, Vec<QMGraph>); 6] = [
        ("p3-square-p3", vec![path(3), path(3)]),
        ("ladder-2x4", vec![path(2), path(4)]),
        ("p3-square-k3", vec![path(3), generate::hamming(&[3]).expect("K3")]),
        ("k2-square-p5", vec![path(2), path(5)]),
        ("grid-6x6x5", vec![path(6), path(6), path(5)]),
        ("k4-square-k4-square-k3", vec![generate::hamming(&[4]).expect("K4"), generate::hamming(&[4]).expect("K4"), generate::hamming(&[3]).expect("K3")]),
    ];
    for (name, parts) in products {
        let refs: Vec<&QMGraph> = parts.iter().collect();
        out.push((name.to_string(), generate::product(&refs)));
    }
    for (seed, n) in [(1, 8), (2, 12), (3, 20)] {
        out.push((format!("tree-{n}-s{seed}"), generate::random_tree(n, seed)));
    }
    let k3 = generate::hamming(&[3]).expect("K3");
    let c4 = generate::hamming(&[2, 2]).expect("C4");
    out.push(("bowtie".into(), generate::amalgam(&k3, &k3, &[(0, 0)])));
    out.push(("square-triangle".into(), generate::amalgam(&c4, &k3, &[(0, 0)])));
    out
}

fn random_spec(spec: &CorpusSpec, i: usize) -> RandomSpec {
    let glue_dims = match i % 3 {
        0 => vec![0, 1, 2],
        1 => vec![1, 2],
        _ => vec![0, 1],
    };
    RandomSpec {
        seed: spec.seed.wrapping_mul(1_000_003).wrapping_add(i as u64),
        // later batches run longer schedules, reaching the vertex bound
        steps: 3 + i % 10 + 8 * (i / 12),
        max_vertices: spec.max_vertices,
        max_degree: 8,
        glue_dims,
    }
}

/// Graphs of the corpus in a fixed order; failed generations carry the reason.
pub fn expand(spec: &CorpusSpec) -> Vec<Result<CorpusEntry, (String, String)>> {
    let mut named = if spec.include_fixed { fixed_graphs() } else { Vec::new() };
    for i in 0..spec.random_count {
        let r = random_spec(spec, i);
        named.push((format!("random-s{}-{i}", spec.seed), generate::random(&r)));
    }
    named
        .into_iter()
        .map(|(name, g)| match g {
            Ok(graph) if graph.len() > spec.max_vertices => Err((name, format!("{} vertices over the bound", graph.len()))),
            Ok(graph) => Ok(CorpusEntry { name, graph }),
            Err(e) => Err((name, e.to_string())),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryOutcome {
    Verified(TheoremReport),
    Skipped { name: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub seed: u64,
    pub entries: Vec<EntryOutcome>,
}

impl CorpusReport {
    pub fn reports(&self) -> impl Iterator<Item = &TheoremReport> {
        self.entries.iter().filter_map(|e| match e {
            EntryOutcome::Verified(r) => Some(r),
            EntryOutcome::Skipped { .. } => None,
        })
    }

    pub fn failure_count(&self) -> usize {
        self.reports().map(|r| r.count(Status::Fail)).sum()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }

    pub fn render(&self) -> String {
        let mut s = format!("corpus seed {} entries {}\n", self.seed, self.entries.len());
        for e in &self.entries {
            match e {
                EntryOutcome::Verified(r) => s.push_str(&r.render()),
                EntryOutcome::Skipped { name, reason } => s.push_str(&format!("subject {name}\n  skipped generation :: {reason}\n")),
            }
        }
        let total: usize = self.reports().map(|r| r.checks.len()).sum();
        s.push_str(&format!("checks {total} failures {}\n", self.failure_count()));
        s.push_str(if self.passed() { "status pass\n" } else { "status fail\n" });
        s
    }
}

/// Verifies every corpus graph, in parallel; output order is the corpus order.
pub fn run_corpus(spec: &CorpusSpec) -> CorpusReport {
    let entries = expand(spec)
        .into_par_iter()
        .map(|e| match e {
            Ok(CorpusEntry { name, graph }) => EntryOutcome::Verified(verify_graph(&name, &graph, &spec.families)),
            Err((name, reason)) => EntryOutcome::Skipped { name, reason },
        })
        .collect();
    CorpusReport { seed: spec.seed, entries }
}
