//! Quasi-median recognition.
//!
//! A pass requires the local characterisation (weakly modular, no induced
//! `K_{2,3}`, no induced `K_4 - e`) and the two metric consequences of the
//! hyperplane theory: each hyperplane separates and distances count
//! separating hyperplanes. Each check records its first violation only.

use std::fmt;

use super::{HyperplaneId, QMGraph, QmError};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InducedK23 { left: [Vertex; 2], right: [Vertex; 3] },
    InducedK4MinusEdge { non_adjacent: [Vertex; 2], common: [Vertex; 2] },
    TriangleCondition { base: Vertex, edge: [Vertex; 2] },
    QuadrangleCondition { base: Vertex, apex: Vertex, pair: [Vertex; 2] },
    NotSeparating { hyperplane: HyperplaneId },
    DistanceMismatch { pair: [Vertex; 2], distance: usize, separating: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InducedK23 { left, right } => write!(f, "induced K_2,3 on {left:?} | {right:?}"),
            Violation::InducedK4MinusEdge { non_adjacent, common } => {
                write!(f, "induced K4-e: {non_adjacent:?} non-adjacent with adjacent common neighbours {common:?}")
            }
            Violation::TriangleCondition { base, edge } => {
                write!(f, "triangle condition fails for base {base} and edge {edge:?}")
            }
            Violation::QuadrangleCondition { base, apex, pair } => {
                write!(f, "quadrangle condition fails for base {base}, apex {apex}, pair {pair:?}")
            }
            Violation::NotSeparating { hyperplane } => write!(f, "hyperplane {hyperplane} does not separate"),
            Violation::DistanceMismatch { pair, distance, separating } => write!(
                f,
                "d{pair:?} = {distance} but {separating} hyperplanes separate"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validates a connected graph.
pub fn validate_quasi_median(g: &Graph) -> Result<ValidationReport, QmError> {
    Ok(QMGraph::new(g.clone())?.validation().clone())
}

pub(super) fn validate(x: &QMGraph) -> ValidationReport {
    let checks: [fn(&QMGraph) -> Option<Violation>; 6] =
        [induced_k23, induced_k4_minus_edge, triangle_condition, quadrangle_condition, separation, distance_count];
    ValidationReport { violations: checks.iter().filter_map(|c| c(x)).collect() }
}

fn non_adjacent_pairs(g: &Graph) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    g.vertices()
        .flat_map(move |a| (a + 1..g.len()).map(move |b| (a, b)))
        .filter(move |&(a, b)| !g.adjacent(a, b))
}

fn common_neighbours(g: &Graph, a: Vertex, b: Vertex) -> Vec<Vertex> {
    g.neighbors(a).iter().copied().filter(|&w| g.adjacent(w, b)).collect()
}

fn induced_k23(x: &QMGraph) -> Option<Violation> {
    let g = x.graph();
    for (a, b) in non_adjacent_pairs(g) {
        let common = common_neighbours(g, a, b);
        for i in 0..common.len() {
            for j in i + 1..common.len() {
                if g.adjacent(common[i], common[j]) {
                    continue;
                }
                for &k in &common[j + 1..] {
                    if !g.adjacent(common[i], k) && !g.adjacent(common[j], k) {
                        return Some(Violation::InducedK23 { left: [a, b], right: [common[i], common[j], k] });
                    }
                }
            }
        }
    }
    None
}

fn induced_k4_minus_edge(x: &QMGraph) -> Option<Violation> {
    let g = x.graph();
    for (a, b) in non_adjacent_pairs(g) {
        let common = common_neighbours(g, a, b);
        for i in 0..common.len() {
            for &k in &common[i + 1..] {
                if g.adjacent(common[i], k) {
                    return Some(Violation::InducedK4MinusEdge { non_adjacent: [a, b], common: [common[i], k] });
                }
            }
        }
    }
    None
}

fn triangle_condition(x: &QMGraph) -> Option<Violation> {
    let g = x.graph();
    for u in g.vertices() {
        for &(v, w) in x.edges() {
            let k = x.dist(u, v);
            if k == 0 || x.dist(u, w) != k {
                continue;
            }
            if !common_neighbours(g, v, w).iter().any(|&z| x.dist(u, z) + 1 == k) {
                return Some(Violation::TriangleCondition { base: u, edge: [v, w] });
            }
        }
    }
    None
}

fn quadrangle_condition(x: &QMGraph) -> Option<Violation> {
    let g = x.graph();
    for u in g.vertices() {
        for z in g.vertices() {
            let dz = x.dist(u, z);
            if dz < 2 {
                continue;
            }
            let below: Vec<Vertex> = g.neighbors(z).iter().copied().filter(|&v| x.dist(u, v) + 1 == dz).collect();
            for i in 0..below.len() {
                for &w in &below[i + 1..] {
                    let v = below[i];
                    if x.dist(v, w) != 2 {
                        continue;
                    }
                    if !common_neighbours(g, v, w).iter().any(|&y| x.dist(u, y) + 2 == dz) {
                        return Some(Violation::QuadrangleCondition { base: u, apex: z, pair: [v, w] });
                    }
                }
            }
        }
    }
    None
}

fn separation(x: &QMGraph) -> Option<Violation> {
    x.hyperplanes()
        .iter()
        .find(|h| h.sectors.len() < 2)
        .map(|h| Violation::NotSeparating { hyperplane: h.id })
}

fn distance_count(x: &QMGraph) -> Option<Violation> {
    let n = x.len();
    for u in 0..n {
        for v in u + 1..n {
            let separating = x.hyperplane_ids().filter(|&j| x.separates(j, u, v)).count();
            let distance = x.dist(u, v);
            if separating != distance {
                return Some(Violation::DistanceMismatch { pair: [u, v], distance, separating });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm::generate;

    fn k23() -> Graph {
        Graph::new(
            &["a", "b", "x", "y", "z"],
            &[("a", "x"), ("a", "y"), ("a", "z"), ("b", "x"), ("b", "y"), ("b", "z")],
        )
        .unwrap()
    }

    #[test]
    fn hamming_passes() {
        let x = generate::hamming(&[2, 3, 2]).unwrap();
        assert!(x.validation().passed(), "{:?}", x.validation());
    }

    #[test]
    fn c5_fails_on_separation() {
        let r = validate_quasi_median(&Graph::cycle(5)).unwrap();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotSeparating { .. })));
    }

    #[test]
    fn forbidden_subgraphs_fail() {
        let r = validate_quasi_median(&k23()).unwrap();
        assert!(matches!(r.violations[0], Violation::InducedK23 { .. }));
        let k4e = Graph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let r = validate_quasi_median(&k4e).unwrap();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::InducedK4MinusEdge { .. })));
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::new(&["a", "b"], &[]).unwrap();
        assert!(validate_quasi_median(&g).is_err());
    }
}
