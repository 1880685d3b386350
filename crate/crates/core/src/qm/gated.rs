//! Gates, projections and gated hulls.
//!
//! A vertex set `Y` is gated when every vertex `x` has a gate `g ∈ Y` with
//! `d(x, y) = d(x, g) + d(g, y)` for all `y ∈ Y`. The fast test used here is
//! connectivity plus clique absorption plus local convexity; the direct
//! definition is available as [`QMGraph::is_gated_direct`] for cross-checks.

use std::collections::BTreeSet;
use std::fmt;

use super::{QMGraph, QmError};
use crate::graph::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GatedViolation {
    Empty,
    Disconnected { components: Vec<VertexSet> },
    /// A maximal clique meets the set in at least an edge but is not inside it.
    CliqueNotAbsorbed { clique: VertexSet },
    /// `u - v - w` inside the set, `x` outside adjacent to both `u` and `w`.
    SquareNotClosed { cycle: [Vertex; 4] },
    /// Direct definition: `x` has no gate; `nearest` lists the closest points.
    NoGate { x: Vertex, nearest: Vec<Vertex> },
}

impl fmt::Display for GatedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GatedViolation::Empty => write!(f, "empty set"),
            GatedViolation::Disconnected { components } => {
                write!(f, "disconnected into {} components", components.len())
            }
            GatedViolation::CliqueNotAbsorbed { clique } => write!(f, "clique {clique:?} not absorbed"),
            GatedViolation::SquareNotClosed { cycle } => write!(f, "4-cycle {cycle:?} not closed"),
            GatedViolation::NoGate { x, nearest } => write!(f, "vertex {x} has no gate (nearest {nearest:?})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GatedVerdict {
    pub gated: bool,
    pub witness: Option<GatedViolation>,
}

impl GatedVerdict {
    fn ok() -> Self {
        GatedVerdict { gated: true, witness: None }
    }

    fn fail(v: GatedViolation) -> Self {
        GatedVerdict { gated: false, witness: Some(v) }
    }
}

impl QMGraph {
    pub fn is_gated(&self, set: &VertexSet) -> GatedVerdict {
        if set.is_empty() {
            return GatedVerdict::fail(GatedViolation::Empty);
        }
        let components = self.graph().components_within(set);
        if components.len() > 1 {
            return GatedVerdict::fail(GatedViolation::Disconnected { components });
        }
        if let Some(c) = self.unabsorbed_clique(set) {
            return GatedVerdict::fail(GatedViolation::CliqueNotAbsorbed { clique: c.clone() });
        }
        if let Some(cycle) = self.open_square(set) {
            return GatedVerdict::fail(GatedViolation::SquareNotClosed { cycle });
        }
        GatedVerdict::ok()
    }

    /// Gatedness straight from the definition, `O(n |Y|)`.
    pub fn is_gated_direct(&self, set: &VertexSet) -> GatedVerdict {
        if set.is_empty() {
            return GatedVerdict::fail(GatedViolation::Empty);
        }
        for x in self.graph().vertices() {
            if let Err(v) = self.gate_checked(x, set) {
                return GatedVerdict::fail(v);
            }
        }
        GatedVerdict::ok()
    }

    fn unabsorbed_clique(&self, set: &VertexSet) -> Option<&VertexSet> {
        self.maximal_cliques()
            .iter()
            .find(|c| !c.is_subset(set) && c.intersection(set).nth(1).is_some())
    }

    fn open_square(&self, set: &VertexSet) -> Option<[Vertex; 4]> {
        let g = self.graph();
        for x in g.vertices().filter(|x| !set.contains(x)) {
            let inside: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|w| set.contains(w)).collect();
            for (i, &u) in inside.iter().enumerate() {
                for &w in &inside[i + 1..] {
                    if let Some(&v) = g
                        .neighbors(u)
                        .iter()
                        .find(|&&v| v != x && v != w && set.contains(&v) && g.adjacent(v, w))
                    {
                        return Some([u, v, w, x]);
                    }
                }
            }
        }
        None
    }

    fn nearest(&self, x: Vertex, set: &VertexSet) -> (usize, Vec<Vertex>) {
        let best = set.iter().map(|&y| self.dist(x, y)).min().unwrap_or(usize::MAX);
        let at: Vec<Vertex> = set.iter().copied().filter(|&y| self.dist(x, y) == best).collect();
        (best, at)
    }

    fn gate_checked(&self, x: Vertex, set: &VertexSet) -> Result<Vertex, GatedViolation> {
        let (d, nearest) = self.nearest(x, set);
        if nearest.len() != 1 {
            return Err(GatedViolation::NoGate { x, nearest });
        }
        let g = nearest[0];
        if set.iter().all(|&y| self.dist(x, y) == d + self.dist(g, y)) {
            Ok(g)
        } else {
            Err(GatedViolation::NoGate { x, nearest })
        }
    }

    /// The gate of `x` in `set`; fails with a witness when `x` has none.
    pub fn gate(&self, x: Vertex, set: &VertexSet) -> Result<Vertex, QmError> {
        self.check_vertex(x)?;
        if set.is_empty() {
            return Err(QmError::EmptySet);
        }
        self.gate_checked(x, set).map_err(QmError::NotGated)
    }

    /// Nearest point of `set`, lowest index on ties. Only meaningful for
    /// gated sets, where it coincides with [`QMGraph::gate`].
    pub fn nearest_point(&self, x: Vertex, set: &VertexSet) -> Vertex {
        *set.iter().min_by_key(|&&y| self.dist(x, y)).expect("non-empty set")
    }

    /// Projection of `from` onto `onto`: the set of gates.
    pub fn gate_image(&self, from: &VertexSet, onto: &VertexSet) -> Result<VertexSet, QmError> {
        for s in [from, onto] {
            let v = self.is_gated(s);
            if let Some(w) = v.witness {
                return Err(QmError::NotGated(w));
            }
        }
        from.iter().map(|&y| self.gate(y, onto)).collect()
    }

    /// Smallest gated set containing `seed`.
    ///
    /// Built as the union of intervals from the least seed vertex to every
    /// other seed, then closed under clique absorption and square completion.
    /// Every vertex added is forced by one of those rules, so the result is
    /// contained in every gated superset; it is certified gated before return.
    pub fn gated_hull(&self, seed: &VertexSet) -> Result<VertexSet, QmError> {
        let first = *seed.iter().next().ok_or(QmError::EmptySet)?;
        for &s in seed {
            self.check_vertex(s)?;
        }
        let mut hull: VertexSet = BTreeSet::new();
        for &s in seed {
            hull.extend(self.interval(first, s));
        }
        loop {
            let mut grown = false;
            while let Some(c) = self.unabsorbed_clique(&hull) {
                hull.extend(c.iter().copied());
                grown = true;
            }
            while let Some([_, _, _, x]) = self.open_square(&hull) {
                hull.insert(x);
                grown = true;
            }
            if !grown {
                break;
            }
        }
        match self.is_gated(&hull).witness {
            None => Ok(hull),
            Some(w) => Err(QmError::NotGated(w)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::qm::generate;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn gate_examples() {
        let p3 = QMGraph::new(Graph::path(3)).unwrap();
        assert_eq!(p3.gate(0, &set(&[1, 2])).unwrap(), 1);
        assert_eq!(p3.gate(2, &set(&[1, 2])).unwrap(), 2);
        let c4 = QMGraph::new(Graph::cycle(4)).unwrap();
        assert!(matches!(c4.gate(0, &set(&[1, 3])), Err(QmError::NotGated(_))));

        // K2 x K3: vertex (i, j) has index 3 i + j
        let p = generate::hamming(&[2, 3]).unwrap();
        let row0 = set(&[0, 1, 2]);
        for j in 0..3 {
            assert_eq!(p.gate(3 + j, &row0).unwrap(), j);
        }
    }

    #[test]
    fn gate_image_examples() {
        let p4 = QMGraph::new(Graph::path(4)).unwrap();
        assert_eq!(p4.gate_image(&set(&[0]), &set(&[2, 3])).unwrap(), set(&[2]));
        let p = generate::hamming(&[2, 3]).unwrap();
        assert_eq!(p.gate_image(&set(&[0, 1, 2]), &set(&[3, 4, 5])).unwrap(), set(&[3, 4, 5]));
        assert_eq!(p.gate_image(&set(&[1]), &set(&[0, 1, 2])).unwrap(), set(&[1]));
        assert!(p.gate_image(&set(&[0, 1]), &set(&[0, 1, 2])).is_err());
    }

    #[test]
    fn gatedness_examples() {
        let k3 = QMGraph::new(Graph::complete(3)).unwrap();
        let v = k3.is_gated(&set(&[0, 1]));
        assert_eq!(v.witness, Some(GatedViolation::CliqueNotAbsorbed { clique: set(&[0, 1, 2]) }));
        let c4 = QMGraph::new(Graph::cycle(4)).unwrap();
        assert!(c4.is_gated(&set(&[0, 1])).gated);
        assert!(matches!(
            c4.is_gated(&set(&[0, 2])).witness,
            Some(GatedViolation::Disconnected { .. })
        ));
        assert!(matches!(
            c4.is_gated(&set(&[0, 1, 2])).witness,
            Some(GatedViolation::SquareNotClosed { .. })
        ));
        for s in [set(&[0, 1]), set(&[0, 2]), set(&[0, 1, 2]), set(&[0, 1, 2, 3])] {
            assert_eq!(c4.is_gated(&s).gated, c4.is_gated_direct(&s).gated);
        }
    }

    #[test]
    fn hull_examples() {
        let c4 = QMGraph::new(Graph::cycle(4)).unwrap();
        assert_eq!(c4.gated_hull(&set(&[0, 2])).unwrap(), set(&[0, 1, 2, 3]));
        let k3 = QMGraph::new(Graph::complete(3)).unwrap();
        assert_eq!(k3.gated_hull(&set(&[0, 1])).unwrap(), set(&[0, 1, 2]));
        let p4 = QMGraph::new(Graph::path(4)).unwrap();
        assert_eq!(p4.gated_hull(&set(&[1, 2])).unwrap(), set(&[1, 2]));
        assert_eq!(p4.gated_hull(&VertexSet::new()), Err(QmError::EmptySet));
    }
}
