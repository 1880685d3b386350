//! Prisms and the product decomposition of carrier intersections.
//!
//! For pairwise transverse hyperplanes `𝒥` and `o ∈ ⋂ N(J)`, the map
//! `x ↦ (gate(x, F), gate(x, C_J)...)` is an isomorphism
//! `⋂ N(J) ≅ F × ∏ C_J`, where `F` is the intersection of the fibres through
//! `o` and `C_J` the clique of `J` at `o`. Every prism in this module is
//! certified through that map, edge by edge.

use std::collections::{BTreeMap, BTreeSet};

use super::{HyperplaneId, QMGraph, QmError};
use crate::graph::{Graph, Vertex, VertexSet};

/// A product of maximal cliques, described at a base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prism {
    pub base: Vertex,
    pub vertices: VertexSet,
    /// Factor cliques through `base`, one per crossing hyperplane.
    pub factors: Vec<VertexSet>,
    /// Hyperplanes crossing the prism, sorted; `factors[i]` belongs to `hyperplanes[i]`.
    pub hyperplanes: Vec<HyperplaneId>,
}

impl Prism {
    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    /// Coordinates of a vertex: its gate in each factor clique.
    pub fn coordinates(&self, x: &QMGraph, v: Vertex) -> Vec<Vertex> {
        self.factors.iter().map(|c| x.nearest_point(v, c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierDecomposition {
    pub base: Vertex,
    pub hyperplanes: Vec<HyperplaneId>,
    /// `⋂ N(J)`.
    pub intersection: VertexSet,
    /// Intersection of the fibres through `base`.
    pub fibre: VertexSet,
    pub cliques: Vec<VertexSet>,
    /// `x ↦ (F-coordinate, clique coordinates)`, a verified isomorphism.
    pub coordinates: BTreeMap<Vertex, (Vertex, Vec<Vertex>)>,
}

impl QMGraph {
    /// Product decomposition of `⋂_{J ∈ hs} N(J)` based at `o`, with the
    /// isomorphism checked on every vertex pair.
    pub fn carrier_intersection_decomposition(
        &self,
        hs: &[HyperplaneId],
        o: Vertex,
    ) -> Result<CarrierDecomposition, QmError> {
        self.check_vertex(o)?;
        let mut hs: Vec<HyperplaneId> = hs.to_vec();
        hs.sort_unstable();
        hs.dedup();
        if hs.is_empty() {
            return Err(QmError::EmptySet);
        }
        for &j in &hs {
            if !self.hyperplane(j)?.carrier.contains(&o) {
                return Err(QmError::OutsideCarrier { vertex: o, hyperplane: j });
            }
        }
        for (i, &j) in hs.iter().enumerate() {
            for &k in &hs[i + 1..] {
                if !self.transverse(j, k) {
                    return Err(QmError::NotTransverse(j, k));
                }
            }
        }
        let mut intersection = self.hyperplanes[hs[0].0].carrier.clone();
        let mut fibre = self.fibre_through(hs[0], o).expect("o in carrier").clone();
        for &j in &hs[1..] {
            intersection.retain(|v| self.hyperplanes[j.0].carrier.contains(v));
            let f = self.fibre_through(j, o).expect("o in carrier");
            fibre.retain(|v| f.contains(v));
        }
        let cliques: Vec<VertexSet> = hs.iter().map(|&j| self.clique_of(j, o)).collect();

        let mut coordinates = BTreeMap::new();
        let mut image: BTreeMap<(Vertex, Vec<Vertex>), Vertex> = BTreeMap::new();
        for &x in &intersection {
            let f = self.gate(x, &fibre)?;
            let cs = cliques.iter().map(|c| self.gate(x, c)).collect::<Result<Vec<_>, _>>()?;
            if let Some(&y) = image.get(&(f, cs.clone())) {
                return Err(QmError::Decomposition(format!("vertices {y} and {x} share coordinates")));
            }
            image.insert((f, cs.clone()), x);
            coordinates.insert(x, (f, cs));
        }
        let expected = fibre.len() * cliques.iter().map(BTreeSet::len).product::<usize>();
        if coordinates.len() != expected {
            return Err(QmError::Decomposition(format!(
                "{} vertices do not fill a product of size {expected}",
                coordinates.len()
            )));
        }
        let g = self.graph();
        let pts: Vec<Vertex> = intersection.iter().copied().collect();
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                let (fx, cx) = &coordinates[&x];
                let (fy, cy) = &coordinates[&y];
                let diffs = cx.iter().zip(cy).filter(|(a, b)| a != b).count() + usize::from(fx != fy);
                let product_edge = diffs == 1 && (fx == fy || g.adjacent(*fx, *fy));
                if product_edge != g.adjacent(x, y) {
                    return Err(QmError::Decomposition(format!("adjacency of {x} and {y} not preserved")));
                }
            }
        }
        Ok(CarrierDecomposition { base: o, hyperplanes: hs, intersection, fibre, cliques, coordinates })
    }

    fn prism_at(&self, base: Vertex, vertices: VertexSet, hs: Vec<HyperplaneId>) -> Prism {
        let factors = hs.iter().map(|&j| self.clique_of(j, base)).collect();
        Prism { base, vertices, factors, hyperplanes: hs }
    }

    /// The prism based at `o` spanned by the cliques of `hs` at `o`:
    /// the vertices of `⋂ N(J)` whose fibre coordinate is `o`.
    pub fn prism_spanned(&self, o: Vertex, hs: &[HyperplaneId]) -> Result<Prism, QmError> {
        let d = self.carrier_intersection_decomposition(hs, o)?;
        let vertices: VertexSet = d.coordinates.iter().filter(|(_, (f, _))| *f == o).map(|(&x, _)| x).collect();
        let base = *vertices.iter().next().expect("o itself");
        Ok(self.prism_at(base, vertices, d.hyperplanes))
    }

    /// One prism per maximal set of pairwise transverse hyperplanes.
    pub fn maximal_prisms(&self) -> Result<&[Prism], QmError> {
        self.maximal_prisms
            .get_or_init(|| self.compute_maximal_prisms())
            .as_deref()
            .map_err(Clone::clone)
    }

    fn compute_maximal_prisms(&self) -> Result<Vec<Prism>, QmError> {
        self.require_valid()?;
        let mut out = Vec::new();
        for family in self.transversality_graph().maximal_cliques() {
            let hs: Vec<HyperplaneId> = family.into_iter().map(HyperplaneId).collect();
            let mut meet = self.hyperplanes[hs[0].0].carrier.clone();
            for &j in &hs[1..] {
                meet.retain(|v| self.hyperplanes[j.0].carrier.contains(v));
            }
            let o = *meet
                .iter()
                .next()
                .ok_or_else(|| QmError::Decomposition(format!("carriers of {hs:?} do not meet")))?;
            let d = self.carrier_intersection_decomposition(&hs, o)?;
            if d.fibre.len() != 1 {
                return Err(QmError::Decomposition(format!("maximal family {hs:?} has a non-trivial fibre")));
            }
            out.push(self.prism_at(o, d.intersection, d.hyperplanes));
        }
        Ok(out)
    }

    /// Every prism with at least one factor, deduplicated by vertex set and
    /// sorted by it. Built from each base vertex and each pairwise transverse
    /// set of hyperplanes at that vertex.
    pub fn all_prisms(&self) -> Result<&[Prism], QmError> {
        self.all_prisms
            .get_or_init(|| self.compute_all_prisms())
            .as_deref()
            .map_err(Clone::clone)
    }

    fn compute_all_prisms(&self) -> Result<Vec<Prism>, QmError> {
        self.require_valid()?;
        let mut found: BTreeMap<VertexSet, Vec<HyperplaneId>> = BTreeMap::new();
        for o in self.graph().vertices() {
            let local = self.hyperplanes_at(o);
            let mut stack: Vec<(Vec<HyperplaneId>, usize)> = vec![(Vec::new(), 0)];
            while let Some((chosen, from)) = stack.pop() {
                for (i, &j) in local.iter().enumerate().skip(from) {
                    if chosen.iter().all(|&k| self.transverse(j, k)) {
                        let mut next = chosen.clone();
                        next.push(j);
                        let p = self.prism_spanned(o, &next)?;
                        found.entry(p.vertices).or_insert_with(|| next.clone());
                        stack.push((next, i + 1));
                    }
                }
            }
        }
        Ok(found
            .into_iter()
            .map(|(vs, hs)| {
                let base = *vs.iter().next().expect("non-empty prism");
                self.prism_at(base, vs, hs)
            })
            .collect())
    }

    /// All prisms containing the maximal clique `c`.
    pub fn prisms_through(&self, c: &VertexSet) -> Result<Vec<&Prism>, QmError> {
        if !self.is_maximal_clique(c) {
            return Err(QmError::NotAClique(c.clone()));
        }
        Ok(self.all_prisms()?.iter().filter(|p| c.is_subset(&p.vertices)).collect())
    }

    /// For each maximal clique `C`, the gated hull of the union of all prisms
    /// containing `C`; deduplicated and sorted.
    pub fn canonical_star_covering(&self) -> Result<Vec<VertexSet>, QmError> {
        let mut out = BTreeSet::new();
        for c in self.maximal_cliques() {
            let mut union = c.clone();
            if c.len() >= 2 {
                for p in self.prisms_through(c)? {
                    union.extend(p.vertices.iter().copied());
                }
            }
            out.insert(self.gated_hull(&union)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Whether the induced subgraph on `p` is isomorphic to the product of
    /// its factor cliques, through the coordinate map.
    pub fn verify_prism(&self, p: &Prism) -> bool {
        let mut seen = BTreeSet::new();
        for &v in &p.vertices {
            if !seen.insert(p.coordinates(self, v)) {
                return false;
            }
        }
        if seen.len() != p.factors.iter().map(BTreeSet::len).product::<usize>() {
            return false;
        }
        let pts: Vec<Vertex> = p.vertices.iter().copied().collect();
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                let (cx, cy) = (p.coordinates(self, x), p.coordinates(self, y));
                let diffs = cx.iter().zip(&cy).filter(|(a, b)| a != b).count();
                if (diffs == 1) != self.graph().adjacent(x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal prisms found without hyperplanes: from every vertex, grow sets
    /// of maximal cliques through it, take gated hulls, and keep those hulls
    /// whose induced subgraph is isomorphic to the product of the chosen
    /// cliques. Exponential; intended for graphs of at most ~30 vertices.
    pub fn brute_force_maximal_prisms(&self, iso_guard: usize) -> Result<Vec<VertexSet>, QmError> {
        let mut prisms: BTreeSet<VertexSet> = BTreeSet::new();
        for o in self.graph().vertices() {
            let at: Vec<&VertexSet> = self.cliques_at(o);
            let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
            while let Some((chosen, from)) = stack.pop() {
                for i in from..at.len() {
                    let mut next = chosen.clone();
                    next.push(i);
                    let seed: VertexSet = next.iter().flat_map(|&k| at[k].iter().copied()).collect();
                    let hull = self.gated_hull(&seed)?;
                    let sizes: Vec<usize> = next.iter().map(|&k| at[k].len()).collect();
                    if hull.len() != sizes.iter().product::<usize>() {
                        continue;
                    }
                    let model = Graph::cartesian_product(&sizes.iter().map(|&s| Graph::complete(s)).collect::<Vec<_>>())?;
                    let (sub, _) = self.graph().induced_subgraph(&hull);
                    if sub.are_isomorphic(&model, iso_guard)?.is_some() {
                        prisms.insert(hull);
                        stack.push((next, i + 1));
                    }
                }
            }
        }
        let all: Vec<VertexSet> = prisms.into_iter().collect();
        Ok(all
            .iter()
            .filter(|p| !all.iter().any(|q| q.len() > p.len() && p.is_subset(q)))
            .cloned()
            .collect())
    }
}
