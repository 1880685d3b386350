//! Hyperplane structure of finite quasi-median graphs.
//!
//! A hyperplane is a class of the finest equivalence on edges in which the
//! three edges of a triangle are equivalent and opposite edges of every
//! 4-cycle (chorded or not) are equivalent. Everything here is computed once
//! in [`QMGraph::new`]; validation and prism enumeration are computed lazily
//! behind `OnceLock`s, so a shared `QMGraph` is safe to query concurrently.

pub mod gated;
pub mod generate;
pub mod prism;
pub mod validate;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};

pub use gated::{GatedVerdict, GatedViolation};
pub use prism::{CarrierDecomposition, Prism};
pub use validate::{validate_quasi_median, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperplaneId(pub usize);

impl fmt::Display for HyperplaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QmError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("hyperplane {0} does not belong to this graph")]
    ForeignHyperplane(HyperplaneId),
    #[error("pair classification needs two distinct hyperplanes, got {0} twice")]
    IdenticalHyperplanes(HyperplaneId),
    #[error("vertex set is not gated: {0}")]
    NotGated(GatedViolation),
    #[error("graph is not quasi-median: {0}")]
    NotQuasiMedian(String),
    #[error("vertex set {0:?} is not a maximal clique")]
    NotAClique(VertexSet),
    #[error("hyperplanes {0} and {1} are not transverse")]
    NotTransverse(HyperplaneId, HyperplaneId),
    #[error("vertex {vertex} lies outside the carrier of {hyperplane}")]
    OutsideCarrier { vertex: Vertex, hyperplane: HyperplaneId },
    #[error("empty vertex set")]
    EmptySet,
    #[error("unknown vertex #{0}")]
    UnknownVertex(Vertex),
    #[error("product decomposition failed: {0}")]
    Decomposition(String),
    #[error("gluing map is not an isomorphism of the designated subgraphs: {0}")]
    BadGluing(String),
    #[error("generator gave up: {0}")]
    Generator(String),
}

/// One hyperplane with its carrier, sectors and fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: HyperplaneId,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
    pub carrier: VertexSet,
    /// Components of the graph with the edges of this hyperplane removed.
    pub sectors: Vec<VertexSet>,
    /// Components of the carrier with the edges of this hyperplane removed.
    pub fibres: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Transverse,
    Tangent,
    Remote,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub relation: Relation,
    pub in_contact: bool,
    pub contiguous: bool,
}

#[derive(Debug)]
pub struct QMGraph {
    graph: Graph,
    edge_ids: HashMap<(Vertex, Vertex), usize>,
    edges: Vec<(Vertex, Vertex)>,
    edge_class: Vec<HyperplaneId>,
    hyperplanes: Vec<Hyperplane>,
    sector_of: Vec<Vec<u32>>,
    fibre_of: Vec<BTreeMap<Vertex, u32>>,
    dist: Vec<u32>,
    cliques: Vec<VertexSet>,
    transverse: Vec<Vec<bool>>,
    contact: Vec<Vec<bool>>,
    validation: OnceLock<ValidationReport>,
    maximal_prisms: OnceLock<Result<Vec<Prism>, QmError>>,
    all_prisms: OnceLock<Result<Vec<Prism>, QmError>>,
}

impl Clone for QMGraph {
    fn clone(&self) -> Self {
        QMGraph::new(self.graph.clone()).expect("already connected")
    }
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl QMGraph {
    /// Computes hyperplanes, carriers, sectors, fibres, distances and the
    /// transversality/contact relations of a connected graph. No validation
    /// is performed here; see [`QMGraph::validation`].
    pub fn new(graph: Graph) -> Result<Self, QmError> {
        if graph.is_empty() {
            return Err(QmError::EmptySet);
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected.into());
        }
        let n = graph.len();
        let edges = graph.edges();
        let edge_ids: HashMap<(Vertex, Vertex), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let eid = |u: Vertex, v: Vertex| edge_ids[&key(u, v)];

        let mut uf: UnionFind<usize> = UnionFind::new(edges.len());
        for &(u, v) in &edges {
            for &w in graph.neighbors(u) {
                if w != v && graph.adjacent(v, w) {
                    uf.union(eid(u, v), eid(u, w));
                }
            }
        }
        let mut squares = Vec::new();
        for u in graph.vertices() {
            for &v in graph.neighbors(u) {
                for &w in graph.neighbors(v) {
                    if w == u {
                        continue;
                    }
                    for &x in graph.neighbors(w) {
                        if x != v && x != u && graph.adjacent(x, u) {
                            uf.union(eid(u, v), eid(w, x));
                            uf.union(eid(v, w), eid(x, u));
                            squares.push((eid(u, v), eid(v, w)));
                        }
                    }
                }
            }
        }

        let mut root_to_id: HashMap<usize, usize> = HashMap::new();
        let mut edge_class = Vec::with_capacity(edges.len());
        let mut members: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
        for (i, &e) in edges.iter().enumerate() {
            let root = uf.find(i);
            let next = root_to_id.len();
            let id = *root_to_id.entry(root).or_insert(next);
            if id == members.len() {
                members.push(Vec::new());
            }
            members[id].push(e);
            edge_class.push(HyperplaneId(id));
        }
        let h = members.len();

        let in_class = |u: Vertex, w: Vertex, id: usize| edge_class[eid(u, w)].0 == id;
        let mut hyperplanes = Vec::with_capacity(h);
        let mut sector_of = Vec::with_capacity(h);
        let mut fibre_of = Vec::with_capacity(h);
        for (id, es) in members.into_iter().enumerate() {
            let carrier: VertexSet = es.iter().flat_map(|&(u, v)| [u, v]).collect();
            let mut labels = vec![u32::MAX; n];
            let mut sectors = Vec::new();
            for s in graph.vertices() {
                if labels[s] != u32::MAX {
                    continue;
                }
                let tag = sectors.len() as u32;
                labels[s] = tag;
                let mut comp = VertexSet::from([s]);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &w in graph.neighbors(u) {
                        if labels[w] == u32::MAX && !in_class(u, w, id) {
                            labels[w] = tag;
                            comp.insert(w);
                            queue.push_back(w);
                        }
                    }
                }
                sectors.push(comp);
            }
            let mut fibre_tag: BTreeMap<Vertex, u32> = BTreeMap::new();
            let mut fibres = Vec::new();
            for &s in &carrier {
                if fibre_tag.contains_key(&s) {
                    continue;
                }
                let tag = fibres.len() as u32;
                fibre_tag.insert(s, tag);
                let mut comp = VertexSet::from([s]);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &w in graph.neighbors(u) {
                        if carrier.contains(&w) && !fibre_tag.contains_key(&w) && !in_class(u, w, id) {
                            fibre_tag.insert(w, tag);
                            comp.insert(w);
                            queue.push_back(w);
                        }
                    }
                }
                fibres.push(comp);
            }
            hyperplanes.push(Hyperplane { id: HyperplaneId(id), edges: es, carrier, sectors, fibres });
            sector_of.push(labels);
            fibre_of.push(fibre_tag);
        }

        let mut transverse = vec![vec![false; h]; h];
        for (a, b) in squares {
            let (j, k) = (edge_class[a].0, edge_class[b].0);
            if j != k {
                transverse[j][k] = true;
                transverse[k][j] = true;
            }
        }
        let mut contact = vec![vec![false; h]; h];
        for j in 0..h {
            for k in j + 1..h {
                let meet = !hyperplanes[j].carrier.is_disjoint(&hyperplanes[k].carrier);
                contact[j][k] = meet;
                contact[k][j] = meet;
            }
        }

        let dist = graph
            .all_distances()
            .into_iter()
            .map(|d| u32::try_from(d).expect("connected graph distances fit"))
            .collect();
        let cliques = graph.maximal_cliques();

        Ok(QMGraph {
            graph,
            edge_ids,
            edges,
            edge_class,
            hyperplanes,
            sector_of,
            fibre_of,
            dist,
            cliques,
            transverse,
            contact,
            validation: OnceLock::new(),
            maximal_prisms: OnceLock::new(),
            all_prisms: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplane_ids(&self) -> impl Iterator<Item = HyperplaneId> + '_ {
        (0..self.hyperplanes.len()).map(HyperplaneId)
    }

    pub fn hyperplane(&self, id: HyperplaneId) -> Result<&Hyperplane, QmError> {
        self.hyperplanes.get(id.0).ok_or(QmError::ForeignHyperplane(id))
    }

    /// Geometry of `id`, already filled in at construction time.
    pub fn hyperplane_geometry(&self, id: HyperplaneId) -> Result<&Hyperplane, QmError> {
        self.hyperplane(id)
    }

    /// Hyperplane containing the edge `uv`. Panics if `uv` is not an edge.
    pub fn edge_hyperplane(&self, u: Vertex, v: Vertex) -> HyperplaneId {
        self.edge_class[self.edge_ids[&key(u, v)]]
    }

    pub fn maximal_cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn is_maximal_clique(&self, c: &VertexSet) -> bool {
        self.cliques.binary_search(c).is_ok()
    }

    /// Maximal cliques containing `x` with at least two vertices.
    pub fn cliques_at(&self, x: Vertex) -> Vec<&VertexSet> {
        self.cliques.iter().filter(|c| c.len() >= 2 && c.contains(&x)).collect()
    }

    pub fn dist(&self, u: Vertex, v: Vertex) -> usize {
        self.dist[u * self.len() + v] as usize
    }

    pub fn interval(&self, u: Vertex, v: Vertex) -> VertexSet {
        let d = self.dist(u, v);
        self.graph.vertices().filter(|&z| self.dist(u, z) + self.dist(z, v) == d).collect()
    }

    pub fn transverse(&self, j: HyperplaneId, k: HyperplaneId) -> bool {
        self.transverse[j.0][k.0]
    }

    pub fn in_contact(&self, j: HyperplaneId, k: HyperplaneId) -> bool {
        self.contact[j.0][k.0]
    }

    pub fn contiguous(&self, j: HyperplaneId, k: HyperplaneId) -> bool {
        let (cj, ck) = (&self.hyperplanes[j.0].carrier, &self.hyperplanes[k.0].carrier);
        self.cliques.iter().any(|c| c.is_subset(cj) && c.is_subset(ck))
    }

    pub fn classify_pair(&self, j: HyperplaneId, k: HyperplaneId) -> Result<PairClass, QmError> {
        self.hyperplane(j)?;
        self.hyperplane(k)?;
        if j == k {
            return Err(QmError::IdenticalHyperplanes(j));
        }
        let in_contact = self.in_contact(j, k);
        let relation = if self.transverse(j, k) {
            Relation::Transverse
        } else if in_contact {
            Relation::Tangent
        } else {
            Relation::Remote
        };
        Ok(PairClass { relation, in_contact, contiguous: self.contiguous(j, k) })
    }

    /// Whether `j` separates `x` from `y` (they lie in different sectors).
    pub fn separates(&self, j: HyperplaneId, x: Vertex, y: Vertex) -> bool {
        self.sector_of[j.0][x] != self.sector_of[j.0][y]
    }

    pub fn separating(&self, x: Vertex, y: Vertex) -> Vec<HyperplaneId> {
        self.hyperplane_ids().filter(|&j| self.separates(j, x, y)).collect()
    }

    /// Index of the sector of `j` containing `x`.
    pub fn sector_index(&self, j: HyperplaneId, x: Vertex) -> usize {
        self.sector_of[j.0][x] as usize
    }

    /// The fibre of `j` through `x`, if `x` lies in the carrier.
    pub fn fibre_through(&self, j: HyperplaneId, x: Vertex) -> Option<&VertexSet> {
        let tag = *self.fibre_of[j.0].get(&x)?;
        Some(&self.hyperplanes[j.0].fibres[tag as usize])
    }

    /// Hyperplanes of the edges at `x`, sorted and deduplicated.
    pub fn hyperplanes_at(&self, x: Vertex) -> Vec<HyperplaneId> {
        let mut out: Vec<HyperplaneId> = self.graph.neighbors(x).iter().map(|&y| self.edge_hyperplane(x, y)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `x` together with its neighbours across `j`.
    pub fn clique_of(&self, j: HyperplaneId, x: Vertex) -> VertexSet {
        let mut c: VertexSet = self
            .graph
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| self.edge_hyperplane(x, y) == j)
            .collect();
        c.insert(x);
        c
    }

    /// Hyperplanes having an edge with both endpoints in `set`.
    pub fn crossing(&self, set: &VertexSet) -> Vec<HyperplaneId> {
        let mut out: Vec<HyperplaneId> = Vec::new();
        for &u in set {
            for &w in self.graph.neighbors(u) {
                if u < w && set.contains(&w) {
                    out.push(self.edge_hyperplane(u, w));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Transversality relation as a graph on hyperplane indices.
    pub fn transversality_graph(&self) -> Graph {
        self.relation_graph(|j, k| self.transverse(j, k))
    }

    /// Contact relation as a graph on hyperplane indices.
    pub fn contact_graph(&self) -> Graph {
        self.relation_graph(|j, k| self.in_contact(j, k))
    }

    fn relation_graph(&self, rel: impl Fn(HyperplaneId, HyperplaneId) -> bool) -> Graph {
        let h = self.hyperplane_count();
        let labels = (0..h).map(|i| HyperplaneId(i).to_string()).collect();
        let mut edges = Vec::new();
        for j in 0..h {
            for k in j + 1..h {
                if rel(HyperplaneId(j), HyperplaneId(k)) {
                    edges.push((j, k));
                }
            }
        }
        Graph::from_index_edges(labels, &edges).expect("relation graph is simple")
    }

    /// Cached validation report.
    pub fn validation(&self) -> &ValidationReport {
        self.validation.get_or_init(|| validate::validate(self))
    }

    pub fn require_valid(&self) -> Result<(), QmError> {
        match self.validation().violations.first() {
            None => Ok(()),
            Some(v) => Err(QmError::NotQuasiMedian(v.to_string())),
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), QmError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(QmError::UnknownVertex(v))
        }
    }
}
