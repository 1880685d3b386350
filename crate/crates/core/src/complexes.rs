//! Abstract simplicial complexes stored by maximal faces, and every complex
//! built from graphs, hyperplanes and gated families.
//!
//! Vertex labels are namespaced strings: `v:` graph vertices, `h:`
//! hyperplanes, `c:` cliques, `e:` edges at a vertex, `g:` family members,
//! `n:` nerve sets. Combined complexes prefix part indices (`0|h:3`), and a
//! wedge names its shared basepoint `*`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::qm::{GatedViolation, HyperplaneId, QMGraph, QmError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Qm(#[from] QmError),
    #[error("wedge part {0} has no basepoint")]
    MissingBasepoint(usize),
    #[error("basepoint `{0}` is not a vertex")]
    BadBasepoint(String),
    #[error("family member {0} is empty")]
    EmptyMember(usize),
    #[error("family member {index} is not gated: {violation}")]
    NotGated { index: usize, violation: GatedViolation },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Finite abstract simplicial complex given by its maximal faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Sorted vertex indices; no face contains another; list sorted.
    faces: Vec<Vec<u32>>,
    basepoint: Option<u32>,
}

fn is_subset_sorted(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), faces: Vec::new(), basepoint: None }
    }

    /// Builds a complex from arbitrary faces; non-maximal and repeated faces
    /// are dropped. Empty faces are ignored.
    pub fn from_faces<I, F, S>(faces: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_vertices(std::iter::empty::<String>(), faces)
    }

    /// As [`SimplicialComplex::from_faces`], additionally making every label
    /// in `extra` a vertex (as a singleton face unless covered).
    pub fn with_vertices<V, I, F, S>(extra: V, faces: I) -> Self
    where
        V: IntoIterator,
        V::Item: Into<String>,
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut raw: Vec<BTreeSet<String>> = faces
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect::<BTreeSet<String>>())
            .filter(|f| !f.is_empty())
            .collect();
        raw.extend(extra.into_iter().map(|v| BTreeSet::from([v.into()])));
        let vertices: Vec<String> = raw.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<&str, u32> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
        let faces = raw.iter().map(|f| f.iter().map(|v| index[v.as_str()]).collect()).collect();
        let mut k = SimplicialComplex { vertices: Vec::new(), faces, basepoint: None };
        k.vertices = vertices;
        k.canonicalize();
        k
    }

    fn canonicalize(&mut self) {
        let mut faces = std::mem::take(&mut self.faces);
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Vec<u32>> = Vec::with_capacity(faces.len());
        for f in faces {
            if !kept.iter().any(|k| k.len() > f.len() && is_subset_sorted(&f, k)) {
                kept.push(f);
            }
        }
        kept.sort();
        self.faces = kept;
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Maximal faces as index lists into [`SimplicialComplex::vertices`].
    pub fn face_indices(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn maximal_faces(&self) -> Vec<Vec<&str>> {
        self.faces
            .iter()
            .map(|f| f.iter().map(|&i| self.vertices[i as usize].as_str()).collect())
            .collect()
    }

    /// Maximal faces as label sets, for order-independent comparison.
    pub fn face_set(&self) -> BTreeSet<BTreeSet<String>> {
        self.maximal_faces()
            .into_iter()
            .map(|f| f.into_iter().map(str::to_string).collect())
            .collect()
    }

    pub fn same_faces(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.face_set() == other.face_set()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    pub fn contains_face<S: AsRef<str>>(&self, labels: &[S]) -> bool {
        let Some(mut idx) = labels
            .iter()
            .map(|l| self.vertices.binary_search_by(|v| v.as_str().cmp(l.as_ref())).ok().map(|i| i as u32))
            .collect::<Option<Vec<u32>>>()
        else {
            return false;
        };
        idx.sort_unstable();
        idx.dedup();
        self.faces.iter().any(|f| is_subset_sorted(&idx, f))
    }

    pub fn basepoint(&self) -> Option<&str> {
        self.basepoint.map(|b| self.vertices[b as usize].as_str())
    }

    pub fn with_basepoint(mut self, label: &str) -> Result<Self, ComplexError> {
        let i = self
            .vertices
            .binary_search_by(|v| v.as_str().cmp(label))
            .map_err(|_| ComplexError::BadBasepoint(label.to_string()))?;
        self.basepoint = Some(i as u32);
        Ok(self)
    }

    /// Basepoint at the lexicographically least label; no-op when empty.
    pub fn with_least_basepoint(mut self) -> Self {
        if !self.vertices.is_empty() {
            self.basepoint = Some(0);
        }
        self
    }

    /// Vertex pairs spanning an edge, as sorted label pairs.
    pub fn one_skeleton(&self) -> Vec<(&str, &str)> {
        let mut edges = BTreeSet::new();
        for f in &self.faces {
            for (i, &a) in f.iter().enumerate() {
                for &b in &f[i + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        edges
            .into_iter()
            .map(|(a, b)| (self.vertices[a as usize].as_str(), self.vertices[b as usize].as_str()))
            .collect()
    }

    /// Number of path components.
    pub fn component_count(&self) -> usize {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.vertices.len());
        for f in &self.faces {
            for w in f.windows(2) {
                uf.union(w[0] as usize, w[1] as usize);
            }
        }
        (0..self.vertices.len()).filter(|&v| uf.find(v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Applies `f` to every label; merging labels is allowed.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Self {
        let faces = self.maximal_faces().into_iter().map(|face| face.into_iter().map(&f).collect::<Vec<_>>());
        let mut k = SimplicialComplex::from_faces(faces);
        if let Some(b) = self.basepoint() {
            k = k.with_basepoint(&f(b)).expect("relabelled basepoint is a vertex");
        }
        k
    }

    /// Subcomplex induced on the vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(&str) -> bool) -> Self {
        let extra: Vec<String> = self.vertices.iter().filter(|v| keep(v)).cloned().collect();
        let faces = self
            .maximal_faces()
            .into_iter()
            .map(|f| f.into_iter().filter(|v| keep(v)).map(str::to_string).collect::<Vec<_>>());
        SimplicialComplex::with_vertices(extra, faces)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "complex({} vertices, {} maximal faces)", self.vertices.len(), self.faces.len())
    }
}

pub fn vertex_label(g: &Graph, v: Vertex) -> String {
    format!("v:{}", g.label(v))
}

pub fn hyperplane_label(j: HyperplaneId) -> String {
    format!("h:{}", j.0)
}

pub fn clique_label(g: &Graph, c: &VertexSet) -> String {
    format!("c:{}", g.set_labels(c).join(","))
}

fn edge_label(g: &Graph, y: Vertex) -> String {
    format!("e:{}", g.label(y))
}

/// Flag completion: maximal faces are the maximal cliques.
pub fn flag_completion(g: &Graph) -> SimplicialComplex {
    SimplicialComplex::from_faces(g.maximal_cliques().iter().map(|c| c.iter().map(|&v| vertex_label(g, v)).collect::<Vec<_>>()))
}

/// Complex whose simplices are the joins of `g`. Vertices not lying in any
/// join of two or more parts appear as trivial joins.
pub fn join_complex(g: &Graph) -> Result<SimplicialComplex, ComplexError> {
    let joins = g.maximal_joins()?;
    let extra: Vec<String> = g.vertices().map(|v| vertex_label(g, v)).collect();
    Ok(SimplicialComplex::with_vertices(
        extra,
        joins.iter().map(|s| s.iter().map(|&v| vertex_label(g, v)).collect::<Vec<_>>()),
    ))
}

/// Complex on `V(g)` whose simplices are the subsets of members of `family`.
pub fn family_complex(g: &Graph, family: &[VertexSet]) -> Result<SimplicialComplex, ComplexError> {
    if let Some(i) = family.iter().position(BTreeSet::is_empty) {
        return Err(ComplexError::EmptyMember(i));
    }
    Ok(SimplicialComplex::from_faces(family.iter().map(|s| s.iter().map(|&v| vertex_label(g, v)).collect::<Vec<_>>())))
}

/// Nerve: one vertex `n:i` per set, simplices the subfamilies with a common element.
pub fn nerve<T: Ord>(sets: &[BTreeSet<T>]) -> SimplicialComplex {
    let mut by_element: BTreeMap<&T, Vec<String>> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        for e in s {
            by_element.entry(e).or_default().push(format!("n:{i}"));
        }
    }
    SimplicialComplex::with_vertices((0..sets.len()).map(|i| format!("n:{i}")), by_element.into_values())
}

/// Disjoint union with labels prefixed by the part index.
pub fn disjoint_union(parts: &[SimplicialComplex]) -> SimplicialComplex {
    let faces = parts.iter().enumerate().flat_map(|(i, k)| {
        k.maximal_faces()
            .into_iter()
            .map(move |f| f.into_iter().map(|v| format!("{i}|{v}")).collect::<Vec<_>>())
    });
    SimplicialComplex::from_faces(faces)
}

/// Wedge of pointed complexes; basepoints become the single vertex `*`.
pub fn wedge(parts: &[SimplicialComplex]) -> Result<SimplicialComplex, ComplexError> {
    let mut faces = Vec::new();
    for (i, k) in parts.iter().enumerate() {
        let b = k.basepoint().ok_or(ComplexError::MissingBasepoint(i))?;
        for f in k.maximal_faces() {
            faces.push(f.into_iter().map(|v| if v == b { "*".to_string() } else { format!("{i}|{v}") }).collect::<Vec<_>>());
        }
    }
    let k = SimplicialComplex::from_faces(faces);
    if parts.is_empty() {
        Ok(k)
    } else {
        k.with_basepoint("*")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Wedge,
    DisjointUnion,
}

pub fn combine(kind: Combine, parts: &[SimplicialComplex]) -> Result<SimplicialComplex, ComplexError> {
    match kind {
        Combine::Wedge => wedge(parts),
        Combine::DisjointUnion => Ok(disjoint_union(parts)),
    }
}

/// A deduplicated family of gated subgraphs of a fixed host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GatedFamily {
    members: Vec<VertexSet>,
}

impl GatedFamily {
    /// Certifies each member gated; members are deduplicated and sorted.
    pub fn new(x: &QMGraph, members: Vec<VertexSet>) -> Result<Self, ComplexError> {
        for (index, m) in members.iter().enumerate() {
            if m.is_empty() {
                return Err(ComplexError::EmptyMember(index));
            }
            if let Some(violation) = x.is_gated(m).witness {
                return Err(ComplexError::NotGated { index, violation });
            }
        }
        let members: BTreeSet<VertexSet> = members.into_iter().collect();
        Ok(GatedFamily { members: members.into_iter().collect() })
    }

    pub fn whole(x: &QMGraph) -> Self {
        GatedFamily { members: vec![x.graph().all_vertices()] }
    }

    pub fn maximal_prisms(x: &QMGraph) -> Result<Self, ComplexError> {
        let ms = x.maximal_prisms()?.iter().map(|p| p.vertices.clone()).collect();
        Self::new(x, ms)
    }

    pub fn canonical_star(x: &QMGraph) -> Result<Self, ComplexError> {
        Self::new(x, x.canonical_star_covering()?)
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperplaneComplexKind {
    Contact,
    Crossing,
    Contiguity,
    SmallCrossing,
}

fn hyperplane_faces<'a>(faces: impl IntoIterator<Item = &'a VertexSet>) -> Vec<Vec<String>> {
    faces
        .into_iter()
        .map(|f| f.iter().map(|&j| hyperplane_label(HyperplaneId(j))).collect())
        .collect()
}

/// Whether some fibre of `j` is contained in the carrier of another hyperplane.
fn has_absorbed_fibre(x: &QMGraph, j: HyperplaneId) -> bool {
    let h = &x.hyperplanes()[j.0];
    h.fibres
        .iter()
        .any(|f| x.hyperplanes().iter().any(|k| k.id != j && f.is_subset(&k.carrier)))
}

pub fn hyperplane_complex(x: &QMGraph, kind: HyperplaneComplexKind) -> Result<SimplicialComplex, ComplexError> {
    x.require_valid()?;
    let all = x.hyperplane_ids().map(hyperplane_label);
    Ok(match kind {
        HyperplaneComplexKind::Contact => {
            SimplicialComplex::with_vertices(all, hyperplane_faces(&x.contact_graph().maximal_cliques()))
        }
        HyperplaneComplexKind::Crossing => {
            SimplicialComplex::with_vertices(all, hyperplane_faces(&x.transversality_graph().maximal_cliques()))
        }
        HyperplaneComplexKind::Contiguity => {
            let faces = x.maximal_cliques().iter().map(|c| {
                x.hyperplanes()
                    .iter()
                    .filter(|h| c.is_subset(&h.carrier))
                    .map(|h| hyperplane_label(h.id))
                    .collect::<Vec<_>>()
            });
            SimplicialComplex::with_vertices(all, faces)
        }
        HyperplaneComplexKind::SmallCrossing => {
            let keep: BTreeSet<String> =
                x.hyperplane_ids().filter(|&j| !has_absorbed_fibre(x, j)).map(hyperplane_label).collect();
            hyperplane_complex(x, HyperplaneComplexKind::Crossing)?.induced(|v| keep.contains(v))
        }
    })
}

/// Union over `Y ∈ family` of the flag complex of the contact relation on
/// the hyperplanes crossing `Y`. Only hyperplanes crossing some member are
/// vertices.
pub fn relative_contact_complex(x: &QMGraph, family: &GatedFamily) -> SimplicialComplex {
    let contact = x.contact_graph();
    let mut faces = Vec::new();
    for y in family.members() {
        let hs: VertexSet = x.crossing(y).into_iter().map(|j| j.0).collect();
        if hs.is_empty() {
            continue;
        }
        let (sub, back) = contact.induced_subgraph(&hs);
        for c in sub.maximal_cliques() {
            faces.push(c.iter().map(|&i| hyperplane_label(HyperplaneId(back[i]))).collect::<Vec<_>>());
        }
    }
    SimplicialComplex::from_faces(faces)
}

fn member_label(i: usize) -> String {
    format!("g:{i}")
}

/// Vertices are the members; a face for each hyperplane (or, for the double
/// variant, each pair of distinct non-transverse hyperplanes) collects the
/// members it crosses.
pub fn skewering_complex(x: &QMGraph, family: &GatedFamily, double: bool) -> SimplicialComplex {
    let crossed: Vec<BTreeSet<HyperplaneId>> = family.members().iter().map(|y| x.crossing(y).into_iter().collect()).collect();
    let members_crossed_by = |hs: &[HyperplaneId]| -> Vec<String> {
        crossed
            .iter()
            .enumerate()
            .filter(|(_, c)| hs.iter().all(|j| c.contains(j)))
            .map(|(i, _)| member_label(i))
            .collect()
    };
    let mut faces = Vec::new();
    let ids: Vec<HyperplaneId> = x.hyperplane_ids().collect();
    if double {
        for (a, &j) in ids.iter().enumerate() {
            for &k in &ids[a + 1..] {
                if !x.transverse(j, k) {
                    faces.push(members_crossed_by(&[j, k]));
                }
            }
        }
    } else {
        for &j in &ids {
            faces.push(members_crossed_by(&[j]));
        }
    }
    SimplicialComplex::with_vertices((0..family.len()).map(member_label), faces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalKind {
    /// Edges at `x`, simplices inside a common prism.
    Link,
    /// Cliques at `x`, simplices inside a common prism.
    SLink,
    /// Edges at `x`, simplices inside a common family member.
    L,
    /// Cliques at `x`, simplices inside a common family member.
    SL,
}

pub fn local_complex(
    x: &QMGraph,
    v: Vertex,
    kind: LocalKind,
    family: Option<&GatedFamily>,
) -> Result<SimplicialComplex, ComplexError> {
    if v >= x.len() {
        return Err(GraphError::UnknownVertex(format!("#{v}")).into());
    }
    let g = x.graph();
    let regions: Vec<&VertexSet> = match kind {
        LocalKind::Link | LocalKind::SLink => x.maximal_prisms()?.iter().map(|p| &p.vertices).collect(),
        LocalKind::L | LocalKind::SL => family
            .ok_or_else(|| ComplexError::Precondition("L and sL need a gated family".into()))?
            .members()
            .iter()
            .collect(),
    };
    let regions = regions.into_iter().filter(|r| r.contains(&v));
    let complex = match kind {
        LocalKind::Link | LocalKind::L => {
            let all = g.neighbors(v).iter().map(|&y| edge_label(g, y));
            let faces = regions.map(|r| {
                g.neighbors(v).iter().filter(|y| r.contains(y)).map(|&y| edge_label(g, y)).collect::<Vec<_>>()
            });
            SimplicialComplex::with_vertices(all, faces.collect::<Vec<_>>())
        }
        LocalKind::SLink | LocalKind::SL => {
            let cliques = x.cliques_at(v);
            let all = cliques.iter().map(|c| clique_label(g, c));
            let faces = regions.map(|r| {
                cliques.iter().filter(|c| c.is_subset(r)).map(|c| clique_label(g, c)).collect::<Vec<_>>()
            });
            SimplicialComplex::with_vertices(all, faces.collect::<Vec<_>>())
        }
    };
    Ok(complex.with_least_basepoint())
}

/// The pointed-sum model of the crossing complex: a disjoint union over
/// blocks `Y` of the wedge over `y ∈ Y` of the simplified link of `y` in `Y`.
pub fn crossing_model(x: &QMGraph) -> Result<SimplicialComplex, ComplexError> {
    x.require_valid()?;
    let blocks = x.graph().blocks()?;
    let mut parts = Vec::with_capacity(blocks.blocks.len());
    for b in &blocks.blocks {
        let (sub, _) = x.graph().induced_subgraph(b);
        let y = QMGraph::new(sub)?;
        let links = y
            .graph()
            .vertices()
            .map(|v| local_complex(&y, v, LocalKind::SLink, None))
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(wedge(&links)?);
    }
    Ok(disjoint_union(&parts))
}

/// The pointed-sum model of the relative contact complex: the wedge over all
/// vertices of `sL_𝔾(x)`. Requires a 2-connected host and a star-covering family.
pub fn relative_contact_model(x: &QMGraph, family: &GatedFamily) -> Result<SimplicialComplex, ComplexError> {
    if let Some(&c) = x.graph().cut_vertices()?.iter().next() {
        return Err(ComplexError::Precondition(format!("vertex {c} is a cut vertex")));
    }
    let preds = family_predicates(x, family)?;
    if let Some(c) = preds.star_witness {
        return Err(ComplexError::Precondition(format!("prisms through clique {c:?} lie in no single member")));
    }
    let parts = x
        .graph()
        .vertices()
        .map(|v| local_complex(x, v, LocalKind::SL, Some(family)))
        .collect::<Result<Vec<_>, _>>()?;
    wedge(&parts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPredicates {
    pub prism_covering: bool,
    /// A maximal prism in no member.
    pub prism_witness: Option<VertexSet>,
    pub star_covering: bool,
    /// A maximal clique whose prisms are not all inside one member.
    pub star_witness: Option<VertexSet>,
    pub parallelism_free: bool,
    /// Two members crossed by the same hyperplanes.
    pub parallel_witness: Option<(usize, usize)>,
}

pub fn family_predicates(x: &QMGraph, family: &GatedFamily) -> Result<FamilyPredicates, ComplexError> {
    let members = family.members();
    let prisms = x.maximal_prisms()?;
    let prism_witness = prisms
        .iter()
        .find(|p| !members.iter().any(|m| p.vertices.is_subset(m)))
        .map(|p| p.vertices.clone());
    let mut star_witness = None;
    for c in x.maximal_cliques() {
        let mut star = c.clone();
        for p in prisms.iter().filter(|p| c.is_subset(&p.vertices)) {
            star.extend(p.vertices.iter().copied());
        }
        if !members.iter().any(|m| star.is_subset(m)) {
            star_witness = Some(c.clone());
            break;
        }
    }
    let crossed: Vec<Vec<HyperplaneId>> = members.iter().map(|m| x.crossing(m)).collect();
    let mut parallel_witness = None;
    'outer: for i in 0..crossed.len() {
        for j in i + 1..crossed.len() {
            if crossed[i] == crossed[j] {
                parallel_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(FamilyPredicates {
        prism_covering: prism_witness.is_none(),
        prism_witness,
        star_covering: star_witness.is_none(),
        star_witness,
        parallelism_free: parallel_witness.is_none(),
        parallel_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm::generate;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn canonical_faces() {
        let k = SimplicialComplex::from_faces(vec![vec!["a", "b"], vec!["a", "b", "c"], vec!["b"], vec!["d"]]);
        assert_eq!(k.maximal_faces(), vec![vec!["a", "b", "c"], vec!["d"]]);
        assert_eq!(k.dimension(), Some(2));
        assert!(k.contains_face(&["a", "c"]));
        assert!(!k.contains_face(&["a", "d"]));
        assert_eq!(k.component_count(), 2);
    }

    #[test]
    fn flag_completion_examples() {
        assert_eq!(flag_completion(&Graph::complete(3)).maximal_faces().len(), 1);
        let c4 = flag_completion(&Graph::cycle(4));
        assert_eq!((c4.vertex_count(), c4.maximal_faces().len(), c4.dimension()), (4, 4, Some(1)));
        let c5 = flag_completion(&Graph::cycle(5));
        assert_eq!(c5.maximal_faces().len(), 5);
    }

    #[test]
    fn join_complex_examples() {
        let c4 = join_complex(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.maximal_faces().len(), 1);
        assert_eq!(c4.dimension(), Some(3));
        let c5 = join_complex(&Graph::cycle(5)).unwrap();
        assert_eq!(c5.maximal_faces().len(), 5);
        assert!(c5.maximal_faces().iter().all(|f| f.len() == 3));
        let p4 = join_complex(&Graph::path(4)).unwrap();
        assert_eq!(p4.maximal_faces(), vec![vec!["v:0", "v:1", "v:2"], vec!["v:1", "v:2", "v:3"]]);
        let single = join_complex(&Graph::complete(1)).unwrap();
        assert_eq!(single.maximal_faces(), vec![vec!["v:0"]]);
    }

    #[test]
    fn family_complex_examples() {
        let c5 = Graph::cycle(5);
        let joins = c5.maximal_joins().unwrap();
        assert!(family_complex(&c5, &joins).unwrap().same_faces(&join_complex(&c5).unwrap()));
        assert!(family_complex(&c5, &c5.maximal_cliques()).unwrap().same_faces(&flag_completion(&c5)));
        let k2 = Graph::complete(2);
        let k = family_complex(&k2, &[set(&[0]), set(&[1])]).unwrap();
        assert_eq!(k.maximal_faces(), vec![vec!["v:0"], vec!["v:1"]]);
        assert_eq!(family_complex(&k2, &[VertexSet::new()]), Err(ComplexError::EmptyMember(0)));
    }

    #[test]
    fn hyperplane_complex_examples() {
        let c4 = QMGraph::new(Graph::cycle(4)).unwrap();
        let k = hyperplane_complex(&c4, HyperplaneComplexKind::Crossing).unwrap();
        assert_eq!(k.maximal_faces(), vec![vec!["h:0", "h:1"]]);
        let p4 = QMGraph::new(Graph::path(4)).unwrap();
        let k = hyperplane_complex(&p4, HyperplaneComplexKind::Contact).unwrap();
        assert_eq!(k.maximal_faces(), vec![vec!["h:0", "h:1"], vec!["h:1", "h:2"]]);
        let grid = generate::product(&[&p4_like(3), &p4_like(3)]).unwrap();
        let k = hyperplane_complex(&grid, HyperplaneComplexKind::Contiguity).unwrap();
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.maximal_faces().len(), 4);
        assert!(k.maximal_faces().iter().all(|f| f.len() == 3));
    }

    fn p4_like(n: usize) -> QMGraph {
        QMGraph::new(Graph::path(n)).unwrap()
    }

    #[test]
    fn relative_contact_examples() {
        let x = generate::hamming(&[2, 3]).unwrap();
        let whole = relative_contact_complex(&x, &GatedFamily::whole(&x));
        assert!(whole.same_faces(&hyperplane_complex(&x, HyperplaneComplexKind::Contact).unwrap()));
        let p4 = p4_like(4);
        let fam = GatedFamily::new(&p4, vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3])]).unwrap();
        let k = relative_contact_complex(&p4, &fam);
        assert_eq!(k.maximal_faces(), vec![vec!["h:0"], vec!["h:1"], vec!["h:2"]]);
        let prisms = GatedFamily::maximal_prisms(&p4).unwrap();
        assert!(relative_contact_complex(&p4, &prisms)
            .same_faces(&hyperplane_complex(&p4, HyperplaneComplexKind::Crossing).unwrap()));
    }

    #[test]
    fn skewering_examples() {
        let p4 = p4_like(4);
        let fam = GatedFamily::new(&p4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        assert_eq!(skewering_complex(&p4, &fam, false).maximal_faces(), vec![vec!["g:0"], vec!["g:1"]]);
        let fam = GatedFamily::new(&p4, vec![set(&[0, 1, 2]), set(&[1, 2, 3])]).unwrap();
        assert_eq!(skewering_complex(&p4, &fam, false).maximal_faces(), vec![vec!["g:0", "g:1"]]);
        let whole = GatedFamily::whole(&p4);
        assert_eq!(skewering_complex(&p4, &whole, false).maximal_faces(), vec![vec!["g:0"]]);
        // P4 hyperplanes are pairwise non-transverse and all cross P4
        assert_eq!(skewering_complex(&p4, &whole, true).maximal_faces(), vec![vec!["g:0"]]);
    }

    #[test]
    fn local_complex_examples() {
        let x = generate::hamming(&[2, 3]).unwrap();
        for v in x.graph().vertices() {
            let s = local_complex(&x, v, LocalKind::SLink, None).unwrap();
            assert_eq!((s.vertex_count(), s.maximal_faces().len()), (2, 1));
            let sl = local_complex(&x, v, LocalKind::SL, Some(&GatedFamily::whole(&x))).unwrap();
            assert_eq!(sl.maximal_faces().len(), 1);
        }
        let p3 = p4_like(3);
        let l = local_complex(&p3, 0, LocalKind::Link, None).unwrap();
        assert_eq!(l.maximal_faces(), vec![vec!["e:1"]]);
        assert!(local_complex(&p3, 9, LocalKind::Link, None).is_err());
        assert!(local_complex(&p3, 0, LocalKind::L, None).is_err());
    }

    #[test]
    fn combination_examples() {
        let circle = SimplicialComplex::from_faces(vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).with_least_basepoint();
        let w = wedge(&[circle.clone(), circle.clone()]).unwrap();
        assert_eq!(w.vertex_count(), 5);
        assert_eq!(w.component_count(), 1);
        let pt = SimplicialComplex::from_faces(vec![vec!["p"]]);
        assert_eq!(disjoint_union(&[pt.clone(), pt.clone()]).component_count(), 2);
        assert_eq!(wedge(std::slice::from_ref(&circle)).unwrap().maximal_faces().len(), 3);
        assert_eq!(wedge(&[pt]), Err(ComplexError::MissingBasepoint(0)));
    }

    #[test]
    fn nerve_examples() {
        let tri: Vec<BTreeSet<u8>> = vec![[0, 1].into(), [1, 2].into(), [0, 2].into()];
        let n = nerve(&tri);
        assert_eq!(n.maximal_faces().len(), 3);
        assert_eq!(n.dimension(), Some(1));
        let chain: Vec<BTreeSet<u8>> = vec![[0].into(), [0, 1].into(), [0, 1, 2].into()];
        assert_eq!(nerve(&chain).dimension(), Some(2));
        let apart: Vec<BTreeSet<u8>> = vec![[0].into(), [1].into()];
        assert_eq!(nerve(&apart).component_count(), 2);
    }

    #[test]
    fn models_of_small_graphs() {
        let p5 = p4_like(5);
        let m = crossing_model(&p5).unwrap();
        assert_eq!((m.vertex_count(), m.component_count()), (4, 4));
        let x = generate::hamming(&[2, 3]).unwrap();
        let m = crossing_model(&x).unwrap();
        assert_eq!(m.maximal_faces().len(), 6);
        assert!(m.is_connected());
        let rel = relative_contact_model(&x, &GatedFamily::whole(&x)).unwrap();
        assert!(rel.is_connected());
        assert!(relative_contact_model(&p5, &GatedFamily::whole(&p5)).is_err());
    }

    #[test]
    fn predicates_examples() {
        let x = generate::hamming(&[2, 2]).unwrap();
        let p = family_predicates(&x, &GatedFamily::whole(&x)).unwrap();
        assert!(p.prism_covering && p.star_covering && p.parallelism_free);
        let p3 = p4_like(3);
        let p = family_predicates(&p3, &GatedFamily::maximal_prisms(&p3).unwrap()).unwrap();
        assert!(p.prism_covering && p.star_covering);
        let two_points = GatedFamily::new(&p3, vec![set(&[0]), set(&[2])]).unwrap();
        let p = family_predicates(&p3, &two_points).unwrap();
        assert_eq!(p.parallel_witness, Some((0, 1)));
        assert!(!p.prism_covering);
    }
}
