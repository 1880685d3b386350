//! Graph products of cyclic groups: normal forms, parabolic cosets, the
//! coset intersection complex, and balls in the quasi-median Cayley graph.
//!
//! Elements are reduced words of syllables `u^e`. Vertex `u` has order
//! `order(u)`, with `0` meaning infinite cyclic; finite exponents live in
//! `1..order`.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::complexes::SimplicialComplex;
use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::qm::{QMGraph, QmError};

/// Cap on vertices of a fragment or ball.
pub const GP_SIZE_GUARD: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Qm(#[from] QmError),
    #[error("vertex {0} has order 1; vertex groups must be non-trivial")]
    TrivialOrder(String),
    #[error("{orders} orders given for {vertices} vertices")]
    OrderCount { orders: usize, vertices: usize },
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("exponent overflow at vertex {0}")]
    ExponentOverflow(String),
    #[error("vertex {0} has infinite order")]
    InfiniteOrder(String),
    #[error("cannot parse word `{0}`")]
    BadWord(String),
    #[error("size guard exceeded: {size} > {guard}")]
    SizeGuard { size: usize, guard: usize },
    #[error("empty family of supports")]
    EmptyFamily,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A graph with a cyclic group of the given order at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPPresentation {
    graph: Graph,
    orders: Vec<u64>,
}

impl GPPresentation {
    pub fn new(graph: Graph, orders: Vec<u64>) -> Result<Self, GpError> {
        if orders.len() != graph.len() {
            return Err(GpError::OrderCount { orders: orders.len(), vertices: graph.len() });
        }
        if let Some(v) = orders.iter().position(|&o| o == 1) {
            return Err(GpError::TrivialOrder(graph.label(v).to_string()));
        }
        Ok(GPPresentation { graph, orders })
    }

    /// Right-angled Artin group: every vertex group infinite cyclic.
    pub fn raag(graph: Graph) -> Self {
        let n = graph.len();
        GPPresentation { graph, orders: vec![0; n] }
    }

    pub fn uniform(graph: Graph, order: u64) -> Result<Self, GpError> {
        let n = graph.len();
        Self::new(graph, vec![order; n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self, u: Vertex) -> u64 {
        self.orders[u]
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn all_finite(&self) -> bool {
        self.orders.iter().all(|&o| o != 0)
    }

    fn commute(&self, u: Vertex, v: Vertex) -> bool {
        self.graph.adjacent(u, v)
    }

    fn normalize_exp(&self, u: Vertex, e: i64) -> i64 {
        match self.orders[u] {
            0 => e,
            n => e.rem_euclid(n as i64),
        }
    }

    pub fn syllable(&self, u: Vertex, e: i64) -> Result<Syllable, GpError> {
        if u >= self.graph.len() {
            return Err(GpError::UnknownVertex(u));
        }
        Ok(Syllable { vertex: u, exp: self.normalize_exp(u, e) })
    }

    /// Vertex set from labels.
    pub fn vertex_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet, GpError> {
        labels.iter().map(|l| self.graph.vertex_or_err(l.as_ref()).map_err(GpError::from)).collect()
    }

    /// Parses `a^2 c b^-1`; `1` or the empty string is the identity.
    pub fn parse(&self, word: &str) -> Result<NormalForm, GpError> {
        let mut syl = Vec::new();
        for tok in word.split_whitespace().filter(|t| *t != "1") {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| GpError::BadWord(word.to_string()))?),
                None => (tok, 1),
            };
            let u = self.graph.vertex_or_err(name)?;
            syl.push(Syllable { vertex: u, exp: e });
        }
        reduce(self, &syl)
    }

    pub fn format(&self, g: &NormalForm) -> String {
        if g.is_identity() {
            return "1".to_string();
        }
        g.0.iter()
            .map(|s| {
                let l = self.graph.label(s.vertex);
                if s.exp == 1 { l.to_string() } else { format!("{l}^{}", s.exp) }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_set(&self, s: &VertexSet) -> String {
        self.graph.set_labels(s).join(",")
    }

    pub fn format_coset(&self, c: &ParabolicCoset) -> String {
        format!("{}<{}>", self.format(&c.rep), self.format_set(&c.support))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub vertex: Vertex,
    pub exp: i64,
}

/// Reduced word in canonical shuffle order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm(Vec<Syllable>);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|s| s.vertex).collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| format!("#{}^{}", s.vertex, s.exp)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Appends `s` to the reduced word `w`, merging with the last syllable of
/// the same vertex reachable through commuting syllables. Keeps `w` reduced.
fn push_syllable(pres: &GPPresentation, w: &mut Vec<Syllable>, s: Syllable) -> Result<(), GpError> {
    if s.exp == 0 {
        return Ok(());
    }
    for j in (0..w.len()).rev() {
        let v = w[j].vertex;
        if v == s.vertex {
            let e = w[j]
                .exp
                .checked_add(s.exp)
                .ok_or_else(|| GpError::ExponentOverflow(pres.graph.label(v).to_string()))?;
            let e = pres.normalize_exp(v, e);
            if e == 0 {
                w.remove(j);
            } else {
                w[j].exp = e;
            }
            return Ok(());
        }
        if !pres.commute(v, s.vertex) {
            break;
        }
    }
    w.push(s);
    Ok(())
}

/// Least topological order of a reduced word under the fixed vertex order,
/// where non-commuting syllables keep their relative order.
fn canonical_shuffle(pres: &GPPresentation, w: Vec<Syllable>) -> NormalForm {
    let n = w.len();
    let mut indeg = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if w[i].vertex == w[j].vertex || !pres.commute(w[i].vertex, w[j].vertex) {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(Vertex, usize)>> =
        (0..n).filter(|&i| indeg[i] == 0).map(|i| Reverse((w[i].vertex, i))).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse((_, i))) = heap.pop() {
        out.push(w[i]);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                heap.push(Reverse((w[j].vertex, j)));
            }
        }
    }
    NormalForm(out)
}

pub fn reduce(pres: &GPPresentation, word: &[Syllable]) -> Result<NormalForm, GpError> {
    let mut w = Vec::with_capacity(word.len());
    for &s in word {
        let s = pres.syllable(s.vertex, s.exp)?;
        push_syllable(pres, &mut w, s)?;
    }
    Ok(canonical_shuffle(pres, w))
}

pub fn multiply(pres: &GPPresentation, x: &NormalForm, y: &NormalForm) -> Result<NormalForm, GpError> {
    let mut w = x.0.clone();
    for &s in &y.0 {
        push_syllable(pres, &mut w, s)?;
    }
    Ok(canonical_shuffle(pres, w))
}

pub fn invert(pres: &GPPresentation, x: &NormalForm) -> NormalForm {
    let w = x.0.iter().rev().map(|s| Syllable { vertex: s.vertex, exp: pres.normalize_exp(s.vertex, -s.exp) }).collect();
    canonical_shuffle(pres, w)
}

/// `x^-1 y`
pub fn quotient(pres: &GPPresentation, x: &NormalForm, y: &NormalForm) -> Result<NormalForm, GpError> {
    multiply(pres, &invert(pres, x), y)
}

pub fn parabolic_membership(g: &NormalForm, lambda: &VertexSet) -> bool {
    g.0.iter().all(|s| lambda.contains(&s.vertex))
}

/// Syllable `i` commutes with everything after it.
fn right_extremal(pres: &GPPresentation, w: &[Syllable], i: usize) -> bool {
    w[i + 1..].iter().all(|t| t.vertex != w[i].vertex && pres.commute(t.vertex, w[i].vertex))
}

/// Syllable `i` commutes with everything before it.
fn left_extremal(pres: &GPPresentation, w: &[Syllable], i: usize) -> bool {
    w[..i].iter().all(|t| t.vertex != w[i].vertex && pres.commute(t.vertex, w[i].vertex))
}

/// Removes right-extremal syllables with vertex in `lambda` until none is
/// left; returns what remains (in original order) and the removed part.
fn strip_right(pres: &GPPresentation, mut w: Vec<Syllable>, lambda: &VertexSet) -> (Vec<Syllable>, Vec<Syllable>) {
    let mut removed = Vec::new();
    while let Some(i) = (0..w.len()).rev().find(|&i| lambda.contains(&w[i].vertex) && right_extremal(pres, &w, i)) {
        removed.push(w.remove(i));
    }
    removed.reverse();
    (w, removed)
}

fn strip_left(pres: &GPPresentation, mut w: Vec<Syllable>, lambda: &VertexSet) -> (Vec<Syllable>, Vec<Syllable>) {
    let mut removed = Vec::new();
    while let Some(i) = (0..w.len()).find(|&i| lambda.contains(&w[i].vertex) && left_extremal(pres, &w, i)) {
        removed.push(w.remove(i));
    }
    (removed, w)
}

/// The coset `rep<support>`, `rep` the shortest element of the coset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParabolicCoset {
    pub support: VertexSet,
    pub rep: NormalForm,
}

pub fn coset_canonical(pres: &GPPresentation, g: &NormalForm, lambda: &VertexSet) -> ParabolicCoset {
    let (rest, _) = strip_right(pres, g.0.clone(), lambda);
    ParabolicCoset { support: lambda.clone(), rep: canonical_shuffle(pres, rest) }
}

/// `g<Λ> = h<Λ>` decided by membership of `g^-1 h` in `<Λ>`.
pub fn same_coset(pres: &GPPresentation, g: &NormalForm, h: &NormalForm, lambda: &VertexSet) -> Result<bool, GpError> {
    Ok(parabolic_membership(&quotient(pres, g, h)?, lambda))
}

/// `k = a m b` with `a ∈ <Λ1>`, `b ∈ <Λ2>`, and `m` stripped on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetCore {
    pub a: NormalForm,
    pub m: NormalForm,
    pub b: NormalForm,
}

pub fn double_coset_reduce(pres: &GPPresentation, l1: &VertexSet, k: &NormalForm, l2: &VertexSet) -> DoubleCosetCore {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut w = k.0.clone();
    loop {
        let (left, rest) = strip_left(pres, w, l1);
        let (rest, right) = strip_right(pres, rest, l2);
        let done = left.is_empty() && right.is_empty();
        a.extend(left);
        b.splice(0..0, right);
        w = rest;
        if done {
            break;
        }
    }
    DoubleCosetCore { a: canonical_shuffle(pres, a), m: canonical_shuffle(pres, w), b: canonical_shuffle(pres, b) }
}

/// `g<Λ1>g^-1 ∩ h<Λ2>h^-1 = p<Ξ>p^-1`, returned as `(p, Ξ)`.
pub fn conjugate_parabolic_intersection(
    pres: &GPPresentation,
    g: &NormalForm,
    l1: &VertexSet,
    h: &NormalForm,
    l2: &VertexSet,
) -> Result<(NormalForm, VertexSet), GpError> {
    let core = double_coset_reduce(pres, l1, &quotient(pres, g, h)?, l2);
    let common: VertexSet = l1.intersection(l2).copied().collect();
    let xi = if core.m.is_identity() {
        common
    } else {
        let supp = core.m.support();
        let link = pres.graph.common_link(&supp);
        common.intersection(&link).copied().collect()
    };
    Ok((multiply(pres, g, &core.a)?, xi))
}

pub fn parabolic_is_infinite(pres: &GPPresentation, xi: &VertexSet) -> bool {
    !xi.is_empty() && (xi.iter().any(|&u| pres.order(u) == 0) || !pres.graph.is_complete(xi))
}

/// Hyperplane of the quasi-median Cayley graph with label `u` and carrier
/// `g<star(u)>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GPHyperplane {
    pub label: Vertex,
    pub carrier: ParabolicCoset,
}

impl GPHyperplane {
    pub fn new(pres: &GPPresentation, g: &NormalForm, u: Vertex) -> Self {
        GPHyperplane { label: u, carrier: coset_canonical(pres, g, &pres.graph.star(u)) }
    }
}

pub fn hyperplane_crosses_coset(pres: &GPPresentation, h: &GPHyperplane, c: &ParabolicCoset) -> Result<bool, GpError> {
    if !c.support.contains(&h.label) {
        return Ok(false);
    }
    let k = quotient(pres, &h.carrier.rep, &c.rep)?;
    Ok(double_coset_reduce(pres, &h.carrier.support, &k, &c.support).m.is_identity())
}

/// Whether the conjugates `g_i <Λ_i> g_i^-1` have infinite intersection.
pub fn cic_simplex_test(pres: &GPPresentation, cosets: &[ParabolicCoset]) -> Result<bool, GpError> {
    let (first, rest) = cosets.split_first().ok_or(GpError::EmptyFamily)?;
    let mut p = first.rep.clone();
    let mut xi = first.support.clone();
    for c in rest {
        (p, xi) = conjugate_parabolic_intersection(pres, &p, &xi, &c.rep, &c.support)?;
        if xi.is_empty() {
            return Ok(false);
        }
    }
    Ok(parabolic_is_infinite(pres, &xi))
}

/// Elements with at most `max_len` syllables, exponents in `±1..=max_exp`
/// (finite orders: every non-zero residue), supported in `lambda`.
pub fn bounded_elements(pres: &GPPresentation, lambda: &VertexSet, max_len: usize, max_exp: i64) -> Vec<NormalForm> {
    let gens: Vec<Syllable> = lambda
        .iter()
        .flat_map(|&u| {
            let exps: Vec<i64> = match pres.order(u) {
                0 => (1..=max_exp).flat_map(|e| [e, -e]).collect(),
                n => (1..n as i64).collect(),
            };
            exps.into_iter().map(move |e| Syllable { vertex: u, exp: e })
        })
        .collect();
    let mut seen: BTreeSet<NormalForm> = BTreeSet::from([NormalForm::identity()]);
    let mut frontier = vec![NormalForm::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = multiply(pres, g, &NormalForm(vec![*s])).expect("bounded exponents");
                if h.len() > g.len() && seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// `x ∈ g<Λ>g^-1`
pub fn in_conjugate(pres: &GPPresentation, x: &NormalForm, g: &NormalForm, lambda: &VertexSet) -> Result<bool, GpError> {
    let y = multiply(pres, &quotient(pres, g, x)?, g)?;
    Ok(parabolic_membership(&y, lambda))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportFamily {
    MaximalJoins,
    MaximalCliques,
    Explicit(Vec<VertexSet>),
}

impl SupportFamily {
    pub fn supports(&self, g: &Graph) -> Result<Vec<VertexSet>, GpError> {
        let s = match self {
            SupportFamily::MaximalJoins => g.maximal_joins()?,
            SupportFamily::MaximalCliques => g.maximal_cliques(),
            SupportFamily::Explicit(v) => v.clone(),
        };
        if s.is_empty() {
            return Err(GpError::EmptyFamily);
        }
        Ok(s)
    }
}

/// A finite part of the coset intersection complex: the cosets with short
/// representatives, and the simplices among them. Never the whole complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CICFragment {
    pub vertices: Vec<ParabolicCoset>,
    /// Maximal simplices, as sorted index lists.
    pub simplices: Vec<Vec<usize>>,
    pub radius: usize,
    pub max_exp: i64,
    pub max_dim: usize,
}

impl CICFragment {
    pub fn complex(&self, pres: &GPPresentation) -> SimplicialComplex {
        let name = |i: usize| pres.format_coset(&self.vertices[i]);
        SimplicialComplex::with_vertices(
            (0..self.vertices.len()).map(name),
            self.simplices.iter().map(|s| s.iter().map(|&i| name(i)).collect::<Vec<_>>()),
        )
    }
}

/// Builds the fragment on cosets `g<Λ>` whose representative has at most
/// `radius` syllables, infinite-order exponents bounded by `max_exp`.
pub fn cic_fragment(
    pres: &GPPresentation,
    family: &SupportFamily,
    radius: usize,
    max_dim: usize,
    max_exp: i64,
) -> Result<CICFragment, GpError> {
    if !pres.graph.is_connected() {
        return Err(GpError::Precondition("the graph is disconnected".into()));
    }
    let supports = family.supports(&pres.graph)?;
    let elements = bounded_elements(pres, &pres.graph.all_vertices(), radius, max_exp);
    let mut cosets: BTreeSet<ParabolicCoset> = BTreeSet::new();
    for g in &elements {
        for l in &supports {
            cosets.insert(coset_canonical(pres, g, l));
            if cosets.len() > GP_SIZE_GUARD {
                return Err(GpError::SizeGuard { size: cosets.len(), guard: GP_SIZE_GUARD });
            }
        }
    }
    let vertices: Vec<ParabolicCoset> = cosets.into_iter().collect();
    let n = vertices.len();
    let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
    for _ in 0..max_dim {
        let prev = levels.last().expect("level 0");
        let candidates: Vec<Vec<usize>> = prev
            .iter()
            .flat_map(|s| {
                let last = *s.last().expect("non-empty simplex");
                (last + 1..n).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            // every facet must already be a simplex
            .filter(|t| (0..t.len()).all(|i| {
                let mut f = t.clone();
                f.remove(i);
                prev.contains(&f)
            }))
            .collect();
        let kept = candidates
            .into_par_iter()
            .map(|t| {
                let cs: Vec<ParabolicCoset> = t.iter().map(|&i| vertices[i].clone()).collect();
                cic_simplex_test(pres, &cs).map(|ok| ok.then_some(t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let next: BTreeSet<Vec<usize>> = kept.into_iter().flatten().collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let all: Vec<Vec<usize>> = levels.into_iter().flatten().collect();
    let k = SimplicialComplex::from_faces(all.iter().map(|s| s.iter().map(|i| i.to_string()).collect::<Vec<_>>()));
    let simplices = k
        .maximal_faces()
        .into_iter()
        .map(|f| {
            let mut s: Vec<usize> = f.into_iter().map(|x| x.parse().expect("index label")).collect();
            s.sort_unstable();
            s
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(CICFragment { vertices, simplices, radius, max_exp, max_dim })
}

/// The ball of radius `r` about the identity in the quasi-median Cayley
/// graph of a graph product of finite cyclic groups.
#[derive(Clone, Debug)]
pub struct QmBall {
    pub graph: Graph,
    pub elements: Vec<NormalForm>,
    pub radius: usize,
    /// Structure is asserted only within this radius.
    pub trust_radius: usize,
}

pub fn qm_ball(pres: &GPPresentation, r: usize) -> Result<QmBall, GpError> {
    if let Some(u) = pres.orders.iter().position(|&o| o == 0) {
        return Err(GpError::InfiniteOrder(pres.graph.label(u).to_string()));
    }
    if r == 0 {
        return Err(GpError::Precondition("ball radius must be at least 1".into()));
    }
    let gens: Vec<NormalForm> = pres
        .graph
        .vertices()
        .flat_map(|u| (1..pres.order(u) as i64).map(move |e| NormalForm(vec![Syllable { vertex: u, exp: e }])))
        .collect();
    let mut index: HashMap<NormalForm, usize> = HashMap::from([(NormalForm::identity(), 0)]);
    let mut elements = vec![NormalForm::identity()];
    let mut start = 0;
    for _ in 0..r {
        let end = elements.len();
        for i in start..end {
            for s in &gens {
                let h = multiply(pres, &elements[i], s)?;
                if h.len() > elements[i].len() && !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                    if elements.len() > GP_SIZE_GUARD {
                        return Err(GpError::SizeGuard { size: elements.len(), guard: GP_SIZE_GUARD });
                    }
                }
            }
        }
        start = end;
    }
    let mut edges = BTreeSet::new();
    for (i, g) in elements.iter().enumerate() {
        for s in &gens {
            if let Some(&j) = index.get(&multiply(pres, g, s)?) {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    // brackets keep element labels apart from vertex names such as `1`
    let labels = elements.iter().map(|g| format!("[{}]", if g.is_identity() { String::new() } else { pres.format(g) })).collect();
    let graph = Graph::from_index_edges(labels, &edges.into_iter().collect::<Vec<_>>())?;
    Ok(QmBall { graph, elements, radius: r, trust_radius: r.saturating_sub(2) })
}

/// Outcome of the structural checks on a ball; each list holds failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BallReport {
    /// Maximal cliques at the identity differ from the vertex subgroups.
    pub clique_failures: Vec<String>,
    /// Carrier of the hyperplane through `<u>` differs from `<star u>` inside the trust ball.
    pub carrier_failures: Vec<String>,
    /// A hyperplane with several labels, or transverse hyperplanes with non-adjacent labels.
    pub label_failures: Vec<String>,
    /// Vertices of the trust ball that disconnect the ball.
    pub cut_vertices_in_trust: Vec<String>,
}

impl BallReport {
    pub fn passed(&self) -> bool {
        self.clique_failures.is_empty()
            && self.carrier_failures.is_empty()
            && self.label_failures.is_empty()
            && self.cut_vertices_in_trust.is_empty()
    }
}

pub fn verify_ball(pres: &GPPresentation, ball: &QmBall) -> Result<BallReport, GpError> {
    let x = QMGraph::new(ball.graph.clone())?;
    let g = &ball.graph;
    let len = |v: Vertex| ball.elements[v].len();
    let trust: VertexSet = g.vertices().filter(|&v| len(v) <= ball.trust_radius).collect();
    let index: HashMap<&NormalForm, usize> = ball.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut report = BallReport::default();

    let at_identity: BTreeSet<VertexSet> = x.cliques_at(0).into_iter().cloned().collect();
    let expected: BTreeSet<VertexSet> = pres
        .graph
        .vertices()
        .map(|u| {
            let mut c: VertexSet = (1..pres.order(u) as i64)
                .map(|e| index[&NormalForm(vec![Syllable { vertex: u, exp: e }])])
                .collect();
            c.insert(0);
            c
        })
        .collect();
    if at_identity != expected {
        report.clique_failures.push(format!("{} cliques at the identity, {} vertex groups", at_identity.len(), expected.len()));
    }

    for u in pres.graph.vertices() {
        let gen = index[&NormalForm(vec![Syllable { vertex: u, exp: 1 }])];
        let j = x.edge_hyperplane(0, gen);
        let carrier = &x.hyperplanes()[j.0].carrier;
        let star = pres.graph.star(u);
        let got: VertexSet = carrier.intersection(&trust).copied().collect();
        let want: VertexSet = trust.iter().copied().filter(|&v| parabolic_membership(&ball.elements[v], &star)).collect();
        if got != want {
            report.carrier_failures.push(pres.graph.label(u).to_string());
        }
    }

    let label_of = |a: Vertex, b: Vertex| -> Result<Vertex, GpError> {
        let q = quotient(pres, &ball.elements[a], &ball.elements[b])?;
        Ok(q.syllables()[0].vertex)
    };
    let mut labels: BTreeMap<usize, BTreeSet<Vertex>> = BTreeMap::new();
    for &(a, b) in x.edges() {
        if trust.contains(&a) && trust.contains(&b) {
            labels.entry(x.edge_hyperplane(a, b).0).or_default().insert(label_of(a, b)?);
        }
    }
    for (j, ls) in &labels {
        if ls.len() > 1 {
            report.label_failures.push(format!("h{j} carries labels {}", pres.format_set(ls)));
        }
    }
    let ids: Vec<usize> = labels.keys().copied().collect();
    for (i, &j) in ids.iter().enumerate() {
        for &k in &ids[i + 1..] {
            if !x.transverse(crate::HyperplaneId(j), crate::HyperplaneId(k)) {
                continue;
            }
            let (lj, lk) = (labels[&j].first().copied(), labels[&k].first().copied());
            if let (Some(a), Some(b)) = (lj, lk) {
                if !pres.graph.adjacent(a, b) {
                    report.label_failures.push(format!("h{j} and h{k} are transverse with non-adjacent labels"));
                }
            }
        }
    }

    if pres.graph.is_connected() && pres.graph.len() >= 2 {
        let cuts = g.cut_vertices()?;
        report.cut_vertices_in_trust = cuts.intersection(&trust).map(|&v| g.label(v).to_string()).collect();
    }
    Ok(report)
}
