//! Finite simple graphs and the combinatorial queries the rest of the crate
//! is built on: cliques, joins, blocks, products and small-graph isomorphism.
//!
//! Vertices are dense indices `0..n` carrying string labels. Subgraphs are
//! always vertex sets with the induced-subgraph convention.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Default vertex bound for [`Graph::are_isomorphic`].
pub const ISOMORPHISM_GUARD: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("empty vertex set")]
    EmptySet,
    #[error("empty factor list")]
    NoFactors,
    #[error("isomorphism guard exceeded: {size} vertices > {guard}")]
    SizeGuard { size: usize, guard: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    Link,
    Star,
}

/// Result of splitting a vertex set into join factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinDecomposition {
    /// A single vertex, reported as a one-part join by convention.
    Trivial(VertexSet),
    /// At least two parts, pairwise completely connected.
    Parts(Vec<VertexSet>),
}

impl JoinDecomposition {
    pub fn parts(&self) -> Vec<VertexSet> {
        match self {
            JoinDecomposition::Trivial(s) => vec![s.clone()],
            JoinDecomposition::Parts(p) => p.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, JoinDecomposition::Trivial(_))
    }
}

/// 2-connected components; bridges appear as 2-vertex blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
}

#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    matrix: Vec<bool>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from labels (kept in input order) and labelled edges.
    /// Repeated edges are merged.
    pub fn new<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let v = *index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if u == v {
                return Err(GraphError::LoopEdge(a.to_string()));
            }
            pairs.push((u, v));
        }
        Ok(Self::assemble(labels, index, &pairs))
    }

    /// Builds a graph on `labels.len()` vertices from index pairs.
    /// Loops are rejected.
    pub fn from_index_edges(labels: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        for &(u, v) in edges {
            if u >= labels.len() || v >= labels.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(GraphError::LoopEdge(labels[u].clone()));
            }
        }
        Ok(Self::assemble(labels, index, edges))
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, Vertex>, edges: &[(Vertex, Vertex)]) -> Self {
        let n = labels.len();
        let mut matrix = vec![false; n * n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if !matrix[u * n + v] {
                matrix[u * n + v] = true;
                matrix[v * n + u] = true;
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { labels, index, adj, matrix }
    }

    pub fn complete(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_index_edges(labels, &edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_index_edges(labels, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_index_edges(labels, &edges).expect("valid cycle")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.len()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn vertex_or_err(&self, label: &str) -> Result<Vertex, GraphError> {
        self.vertex(label).ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    /// Labels of a vertex set, sorted by vertex index.
    pub fn set_labels(&self, set: &VertexSet) -> Vec<&str> {
        set.iter().map(|&v| self.label(v)).collect()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.matrix[u * self.len() + v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighborhood(&self, v: Vertex, kind: Neighborhood) -> Result<VertexSet, GraphError> {
        if v >= self.len() {
            return Err(GraphError::UnknownVertex(format!("#{v}")));
        }
        let mut set: VertexSet = self.adj[v].iter().copied().collect();
        if kind == Neighborhood::Star {
            set.insert(v);
        }
        Ok(set)
    }

    pub fn link(&self, v: Vertex) -> VertexSet {
        self.adj[v].iter().copied().collect()
    }

    pub fn star(&self, v: Vertex) -> VertexSet {
        let mut s = self.link(v);
        s.insert(v);
        s
    }

    /// Vertices adjacent to every member of `set` (the common link).
    pub fn common_link(&self, set: &VertexSet) -> VertexSet {
        self.vertices()
            .filter(|&w| set.iter().all(|&s| self.adjacent(s, w)))
            .collect()
    }

    pub fn is_complete(&self, set: &VertexSet) -> bool {
        let v: Vec<_> = set.iter().copied().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !self.adjacent(v[i], v[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Induced subgraph together with the map from new indices to old ones.
    pub fn induced_subgraph(&self, set: &VertexSet) -> (Graph, Vec<Vertex>) {
        let old: Vec<Vertex> = set.iter().copied().collect();
        let mut new_of = HashMap::with_capacity(old.len());
        for (i, &v) in old.iter().enumerate() {
            new_of.insert(v, i);
        }
        let labels = old.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &v) in old.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = new_of.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        (Graph::from_index_edges(labels, &edges).expect("induced subgraph is simple"), old)
    }

    /// Connected components of the subgraph induced on `set`, each sorted,
    /// ordered by least member.
    pub fn components_within(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut seen: HashSet<Vertex> = HashSet::new();
        let mut out = Vec::new();
        for &s in set {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = VertexSet::new();
            comp.insert(s);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if set.contains(&w) && seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.all_vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    pub fn is_connected_within(&self, set: &VertexSet) -> bool {
        set.len() <= 1 || self.components_within(set).len() == 1
    }

    /// BFS distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Flat `n * n` distance table.
    pub fn all_distances(&self) -> Vec<usize> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n);
        for v in self.vertices() {
            out.extend(self.distances_from(v));
        }
        out
    }

    /// Inclusion-maximal complete vertex sets, via Bron–Kerbosch with
    /// Tomita pivoting. Sorted lexicographically.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let candidates: Vec<Vertex> = self.vertices().collect();
        let mut current = Vec::new();
        self.bron_kerbosch(&mut current, candidates, Vec::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        current: &mut Vec<Vertex>,
        mut candidates: Vec<Vertex>,
        mut excluded: Vec<Vertex>,
        out: &mut Vec<VertexSet>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() {
                out.push(current.iter().copied().collect());
            }
            return;
        }
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .copied()
            .max_by_key(|&p| candidates.iter().filter(|&&c| self.adjacent(p, c)).count())
            .expect("non-empty");
        let branch: Vec<Vertex> = candidates.iter().copied().filter(|&c| !self.adjacent(pivot, c)).collect();
        for v in branch {
            let next_c: Vec<Vertex> = candidates.iter().copied().filter(|&c| self.adjacent(v, c)).collect();
            let next_x: Vec<Vertex> = excluded.iter().copied().filter(|&c| self.adjacent(v, c)).collect();
            current.push(v);
            self.bron_kerbosch(current, next_c, next_x, out);
            current.pop();
            candidates.retain(|&c| c != v);
            excluded.push(v);
        }
    }

    /// Components of the complement of the subgraph induced on `set`.
    pub fn complement_components(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut seen: HashSet<Vertex> = HashSet::new();
        let mut out = Vec::new();
        for &s in set {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = VertexSet::new();
            comp.insert(s);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in set {
                    if w != u && !self.adjacent(u, w) && seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Finest join splitting of the subgraph induced on `set`: the parts are
    /// the components of its complement. `None` when that complement is
    /// connected and `set` has at least two vertices.
    pub fn join_decomposition(&self, set: &VertexSet) -> Result<Option<JoinDecomposition>, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if set.len() == 1 {
            return Ok(Some(JoinDecomposition::Trivial(set.clone())));
        }
        let parts = self.complement_components(set);
        if parts.len() < 2 {
            Ok(None)
        } else {
            Ok(Some(JoinDecomposition::Parts(parts)))
        }
    }

    /// Whether the induced subgraph on `set` is a join of at least two parts.
    pub fn is_join(&self, set: &VertexSet) -> bool {
        set.len() >= 2 && self.complement_components(set).len() >= 2
    }

    /// All inclusion-maximal vertex sets inducing a join of at least two
    /// nonempty parts, sorted lexicographically.
    ///
    /// Each maximal join `A * B` satisfies `A = L(B)` and `B = L(A)` where `L`
    /// is the common link, so the candidates are read off the closure system
    /// generated by intersecting vertex links.
    pub fn maximal_joins(&self) -> Result<Vec<VertexSet>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut closed: BTreeSet<VertexSet> = BTreeSet::new();
        let mut queue: VecDeque<VertexSet> = VecDeque::new();
        for v in self.vertices() {
            let l = self.link(v);
            if !l.is_empty() && closed.insert(l.clone()) {
                queue.push_back(l);
            }
        }
        while let Some(set) = queue.pop_front() {
            for v in self.vertices() {
                let meet: VertexSet = set.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
                if !meet.is_empty() && closed.insert(meet.clone()) {
                    queue.push_back(meet);
                }
            }
        }
        let mut candidates: BTreeSet<VertexSet> = BTreeSet::new();
        for b in &closed {
            let a = self.common_link(b);
            if !a.is_empty() {
                candidates.insert(a.union(b).copied().collect());
            }
        }
        let list: Vec<VertexSet> = candidates.into_iter().collect();
        let maximal = list
            .iter()
            .filter(|s| !list.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .cloned()
            .collect();
        Ok(maximal)
    }

    /// Block/cut-vertex decomposition (Hopcroft–Tarjan, iterative).
    pub fn blocks(&self) -> Result<BlockDecomposition, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.len();
        if n == 0 {
            return Ok(BlockDecomposition { blocks: vec![], cut_vertices: VertexSet::new() });
        }
        if n == 1 {
            return Ok(BlockDecomposition { blocks: vec![[0].into()], cut_vertices: VertexSet::new() });
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0usize;
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut blocks = Vec::new();
        let mut cut = VertexSet::new();
        // frame: (vertex, parent, next neighbor position, child count)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize, usize)> = vec![(0, None, 0, 0)];
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        while let Some(&mut (u, parent, ref mut pos, _)) = stack.last_mut() {
            if *pos < self.adj[u].len() {
                let w = self.adj[u][*pos];
                *pos += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((u, w));
                    stack.last_mut().expect("frame").3 += 1;
                    stack.push((w, Some(u), 0, 0));
                } else if Some(w) != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                let (u, parent, _, children) = stack.pop().expect("frame");
                if let Some(p) = parent {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = VertexSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                        if stack.len() > 1 || disc[p] != 0 {
                            cut.insert(p);
                        }
                    }
                } else if children >= 2 {
                    cut.insert(u);
                }
            }
        }
        blocks.sort();
        Ok(BlockDecomposition { blocks, cut_vertices: cut })
    }

    pub fn cut_vertices(&self) -> Result<VertexSet, GraphError> {
        Ok(self.blocks()?.cut_vertices)
    }

    /// Cartesian product; vertices are tuples in mixed-radix order with the
    /// first factor most significant, labelled `(l1,l2,...)`.
    pub fn cartesian_product(factors: &[Graph]) -> Result<Graph, GraphError> {
        if factors.is_empty() {
            return Err(GraphError::NoFactors);
        }
        if factors.iter().any(Graph::is_empty) {
            return Err(GraphError::EmptySet);
        }
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let sizes: Vec<usize> = factors.iter().map(Graph::len).collect();
        let total: usize = sizes.iter().product();
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut coords = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                coords[k] = idx % sizes[k];
                idx /= sizes[k];
            }
            coords
        };
        let encode = |coords: &[usize]| -> usize { coords.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + c) };
        let mut labels = Vec::with_capacity(total);
        let mut edges = Vec::new();
        for idx in 0..total {
            let coords = decode(idx);
            let parts: Vec<&str> = coords.iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
            labels.push(format!("({})", parts.join(",")));
            for (k, f) in factors.iter().enumerate() {
                for &w in f.neighbors(coords[k]) {
                    if w > coords[k] {
                        let mut other = coords.clone();
                        other[k] = w;
                        edges.push((idx, encode(&other)));
                    }
                }
            }
        }
        Graph::from_index_edges(labels, &edges)
    }

    /// Exact backtracking isomorphism search, returning `map[v] = image of v`.
    pub fn are_isomorphic(&self, other: &Graph, guard: usize) -> Result<Option<Vec<Vertex>>, GraphError> {
        let n = self.len();
        if n.max(other.len()) > guard {
            return Err(GraphError::SizeGuard { size: n.max(other.len()), guard });
        }
        if n != other.len() || self.edge_count() != other.edge_count() {
            return Ok(None);
        }
        let signature = |g: &Graph, v: Vertex| -> (usize, Vec<usize>) {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        };
        let sig_a: Vec<_> = self.vertices().map(|v| signature(self, v)).collect();
        let sig_b: Vec<_> = other.vertices().map(|v| signature(other, v)).collect();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return Ok(None);
        }
        let mut order: Vec<Vertex> = self.vertices().collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.iso_extend(other, &order, 0, &sig_a, &sig_b, &mut map, &mut used) {
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_extend(
        &self,
        other: &Graph,
        order: &[Vertex],
        depth: usize,
        sig_a: &[(usize, Vec<usize>)],
        sig_b: &[(usize, Vec<usize>)],
        map: &mut [Vertex],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in other.vertices() {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.adjacent(u, v) == other.adjacent(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.iso_extend(other, order, depth + 1, sig_a, sig_b, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }

    /// Whether `map` is an adjacency-preserving bijection onto `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[Vertex]) -> bool {
        if map.len() != self.len() || self.len() != other.len() {
            return false;
        }
        let image: HashSet<Vertex> = map.iter().copied().collect();
        if image.len() != map.len() || image.iter().any(|&w| w >= other.len()) {
            return false;
        }
        self.vertices()
            .all(|u| self.vertices().all(|v| self.adjacent(u, v) == other.adjacent(map[u], map[v])))
    }
}
