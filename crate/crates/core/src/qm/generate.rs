//! Generators of finite quasi-median graphs: Hamming graphs, products, and
//! gated amalgams. Every generated graph is re-validated.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{QMGraph, QmError};
use crate::graph::{Graph, Vertex, VertexSet};

fn validated(g: Graph) -> Result<QMGraph, QmError> {
    let x = QMGraph::new(g)?;
    x.require_valid()?;
    Ok(x)
}

/// Cartesian product of complete graphs `K_{s1} □ K_{s2} □ ...`.
pub fn hamming(sizes: &[usize]) -> Result<QMGraph, QmError> {
    if sizes.contains(&0) {
        return Err(QmError::EmptySet);
    }
    let factors: Vec<Graph> = sizes.iter().map(|&s| Graph::complete(s)).collect();
    validated(Graph::cartesian_product(&factors)?)
}

/// Cartesian product of quasi-median graphs.
pub fn product(parts: &[&QMGraph]) -> Result<QMGraph, QmError> {
    let factors: Vec<Graph> = parts.iter().map(|x| x.graph().clone()).collect();
    validated(Graph::cartesian_product(&factors)?)
}

/// `k` triangles glued in a chain, consecutive ones sharing one vertex.
pub fn triangle_chain(k: usize) -> Result<QMGraph, QmError> {
    let n = 2 * k + 1;
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for t in 0..k {
        let (a, b, c) = (2 * t, 2 * t + 1, 2 * t + 2);
        edges.extend([(a, b), (b, c), (a, c)]);
    }
    validated(Graph::from_index_edges(labels, &edges)?)
}

/// Uniform random labelled tree on `n` vertices (random attachment).
pub fn random_tree(n: usize, seed: u64) -> Result<QMGraph, QmError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    validated(Graph::from_index_edges(labels, &edges)?)
}

/// Glues `right` onto `left` along `glue = [(l, r), ...]`, which must be an
/// isomorphism between gated subgraphs. Vertices of `left` keep their labels;
/// new vertices take the labels of `right`, primed until unique.
pub fn amalgam(left: &QMGraph, right: &QMGraph, glue: &[(Vertex, Vertex)]) -> Result<QMGraph, QmError> {
    if glue.is_empty() {
        return Err(QmError::EmptySet);
    }
    let s1: VertexSet = glue.iter().map(|p| p.0).collect();
    let s2: VertexSet = glue.iter().map(|p| p.1).collect();
    if s1.len() != glue.len() || s2.len() != glue.len() {
        return Err(QmError::BadGluing("map is not injective".into()));
    }
    for (side, x, s) in [("left", left, &s1), ("right", right, &s2)] {
        if let Some(w) = x.is_gated(s).witness {
            return Err(QmError::BadGluing(format!("{side} subgraph not gated: {w}")));
        }
    }
    for &(a, b) in glue {
        for &(c, d) in glue {
            if left.graph().adjacent(a, c) != right.graph().adjacent(b, d) {
                return Err(QmError::BadGluing(format!("adjacency of ({a},{c}) vs ({b},{d})")));
            }
        }
    }
    let to_left: HashMap<Vertex, Vertex> = glue.iter().map(|&(a, b)| (b, a)).collect();
    let mut labels: Vec<String> = left.graph().labels().to_vec();
    let mut taken: std::collections::HashSet<String> = labels.iter().cloned().collect();
    let mut image = vec![usize::MAX; right.len()];
    for v in right.graph().vertices() {
        image[v] = match to_left.get(&v) {
            Some(&a) => a,
            None => {
                let mut l = right.graph().label(v).to_string();
                while taken.contains(&l) {
                    l.push('\'');
                }
                taken.insert(l.clone());
                labels.push(l);
                labels.len() - 1
            }
        };
    }
    let mut edges = left.edges().to_vec();
    for &(u, v) in right.edges() {
        edges.push((image[u], image[v]));
    }
    validated(Graph::from_index_edges(labels, &edges)?)
}

fn relabel_dense(x: &QMGraph) -> Result<QMGraph, QmError> {
    let labels = (0..x.len()).map(|i| i.to_string()).collect();
    QMGraph::new(Graph::from_index_edges(labels, x.edges())?)
}

/// Parameters for [`random`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    pub steps: usize,
    pub max_vertices: usize,
    pub max_degree: usize,
    /// Which gluings are allowed, by prism dimension: 0 = vertex, 1 = clique, 2 = square.
    pub glue_dims: Vec<usize>,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { seed: 0, steps: 5, max_vertices: 200, max_degree: 8, glue_dims: vec![0, 1, 2] }
    }
}

/// Small Hamming pieces used as building blocks.
pub const PIECES: &[&[usize]] = &[&[2], &[3], &[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];

/// Seeded sequence of gated amalgamations of Hamming pieces. A step whose
/// result breaks a bound or fails validation is retried; after 20 failed
/// attempts the step is dropped.
pub fn random(spec: &RandomSpec) -> Result<QMGraph, QmError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pick = |rng: &mut ChaCha8Rng| -> Result<QMGraph, QmError> { hamming(PIECES.choose(rng).expect("pieces")) };
    let mut x = pick(&mut rng)?;
    for _ in 0..spec.steps {
        for _attempt in 0..20 {
            let piece = pick(&mut rng)?;
            if x.len() + piece.len() > spec.max_vertices + 4 {
                continue;
            }
            let dim = *spec.glue_dims.choose(&mut rng).ok_or(QmError::Generator("no gluing shapes".into()))?;
            let Some(glue) = random_glue(&x, &piece, dim, &mut rng)? else {
                continue;
            };
            match amalgam(&x, &piece, &glue) {
                Ok(next) if next.len() <= spec.max_vertices && next.graph().max_degree() <= spec.max_degree => {
                    x = next;
                    break;
                }
                Ok(_) | Err(QmError::NotQuasiMedian(_)) | Err(QmError::BadGluing(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    relabel_dense(&x)
}

/// Coordinates of each prism vertex, factors ordered by clique size.
fn prism_frame(x: &QMGraph, p: &super::Prism) -> (Vec<usize>, BTreeMap<Vec<usize>, Vertex>) {
    let mut order: Vec<usize> = (0..p.factors.len()).collect();
    order.sort_by_key(|&i| p.factors[i].len());
    let shape = order.iter().map(|&i| p.factors[i].len()).collect();
    let mut coords = BTreeMap::new();
    for &v in &p.vertices {
        let c = p.coordinates(x, v);
        let key = order
            .iter()
            .map(|&i| p.factors[i].iter().position(|&w| w == c[i]).expect("coordinate in factor"))
            .collect();
        coords.insert(key, v);
    }
    (shape, coords)
}

fn random_glue(
    x: &QMGraph,
    piece: &QMGraph,
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<(Vertex, Vertex)>>, QmError> {
    if dim == 0 {
        return Ok(Some(vec![(rng.gen_range(0..x.len()), rng.gen_range(0..piece.len()))]));
    }
    let ours: Vec<&super::Prism> = x.all_prisms()?.iter().filter(|p| p.dimension() == dim).collect();
    let theirs: Vec<&super::Prism> = piece.all_prisms()?.iter().filter(|p| p.dimension() == dim).collect();
    let Some(p) = ours.choose(rng) else { return Ok(None) };
    let (shape, mine) = prism_frame(x, p);
    let matching: Vec<_> = theirs
        .iter()
        .map(|q| prism_frame(piece, q))
        .filter(|(s, _)| *s == shape)
        .collect();
    let Some((_, other)) = matching.choose(rng) else { return Ok(None) };
    // A random relabelling of each factor keeps the gluing a product isomorphism.
    let perms: Vec<Vec<usize>> = shape
        .iter()
        .map(|&s| {
            let mut p: Vec<usize> = (0..s).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let glue = mine
        .iter()
        .map(|(key, &v)| {
            let moved: Vec<usize> = key.iter().zip(&perms).map(|(&k, p)| p[k]).collect();
            (v, other[&moved])
        })
        .collect();
    Ok(Some(glue))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_examples() {
        let c4 = hamming(&[2, 2]).unwrap();
        assert!(c4.graph().are_isomorphic(&Graph::cycle(4), 12).unwrap().is_some());
        assert!(hamming(&[0, 2]).is_err());
    }

    #[test]
    fn amalgam_of_triangles_at_a_vertex() {
        let k3 = hamming(&[3]).unwrap();
        let bowtie = amalgam(&k3, &k3, &[(0, 0)]).unwrap();
        assert_eq!((bowtie.len(), bowtie.edges().len()), (5, 6));
        assert_eq!(bowtie.graph().cut_vertices().unwrap().len(), 1);
        // an edge of K3 is not gated
        assert!(matches!(amalgam(&k3, &k3, &[(0, 0), (1, 1)]), Err(QmError::BadGluing(_))));
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let spec = RandomSpec { seed: 7, steps: 5, max_vertices: 60, ..RandomSpec::default() };
        let a = random(&spec).unwrap();
        let b = random(&spec).unwrap();
        assert_eq!(a.graph(), b.graph());
        assert!(a.validation().passed());
        assert!(a.len() <= 60);
    }
}
