//! Line-oriented text formats: graphs, presentations, gated families,
//! complexes and dot-like edge lists.
//!
//! Graph files hold one adjacency line `v: n1 n2 ...` per vertex. Vertices
//! first seen as neighbours are created too, and every edge is closed
//! symmetrically. `#` starts a comment everywhere.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use hypercx_core::graph_products::GPPresentation;
use hypercx_core::{Graph, SimplicialComplex};

use crate::CliError;

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn parse_graph_file(path: &Path) -> Result<Graph, CliError> {
    parse_graph_str(&read_file(path)?)
}

/// Vertices heading a line come first, in line order, then vertices seen only
/// as neighbours. A vertex may head at most one line; a second line for it
/// is rejected even when it agrees with the first.
pub fn parse_graph_str(text: &str) -> Result<Graph, CliError> {
    let mut rows: Vec<(&str, Vec<&str>)> = Vec::new();
    let mut declared: HashMap<&str, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let Some((head, tail)) = line.split_once(':') else {
            return Err(parse_err(n, format!("expected `vertex: neighbours`, got `{line}`")));
        };
        let head = head.trim();
        if head.is_empty() || head.contains(char::is_whitespace) {
            return Err(parse_err(n, format!("bad vertex name `{head}`")));
        }
        if tail.contains(':') {
            return Err(parse_err(n, "more than one `:`"));
        }
        if let Some(first) = declared.insert(head, n) {
            return Err(parse_err(n, format!("vertex `{head}` already has an adjacency line (line {first})")));
        }
        let nbs: Vec<&str> = tail.split_whitespace().collect();
        if nbs.contains(&head) {
            return Err(parse_err(n, format!("loop at `{head}`")));
        }
        rows.push((head, nbs));
    }
    if rows.is_empty() {
        return Err(CliError::Parse { line: 0, message: "no vertices".into() });
    }
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let names = rows.iter().map(|r| r.0).chain(rows.iter().flat_map(|r| r.1.iter().copied()));
    for l in names {
        index.entry(l).or_insert_with(|| {
            labels.push(l.to_string());
            labels.len() - 1
        });
    }
    let edges: Vec<(usize, usize)> =
        rows.iter().flat_map(|(h, nbs)| nbs.iter().map(|w| (index[h], index[w]))).collect();
    Ok(Graph::from_index_edges(labels, &edges)?)
}

/// Every vertex gets a line listing all its neighbours, in vertex order.
pub fn emit_graph(g: &Graph) -> String {
    let mut s = String::new();
    for v in g.vertices() {
        let mut nbs: Vec<usize> = g.neighbors(v).to_vec();
        nbs.sort_unstable();
        let names: Vec<&str> = nbs.iter().map(|&w| g.label(w)).collect();
        if names.is_empty() {
            let _ = writeln!(s, "{}:", g.label(v));
        } else {
            let _ = writeln!(s, "{}: {}", g.label(v), names.join(" "));
        }
    }
    s
}

pub fn parse_presentation_file(path: &Path) -> Result<GPPresentation, CliError> {
    parse_presentation_str(&read_file(path)?)
}

/// `vertex name order` lines followed by `edge a b` lines; order 0 is
/// infinite cyclic. Edges may only name declared vertices.
pub fn parse_presentation_str(text: &str) -> Result<GPPresentation, CliError> {
    let mut labels: Vec<String> = Vec::new();
    let mut orders: Vec<u64> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok.as_slice() {
            ["vertex", name, order] => {
                if !edges.is_empty() {
                    return Err(parse_err(n, "vertex lines must precede edge lines"));
                }
                let order: u64 = order.parse().map_err(|_| parse_err(n, format!("bad order `{order}`")))?;
                if order == 1 {
                    return Err(parse_err(n, format!("vertex `{name}` has order 1; vertex groups must be non-trivial")));
                }
                if index.insert(name.to_string(), labels.len()).is_some() {
                    return Err(parse_err(n, format!("vertex `{name}` declared twice")));
                }
                labels.push(name.to_string());
                orders.push(order);
            }
            ["edge", a, b] => {
                let look = |l: &str| index.get(l).copied().ok_or_else(|| parse_err(n, format!("unknown endpoint `{l}`")));
                let (u, v) = (look(a)?, look(b)?);
                if u == v {
                    return Err(parse_err(n, format!("loop at `{a}`")));
                }
                edges.push((u, v));
            }
            _ => return Err(parse_err(n, format!("expected `vertex name order` or `edge a b`, got `{line}`"))),
        }
    }
    if labels.is_empty() {
        return Err(CliError::Parse { line: 0, message: "no vertices".into() });
    }
    let graph = Graph::from_index_edges(labels, &edges)?;
    Ok(GPPresentation::new(graph, orders)?)
}

pub fn emit_presentation(p: &GPPresentation) -> String {
    let g = p.graph();
    let mut s = String::new();
    for v in g.vertices() {
        let _ = writeln!(s, "vertex {} {}", g.label(v), p.order(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "edge {} {}", g.label(u), g.label(v));
    }
    s
}

/// Gated family members, one per line as whitespace-separated vertex labels.
pub fn parse_family_str(g: &Graph, text: &str) -> Result<Vec<BTreeSet<usize>>, CliError> {
    let mut members = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let member = line
            .split_whitespace()
            .map(|l| g.vertex(l).ok_or_else(|| parse_err(i + 1, format!("unknown vertex `{l}`"))))
            .collect::<Result<BTreeSet<_>, _>>()?;
        members.push(member);
    }
    if members.is_empty() {
        return Err(CliError::Parse { line: 0, message: "no family members".into() });
    }
    Ok(members)
}

/// `vertices:` lists one label per line, in the complex's sorted order;
/// `maximal_faces:` lists each face as indices into that list.
pub fn emit_complex(k: &SimplicialComplex) -> String {
    let mut s = String::from("vertices:\n");
    for v in k.vertices() {
        let _ = writeln!(s, "  {v}");
    }
    s.push_str("maximal_faces:\n");
    for f in k.face_indices() {
        let idx: Vec<String> = f.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "  {}", idx.join(" "));
    }
    s
}

pub fn parse_complex_str(text: &str) -> Result<SimplicialComplex, CliError> {
    #[derive(PartialEq)]
    enum Block {
        None,
        Vertices,
        Faces,
    }
    let mut block = Block::None;
    let mut vertices: Vec<String> = Vec::new();
    let mut faces: Vec<Vec<String>> = Vec::new();
    let (mut saw_v, mut saw_f) = (false, false);
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        match raw.trim_end() {
            "vertices:" if !saw_v => {
                block = Block::Vertices;
                saw_v = true;
                continue;
            }
            "maximal_faces:" if saw_v && !saw_f => {
                block = Block::Faces;
                saw_f = true;
                continue;
            }
            "" => continue,
            _ => {}
        }
        let Some(body) = raw.strip_prefix("  ") else {
            return Err(parse_err(n, format!("unexpected line `{raw}`")));
        };
        match block {
            Block::None => return Err(parse_err(n, "entry before `vertices:`")),
            Block::Vertices => vertices.push(body.to_string()),
            Block::Faces => {
                let face = body
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .ok()
                            .and_then(|j| vertices.get(j).cloned())
                            .ok_or_else(|| parse_err(n, format!("bad vertex index `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                faces.push(face);
            }
        }
    }
    if !(saw_v && saw_f) {
        return Err(CliError::Parse { line: 0, message: "missing `vertices:` or `maximal_faces:` block".into() });
    }
    Ok(SimplicialComplex::with_vertices(vertices, faces))
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One `u -- v` line per edge of the 1-skeleton; isolated vertices get a
/// line of their own. Labels are quoted for external viewers.
pub fn emit_complex_dot(k: &SimplicialComplex) -> String {
    let edges = k.one_skeleton();
    let touched: BTreeSet<&str> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut s = String::new();
    for v in k.vertices().iter().filter(|v| !touched.contains(v.as_str())) {
        let _ = writeln!(s, "{}", quote(v));
    }
    for (a, b) in edges {
        let _ = writeln!(s, "{} -- {}", quote(a), quote(b));
    }
    s
}

pub fn emit_graph_dot(g: &Graph) -> String {
    let mut s = String::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(s, "{}", quote(g.label(v)));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} -- {}", quote(g.label(u)), quote(g.label(v)));
    }
    s
}
