//! Embedded planar bipartite graphs with boundary nodes.
//!
//! An [`EmbeddedGraph`] carries exact straight-line coordinates for every
//! vertex, a positive rational weight for every edge, and an ordered list of
//! boundary *nodes* (vertex ids listed counterclockwise around the outer
//! face).  Node labels `1..=2n` always refer to positions in that list.
//!
//! The text format is line oriented, with `#` starting a comment:
//!
//! ```text
//! vertex <id> <B|W> <x> <y>
//! edge <id1> <id2> <weight p/q>
//! nodes <id> <id> ...
//! rgb <r> <g> <b>
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::embed::{self, Embedding, Point};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational};
use crate::pairings::{Color, NodeColoring, Pairing};

/// A vertex with its bipartite colour and exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: u64,
    pub color: Color,
    pub x: Rational,
    pub y: Rational,
}

/// An undirected weighted edge between two vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: u64,
    pub v: u64,
    pub weight: Rational,
}

/// RGB class of a node under a contiguous split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rgb {
    Red,
    Green,
    Blue,
}

/// Contiguous RGB colouring of the nodes: labels `1..=r` are red, the next
/// `g` green and the last `b` blue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RgbSplit {
    pub r: usize,
    pub g: usize,
    pub b: usize,
}

impl RgbSplit {
    pub fn new(r: usize, g: usize, b: usize) -> Self {
        RgbSplit { r, g, b }
    }

    /// Total number of nodes covered.
    pub fn size(&self) -> usize {
        self.r + self.g + self.b
    }

    /// Whether a tripartite pairing exists for this split.
    pub fn satisfies_triangle(&self) -> bool {
        let (r, g, b) = (self.r, self.g, self.b);
        self.size().is_multiple_of(2) && r <= g + b && g <= r + b && b <= r + g
    }

    /// RGB class of node label `i` (1-based).
    pub fn class_of(&self, i: usize) -> Rgb {
        assert!(i >= 1 && i <= self.size(), "label outside the split");
        if i <= self.r {
            Rgb::Red
        } else if i <= self.r + self.g {
            Rgb::Green
        } else {
            Rgb::Blue
        }
    }

    /// Numbers of pairs joining each two classes in the tripartite pairing:
    /// `(|RG|, |RB|, |GB|)`.
    pub fn pair_counts(&self) -> Option<(usize, usize, usize)> {
        if !self.satisfies_triangle() {
            return None;
        }
        let (r, g, b) = (self.r, self.g, self.b);
        Some(((r + g - b) / 2, (r + b - g) / 2, (g + b - r) / 2))
    }

    /// The split left after removing the given node labels.
    pub fn without(&self, removed: &[usize]) -> RgbSplit {
        let mut s = *self;
        for &i in removed {
            match self.class_of(i) {
                Rgb::Red => s.r -= 1,
                Rgb::Green => s.g -= 1,
                Rgb::Blue => s.b -= 1,
            }
        }
        s
    }

    /// Every split of `size` nodes satisfying the triangle inequality.
    pub fn all_valid(size: usize) -> Vec<RgbSplit> {
        let mut out = Vec::new();
        for r in 0..=size {
            for g in 0..=size - r {
                let s = RgbSplit::new(r, g, size - r - g);
                if s.satisfies_triangle() {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl std::str::FromStr for RgbSplit {
    type Err = Error;
    /// Parses `r,g,b`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Precondition(format!("split must look like r,g,b: {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<usize> = parts.iter().map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?;
        Ok(RgbSplit::new(v[0], v[1], v[2]))
    }
}

/// A validated planar bipartite graph with boundary nodes.
#[derive(Debug, Clone)]
pub struct EmbeddedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    nodes: Vec<u64>,
    rgb: Option<RgbSplit>,
    index: HashMap<u64, usize>,
    embedding: Embedding,
}

impl PartialEq for EmbeddedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.nodes == other.nodes && self.rgb == other.rgb
    }
}

impl Eq for EmbeddedGraph {}

impl EmbeddedGraph {
    /// Builds and validates a graph.  Vertices are stored in ascending id
    /// order; edges keep their given order.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, nodes: Vec<u64>, rgb: Option<RgbSplit>) -> Result<Self> {
        Self::build(vertices, edges, nodes, rgb, true)
    }

    /// Builds a graph that is known to be a subgraph of a validated drawing,
    /// skipping the quadratic crossing checks and the node-placement checks:
    /// deleting vertices may split the graph so that surviving nodes of
    /// different components interleave, which is harmless for partition
    /// functions.
    fn build_trusted(vertices: Vec<Vertex>, edges: Vec<Edge>, nodes: Vec<u64>, rgb: Option<RgbSplit>) -> Result<Self> {
        Self::build(vertices, edges, nodes, rgb, false)
    }

    fn build(
        mut vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        nodes: Vec<u64>,
        rgb: Option<RgbSplit>,
        check_geometry: bool,
    ) -> Result<Self> {
        vertices.sort_by_key(|v| v.id);
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut seen = HashSet::new();
        let mut ends = Vec::with_capacity(edges.len());
        for e in &edges {
            let u = *index.get(&e.u).ok_or(Error::Unknown { kind: "vertex", id: e.u })?;
            let v = *index.get(&e.v).ok_or(Error::Unknown { kind: "vertex", id: e.v })?;
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", e.u)));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("parallel edge {}-{}", e.u, e.v)));
            }
            if !e.weight.is_positive() {
                return Err(Error::InvalidGraph(format!("edge {}-{} has non-positive weight", e.u, e.v)));
            }
            if vertices[u].color == vertices[v].color {
                return Err(Error::NotBipartite(e.u, e.v));
            }
            ends.push((u, v));
        }
        let points: Vec<Point> = vertices.iter().map(|v| Point { x: v.x.clone(), y: v.y.clone() }).collect();
        if check_geometry {
            check_drawing(&vertices, &points, &ends)?;
        }
        let embedding = Embedding::new(&points, &ends);

        let g = EmbeddedGraph { vertices, edges, nodes, rgb, index, embedding };
        if check_geometry {
            g.check_nodes(&points)?;
        }
        Ok(g)
    }

    fn check_nodes(&self, points: &[Point]) -> Result<()> {
        let mut seen = HashSet::new();
        let mut black = 0;
        for &id in &self.nodes {
            let i = self.vertex_index(id)?;
            if !seen.insert(id) {
                return Err(Error::InvalidGraph(format!("node {id} listed twice")));
            }
            if self.vertices[i].color == Color::Black {
                black += 1;
            }
        }
        if 2 * black != self.nodes.len() {
            return Err(Error::UnbalancedNodes { black, white: self.nodes.len() - black });
        }
        if let Some(s) = self.rgb {
            if s.size() != self.nodes.len() {
                return Err(Error::SplitMismatch { r: s.r, g: s.g, b: s.b, nodes: self.nodes.len() });
            }
        }

        let emb = &self.embedding;
        // Components lying inside a bounded face of another component do not
        // touch the unbounded face.
        let mut enclosed = vec![false; emb.components];
        for c in 0..emb.components {
            let rep = emb.component.iter().position(|&k| k == c).expect("non-empty component");
            enclosed[c] = emb
                .bounded_faces()
                .filter(|f| f.component != c)
                .any(|f| embed::winding_number(points, &f.walk, &points[rep]) != 0);
        }

        // Node labels per component must be cyclically contiguous and follow
        // that component's counterclockwise outer walk.
        let comp_of: Vec<usize> = self.nodes.iter().map(|&id| emb.component[self.index[&id]]).collect();
        let m = comp_of.len();
        let mut blocks = 0;
        for k in 0..m {
            if comp_of[k] != comp_of[(k + m - 1) % m] {
                blocks += 1;
            }
        }
        let distinct: BTreeSet<usize> = comp_of.iter().copied().collect();
        if m > 0 && blocks.max(1) != distinct.len() {
            return Err(Error::InvalidGraph("nodes of different components interleave".into()));
        }
        for &c in &distinct {
            let walk = emb.outer_walk_ccw(c);
            let on_walk: HashSet<usize> = walk.iter().copied().collect();
            let mine: Vec<usize> = self.nodes.iter().map(|id| self.index[id]).filter(|&i| emb.component[i] == c).collect();
            for &i in &mine {
                if enclosed[c] || !on_walk.contains(&i) {
                    return Err(Error::NodeNotOnOuterFace(self.vertices[i].id));
                }
            }
            if !embed::is_cyclic_subsequence(&walk, &mine) {
                return Err(Error::NodeNotOnOuterFace(self.vertices[mine[0]].id));
            }
        }
        Ok(())
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges in input order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Node vertex ids, counterclockwise (label `i` is `nodes()[i-1]`).
    pub fn nodes(&self) -> &[u64] {
        &self.nodes
    }

    pub fn rgb(&self) -> Option<RgbSplit> {
        self.rgb
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Number of nodes (`2n`).
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Index of a vertex id in [`vertices`](Self::vertices).
    pub fn vertex_index(&self, id: u64) -> Result<usize> {
        self.index.get(&id).copied().ok_or(Error::Unknown { kind: "vertex", id })
    }

    /// Endpoint indices of every edge.
    pub fn edge_ends(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (self.index[&e.u], self.index[&e.v])).collect()
    }

    /// Vertex id of node label `i`.
    pub fn node_id(&self, label: usize) -> Result<u64> {
        if label == 0 || label > self.nodes.len() {
            return Err(Error::Unknown { kind: "node", id: label as u64 });
        }
        Ok(self.nodes[label - 1])
    }

    /// The black/white colouring of the nodes.
    pub fn node_coloring(&self) -> NodeColoring {
        NodeColoring::new(self.nodes.iter().map(|id| self.vertices[self.index[id]].color).collect())
            .expect("node colours are balanced by construction")
    }

    /// The same graph with a different RGB split (checked against the node
    /// count).
    pub fn with_rgb(&self, rgb: Option<RgbSplit>) -> Result<Self> {
        if let Some(s) = rgb {
            if s.size() != self.nodes.len() {
                return Err(Error::SplitMismatch { r: s.r, g: s.g, b: s.b, nodes: self.nodes.len() });
            }
        }
        let mut g = self.clone();
        g.rgb = rgb;
        Ok(g)
    }

    /// The same drawing with no boundary nodes.
    pub fn without_nodes(&self) -> Self {
        let mut g = self.clone();
        g.nodes.clear();
        g.rgb = None;
        g
    }

    /// Removes the listed vertices (and incident edges).  Removed nodes drop
    /// out of the node list; the RGB split is dropped.
    pub fn delete_vertices(&self, ids: &[u64]) -> Result<Self> {
        for &id in ids {
            self.vertex_index(id)?;
        }
        let gone: HashSet<u64> = ids.iter().copied().collect();
        let vertices = self.vertices.iter().filter(|v| !gone.contains(&v.id)).cloned().collect();
        let edges = self.edges.iter().filter(|e| !gone.contains(&e.u) && !gone.contains(&e.v)).cloned().collect();
        let nodes = self.nodes.iter().copied().filter(|id| !gone.contains(id)).collect();
        Self::build_trusted(vertices, edges, nodes, None)
    }

    /// `G ∖ s` for a set of node labels: the node vertices are deleted and the
    /// surviving nodes keep their counterclockwise order.  Returns the graph
    /// together with the original labels of the surviving nodes.  The RGB
    /// split, if any, shrinks accordingly.
    pub fn delete_nodes(&self, s: &[usize]) -> Result<(Self, Vec<usize>)> {
        let labels = self.check_labels(s)?;
        let ids: Vec<u64> = labels.iter().map(|&l| self.nodes[l - 1]).collect();
        let mut g = self.delete_vertices(&ids)?;
        g.rgb = self.rgb.map(|r| r.without(&labels.iter().copied().collect::<Vec<_>>()));
        let survivors = (1..=self.nodes.len()).filter(|l| !labels.contains(l)).collect();
        Ok((g, survivors))
    }

    /// Keeps every vertex but stops treating the listed node labels as
    /// nodes; they become internal vertices.  The RGB split shrinks
    /// accordingly.  Returns the graph and the surviving original labels.
    pub fn demote_nodes(&self, s: &[usize]) -> Result<(Self, Vec<usize>)> {
        let labels = self.check_labels(s)?;
        let mut g = self.clone();
        g.nodes = self.nodes.iter().enumerate().filter(|(k, _)| !labels.contains(&(k + 1))).map(|(_, &id)| id).collect();
        g.rgb = self.rgb.map(|r| r.without(&labels.iter().copied().collect::<Vec<_>>()));
        let black = g.nodes.iter().filter(|id| g.vertices[g.index[id]].color == Color::Black).count();
        if 2 * black != g.nodes.len() {
            return Err(Error::UnbalancedNodes { black, white: g.nodes.len() - black });
        }
        let survivors = (1..=self.nodes.len()).filter(|l| !labels.contains(l)).collect();
        Ok((g, survivors))
    }

    fn check_labels(&self, s: &[usize]) -> Result<BTreeSet<usize>> {
        let mut labels = BTreeSet::new();
        for &l in s {
            if l == 0 || l > self.nodes.len() {
                return Err(Error::Unknown { kind: "node", id: l as u64 });
            }
            labels.insert(l);
        }
        Ok(labels)
    }

    /// Serialises to the text format; `parse_graph` of the result is equal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {} {} {} {}", v.id, v.color.letter(), fmt_rational(&v.x), fmt_rational(&v.y));
        }
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {} {}", e.u, e.v, fmt_rational(&e.weight));
        }
        let ids: Vec<String> = self.nodes.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "nodes {}", ids.join(" "));
        if let Some(s) = self.rgb {
            let _ = writeln!(out, "rgb {} {} {}", s.r, s.g, s.b);
        }
        out
    }

    /// JSON mirror of the text format, with rationals as `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id,
                    color: v.color.letter().to_string(),
                    x: fmt_rational(&v.x),
                    y: fmt_rational(&v.y),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { u: e.u, v: e.v, weight: fmt_rational(&e.weight) })
                .collect(),
            nodes: self.nodes.clone(),
            rgb: self.rgb.map(|s| [s.r, s.g, s.b]),
        };
        serde_json::to_value(doc).expect("graph serialises")
    }
}

#[derive(Serialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    nodes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rgb: Option<[usize; 3]>,
}

#[derive(Serialize)]
struct VertexJson {
    id: u64,
    color: String,
    x: String,
    y: String,
}

#[derive(Serialize)]
struct EdgeJson {
    u: u64,
    v: u64,
    weight: String,
}

fn check_drawing(vertices: &[Vertex], points: &[Point], ends: &[(usize, usize)]) -> Result<()> {
    let mut at: HashMap<(&Rational, &Rational), u64> = HashMap::new();
    for v in vertices {
        if let Some(other) = at.insert((&v.x, &v.y), v.id) {
            return Err(Error::InvalidGraph(format!("vertices {other} and {} coincide", v.id)));
        }
    }
    let label = |e: usize| format!("{}-{}", vertices[ends[e].0].id, vertices[ends[e].1].id);
    for (e, &(a, b)) in ends.iter().enumerate() {
        for (k, p) in points.iter().enumerate() {
            if k != a && k != b && embed::on_segment(&points[a], &points[b], p) {
                return Err(Error::InvalidGraph(format!("vertex {} lies on edge {}", vertices[k].id, label(e))));
            }
        }
        for (f, &(c, d)) in ends.iter().enumerate().skip(e + 1) {
            let shared = [a, b].iter().copied().find(|x| *x == c || *x == d);
            let crossing = match shared {
                Some(s) => {
                    let far1 = if a == s { b } else { a };
                    let far2 = if c == s { d } else { c };
                    embed::overlap_at_shared_endpoint(&points[s], &points[far1], &points[far2])
                }
                None => embed::segments_intersect(&points[a], &points[b], &points[c], &points[d]),
            };
            if crossing {
                return Err(Error::CrossingEdges(label(e), label(f)));
            }
        }
    }
    Ok(())
}

/// Parses and validates the text format.
pub fn parse_graph(text: &str) -> Result<EmbeddedGraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut nodes: Option<Vec<u64>> = None;
    let mut rgb = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Syntax { line, message };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let id = |t: &str| t.parse::<u64>().map_err(|_| err(format!("bad vertex id {t:?}")));
        let rational = |t: &str| parse_rational(t).ok_or_else(|| err(format!("bad rational {t:?}")));
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 5 {
                    return Err(err("expected: vertex <id> <B|W> <x> <y>".into()));
                }
                let color = match tokens[2] {
                    "B" | "b" => Color::Black,
                    "W" | "w" => Color::White,
                    other => return Err(err(format!("colour must be B or W, got {other:?}"))),
                };
                vertices.push(Vertex { id: id(tokens[1])?, color, x: rational(tokens[3])?, y: rational(tokens[4])? });
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(err("expected: edge <id1> <id2> <weight>".into()));
                }
                edges.push(Edge { u: id(tokens[1])?, v: id(tokens[2])?, weight: rational(tokens[3])? });
            }
            "nodes" => {
                if nodes.is_some() {
                    return Err(err("duplicate nodes line".into()));
                }
                nodes = Some(tokens[1..].iter().map(|t| id(t)).collect::<Result<_>>()?);
            }
            "rgb" => {
                if tokens.len() != 4 {
                    return Err(err("expected: rgb <r> <g> <b>".into()));
                }
                let count = |t: &str| t.parse::<usize>().map_err(|_| err(format!("bad count {t:?}")));
                rgb = Some(RgbSplit::new(count(tokens[1])?, count(tokens[2])?, count(tokens[3])?));
            }
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }
    EmbeddedGraph::new(vertices, edges, nodes.unwrap_or_default(), rgb)
}

/// The unique planar pairing of `size` nodes in which no pair lies inside
/// one RGB class.  Circularly adjacent nodes of different classes are paired
/// and removed, always choosing a pair whose removal keeps the remaining
/// class sizes within the triangle inequality, until nothing is left.
pub fn rgb_pairing(size: usize, split: RgbSplit) -> Result<Pairing> {
    if split.size() != size {
        return Err(Error::SplitMismatch { r: split.r, g: split.g, b: split.b, nodes: size });
    }
    if !split.satisfies_triangle() {
        return Err(Error::NoTripartitePairing(split.r, split.g, split.b));
    }
    let mut live: Vec<usize> = (1..=size).collect();
    let mut left = split;
    let mut pairs = Vec::with_capacity(size / 2);
    while !live.is_empty() {
        let m = live.len();
        let k = (0..m)
            .find(|&k| {
                let (a, b) = (live[k], live[(k + 1) % m]);
                split.class_of(a) != split.class_of(b) && shrink(left, split, &[a, b]).satisfies_triangle()
            })
            .ok_or(Error::NoTripartitePairing(split.r, split.g, split.b))?;
        let (a, b) = (live[k], live[(k + 1) % m]);
        left = shrink(left, split, &[a, b]);
        pairs.push((a, b));
        live.retain(|&x| x != a && x != b);
    }
    Pairing::new(&pairs)
}

/// `left` with the classes (under `split`) of `labels` decremented.
fn shrink(mut left: RgbSplit, split: RgbSplit, labels: &[usize]) -> RgbSplit {
    for &l in labels {
        match split.class_of(l) {
            Rgb::Red => left.r -= 1,
            Rgb::Green => left.g -= 1,
            Rgb::Blue => left.b -= 1,
        }
    }
    left
}

/// Maps a pairing on surviving labels (given as pairs) through the
/// order-preserving bijection of `survivors` onto `1..=m`.
pub fn relabel_consecutive(survivors: &[usize], pairs: &[(usize, usize)]) -> Result<(Pairing, BTreeMap<usize, usize>)> {
    let mut sorted = survivors.to_vec();
    sorted.sort_unstable();
    let map: BTreeMap<usize, usize> = sorted.iter().enumerate().map(|(k, &l)| (l, k + 1)).collect();
    let look = |l: usize| map.get(&l).copied().ok_or_else(|| Error::MalformedPairing(format!("label {l} was deleted")));
    let mapped = pairs.iter().map(|&(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
    let p = Pairing::new(&mapped)?;
    if p.size() != map.len() {
        return Err(Error::MalformedPairing("pairing does not cover the surviving nodes".into()));
    }
    Ok((p, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    pub(crate) const SINGLE_EDGE: &str = "vertex 1 B 0 0\nvertex 2 W 1 0\nedge 1 2 3/2\nnodes 1 2\n";

    #[test]
    fn parses_single_edge() {
        let g = parse_graph(SINGLE_EDGE).unwrap();
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges()[0].weight, rat(3, 2));
        assert_eq!(g.nodes(), &[1, 2]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mono = "vertex 1 B 0 0\nvertex 2 B 1 0\nedge 1 2 1\n";
        assert_eq!(parse_graph(mono), Err(Error::NotBipartite(1, 2)));
        let syntax = "vertex 1 B 0\n";
        assert!(matches!(parse_graph(syntax), Err(Error::Syntax { line: 1, .. })));
        let cross = "vertex 1 B 0 0\nvertex 2 W 2 2\nvertex 3 B 2 0\nvertex 4 W 0 2\nedge 1 2 1\nedge 3 4 1\n";
        assert!(matches!(parse_graph(cross), Err(Error::CrossingEdges(..))));
        let unbalanced = "vertex 1 B 0 0\nvertex 2 W 1 0\nedge 1 2 1\nnodes 1\n";
        assert!(matches!(parse_graph(unbalanced), Err(Error::UnbalancedNodes { .. })));
    }

    #[test]
    fn inner_node_is_rejected() {
        // A 3x3 grid whose centre vertex is listed as a node.
        let mut text = String::new();
        for y in 0..3 {
            for x in 0..3 {
                let c = if (x + y) % 2 == 0 { 'B' } else { 'W' };
                text += &format!("vertex {} {c} {x} {y}\n", 3 * y + x);
            }
        }
        for y in 0..3 {
            for x in 0..3 {
                if x < 2 {
                    text += &format!("edge {} {} 1\n", 3 * y + x, 3 * y + x + 1);
                }
                if y < 2 {
                    text += &format!("edge {} {} 1\n", 3 * y + x, 3 * y + x + 3);
                }
            }
        }
        let bad = format!("{text}nodes 1 4\n");
        assert!(matches!(parse_graph(&bad), Err(Error::NodeNotOnOuterFace(4))));
        let clockwise = format!("{text}nodes 0 3 8 1\n");
        assert!(matches!(parse_graph(&clockwise), Err(Error::NodeNotOnOuterFace(_))));
        let ccw = format!("{text}nodes 0 1 8 3\n");
        assert!(parse_graph(&ccw).is_ok());
    }

    #[test]
    fn round_trip() {
        let g = parse_graph(SINGLE_EDGE).unwrap();
        let again = parse_graph(&g.to_text()).unwrap();
        assert_eq!(g, again);
        assert_eq!(g.to_json()["edges"][0]["weight"], "3/2");
    }

    #[test]
    fn deletions() {
        let g = parse_graph(SINGLE_EDGE).unwrap();
        let (empty, survivors) = g.delete_nodes(&[1, 2]).unwrap();
        assert!(empty.vertices().is_empty() && survivors.is_empty());
        let (same, _) = g.delete_nodes(&[]).unwrap();
        assert_eq!(same, g);
        assert!(matches!(g.delete_nodes(&[3]), Err(Error::Unknown { .. })));
    }

    #[test]
    fn tripartite_pairings() {
        let sigma = rgb_pairing(8, RgbSplit::new(3, 3, 2)).unwrap();
        assert_eq!(sigma, Pairing::new(&[(1, 8), (3, 4), (5, 2), (7, 6)]).unwrap());
        assert_eq!(rgb_pairing(2, RgbSplit::new(1, 1, 0)).unwrap(), Pairing::new(&[(1, 2)]).unwrap());
        assert_eq!(rgb_pairing(6, RgbSplit::new(4, 1, 1)), Err(Error::NoTripartitePairing(4, 1, 1)));
    }

    #[test]
    fn relabelling() {
        let (p, _) = relabel_consecutive(&[1, 3, 4, 6, 7, 8], &[(1, 8), (3, 4), (7, 6)]).unwrap();
        assert_eq!(p, Pairing::new(&[(1, 6), (2, 3), (5, 4)]).unwrap());
        let (same, _) = relabel_consecutive(&[1, 2, 3, 4], &[(1, 4), (2, 3)]).unwrap();
        assert_eq!(same, Pairing::new(&[(1, 4), (2, 3)]).unwrap());
        let survivors: Vec<usize> = (1..=12).filter(|l| !(5..=8).contains(l)).collect();
        let pairs: Vec<(usize, usize)> = survivors.chunks(2).map(|c| (c[0], c[1])).collect();
        let (_, map) = relabel_consecutive(&survivors, &pairs).unwrap();
        assert_eq!((map[&9], map[&12]), (5, 8));
        assert!(relabel_consecutive(&[1, 2], &[(1, 3)]).is_err());
    }
}
