//! Kasteleyn sign weightings and the dimer partition function as a
//! determinant.
//!
//! A face of the embedding is *flat* when its edge signs multiply to
//! `(−1)^{len/2 + 1}`: an odd number of minus signs on a face whose boundary
//! length is 0 mod 4, an even number on one of length 2 mod 4.  (Boundary
//! walks are counted with multiplicity, so a bridge seen twice contributes
//! twice.)  With every bounded face flat, the signed bipartite adjacency
//! matrix `K` (black rows, white columns, ascending ids) satisfies
//! `|det K| = Z^D(G)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::embed::Face;
use crate::error::{Error, Result};
use crate::exact::{ser_rational, Matrix, Rational};
use crate::graph::EmbeddedGraph;
use crate::oracle;
use crate::pairings::Color;

/// A sign for every edge, indexed like [`EmbeddedGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KasteleynWeighting {
    pub signs: Vec<i8>,
}

/// Whether a face walk is flat under the given edge signs.
pub fn face_is_flat(face: &Face, signs: &[i8]) -> bool {
    let minus = face.edges.iter().filter(|&&e| signs[e] < 0).count();
    let len = face.edges.len();
    if len.is_multiple_of(4) {
        minus % 2 == 1
    } else {
        minus % 2 == 0
    }
}

/// Indices of bounded faces that are not flat.
pub fn non_flat_faces(g: &EmbeddedGraph, w: &KasteleynWeighting) -> Vec<usize> {
    g.embedding()
        .faces
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.outer && !face_is_flat(f, &w.signs))
        .map(|(i, _)| i)
        .collect()
}

/// Builds a weighting with every bounded face flat.
///
/// All edges of a spanning forest get `+1`.  The remaining edges form a
/// spanning tree of the dual rooted at each outer face, so bounded faces can
/// be peeled off leaf-first: a face with exactly one undecided edge fixes
/// that edge's sign.
pub fn build_weighting(g: &EmbeddedGraph) -> Result<KasteleynWeighting> {
    let n = g.vertices().len();
    if n % 2 == 1 {
        return Err(Error::OddVertexCount(n));
    }
    let emb = g.embedding();
    let m = g.edges().len();
    let mut signs: Vec<Option<i8>> = vec![None; m];

    // Breadth-first spanning forest from each component's lowest vertex.
    let mut reached = vec![false; n];
    for s in 0..n {
        if reached[s] {
            continue;
        }
        reached[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &emb.rotation[v] {
                if !reached[w] {
                    reached[w] = true;
                    signs[e] = Some(1);
                    queue.push_back(w);
                }
            }
        }
    }

    let bounded: Vec<usize> = (0..emb.faces.len()).filter(|&f| !emb.faces[f].outer).collect();
    let mut faces_of_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut open: HashMap<usize, usize> = HashMap::new();
    for &f in &bounded {
        let distinct: BTreeSet<usize> = emb.faces[f].edges.iter().copied().collect();
        let undecided = distinct.iter().filter(|&&e| signs[e].is_none()).count();
        for &e in &distinct {
            faces_of_edge[e].push(f);
        }
        open.insert(f, undecided);
    }
    let mut ready: VecDeque<usize> = bounded.iter().copied().filter(|f| open[f] == 1).collect();
    while let Some(f) = ready.pop_front() {
        if open[&f] != 1 {
            continue;
        }
        let face = &emb.faces[f];
        let e = *face.edges.iter().find(|&&e| signs[e].is_none()).expect("one undecided edge");
        let minus = face.edges.iter().filter(|&&x| x != e && signs[x] == Some(-1)).count();
        let want_odd = face.edges.len().is_multiple_of(4);
        signs[e] = Some(if (minus % 2 == 1) == want_odd { 1 } else { -1 });
        for &h in &faces_of_edge[e] {
            let c = open.get_mut(&h).expect("bounded face");
            *c -= 1;
            if *c == 1 {
                ready.push_back(h);
            }
        }
    }
    let signs: Vec<i8> = signs
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::InvalidGraph("could not orient every edge".into())))
        .collect::<Result<_>>()?;
    let w = KasteleynWeighting { signs };
    debug_assert!(non_flat_faces(g, &w).is_empty());
    Ok(w)
}

/// Black vertex indices and white vertex indices, each in ascending id order.
pub fn color_classes(g: &EmbeddedGraph) -> (Vec<usize>, Vec<usize>) {
    let black = (0..g.vertices().len()).filter(|&i| g.vertices()[i].color == Color::Black).collect();
    let white = (0..g.vertices().len()).filter(|&i| g.vertices()[i].color == Color::White).collect();
    (black, white)
}

/// The signed weighted biadjacency matrix: rows are black vertices and
/// columns white vertices, both in ascending id order.
pub fn kasteleyn_matrix(g: &EmbeddedGraph, w: &KasteleynWeighting) -> Matrix {
    let (black, white) = color_classes(g);
    let row: HashMap<usize, usize> = black.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let col: HashMap<usize, usize> = white.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut k = Matrix::zeros(black.len(), white.len());
    for (e, (u, v)) in g.edge_ends().into_iter().enumerate() {
        let (b, wh) = if row.contains_key(&u) { (u, v) } else { (v, u) };
        let weight = g.edges()[e].weight.clone();
        k[(row[&b], col[&wh])] = if w.signs[e] < 0 { -weight } else { weight };
    }
    k
}

/// `Z^D(G) = |det K|`; zero when the colour classes differ in size.
pub fn zd_det(g: &EmbeddedGraph) -> Result<Rational> {
    let (black, white) = color_classes(g);
    if black.len() != white.len() {
        return Ok(Rational::zero());
    }
    let w = build_weighting(g)?;
    Ok(kasteleyn_matrix(g, &w).determinant().abs())
}

/// Result of comparing a deleted Kasteleyn submatrix with enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct SubmatrixReport {
    /// The deleted node labels.
    pub deleted: Vec<usize>,
    /// `|det|` of `K` with the rows and columns of the deleted nodes removed.
    #[serde(serialize_with = "ser_rational")]
    pub determinant: Rational,
    /// `Z^D(G ∖ S)` by enumeration.
    #[serde(serialize_with = "ser_rational")]
    pub enumerated: Rational,
    /// Whether the inherited signs are flat on every bounded face of `G ∖ S`.
    pub flat: bool,
    pub holds: bool,
}

/// Deleting the rows and columns of a balanced set of boundary nodes from a
/// Kasteleyn matrix of `G` leaves a Kasteleyn matrix of `G ∖ S`.
pub fn submatrix_check(g: &EmbeddedGraph, s: &[usize], cap: u64) -> Result<SubmatrixReport> {
    let coloring = g.node_coloring();
    let set: BTreeSet<usize> = s.iter().copied().collect();
    if set.iter().any(|&l| l == 0 || l > g.node_count()) {
        return Err(Error::Unknown { kind: "node", id: *set.iter().next_back().unwrap_or(&0) as u64 });
    }
    if !coloring.is_balanced(&set) {
        return Err(Error::UnbalancedSet);
    }
    let w = build_weighting(g)?;
    let k = kasteleyn_matrix(g, &w);
    let (black, white) = color_classes(g);
    let gone: BTreeSet<usize> = set.iter().map(|&l| g.vertex_index(g.nodes()[l - 1]).expect("node")).collect();
    let rows: Vec<usize> = (0..black.len()).filter(|&r| !gone.contains(&black[r])).collect();
    let cols: Vec<usize> = (0..white.len()).filter(|&c| !gone.contains(&white[c])).collect();
    let determinant = if rows.len() == cols.len() {
        k.select(&rows, &cols).determinant().abs()
    } else {
        Rational::zero()
    };
    let labels: Vec<usize> = set.iter().copied().collect();
    let (sub, _) = g.delete_nodes(&labels)?;
    let enumerated = oracle::zd_enumerate_capped(&sub, cap)?;

    // Carry the signs over to the surviving edges and test flatness there.
    let sign_of: HashMap<(u64, u64), i8> =
        g.edges().iter().zip(&w.signs).map(|(e, &s)| ((e.u.min(e.v), e.u.max(e.v)), s)).collect();
    let inherited = KasteleynWeighting {
        signs: sub.edges().iter().map(|e| sign_of[&(e.u.min(e.v), e.u.max(e.v))]).collect(),
    };
    let flat = non_flat_faces(&sub, &inherited).is_empty();
    let holds = flat && determinant == enumerated;
    Ok(SubmatrixReport { deleted: labels, determinant, enumerated, flat, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::graph::parse_graph;

    fn grid(w: i64, h: i64, nodes: &str) -> EmbeddedGraph {
        let mut t = String::new();
        for y in 0..h {
            for x in 0..w {
                let c = if (x + y) % 2 == 0 { 'B' } else { 'W' };
                t += &format!("vertex {} {c} {x} {y}\n", y * w + x);
                if x > 0 {
                    t += &format!("edge {} {} 1\n", y * w + x - 1, y * w + x);
                }
                if y > 0 {
                    t += &format!("edge {} {} 1\n", (y - 1) * w + x, y * w + x);
                }
            }
        }
        parse_graph(&format!("{t}nodes {nodes}\n")).unwrap()
    }

    #[test]
    fn single_edge_and_square() {
        let g = parse_graph("vertex 1 B 0 0\nvertex 2 W 1 0\nedge 1 2 3/2\nnodes 1 2\n").unwrap();
        assert_eq!(build_weighting(&g).unwrap().signs, vec![1]);
        assert_eq!(zd_det(&g), Ok(rat(3, 2)));
        let sq = grid(2, 2, "");
        let w = build_weighting(&sq).unwrap();
        assert_eq!(w.signs.iter().filter(|&&s| s < 0).count() % 2, 1);
        assert_eq!(zd_det(&sq), Ok(int(2)));
    }

    #[test]
    fn grids() {
        let g = grid(4, 3, "");
        assert!(non_flat_faces(&g, &build_weighting(&g).unwrap()).is_empty());
        assert_eq!(zd_det(&grid(4, 4, "")), Ok(int(36)));
        assert_eq!(zd_det(&grid(2, 3, "")), Ok(int(3)));
        assert_eq!(zd_det(&parse_graph("").unwrap()), Ok(int(1)));
    }

    #[test]
    fn odd_vertex_count_is_rejected() {
        let g = grid(3, 3, "");
        assert_eq!(build_weighting(&g), Err(Error::OddVertexCount(9)));
        assert_eq!(zd_det(&g), Ok(int(0)));
    }

    #[test]
    fn submatrix_examples() {
        let g = parse_graph("vertex 1 B 0 0\nvertex 2 W 1 0\nedge 1 2 3/2\nnodes 1 2\n").unwrap();
        let r = submatrix_check(&g, &[1, 2], oracle::DEFAULT_CAP).unwrap();
        assert_eq!((r.determinant.clone(), r.holds), (int(1), true));
        let r = submatrix_check(&g, &[], oracle::DEFAULT_CAP).unwrap();
        assert_eq!(r.determinant, rat(3, 2));
        let g4 = grid(4, 4, "0 1 2 3 7 11 15 14");
        let r = submatrix_check(&g4, &[2, 3], oracle::DEFAULT_CAP).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(submatrix_check(&g4, &[1, 3], oracle::DEFAULT_CAP).unwrap_err(), Error::UnbalancedSet);
    }
}
