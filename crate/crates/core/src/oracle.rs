//! Brute-force ground truth by exhaustive enumeration.
//!
//! Dimer configurations (perfect matchings) and double-dimer configurations
//! (edge multiplicities in `{0, 1, 2}` with every internal vertex of degree
//! two and every node of degree one) are enumerated by a depth-first search
//! over the edges in input order.  A branch is cut as soon as some vertex
//! exceeds its degree budget or can no longer reach it with the edges still
//! to come.  The number of search states is capped so that an oversized
//! instance fails loudly instead of running forever.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::EmbeddedGraph;
use crate::pairings::Pairing;

/// Default budget of search states for a single enumeration.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// One double-dimer configuration and its decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleDimerConfig {
    /// Multiplicity of every edge, indexed like [`EmbeddedGraph::edges`].
    pub multiplicity: Vec<u8>,
    /// Node paths as vertex-id sequences, each starting from the lower
    /// node label; listed in order of their starting label.
    pub paths: Vec<Vec<u64>>,
    /// Number of loops (cycles of length greater than two).
    pub loops: usize,
    /// Number of doubled edges.
    pub doubled: usize,
    /// The node pairing induced by the paths.
    pub pairing: Pairing,
    /// `Π weight^multiplicity · 2^loops`.
    pub weight: Rational,
}

/// Depth-first search over edge multiplicities with degree budgets.
struct Search<'a> {
    ends: &'a [(usize, usize)],
    budget: Vec<u8>,
    max_mult: u8,
    deg: Vec<u8>,
    /// Capacity still available from unprocessed incident edges.
    room: Vec<u32>,
    mult: Vec<u8>,
    states: u64,
    cap: u64,
}

impl<'a> Search<'a> {
    fn new(n: usize, ends: &'a [(usize, usize)], budget: Vec<u8>, max_mult: u8, cap: u64) -> Self {
        let mut room = vec![0u32; n];
        for &(u, v) in ends {
            room[u] += max_mult as u32;
            room[v] += max_mult as u32;
        }
        Search { ends, budget, max_mult, deg: vec![0; n], room, mult: vec![0; ends.len()], states: 0, cap }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[u8]) -> Result<()>) -> Result<()> {
        if (0..self.budget.len()).any(|v| (self.room[v] as usize) < self.budget[v] as usize) {
            return Ok(());
        }
        self.rec(0, visit)
    }

    fn rec(&mut self, e: usize, visit: &mut dyn FnMut(&[u8]) -> Result<()>) -> Result<()> {
        self.states += 1;
        if self.states > self.cap {
            return Err(Error::CapExceeded(self.cap));
        }
        if e == self.ends.len() {
            debug_assert!(self.deg == self.budget);
            return visit(&self.mult);
        }
        let (u, v) = self.ends[e];
        let m = self.max_mult as u32;
        self.room[u] -= m;
        self.room[v] -= m;
        for k in 0..=self.max_mult {
            let (du, dv) = (self.deg[u] + k, self.deg[v] + k);
            if du > self.budget[u] || dv > self.budget[v] {
                break;
            }
            if (du as u32 + self.room[u]) < self.budget[u] as u32 || (dv as u32 + self.room[v]) < self.budget[v] as u32 {
                continue;
            }
            self.deg[u] = du;
            self.deg[v] = dv;
            self.mult[e] = k;
            let r = self.rec(e + 1, visit);
            self.deg[u] -= k;
            self.deg[v] -= k;
            self.mult[e] = 0;
            r?;
        }
        self.room[u] += m;
        self.room[v] += m;
        Ok(())
    }
}

fn weight_of(g: &EmbeddedGraph, mult: &[u8]) -> Rational {
    let mut w = Rational::one();
    for (e, &k) in mult.iter().enumerate() {
        if k > 0 {
            w *= Pow::pow(&g.edges()[e].weight, k as u32);
        }
    }
    w
}

/// Sum over perfect matchings of the product of edge weights, with a state
/// cap.  The empty graph has exactly one (empty) matching.
pub fn zd_enumerate_capped(g: &EmbeddedGraph, cap: u64) -> Result<Rational> {
    let ends = g.edge_ends();
    let n = g.vertices().len();
    let mut total = Rational::zero();
    let mut search = Search::new(n, &ends, vec![1; n], 1, cap);
    search.run(&mut |mult| {
        total += weight_of(g, mult);
        Ok(())
    })?;
    Ok(total)
}

/// [`zd_enumerate_capped`] with the default cap.
pub fn zd_enumerate(g: &EmbeddedGraph) -> Result<Rational> {
    zd_enumerate_capped(g, DEFAULT_CAP)
}

/// Visits every double-dimer configuration of `g` with its decomposition.
pub fn for_each_double_dimer(
    g: &EmbeddedGraph,
    cap: u64,
    mut visit: impl FnMut(DoubleDimerConfig) -> Result<()>,
) -> Result<()> {
    let ends = g.edge_ends();
    let n = g.vertices().len();
    let mut budget = vec![2u8; n];
    let mut label_of = vec![0usize; n];
    for (k, &id) in g.nodes().iter().enumerate() {
        let i = g.vertex_index(id)?;
        budget[i] = 1;
        label_of[i] = k + 1;
    }
    let mut search = Search::new(n, &ends, budget, 2, cap);
    search.run(&mut |mult| {
        let config = decompose(g, &ends, &label_of, mult)?;
        visit(config)
    })
}

/// Splits a multiplicity map into node paths, loops and doubled edges.
fn decompose(g: &EmbeddedGraph, ends: &[(usize, usize)], label_of: &[usize], mult: &[u8]) -> Result<DoubleDimerConfig> {
    let n = label_of.len();
    let mut single: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut doubled = 0;
    for (e, &k) in mult.iter().enumerate() {
        match k {
            1 => {
                single[ends[e].0].push(e);
                single[ends[e].1].push(e);
            }
            2 => doubled += 1,
            _ => {}
        }
    }
    let other = |e: usize, v: usize| if ends[e].0 == v { ends[e].1 } else { ends[e].0 };
    let mut used = vec![false; mult.len()];
    let mut paths = Vec::new();
    let mut pairs = Vec::new();
    let ids: Vec<u64> = g.vertices().iter().map(|v| v.id).collect();
    for &start_id in g.nodes() {
        let start = g.vertex_index(start_id)?;
        let e0 = single[start][0];
        if used[e0] {
            continue;
        }
        let mut path = vec![ids[start]];
        let (mut v, mut e) = (start, e0);
        loop {
            used[e] = true;
            v = other(e, v);
            path.push(ids[v]);
            if label_of[v] != 0 {
                break;
            }
            e = *single[v].iter().find(|&&f| !used[f]).ok_or_else(|| Error::Precondition("broken path".into()))?;
        }
        pairs.push((label_of[start], label_of[v]));
        paths.push(path);
    }
    // Whatever single edges remain form disjoint cycles.
    let mut loops = 0;
    for e in 0..mult.len() {
        if mult[e] != 1 || used[e] {
            continue;
        }
        loops += 1;
        let start = ends[e].0;
        let (mut v, mut f) = (start, e);
        loop {
            used[f] = true;
            v = other(f, v);
            if v == start {
                break;
            }
            f = *single[v].iter().find(|&&h| !used[h]).ok_or_else(|| Error::Precondition("broken loop".into()))?;
        }
    }
    let pairing = Pairing::new(&pairs)?;
    let weight = weight_of(g, mult) * Rational::from_integer(BigInt::one() << loops);
    Ok(DoubleDimerConfig { multiplicity: mult.to_vec(), paths, loops, doubled, pairing, weight })
}

/// Weighted double-dimer sums, keyed by induced node pairing, in one pass.
pub fn all_pairing_sums_capped(g: &EmbeddedGraph, cap: u64) -> Result<BTreeMap<Pairing, Rational>> {
    let mut sums: BTreeMap<Pairing, Rational> = BTreeMap::new();
    for_each_double_dimer(g, cap, |c| {
        *sums.entry(c.pairing).or_insert_with(Rational::zero) += c.weight;
        Ok(())
    })?;
    Ok(sums)
}

/// [`all_pairing_sums_capped`] with the default cap.
pub fn all_pairing_sums(g: &EmbeddedGraph) -> Result<BTreeMap<Pairing, Rational>> {
    all_pairing_sums_capped(g, DEFAULT_CAP)
}

/// `Z^DD_σ(G, N)`: the weighted sum of double-dimer configurations whose
/// node pairing is `sigma`.
pub fn zdd_enumerate_capped(g: &EmbeddedGraph, sigma: &Pairing, cap: u64) -> Result<Rational> {
    if sigma.size() != g.node_count() {
        return Err(Error::MalformedPairing(format!(
            "pairing covers {} labels but the graph has {} nodes",
            sigma.size(),
            g.node_count()
        )));
    }
    let mut total = Rational::zero();
    for_each_double_dimer(g, cap, |c| {
        if &c.pairing == sigma {
            total += c.weight;
        }
        Ok(())
    })?;
    Ok(total)
}

/// [`zdd_enumerate_capped`] with the default cap.
pub fn zdd_enumerate(g: &EmbeddedGraph, sigma: &Pairing) -> Result<Rational> {
    zdd_enumerate_capped(g, sigma, DEFAULT_CAP)
}

/// The normalised probability `Z^DD_σ / (Z^D)^2`, by enumeration.
pub fn pr_tilde_oracle_capped(g: &EmbeddedGraph, sigma: &Pairing, cap: u64) -> Result<Rational> {
    let zd = zd_enumerate_capped(g, cap)?;
    if zd.is_zero() {
        return Err(Error::ZeroDimerPartition);
    }
    Ok(zdd_enumerate_capped(g, sigma, cap)? / (&zd * &zd))
}

/// [`pr_tilde_oracle_capped`] with the default cap.
pub fn pr_tilde_oracle(g: &EmbeddedGraph, sigma: &Pairing) -> Result<Rational> {
    pr_tilde_oracle_capped(g, sigma, DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::graph::parse_graph;

    const SINGLE_EDGE: &str = "vertex 1 B 0 0\nvertex 2 W 1 0\nedge 1 2 3/2\nnodes 1 2\n";

    fn square(nodes: &str) -> EmbeddedGraph {
        parse_graph(&format!(
            "vertex 1 B 0 0\nvertex 2 W 1 0\nvertex 3 B 1 1\nvertex 4 W 0 1\n\
             edge 1 2 1\nedge 2 3 1\nedge 3 4 1\nedge 4 1 1\nnodes {nodes}\n"
        ))
        .unwrap()
    }

    fn grid(w: i64, h: i64) -> EmbeddedGraph {
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
        parse_graph(&t).unwrap()
    }

    #[test]
    fn dimer_counts() {
        assert_eq!(zd_enumerate(&parse_graph(SINGLE_EDGE).unwrap()), Ok(rat(3, 2)));
        assert_eq!(zd_enumerate(&square("")), Ok(int(2)));
        assert_eq!(zd_enumerate(&grid(2, 3)), Ok(int(3)));
        assert_eq!(zd_enumerate(&grid(4, 4)), Ok(int(36)));
        assert_eq!(zd_enumerate(&parse_graph("").unwrap()), Ok(int(1)));
        assert_eq!(zd_enumerate(&grid(3, 3)), Ok(int(0)));
    }

    #[test]
    fn single_edge_double_dimer() {
        let g = parse_graph(SINGLE_EDGE).unwrap();
        let sigma = Pairing::new(&[(1, 2)]).unwrap();
        assert_eq!(zdd_enumerate(&g, &sigma), Ok(rat(3, 2)));
        assert_eq!(pr_tilde_oracle(&g, &sigma), Ok(rat(2, 3)));
        let sums = all_pairing_sums(&g).unwrap();
        assert_eq!(sums.len(), 1);
        assert_eq!(sums[&sigma], rat(3, 2));
        assert!(zdd_enumerate(&g, &Pairing::empty()).is_err());
    }

    #[test]
    fn square_with_two_adjacent_nodes() {
        // Nodes 1 (black) and 2 (white).  The only path is the edge 1-2 or
        // the three-edge detour 1-4-3-2; the detour leaves nothing else.
        // Direct edge: vertices 3, 4 must be covered twice by edge 3-4.
        let g = square("1 2");
        let sigma = Pairing::new(&[(1, 2)]).unwrap();
        assert_eq!(zdd_enumerate(&g, &sigma), Ok(int(2)));
        // Loops only arise with no nodes: the 4-cycle itself gives weight 2,
        // and the two doubled matchings give 1 each.
        let sums = all_pairing_sums(&square("")).unwrap();
        assert_eq!(sums[&Pairing::empty()], int(4));
    }

    #[test]
    fn config_decomposition() {
        let g = square("");
        let mut loops = Vec::new();
        for_each_double_dimer(&g, DEFAULT_CAP, |c| {
            loops.push((c.loops, c.doubled));
            Ok(())
        })
        .unwrap();
        loops.sort();
        assert_eq!(loops, vec![(0, 2), (0, 2), (1, 0)]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(zd_enumerate_capped(&grid(4, 4), 10), Err(Error::CapExceeded(10)));
    }

    #[test]
    fn double_dimer_total_matches_matching_pairs() {
        // Σ_σ Z^DD_σ(G, N) = Z^D(G) · Z^D(G ∖ N): superimpose a matching of G
        // with one of G ∖ N; each loop arises from two such pairs.
        let g = parse_graph(&(grid(4, 4).to_text().replace("nodes \n", "") + "nodes 0 1 2 3 7 11 15 14\n")).unwrap();
        let sums = all_pairing_sums(&g).unwrap();
        let total: Rational = sums.values().sum();
        let all: Vec<usize> = (1..=g.node_count()).collect();
        let (inner, _) = g.delete_nodes(&all).unwrap();
        assert_eq!(total, zd_enumerate(&g).unwrap() * zd_enumerate(&inner).unwrap());
        assert!(sums.keys().all(Pairing::is_planar));
    }
}
