//! The integer matrix `Q^(DD)` expressing normalized double-dimer pairing
//! probabilities as polynomials in the ratios `Y_{i,j}`.
//!
//! Two independent constructions are provided:
//!
//! * **route A** resolves each black-white pairing `ρ` into planar pairings
//!   with the crossing rule `ac|bd → −ab|cd − ad|bc` and rescales by
//!   `sign_OE(σ)·sign_BW(ρ)`;
//! * **route B** solves `M₂·Q = B₂` exactly, where `M₂` is the meander
//!   matrix `2^{#components(σ ∪ τ)}` over planar pairings.
//!
//! Agreement of the two routes (and integrality of the result) is checked in
//! the test-suite.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{int, parity_sign, Matrix, Rational};
use crate::pairings::{black_white_pairings, components, crossings, planar_pairings, sign_bw, sign_oe, NodeColoring, Pairing};

/// A formal integer combination of planar pairings (zero coefficients are
/// never stored).
pub type PairingCombo = BTreeMap<Pairing, i64>;

/// One crossing `(a, c), (b, d)` with `a < b < c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Every crossing of `p`, sorted lexicographically by `(a, b, c, d)`.
pub fn crossing_list(p: &Pairing) -> Vec<Crossing> {
    let pairs = p.pairs();
    let mut out = Vec::new();
    for (i, &(a, c)) in pairs.iter().enumerate() {
        for &(b, d) in &pairs[i + 1..] {
            if b < c && c < d {
                out.push(Crossing { a, b, c, d });
            }
        }
    }
    out.sort();
    out
}

/// Applies `ac|bd → −ab|cd − ad|bc` to one crossing.
fn uncross(p: &Pairing, x: Crossing) -> [Pairing; 2] {
    let swap = |pairs: [(usize, usize); 2]| {
        let mut mate: Vec<usize> = (1..=p.size()).map(|i| p.mate(i)).collect();
        for (u, v) in pairs {
            mate[u - 1] = v;
            mate[v - 1] = u;
        }
        Pairing::from_mates(mate).expect("re-pairing four labels stays a pairing")
    };
    [swap([(x.a, x.b), (x.c, x.d)]), swap([(x.a, x.d), (x.b, x.c)])]
}

fn add_into(acc: &mut PairingCombo, combo: &PairingCombo, scale: i64) {
    for (p, &k) in combo {
        let e = acc.entry(p.clone()).or_insert(0);
        *e += scale * k;
        if *e == 0 {
            acc.remove(p);
        }
    }
}

/// Resolves every crossing of `rho`, always using the lexicographically
/// smallest one.  The result is a combination of planar pairings.
pub fn resolve_crossings(rho: &Pairing) -> PairingCombo {
    resolve_crossings_with(rho, |xs| xs[0])
}

/// Like [`resolve_crossings`] but lets `choose` pick which crossing to
/// resolve at each step (it receives the sorted, nonempty crossing list).
/// The answer does not depend on the choice.
pub fn resolve_crossings_with(rho: &Pairing, choose: impl Fn(&[Crossing]) -> Crossing) -> PairingCombo {
    let mut memo = HashMap::new();
    resolve_rec(rho, &choose, &mut memo)
}

fn resolve_rec(
    p: &Pairing,
    choose: &dyn Fn(&[Crossing]) -> Crossing,
    memo: &mut HashMap<Pairing, PairingCombo>,
) -> PairingCombo {
    if let Some(c) = memo.get(p) {
        return c.clone();
    }
    let xs = crossing_list(p);
    let out = if xs.is_empty() {
        PairingCombo::from([(p.clone(), 1)])
    } else {
        // Each replacement has strictly fewer crossings, so this terminates.
        let mut acc = PairingCombo::new();
        for q in uncross(p, choose(&xs)) {
            let sub = resolve_rec(&q, choose, memo);
            add_into(&mut acc, &sub, -1);
        }
        acc
    };
    memo.insert(p.clone(), out.clone());
    out
}

/// Column `ρ` of `Q^(DD)`: the resolution of `rho` with every planar `σ`
/// rescaled by `sign_OE(σ)·sign_BW(ρ)`.
pub fn q_coeffs(rho: &Pairing, c: &NodeColoring) -> Result<PairingCombo> {
    let sbw = i64::from(sign_bw(rho, c)?);
    resolve_crossings(rho)
        .into_iter()
        .map(|(sigma, k)| {
            // Planar pairings are always odd-even.
            let soe = i64::from(sign_oe(&sigma)?);
            Ok((sigma, soe * sbw * k))
        })
        .collect()
}

/// A dense integer matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledMatrix {
    pub rows: Vec<Pairing>,
    pub cols: Vec<Pairing>,
    pub entries: Vec<Vec<i64>>,
}

impl LabelledMatrix {
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_i64_rows(&self.entries)
    }

    pub fn get(&self, row: &Pairing, col: &Pairing) -> Option<i64> {
        let i = self.rows.iter().position(|r| r == row)?;
        let j = self.cols.iter().position(|c| c == col)?;
        Some(self.entries[i][j])
    }
}

impl fmt::Display for LabelledMatrix {
    /// One line per row: `row-label: [e1, e2, ...]`, preceded by a header
    /// listing the column labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "columns:")?;
        for (j, c) in self.cols.iter().enumerate() {
            writeln!(f, "  [{j}] {c}")?;
        }
        writeln!(f, "rows:")?;
        for (r, row) in self.rows.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {r}: [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The meander matrix over planar pairings of `2n` labels:
/// entries `2^{#components(σ ∪ τ)}`.
pub fn meander_matrix(n: usize) -> LabelledMatrix {
    let planar = planar_pairings(2 * n);
    let entries =
        planar.iter().map(|s| planar.iter().map(|t| 1i64 << components(s, t)).collect()).collect();
    LabelledMatrix { rows: planar.clone(), cols: planar, entries }
}

/// `B₂`: rows are planar pairings `π`, columns black-white pairings `ρ`,
/// entries `sign(π, ρ)·2^{comp}` with
/// `sign(π, ρ) = (−1)^n (−1)^{comp} sign_OE(π) sign_BW(ρ)`.
pub fn b2_matrix(c: &NodeColoring) -> Result<LabelledMatrix> {
    let n = c.n();
    let planar = planar_pairings(2 * n);
    let bw = black_white_pairings(c);
    let mut entries = Vec::with_capacity(planar.len());
    for pi in &planar {
        let soe = sign_oe(pi)?;
        let mut row = Vec::with_capacity(bw.len());
        for rho in &bw {
            let comp = components(pi, rho);
            let sign = parity_sign(n + comp) * soe * sign_bw(rho, c)?;
            row.push(i64::from(sign) << comp);
        }
        entries.push(row);
    }
    Ok(LabelledMatrix { rows: planar, cols: bw, entries })
}

/// Which construction [`q_matrix`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QRoute {
    /// Crossing resolution, column by column.
    Resolve,
    /// Exact solve of `M₂·Q = B₂`.
    Solve,
}

/// `Q^(DD)` for a colouring: rows planar pairings, columns black-white
/// pairings, both in canonical order.
pub fn q_matrix(c: &NodeColoring, route: QRoute) -> Result<LabelledMatrix> {
    let n = c.n();
    let planar = planar_pairings(2 * n);
    let bw = black_white_pairings(c);
    let entries = match route {
        QRoute::Resolve => {
            let mut entries = vec![vec![0i64; bw.len()]; planar.len()];
            for (j, rho) in bw.iter().enumerate() {
                for (sigma, k) in q_coeffs(rho, c)? {
                    let i = planar.binary_search(&sigma).expect("resolution yields planar pairings");
                    entries[i][j] = k;
                }
            }
            entries
        }
        QRoute::Solve => {
            let m2 = meander_matrix(n).to_matrix();
            let b2 = b2_matrix(c)?.to_matrix();
            let x = m2.solve(&b2).ok_or_else(|| Error::Precondition("meander matrix is singular".into()))?;
            x.to_i64_rows().ok_or_else(|| Error::Precondition("Q^(DD) solve produced a non-integer entry".into()))?
        }
    };
    Ok(LabelledMatrix { rows: planar, cols: bw, entries })
}

/// An expanded polynomial in the `Y_{b,w}`: a list of integer-coefficient
/// monomials, each monomial a black-white pairing written as
/// `(black, white)` pairs sorted by the black node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMonomialPoly {
    pub terms: Vec<(i64, Vec<(usize, usize)>)>,
}

impl SignedMonomialPoly {
    /// Evaluates with `y(b, w)` supplying `Y_{b,w}`.
    pub fn evaluate(&self, mut y: impl FnMut(usize, usize) -> Rational) -> Rational {
        let mut total = int(0);
        for (k, mono) in &self.terms {
            let mut term = int(*k);
            for &(b, w) in mono {
                term *= y(b, w);
            }
            total += term;
        }
        total
    }
}

impl fmt::Display for SignedMonomialPoly {
    /// `+Y[1,8]Y[3,4] -2Y[1,4]Y[3,8] ...`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (k, mono)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", if *k < 0 { '-' } else { '+' })?;
            if k.abs() != 1 {
                write!(f, "{}", k.abs())?;
            }
            for (b, w) in mono {
                write!(f, "Y[{b},{w}]")?;
            }
        }
        Ok(())
    }
}

/// `Pr~(σ) = Σ_ρ Q_{σ,ρ}·Y'_ρ` expanded into signed monomials, where
/// `Y'_ρ = (−1)^{crossings(ρ)} Π Y_{b,ρ(b)}`.  Terms are sorted by their
/// monomial.
pub fn pr_polynomial(sigma: &Pairing, c: &NodeColoring) -> Result<SignedMonomialPoly> {
    if !sigma.is_planar() || sigma.size() != c.len() {
        return Err(Error::Precondition(format!("{sigma} is not a planar pairing of {} nodes", c.len())));
    }
    let mut terms = Vec::new();
    for rho in black_white_pairings(c) {
        let k = q_coeffs(&rho, c)?.get(sigma).copied().unwrap_or(0);
        if k != 0 {
            let sign = i64::from(parity_sign(crossings(&rho)));
            terms.push((k * sign, rho.black_white_pairs(c)?));
        }
    }
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(SignedMonomialPoly { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairings::{balanced_colorings, Color};

    fn p(pairs: &[(usize, usize)]) -> Pairing {
        Pairing::new(pairs).unwrap()
    }

    #[test]
    fn resolves_single_crossing() {
        let r = resolve_crossings(&p(&[(1, 3), (2, 4)]));
        let want = PairingCombo::from([(p(&[(1, 2), (3, 4)]), -1), (p(&[(1, 4), (3, 2)]), -1)]);
        assert_eq!(r, want);
    }

    #[test]
    fn planar_input_is_fixed() {
        let q = p(&[(1, 4), (2, 3), (5, 6)]);
        assert_eq!(resolve_crossings(&q), PairingCombo::from([(q, 1)]));
    }

    #[test]
    fn resolution_is_choice_independent() {
        let rho = p(&[(1, 5), (2, 6), (3, 4)]);
        let first = resolve_crossings_with(&rho, |xs| xs[0]);
        let last = resolve_crossings_with(&rho, |xs| *xs.last().unwrap());
        assert_eq!(first, last);
        for q in crate::pairings::all_pairings(8) {
            assert_eq!(resolve_crossings(&q), resolve_crossings_with(&q, |xs| xs[xs.len() / 2]));
        }
    }

    #[test]
    fn meander_small_cases() {
        assert_eq!(meander_matrix(1).entries, vec![vec![2]]);
        assert_eq!(meander_matrix(2).entries, vec![vec![4, 2], vec![2, 4]]);
        for n in 1..=5 {
            assert!(!num_traits::Zero::is_zero(&meander_matrix(n).to_matrix().determinant()));
        }
    }

    #[test]
    fn two_node_matrices() {
        let c = NodeColoring::alternating(2, Color::Black);
        assert_eq!(b2_matrix(&c).unwrap().entries, vec![vec![2]]);
        assert_eq!(q_matrix(&c, QRoute::Resolve).unwrap().entries, vec![vec![1]]);
        assert_eq!(q_matrix(&c, QRoute::Solve).unwrap().entries, vec![vec![1]]);
        let poly = pr_polynomial(&p(&[(1, 2)]), &c).unwrap();
        assert_eq!(poly.to_string(), "+Y[1,2]");
    }

    #[test]
    fn routes_agree_up_to_six_nodes() {
        for size in [2, 4, 6] {
            for c in balanced_colorings(size) {
                let a = q_matrix(&c, QRoute::Resolve).unwrap();
                let b = q_matrix(&c, QRoute::Solve).unwrap();
                assert_eq!(a, b, "coloring {c}");
            }
        }
    }

    #[test]
    fn eight_node_alternating_polynomial() {
        let c = NodeColoring::alternating(8, Color::Black);
        let sigma = p(&[(1, 8), (3, 4), (5, 2), (7, 6)]);
        let poly = pr_polynomial(&sigma, &c).unwrap();
        let mut want = vec![
            (1, vec![(1, 8), (3, 4), (5, 2), (7, 6)]),
            (-1, vec![(1, 4), (3, 8), (5, 2), (7, 6)]),
            (1, vec![(1, 6), (3, 4), (5, 8), (7, 2)]),
            (-1, vec![(1, 8), (3, 6), (5, 2), (7, 4)]),
            (-1, vec![(1, 4), (3, 6), (5, 8), (7, 2)]),
            (1, vec![(1, 6), (3, 8), (5, 2), (7, 4)]),
        ];
        want.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(poly.terms, want);
    }
}
