//! Node pairings and their sign calculus.
//!
//! Nodes are labelled `1..=2n` counterclockwise.  A [`Pairing`] is a perfect
//! matching of those labels; a [`NodeColoring`] records which nodes are black
//! and which are white.  The functions here implement crossings and nestings,
//! the odd-even and black-white permutation signs, the "couples" of
//! circularly adjacent same-coloured nodes with the derived `sign(b, w)` and
//! `sign_cons`, the T-set, the balanced-split algorithm and `sign(S)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parity_sign, permutation_sign};

/// Bipartite colour of a vertex or node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }
}

/// A perfect pairing of the labels `1..=2n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    /// `mate[i - 1]` is the partner of label `i`.
    mate: Vec<usize>,
}

impl Pairing {
    /// Builds a pairing from unordered pairs; they must cover `1..=2n`
    /// exactly once, where `n` is the number of pairs.
    pub fn new(pairs: &[(usize, usize)]) -> Result<Self> {
        let size = 2 * pairs.len();
        let mut mate = vec![0usize; size];
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::MalformedPairing(format!("node {a} paired with itself")));
            }
            for x in [a, b] {
                if x == 0 || x > size {
                    return Err(Error::MalformedPairing(format!("label {x} outside 1..={size}")));
                }
                if mate[x - 1] != 0 {
                    return Err(Error::MalformedPairing(format!("label {x} used twice")));
                }
            }
            mate[a - 1] = b;
            mate[b - 1] = a;
        }
        Ok(Pairing { mate })
    }

    /// The empty pairing of zero nodes.
    pub fn empty() -> Self {
        Pairing { mate: Vec::new() }
    }

    /// Builds from a 1-based mate table (`mate[i-1]` = partner of `i`).
    pub fn from_mates(mate: Vec<usize>) -> Result<Self> {
        let size = mate.len();
        for (i, &m) in mate.iter().enumerate() {
            if m == 0 || m > size || m == i + 1 || mate[m - 1] != i + 1 {
                return Err(Error::MalformedPairing(format!("inconsistent mate table at {}", i + 1)));
            }
        }
        Ok(Pairing { mate })
    }

    /// Number of labels (`2n`).
    pub fn size(&self) -> usize {
        self.mate.len()
    }

    /// Number of pairs (`n`).
    pub fn n(&self) -> usize {
        self.mate.len() / 2
    }

    /// Partner of label `i`.
    pub fn mate(&self, i: usize) -> usize {
        self.mate[i - 1]
    }

    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.size()).filter(|&i| i < self.mate(i)).map(|i| (i, self.mate(i))).collect()
    }

    pub fn is_planar(&self) -> bool {
        crossings(self) == 0
    }

    pub fn is_odd_even(&self) -> bool {
        (1..=self.size()).all(|i| (i + self.mate(i)) % 2 == 1)
    }

    pub fn is_black_white(&self, c: &NodeColoring) -> bool {
        c.len() == self.size() && (1..=self.size()).all(|i| c.color(i) != c.color(self.mate(i)))
    }

    /// Pairs written black-node first, sorted by the black node.
    pub fn black_white_pairs(&self, c: &NodeColoring) -> Result<Vec<(usize, usize)>> {
        if !self.is_black_white(c) {
            return Err(Error::NotBlackWhite);
        }
        Ok(c.black_nodes().into_iter().map(|b| (b, self.mate(b))).collect())
    }

    /// Whether some pair joins `s` to its complement.
    pub fn connects(&self, s: &BTreeSet<usize>) -> bool {
        connects(self, s)
    }
}

impl PartialOrd for Pairing {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by size, then lexicographically on the sorted pair list.
impl Ord for Pairing {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size().cmp(&other.size()).then_with(|| self.pairs().cmp(&other.pairs()))
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing{self}")
    }
}

/// Parses `(a b)(c d)...`; commas are accepted as separators inside pairs.
impl FromStr for Pairing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::MalformedPairing(format!("expected '(' at {rest:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::MalformedPairing("missing ')'".into()))?;
            let body = &open[..close];
            let nums: Vec<&str> = body.split(|ch: char| ch == ',' || ch.is_whitespace()).filter(|t| !t.is_empty()).collect();
            if nums.len() != 2 {
                return Err(Error::MalformedPairing(format!("pair {body:?} must have two labels")));
            }
            let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::MalformedPairing(format!("bad label {t:?}")));
            pairs.push((parse(nums[0])?, parse(nums[1])?));
            rest = open[close + 1..].trim_start();
        }
        Pairing::new(&pairs)
    }
}

/// A circular black/white colouring of the nodes `1..=2n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeColoring {
    colors: Vec<Color>,
}

impl NodeColoring {
    /// Builds a colouring; it must have equally many black and white nodes.
    pub fn new(colors: Vec<Color>) -> Result<Self> {
        let black = colors.iter().filter(|&&c| c == Color::Black).count();
        if 2 * black != colors.len() {
            return Err(Error::InvalidColoring(format!("{} black of {} nodes", black, colors.len())));
        }
        Ok(NodeColoring { colors })
    }

    /// The colouring with black exactly on the listed labels.
    pub fn from_black(size: usize, black: &[usize]) -> Result<Self> {
        let mut colors = vec![Color::White; size];
        for &b in black {
            if b == 0 || b > size {
                return Err(Error::InvalidColoring(format!("label {b} outside 1..={size}")));
            }
            colors[b - 1] = Color::Black;
        }
        Self::new(colors)
    }

    /// The alternating colouring `BWBW...` (or `WBWB...`).
    pub fn alternating(size: usize, first: Color) -> Self {
        let colors = (0..size).map(|i| if i % 2 == 0 { first } else { first.opposite() }).collect();
        NodeColoring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Half the number of nodes.
    pub fn n(&self) -> usize {
        self.colors.len() / 2
    }

    /// Colour of label `i` (1-based).
    pub fn color(&self, i: usize) -> Color {
        self.colors[i - 1]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn black_nodes(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.color(i) == Color::Black).collect()
    }

    pub fn white_nodes(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.color(i) == Color::White).collect()
    }

    /// Whether `s` has equally many black and white nodes.
    pub fn is_balanced(&self, s: &BTreeSet<usize>) -> bool {
        let black = s.iter().filter(|&&i| self.color(i) == Color::Black).count();
        2 * black == s.len()
    }

    /// Restriction to the labels in `keep` (in ascending order), relabelled
    /// consecutively.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        Self::new(keep.iter().map(|&i| self.color(i)).collect())
    }
}

impl fmt::Display for NodeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            write!(f, "{}", c.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeColoring({self})")
    }
}

/// Parses a string over `{B, W}` (case-insensitive).
impl FromStr for NodeColoring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let colors = s
            .trim()
            .chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'B' => Ok(Color::Black),
                'W' => Ok(Color::White),
                other => Err(Error::InvalidColoring(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        NodeColoring::new(colors)
    }
}

/// Number of crossing pairs-of-pairs `(a, c), (b, d)` with `a < b < c < d`.
pub fn crossings(p: &Pairing) -> usize {
    let pairs = p.pairs();
    let mut count = 0;
    for (i, &(_, c)) in pairs.iter().enumerate() {
        for &(b, d) in &pairs[i + 1..] {
            // `pairs` is sorted by first element, so a < b here.
            if b < c && c < d {
                count += 1;
            }
        }
    }
    count
}

/// Number of nested pairs-of-pairs `a1 < a2 < b2 < b1`.
pub fn nestings(p: &Pairing) -> usize {
    let pairs = p.pairs();
    let mut count = 0;
    for (i, &(a1, b1)) in pairs.iter().enumerate() {
        for &(a2, b2) in &pairs[i + 1..] {
            debug_assert!(a1 < a2);
            if b2 < b1 {
                count += 1;
            }
        }
    }
    count
}

/// Parity of the permutation `(σ(1)/2, σ(3)/2, …, σ(2n−1)/2)`.
pub fn sign_oe(p: &Pairing) -> Result<i32> {
    if !p.is_odd_even() {
        return Err(Error::NotOddEven);
    }
    let seq: Vec<usize> = (1..=p.size()).step_by(2).map(|i| p.mate(i) / 2).collect();
    Ok(permutation_sign(&seq))
}

/// Parity of the permutation sending the i-th black node (ascending) to the
/// rank of its white partner among the white nodes.
pub fn sign_bw(p: &Pairing, c: &NodeColoring) -> Result<i32> {
    if !p.is_black_white(c) {
        return Err(Error::NotBlackWhite);
    }
    // Ranks are an order-preserving relabelling of the white partners, so
    // the parity can be read from the partners directly.
    let seq: Vec<usize> = c.black_nodes().into_iter().map(|b| p.mate(b)).collect();
    Ok(permutation_sign(&seq))
}

/// The couples of circularly adjacent same-coloured nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsecutiveCouples {
    /// First elements `n_1 < … < n_{2k}`; the wrap couple `(2n, 1)` is `2n`.
    pub all: Vec<usize>,
    /// The black couples `s_1 < … < s_k`.
    pub black: Vec<usize>,
    /// The white couples `u_1 < … < u_k`.
    pub white: Vec<usize>,
}

/// Lists the couples `(i, i+1)` (and the wrap couple `(2n, 1)`) of nodes of
/// the same colour.
pub fn couples(c: &NodeColoring) -> ConsecutiveCouples {
    let size = c.len();
    let mut all = Vec::new();
    let (mut black, mut white) = (Vec::new(), Vec::new());
    if size >= 2 {
        for i in 1..=size {
            let j = if i == size { 1 } else { i + 1 };
            if c.color(i) == c.color(j) {
                all.push(i);
                match c.color(i) {
                    Color::Black => black.push(i),
                    Color::White => white.push(i),
                }
            }
        }
    }
    ConsecutiveCouples { all, black, white }
}

/// `a_{b,w}`: couples lying entirely inside the linear interval between `b`
/// and `w`.  The wrap couple never counts; a run of three same-coloured
/// nodes contributes two couples.
pub fn a_between(c: &NodeColoring, b: usize, w: usize) -> Result<usize> {
    if c.color(b) == c.color(w) {
        return Err(Error::Precondition(format!("nodes {b} and {w} have the same colour")));
    }
    let (lo, hi) = (b.min(w), b.max(w));
    Ok((lo..hi).filter(|&i| c.color(i) == c.color(i + 1)).count())
}

/// `sign(b, w) = (−1)^{(|b − w| + a_{b,w} − 1)/2}`.
pub fn sign_pair(c: &NodeColoring, b: usize, w: usize) -> Result<i32> {
    let a = a_between(c, b, w)?;
    let total = b.abs_diff(w) + a;
    debug_assert!(total % 2 == 1, "exponent of sign(b,w) must be an integer");
    Ok(parity_sign((total - 1) / 2))
}

/// `sign_cons`: parity of `φ(n_1) … φ(n_{2k})`, where `φ` interleaves the
/// white and black couples (white first when node 1 is black, black first
/// when node 1 is white).  `+1` when there are no couples.
pub fn sign_cons(c: &NodeColoring) -> i32 {
    let cp = couples(c);
    if cp.all.is_empty() {
        return 1;
    }
    // The couples of the colour opposite to node 1 take the odd slots.
    let odd_color = c.color(1).opposite();
    let seq: Vec<usize> = cp
        .all
        .iter()
        .map(|&x| {
            let list = if c.color(x) == Color::Black { &cp.black } else { &cp.white };
            let i = list.iter().position(|&y| y == x).expect("couple listed") + 1;
            if c.color(x) == odd_color {
                2 * i - 1
            } else {
                2 * i
            }
        })
        .collect();
    permutation_sign(&seq)
}

/// `sign_cons·sign_BW(ρ)·Π_{(b,w) ∈ ρ} sign(b, w)` for a black-white
/// pairing; it always equals `(−1)^{crossings(ρ)}`.
pub fn sign_product(rho: &Pairing, c: &NodeColoring) -> Result<i32> {
    let mut s = sign_cons(c) * sign_bw(rho, c)?;
    for (b, w) in rho.black_white_pairs(c)? {
        s *= sign_pair(c, b, w)?;
    }
    Ok(s)
}

/// A planar black-white pairing, built inductively: peel off a maximal
/// alternating run between two consecutive couples of different colours,
/// pair it off, and recurse on the remaining nodes.
pub fn planar_bw_pairing(c: &NodeColoring) -> Pairing {
    let labels: Vec<usize> = (1..=c.len()).collect();
    let pairs = planar_bw_rec(&labels, c.colors());
    Pairing::new(&pairs).expect("construction yields a perfect pairing")
}

fn planar_bw_rec(labels: &[usize], colors: &[Color]) -> Vec<(usize, usize)> {
    let size = labels.len();
    if size == 0 {
        return Vec::new();
    }
    let sub = NodeColoring { colors: colors.to_vec() };
    let cp = couples(&sub);
    let consecutive = || (0..size / 2).map(|j| (labels[2 * j], labels[2 * j + 1])).collect::<Vec<_>>();
    match cp.all.len() {
        0 => consecutive(),
        2 => {
            if colors[cp.all[0] - 1] != colors[0] {
                consecutive()
            } else {
                let mut pairs = vec![(labels[size - 1], labels[0])];
                pairs.extend((0..size / 2 - 1).map(|j| (labels[2 * j + 1], labels[2 * j + 2])));
                pairs
            }
        }
        _ => {
            let h = (1..cp.all.len())
                .find(|&h| colors[cp.all[h - 1] - 1] != colors[cp.all[h] - 1])
                .expect("couples of both colours exist");
            let (lo, hi) = (cp.all[h - 1], cp.all[h]);
            // Positions lo+1 ..= hi alternate in colour and have even length.
            let mut pairs: Vec<(usize, usize)> =
                (lo + 1..hi).step_by(2).map(|p| (labels[p - 1], labels[p])).collect();
            let keep: Vec<usize> = (1..=size).filter(|&p| p <= lo || p > hi).collect();
            let sub_labels: Vec<usize> = keep.iter().map(|&p| labels[p - 1]).collect();
            let sub_colors: Vec<Color> = keep.iter().map(|&p| colors[p - 1]).collect();
            pairs.extend(planar_bw_rec(&sub_labels, &sub_colors));
            pairs
        }
    }
}

/// Number of connected components of the multigraph `p ∪ q`.
pub fn components(p: &Pairing, q: &Pairing) -> usize {
    assert_eq!(p.size(), q.size(), "pairings of different sizes");
    let size = p.size();
    let mut seen = vec![false; size + 1];
    let mut count = 0;
    for s in 1..=size {
        if seen[s] {
            continue;
        }
        count += 1;
        // Alternate p- and q-edges around the cycle through s.
        let mut v = s;
        let mut use_p = true;
        loop {
            seen[v] = true;
            v = if use_p { p.mate(v) } else { q.mate(v) };
            use_p = !use_p;
            seen[v] = true;
            if v == s && use_p {
                break;
            }
        }
    }
    count
}

/// Nodes that are odd and white, or even and black.
pub fn t_set(c: &NodeColoring) -> BTreeSet<usize> {
    (1..=c.len())
        .filter(|&i| (i % 2 == 1 && c.color(i) == Color::White) || (i % 2 == 0 && c.color(i) == Color::Black))
        .collect()
}

/// Whether some pair of `p` has exactly one endpoint in `s`.
pub fn connects(p: &Pairing, s: &BTreeSet<usize>) -> bool {
    p.pairs().iter().any(|(a, b)| s.contains(a) != s.contains(b))
}

fn sym_diff(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.symmetric_difference(b).copied().collect()
}

/// All node sets `S` such that `rho` does not join `S` to `S^c` and `pi`
/// does not join `S △ T` to its complement.
///
/// Each component of `pi ∪ rho` is seeded at its lowest node, placed in
/// `S` or not, and the placement is propagated: along a `pi` pair the side
/// of `S △ T` is preserved, along a `rho` pair the side of `S` is preserved.
/// Every component therefore contributes exactly two choices.
pub fn admissible_splits(pi: &Pairing, rho: &Pairing, c: &NodeColoring) -> Result<Vec<BTreeSet<usize>>> {
    if !pi.is_odd_even() {
        return Err(Error::NotOddEven);
    }
    if !rho.is_black_white(c) || pi.size() != c.len() {
        return Err(Error::NotBlackWhite);
    }
    let size = c.len();
    let t = t_set(c);
    let in_t = |i: usize| t.contains(&i);

    // For each component: the nodes placed in S when the seed is in S.
    let mut seen = vec![false; size + 1];
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for seed in 1..=size {
        if seen[seed] {
            continue;
        }
        let mut side = vec![None; size + 1];
        side[seed] = Some(true);
        let mut cur = seed;
        loop {
            seen[cur] = true;
            let cur_in = side[cur].expect("placed");
            // Step 1: the pi-partner keeps its side of S △ T.
            let p = pi.mate(cur);
            let p_in = (cur_in != in_t(cur)) != in_t(p);
            if let Some(prev) = side[p] {
                if prev != p_in {
                    return Err(Error::Precondition("inconsistent placement along a component".into()));
                }
            }
            side[p] = Some(p_in);
            seen[p] = true;
            // Step 2: the rho-partner keeps its side of S.
            let r = rho.mate(p);
            if let Some(prev) = side[r] {
                if prev != p_in {
                    return Err(Error::Precondition("inconsistent placement along a component".into()));
                }
                if r == seed {
                    break;
                }
            }
            side[r] = Some(p_in);
            cur = r;
        }
        let inside = (1..=size).filter(|&i| side[i] == Some(true)).collect();
        let outside = (1..=size).filter(|&i| side[i] == Some(false)).collect();
        blocks.push((inside, outside));
    }

    let mut out = Vec::with_capacity(1 << blocks.len());
    for mask in 0u64..(1u64 << blocks.len()) {
        let mut s = BTreeSet::new();
        for (k, (inside, outside)) in blocks.iter().enumerate() {
            let chosen = if mask >> k & 1 == 0 { inside } else { outside };
            s.extend(chosen.iter().copied());
        }
        if rho.connects(&s) || pi.connects(&sym_diff(&s, &t)) || !c.is_balanced(&s) {
            return Err(Error::Precondition("placement produced an inadmissible set".into()));
        }
        out.push(s);
    }
    out.sort();
    Ok(out)
}

/// Which construction [`sign_set`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSetRoute {
    /// `(−1)^{crossings}` of a black-white pairing planar inside `S` and
    /// inside `S^c`.
    Definition,
    /// `(−1)^n (−1)^{components(π, ρ)} sign_oe(π) sign_bw(ρ)` for an
    /// admissible pair `(π, ρ)`.
    Formula,
}

/// `sign(S)` for a balanced node set `S`.
pub fn sign_set(s: &BTreeSet<usize>, c: &NodeColoring, route: SignSetRoute) -> Result<i32> {
    if s.iter().any(|&i| i == 0 || i > c.len()) {
        return Err(Error::Precondition("node set outside the colouring".into()));
    }
    if !c.is_balanced(s) {
        return Err(Error::UnbalancedSet);
    }
    match route {
        SignSetRoute::Definition => {
            let inside: Vec<usize> = s.iter().copied().collect();
            let outside: Vec<usize> = (1..=c.len()).filter(|i| !s.contains(i)).collect();
            let mut pairs = Vec::new();
            for part in [inside, outside] {
                let sub = c.restrict(&part)?;
                let local = planar_bw_pairing(&sub);
                pairs.extend(local.pairs().into_iter().map(|(a, b)| (part[a - 1], part[b - 1])));
            }
            let rho = Pairing::new(&pairs)?;
            Ok(parity_sign(crossings(&rho)))
        }
        SignSetRoute::Formula => {
            let (pi, rho) = admissible_pair(s, c)?;
            sign_set_with(s, &pi, &rho, c)
        }
    }
}

/// Evaluates the closed formula for `sign(S)` with a caller-chosen
/// admissible pair; errors if the pair is not admissible for `S`.
pub fn sign_set_with(s: &BTreeSet<usize>, pi: &Pairing, rho: &Pairing, c: &NodeColoring) -> Result<i32> {
    if rho.connects(s) || pi.connects(&sym_diff(s, &t_set(c))) {
        return Err(Error::Precondition("(π, ρ) is not admissible for S".into()));
    }
    let comp = components(pi, rho);
    Ok(parity_sign(c.n()) * parity_sign(comp) * sign_oe(pi)? * sign_bw(rho, c)?)
}

/// Some odd-even `π` not joining `S △ T` to its complement and some
/// black-white `ρ` not joining `S` to its complement.
pub fn admissible_pair(s: &BTreeSet<usize>, c: &NodeColoring) -> Result<(Pairing, Pairing)> {
    let u = sym_diff(s, &t_set(c));
    let mut pi_pairs = Vec::new();
    let mut rho_pairs = Vec::new();
    for inside in [true, false] {
        let part_u: Vec<usize> = (1..=c.len()).filter(|i| u.contains(i) == inside).collect();
        let odd: Vec<usize> = part_u.iter().copied().filter(|i| i % 2 == 1).collect();
        let even: Vec<usize> = part_u.iter().copied().filter(|i| i % 2 == 0).collect();
        if odd.len() != even.len() {
            return Err(Error::UnbalancedSet);
        }
        pi_pairs.extend(odd.into_iter().zip(even));
        let part_s: Vec<usize> = (1..=c.len()).filter(|i| s.contains(i) == inside).collect();
        let black: Vec<usize> = part_s.iter().copied().filter(|&i| c.color(i) == Color::Black).collect();
        let white: Vec<usize> = part_s.iter().copied().filter(|&i| c.color(i) == Color::White).collect();
        if black.len() != white.len() {
            return Err(Error::UnbalancedSet);
        }
        rho_pairs.extend(black.into_iter().zip(white));
    }
    Ok((Pairing::new(&pi_pairs)?, Pairing::new(&rho_pairs)?))
}

/// Every perfect pairing of `1..=size`, in canonical order.
pub fn all_pairings(size: usize) -> Vec<Pairing> {
    assert!(size.is_multiple_of(2), "odd number of labels");
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Pairing>) {
        if free.is_empty() {
            out.push(Pairing::new(acc).expect("valid"));
            return;
        }
        let a = free.remove(0);
        for k in 0..free.len() {
            let b = free.remove(k);
            acc.push((a, b));
            rec(free, acc, out);
            acc.pop();
            free.insert(k, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (1..=size).collect(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The planar pairings of `1..=size` in canonical order (Catalan many).
pub fn planar_pairings(size: usize) -> Vec<Pairing> {
    assert!(size.is_multiple_of(2), "odd number of labels");
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        // Planar pairings of the interval lo..=hi (empty when lo > hi).
        if lo > hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in (lo + 1..=hi).step_by(2) {
            for inner in rec(lo + 1, m - 1) {
                for outer in rec(m + 1, hi) {
                    let mut v = vec![(lo, m)];
                    v.extend(inner.iter().copied());
                    v.extend(outer.iter().copied());
                    out.push(v);
                }
            }
        }
        out
    }
    let mut out: Vec<Pairing> = rec(1, size).iter().map(|p| Pairing::new(p).expect("valid")).collect();
    out.sort();
    out
}

/// The black-white pairings of a colouring (`n!` many), in canonical order.
pub fn black_white_pairings(c: &NodeColoring) -> Vec<Pairing> {
    let black = c.black_nodes();
    let white = c.white_nodes();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..white.len()).collect();
    // Heap's algorithm over the white partners.
    fn heap(k: usize, perm: &mut Vec<usize>, black: &[usize], white: &[usize], out: &mut Vec<Pairing>) {
        if k <= 1 {
            let pairs: Vec<_> = black.iter().zip(perm.iter()).map(|(&b, &w)| (b, white[w])).collect();
            out.push(Pairing::new(&pairs).expect("valid"));
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, black, white, out);
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    heap(perm.len(), &mut perm, &black, &white, &mut out);
    out.sort();
    out
}

/// Every balanced colouring of `size` nodes.
pub fn balanced_colorings(size: usize) -> Vec<NodeColoring> {
    (0u64..(1u64 << size))
        .filter(|m| m.count_ones() as usize * 2 == size)
        .map(|m| {
            NodeColoring::new((0..size).map(|i| if m >> i & 1 == 1 { Color::Black } else { Color::White }).collect())
                .expect("balanced")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(usize, usize)]) -> Pairing {
        Pairing::new(pairs).unwrap()
    }

    fn twelve() -> NodeColoring {
        NodeColoring::from_black(12, &[1, 3, 4, 5, 7, 10]).unwrap()
    }

    #[test]
    fn sign_product_matches_crossings() {
        for size in [2, 4, 6] {
            for c in balanced_colorings(size) {
                for rho in black_white_pairings(&c) {
                    assert_eq!(sign_product(&rho, &c).unwrap(), parity_sign(crossings(&rho)), "{c} {rho}");
                }
            }
        }
    }

    #[test]
    fn crossings_and_nestings() {
        assert_eq!(crossings(&p(&[(1, 2), (3, 4)])), 0);
        assert_eq!(crossings(&p(&[(1, 3), (2, 4)])), 1);
        let sigma = p(&[(1, 8), (3, 4), (5, 2), (7, 6)]);
        assert_eq!(crossings(&sigma), 0);
        assert_eq!(nestings(&p(&[(1, 2), (3, 4)])), 0);
        assert_eq!(nestings(&p(&[(1, 4), (3, 2)])), 1);
        assert_eq!(nestings(&sigma), 4);
    }

    #[test]
    fn odd_even_signs() {
        assert_eq!(sign_oe(&p(&[(1, 2), (3, 4)])), Ok(1));
        assert_eq!(sign_oe(&p(&[(1, 8), (3, 4), (5, 2), (7, 6)])), Ok(1));
        assert_eq!(sign_oe(&p(&[(1, 8), (3, 4), (5, 6), (7, 2)])), Ok(-1));
        assert_eq!(sign_oe(&p(&[(1, 3), (2, 4)])), Err(Error::NotOddEven));
    }

    #[test]
    fn black_white_signs() {
        let alt = NodeColoring::alternating(4, Color::Black);
        assert_eq!(sign_bw(&p(&[(1, 2), (3, 4)]), &alt), Ok(1));
        let bbww: NodeColoring = "BBWW".parse().unwrap();
        assert_eq!(sign_bw(&p(&[(1, 4), (2, 3)]), &bbww), Ok(-1));
        assert_eq!(sign_bw(&p(&[(1, 2), (3, 4)]), &bbww), Err(Error::NotBlackWhite));
    }

    #[test]
    fn couples_examples() {
        assert_eq!(couples(&twelve()).all, vec![3, 4, 8, 11]);
        assert!(couples(&NodeColoring::alternating(8, Color::Black)).all.is_empty());
        let eight = NodeColoring::from_black(8, &[1, 3, 4, 6]).unwrap();
        let cp = couples(&eight);
        assert_eq!(cp.all, vec![3, 7]);
        assert_eq!(cp.black, vec![3]);
        assert_eq!(cp.white, vec![7]);
    }

    #[test]
    fn sign_pair_examples() {
        let c = twelve();
        assert_eq!(a_between(&c, 1, 12), Ok(4));
        assert_eq!(sign_pair(&c, 1, 12), Ok(-1));
        let alt = NodeColoring::alternating(8, Color::Black);
        for b in [1, 3, 5, 7] {
            for w in [2, 4, 6, 8] {
                assert_eq!(a_between(&alt, b, w), Ok(0));
                assert_eq!(sign_pair(&alt, b, w), Ok(parity_sign((b.abs_diff(w) - 1) / 2)));
            }
        }
        assert_eq!(sign_pair(&c, 5, 6), Ok(1));
        assert!(a_between(&c, 1, 3).is_err());
    }

    #[test]
    fn sign_cons_examples() {
        // BWWBBBWW: u1 = 2 < s1 = 4 < s2 = 5 < u2 = 7, giving (1 2 4 3).
        let a = NodeColoring::from_black(8, &[1, 4, 5, 6]).unwrap();
        let cp = couples(&a);
        assert_eq!((cp.white.clone(), cp.black.clone()), (vec![2, 7], vec![4, 5]));
        assert_eq!(sign_cons(&a), -1);
        // BBWWBBWW: s1 = 1 < u1 = 3 < s2 = 5 < u2 = 7, giving (2 1 4 3).
        let b = NodeColoring::from_black(8, &[1, 2, 5, 6]).unwrap();
        assert_eq!(couples(&b).all, vec![1, 3, 5, 7]);
        assert_eq!(sign_cons(&b), 1);
        assert_eq!(sign_cons(&NodeColoring::alternating(6, Color::White)), 1);
    }

    #[test]
    fn planar_black_white_pairings() {
        let alt = NodeColoring::alternating(8, Color::Black);
        assert_eq!(planar_bw_pairing(&alt), p(&[(1, 2), (3, 4), (5, 6), (7, 8)]));
        assert_eq!(
            planar_bw_pairing(&twelve()),
            p(&[(1, 12), (3, 2), (5, 6), (7, 8), (9, 4), (11, 10)])
        );
        let bw: NodeColoring = "BW".parse().unwrap();
        assert_eq!(planar_bw_pairing(&bw), p(&[(1, 2)]));
    }

    #[test]
    fn components_and_sets() {
        let s = p(&[(1, 2), (3, 4), (5, 6)]);
        let t = p(&[(1, 5), (2, 6), (3, 4)]);
        assert_eq!(components(&s, &t), 2);
        assert_eq!(components(&s, &s), 3);
        let expect: BTreeSet<usize> = [4, 9, 10, 11].into_iter().collect();
        assert_eq!(t_set(&twelve()), expect);
        assert!(t_set(&NodeColoring::alternating(6, Color::Black)).is_empty());
        assert_eq!(t_set(&NodeColoring::alternating(6, Color::White)).len(), 6);
        let s12: BTreeSet<usize> = [1, 2].into_iter().collect();
        assert!(!connects(&p(&[(1, 2), (3, 4)]), &s12));
        assert!(connects(&p(&[(1, 3), (2, 4)]), &s12));
    }

    #[test]
    fn admissible_split_examples() {
        // T = {2, 3}: node 2 even black, node 3 odd white.
        let c = NodeColoring::from_black(4, &[1, 2]).unwrap();
        let expect_t: BTreeSet<usize> = [2, 3].into_iter().collect();
        assert_eq!(t_set(&c), expect_t);
        let splits = admissible_splits(&p(&[(1, 2), (3, 4)]), &p(&[(1, 4), (2, 3)]), &c).unwrap();
        let s14: BTreeSet<usize> = [1, 4].into_iter().collect();
        assert!(splits.contains(&s14));

        let alt = NodeColoring::alternating(6, Color::Black);
        let pi = p(&[(1, 2), (3, 4), (5, 6)]);
        let splits = admissible_splits(&pi, &pi, &alt).unwrap();
        assert_eq!(splits.len(), 8);
    }

    #[test]
    fn sign_set_routes() {
        let c = twelve();
        let rho = planar_bw_pairing(&c);
        for (a, b) in rho.pairs() {
            let s: BTreeSet<usize> = [a, b].into_iter().collect();
            assert_eq!(sign_set(&s, &c, SignSetRoute::Definition), Ok(1));
            assert_eq!(sign_set(&s, &c, SignSetRoute::Formula), Ok(1));
        }
        let empty = BTreeSet::new();
        assert_eq!(sign_set(&empty, &c, SignSetRoute::Definition), Ok(1));
        let bad: BTreeSet<usize> = [1].into_iter().collect();
        assert_eq!(sign_set(&bad, &c, SignSetRoute::Formula), Err(Error::UnbalancedSet));
    }

    #[test]
    fn enumerations_have_expected_sizes() {
        assert_eq!(all_pairings(6).len(), 15);
        assert_eq!(planar_pairings(8).len(), 14);
        assert_eq!(planar_pairings(10).len(), 42);
        assert!(planar_pairings(8).iter().all(Pairing::is_planar));
        assert_eq!(black_white_pairings(&twelve()).len(), 720);
        assert_eq!(balanced_colorings(8).len(), 70);
    }

    #[test]
    fn parse_and_display() {
        let q: Pairing = "(1 8)(3,4)(5 2) (7 6)".parse().unwrap();
        assert_eq!(q.to_string(), "(1 8)(2 5)(3 4)(6 7)");
        assert!("(1 1)".parse::<Pairing>().is_err());
        assert!("(1 2)(2 3)".parse::<Pairing>().is_err());
        assert_eq!("".parse::<Pairing>().unwrap(), Pairing::empty());
    }
}
