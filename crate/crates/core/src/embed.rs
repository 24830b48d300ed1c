//! Straight-line planar embeddings: crossing checks, rotation systems and
//! face tracing.
//!
//! The rotation system is read off the coordinates by sorting each vertex's
//! neighbours by angle (exactly, via half-plane classification and cross
//! products).  Faces are traced with the "face on the left" convention:
//! after arriving at `v` from `u`, leave along the neighbour that precedes
//! `u` in counterclockwise order around `v`.  Bounded faces are then traced
//! counterclockwise (positive signed area) and the outer boundary of each
//! connected component clockwise.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::exact::Rational;

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

/// `(b - a) × (c - a)`: positive when `a, b, c` turn counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Whether `p` lies on the closed segment `ab` (assumes collinearity).
fn within_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p).is_zero() && within_box(a, b, p)
}

/// Whether two closed segments share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let sign = |r: Rational| -> i8 {
        if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        }
    };
    let d1 = sign(orient(c, d, a));
    let d2 = sign(orient(c, d, b));
    let d3 = sign(orient(a, b, c));
    let d4 = sign(orient(a, b, d));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within_box(c, d, a))
        || (d2 == 0 && within_box(c, d, b))
        || (d3 == 0 && within_box(a, b, c))
        || (d4 == 0 && within_box(a, b, d))
}

/// Two segments sharing exactly the endpoint `s` (so `a` and `b` are the far
/// endpoints) overlap iff they leave `s` in the same direction.
pub fn overlap_at_shared_endpoint(s: &Point, a: &Point, b: &Point) -> bool {
    if !orient(s, a, b).is_zero() {
        return false;
    }
    let dot = (&a.x - &s.x) * (&b.x - &s.x) + (&a.y - &s.y) * (&b.y - &s.y);
    dot.is_positive()
}

/// Counterclockwise angular comparison of two nonzero direction vectors,
/// starting from the positive x-axis.
pub fn angle_cmp(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Ordering {
    let half = |x: &Rational, y: &Rational| -> u8 {
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(ax, ay), half(bx, by));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let cross = ax * by - ay * bx;
    if cross.is_positive() {
        Ordering::Less
    } else if cross.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// One face boundary walk.
#[derive(Debug, Clone)]
pub struct Face {
    /// Vertex indices in walk order (face on the left); a vertex may repeat.
    pub walk: Vec<usize>,
    /// Edge indices in walk order; `edges[i]` joins `walk[i]` and `walk[i+1]`.
    pub edges: Vec<usize>,
    /// Index of the connected component this walk belongs to.
    pub component: usize,
    /// Twice the signed area enclosed by the walk.
    pub area2: Rational,
    /// Whether this is the outer boundary of its component.
    pub outer: bool,
}

/// The combinatorial embedding derived from coordinates.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// For each vertex, `(neighbour, edge)` pairs in counterclockwise order.
    pub rotation: Vec<Vec<(usize, usize)>>,
    /// Component index of every vertex.
    pub component: Vec<usize>,
    /// Number of connected components (isolated vertices included).
    pub components: usize,
    /// All face walks of all components.
    pub faces: Vec<Face>,
}

impl Embedding {
    /// Builds rotations and traces faces.  `ends[e]` are the endpoints of
    /// edge `e`; the drawing is assumed to be already validated as planar.
    pub fn new(points: &[Point], ends: &[(usize, usize)]) -> Self {
        let n = points.len();
        let mut rotation: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in ends.iter().enumerate() {
            rotation[u].push((v, e));
            rotation[v].push((u, e));
        }
        for (v, rot) in rotation.iter_mut().enumerate() {
            let p = &points[v];
            rot.sort_by(|&(a, _), &(b, _)| {
                let (pa, pb) = (&points[a], &points[b]);
                angle_cmp(&(&pa.x - &p.x), &(&pa.y - &p.y), &(&pb.x - &p.x), &(&pb.y - &p.y))
            });
        }

        // Connected components by depth-first search.
        let mut component = vec![usize::MAX; n];
        let mut components = 0;
        for s in 0..n {
            if component[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            component[s] = components;
            while let Some(v) = stack.pop() {
                for &(w, _) in &rotation[v] {
                    if component[w] == usize::MAX {
                        component[w] = components;
                        stack.push(w);
                    }
                }
            }
            components += 1;
        }

        // Trace every directed half-edge exactly once.
        let mut used: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for s in 0..n {
            for k in 0..rotation[s].len() {
                if used[s][k] {
                    continue;
                }
                let mut walk = Vec::new();
                let mut edges = Vec::new();
                let (mut v, mut slot) = (s, k);
                loop {
                    used[v][slot] = true;
                    let (w, e) = rotation[v][slot];
                    walk.push(v);
                    edges.push(e);
                    // Position of v in w's rotation, then step clockwise.
                    let back = rotation[w].iter().position(|&(x, f)| x == v && f == e).expect("rotation");
                    let deg = rotation[w].len();
                    let next = (back + deg - 1) % deg;
                    v = w;
                    slot = next;
                    if v == s && slot == k {
                        break;
                    }
                }
                let mut area2 = Rational::zero();
                for i in 0..walk.len() {
                    let a = &points[walk[i]];
                    let b = &points[walk[(i + 1) % walk.len()]];
                    area2 += &a.x * &b.y - &b.x * &a.y;
                }
                faces.push(Face { component: component[s], walk, edges, area2, outer: false });
            }
        }

        // The outer walk of a component is the one of minimal signed area:
        // bounded faces are positive, the outer walk is minus their sum (or
        // zero for a tree, which has a single walk).
        for c in 0..components {
            let best = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| f.component == c)
                .min_by(|(_, a), (_, b)| a.area2.cmp(&b.area2))
                .map(|(i, _)| i);
            if let Some(i) = best {
                faces[i].outer = true;
            }
        }

        Embedding { rotation, component, components, faces }
    }

    /// Outer boundary of component `c` as a counterclockwise vertex walk.
    /// An isolated vertex yields a walk consisting of itself.
    pub fn outer_walk_ccw(&self, c: usize) -> Vec<usize> {
        match self.faces.iter().find(|f| f.component == c && f.outer) {
            Some(f) => {
                let mut w = f.walk.clone();
                w.reverse();
                w
            }
            None => (0..self.component.len()).filter(|&v| self.component[v] == c).collect(),
        }
    }

    /// Bounded faces (those that are not the outer walk of their component).
    pub fn bounded_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.outer)
    }
}

/// Winding number of a closed vertex walk around `p` (which must not lie on
/// the walk).  Nonzero means `p` is enclosed.
pub fn winding_number(points: &[Point], walk: &[usize], p: &Point) -> i64 {
    let mut wn = 0i64;
    for i in 0..walk.len() {
        let a = &points[walk[i]];
        let b = &points[walk[(i + 1) % walk.len()]];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p).is_positive() {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p).is_negative() {
            wn -= 1;
        }
    }
    wn
}

/// Whether `needles` occur in `hay` (read cyclically) as a cyclic
/// subsequence in the given order; elements of `hay` may repeat.
pub fn is_cyclic_subsequence(hay: &[usize], needles: &[usize]) -> bool {
    if needles.is_empty() {
        return true;
    }
    let len = hay.len();
    for start in (0..len).filter(|&i| hay[i] == needles[0]) {
        let mut offset = 0usize;
        let mut ok = true;
        for &want in &needles[1..] {
            match (offset + 1..len).find(|&d| hay[(start + d) % len] == want) {
                Some(d) => offset = d,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn pt(x: i64, y: i64) -> Point {
        Point { x: int(x), y: int(y) }
    }

    #[test]
    fn segment_tests() {
        assert!(segments_intersect(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)));
        assert!(!segments_intersect(&pt(0, 0), &pt(1, 0), &pt(0, 1), &pt(1, 1)));
        assert!(segments_intersect(&pt(0, 0), &pt(2, 0), &pt(1, 0), &pt(1, 1)));
        assert!(overlap_at_shared_endpoint(&pt(0, 0), &pt(1, 0), &pt(2, 0)));
        assert!(!overlap_at_shared_endpoint(&pt(0, 0), &pt(1, 0), &pt(-2, 0)));
    }

    #[test]
    fn square_has_one_bounded_face() {
        let pts = vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)];
        let ends = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let emb = Embedding::new(&pts, &ends);
        assert_eq!(emb.faces.len(), 2);
        let bounded: Vec<_> = emb.bounded_faces().collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!(bounded[0].area2, int(2));
        assert_eq!(emb.outer_walk_ccw(0).len(), 4);
    }

    #[test]
    fn cyclic_subsequence() {
        assert!(is_cyclic_subsequence(&[1, 2, 3, 4], &[3, 4, 1]));
        assert!(!is_cyclic_subsequence(&[1, 2, 3, 4], &[3, 1, 4]));
        assert!(is_cyclic_subsequence(&[1, 2, 1, 3], &[2, 3, 1]));
    }
}
