//! Property tests: structural invariants of graphs, pairings, signs, the
//! Kasteleyn construction, the double-dimer oracle and `Q^(DD)`.
//!
//! Random graphs come from the seeded grid generator, so every failing case
//! shrinks to a reproducible seed.  Small finite families (colourings and
//! pairings of at most ten nodes) are checked exhaustively instead.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::sample::select;

use ddimer::exact::{int, parity_sign, Rational};
use ddimer::instance::{generate, InstanceSpec};
use ddimer::kasteleyn::{build_weighting, kasteleyn_matrix, non_flat_faces, submatrix_check, zd_det, KasteleynWeighting};
use ddimer::oracle::{self, DEFAULT_CAP};
use ddimer::pairings::{
    admissible_splits, all_pairings, balanced_colorings, black_white_pairings, components, connects, crossings,
    planar_pairings, sign_bw, sign_oe, sign_product, sign_set, sign_set_with, t_set, NodeColoring, SignSetRoute,
};
use ddimer::qdd::{b2_matrix, meander_matrix, q_matrix, resolve_crossings, resolve_crossings_with, QRoute};
use ddimer::tripartite::{balanced_set_det_with, checkerboard_t, YTable};
use ddimer::{parse_graph, rgb_pairing, EmbeddedGraph, Pairing, RgbSplit};

/// A random grid instance with `nodes` boundary nodes.
fn instance(w: usize, h: usize, nodes: usize, seed: u64, nonzero: bool) -> EmbeddedGraph {
    let mut spec = InstanceSpec::grid(w, h, nodes, seed);
    spec.require_nonzero = nonzero;
    generate(&spec).expect("generator finds an instance")
}

/// Every subset of `1..=size` that is balanced for `c`.
fn balanced_subsets(c: &NodeColoring) -> Vec<BTreeSet<usize>> {
    let size = c.len();
    (0u64..1 << size)
        .map(|m| (1..=size).filter(|i| m >> (i - 1) & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| c.is_balanced(s))
        .collect()
}

/// `p` with labels `i` and `j` exchanged.
fn swap_labels(p: &Pairing, i: usize, j: usize) -> Pairing {
    let t = |x: usize| if x == i { j } else if x == j { i } else { x };
    let pairs: Vec<_> = p.pairs().into_iter().map(|(a, b)| (t(a), t(b))).collect();
    Pairing::new(&pairs).unwrap()
}

fn complement(s: &BTreeSet<usize>, size: usize) -> BTreeSet<usize> {
    (1..=size).filter(|i| !s.contains(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_format_round_trips(seed in any::<u64>(), nodes in select(vec![0usize, 2, 4, 6])) {
        let g = instance(4, 4, nodes, seed, false);
        let text = g.to_text();
        let h = parse_graph(&text).unwrap();
        prop_assert_eq!(&g, &h);
        prop_assert_eq!(text, h.to_text());
    }

    #[test]
    fn disjoint_deletions_commute(seed in any::<u64>(), pick in any::<u64>()) {
        let g = instance(4, 4, 0, seed, false);
        let ids: Vec<u64> = g.vertices().iter().map(|v| v.id).collect();
        // Two bits per vertex: 1 → first set, 2 → second set, else kept.
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (k, &id) in ids.iter().enumerate() {
            match pick >> (2 * k % 64) & 3 {
                1 => a.push(id),
                2 => b.push(id),
                _ => {}
            }
        }
        let ab = g.delete_vertices(&a).unwrap().delete_vertices(&b).unwrap();
        let ba = g.delete_vertices(&b).unwrap().delete_vertices(&a).unwrap();
        let both: Vec<u64> = a.iter().chain(&b).copied().collect();
        let once = g.delete_vertices(&both).unwrap();
        prop_assert_eq!(ab.to_text(), ba.to_text());
        prop_assert_eq!(ab.to_text(), once.to_text());
        // The result still passes full validation: bipartite and planar.
        prop_assert!(parse_graph(&once.to_text()).is_ok());
    }

    #[test]
    fn node_deletion_keeps_a_valid_graph(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = instance(4, 4, 6, seed, false);
        let sets = balanced_subsets(&g.node_coloring());
        let s: Vec<usize> = sets[pick.index(sets.len())].iter().copied().collect();
        let (sub, survivors) = g.delete_nodes(&s).unwrap();
        prop_assert_eq!(survivors.len() + s.len(), 6);
        prop_assert_eq!(sub.node_count(), survivors.len());
        // Re-validating the drawing checks bipartiteness and planarity.
        let bare = EmbeddedGraph::new(sub.vertices().to_vec(), sub.edges().to_vec(), Vec::new(), None);
        prop_assert!(bare.is_ok(), "{:?}", bare);
        prop_assert_eq!(sub.node_coloring().black_nodes().len() * 2, sub.node_count());
    }

    #[test]
    fn gauge_flip_preserves_flatness_and_determinant(seed in any::<u64>(), v in any::<prop::sample::Index>()) {
        let g = instance(4, 4, 0, seed, true);
        let w = build_weighting(&g).unwrap();
        prop_assert!(non_flat_faces(&g, &w).is_empty());
        let vertex = v.index(g.vertices().len());
        let ends = g.edge_ends();
        let flipped = KasteleynWeighting {
            signs: w.signs.iter().zip(&ends).map(|(&s, &(a, b))| if a == vertex || b == vertex { -s } else { s }).collect(),
        };
        prop_assert!(non_flat_faces(&g, &flipped).is_empty());
        let d0 = kasteleyn_matrix(&g, &w).determinant();
        let d1 = kasteleyn_matrix(&g, &flipped).determinant();
        prop_assert_eq!(d0.abs(), d1.abs());
        prop_assert_eq!(d0.abs(), oracle::zd_enumerate(&g).unwrap());
    }

    #[test]
    fn deleted_submatrices_stay_kasteleyn(seed in any::<u64>(), nodes in select(vec![2usize, 4, 6])) {
        let g = instance(4, 4, nodes, seed, false);
        for s in balanced_subsets(&g.node_coloring()) {
            let labels: Vec<usize> = s.into_iter().collect();
            let r = submatrix_check(&g, &labels, DEFAULT_CAP).unwrap();
            prop_assert!(r.flat && r.holds, "{:?}", r);
        }
    }

    #[test]
    fn superposition_of_two_dimer_covers(seed in any::<u64>(), nodes in select(vec![2usize, 4, 6])) {
        // Z^D(G∖V)·Z^D(G∖V^c) = Σ over pairings that connect no element of
        // V △ T to its complement, for every balanced V.
        let g = instance(4, 3, nodes, seed, false);
        let c = g.node_coloring();
        let sums = oracle::all_pairing_sums(&g).unwrap();
        let t = t_set(&c);
        for v in balanced_subsets(&c) {
            let vt: BTreeSet<usize> = v.symmetric_difference(&t).copied().collect();
            let rhs: Rational = sums.iter().filter(|(p, _)| !connects(p, &vt)).map(|(_, z)| z.clone()).sum();
            let a: Vec<usize> = v.iter().copied().collect();
            let b: Vec<usize> = complement(&v, c.len()).into_iter().collect();
            let lhs = zd_det(&g.delete_nodes(&a).unwrap().0).unwrap() * zd_det(&g.delete_nodes(&b).unwrap().0).unwrap();
            prop_assert_eq!(lhs, rhs, "V = {:?}", v);
        }
        prop_assert!(sums.values().all(|z| !z.is_negative()));
    }

    #[test]
    fn balanced_set_determinant_matches_deletions(seed in any::<u64>(), nodes in select(vec![2usize, 4, 6])) {
        let g = instance(4, 3, nodes, seed, true);
        let table = YTable::new(&g).unwrap();
        let zd2 = table.zd() * table.zd();
        let c = g.node_coloring();
        for s in balanced_subsets(&c) {
            let a: Vec<usize> = s.iter().copied().collect();
            let b: Vec<usize> = complement(&s, c.len()).into_iter().collect();
            let ratio = oracle::zd_enumerate(&g.delete_nodes(&a).unwrap().0).unwrap()
                * oracle::zd_enumerate(&g.delete_nodes(&b).unwrap().0).unwrap()
                / &zd2;
            prop_assert_eq!(balanced_set_det_with(&table, &s).unwrap(), ratio, "S = {:?}", s);
        }
    }

    #[test]
    fn resolution_ignores_the_crossing_choice(size in select(vec![6usize, 8, 10]), pick in any::<u64>(), k in any::<usize>()) {
        let all = all_pairings(size);
        let rho = &all[(pick % all.len() as u64) as usize];
        let chosen = resolve_crossings_with(rho, |xs| xs[k % xs.len()]);
        prop_assert_eq!(resolve_crossings(rho), chosen);
    }

    #[test]
    fn swapping_same_parity_labels_flips_sign_oe(size in select(vec![4usize, 6, 8, 10]), pick in any::<u64>(), i in any::<usize>(), j in any::<usize>()) {
        let oe: Vec<Pairing> = all_pairings(size).into_iter().filter(|p| p.is_odd_even()).collect();
        let p = &oe[(pick % oe.len() as u64) as usize];
        let (a, b) = (1 + 2 * (i % (size / 2)), 1 + 2 * (j % (size / 2)));
        let parity = (i / (size / 2)) % 2;
        let (a, b) = (a + parity, b + parity);
        prop_assume!(a != b);
        prop_assert_eq!(sign_oe(&swap_labels(p, a, b)).unwrap(), -sign_oe(p).unwrap());
    }

    #[test]
    fn swapping_same_colour_labels_flips_sign_bw(size in select(vec![4usize, 6, 8]), pick in any::<u64>(), i in any::<usize>(), j in any::<usize>()) {
        let colorings = balanced_colorings(size);
        let c = &colorings[(pick % colorings.len() as u64) as usize];
        let bw = black_white_pairings(c);
        let rho = &bw[(pick / 7 % bw.len() as u64) as usize];
        let class = if i % 2 == 0 { c.black_nodes() } else { c.white_nodes() };
        let (a, b) = (class[i / 2 % class.len()], class[j % class.len()]);
        prop_assume!(a != b);
        prop_assert_eq!(sign_bw(&swap_labels(rho, a, b), c).unwrap(), -sign_bw(rho, c).unwrap());
    }
}

#[test]
fn rgb_pairing_is_the_unique_admissible_planar_pairing() {
    for size in (2..=10).step_by(2) {
        for split in RgbSplit::all_valid(size) {
            let sigma = rgb_pairing(size, split).unwrap();
            let ok: Vec<Pairing> = planar_pairings(size)
                .into_iter()
                .filter(|p| p.pairs().iter().all(|&(a, b)| split.class_of(a) != split.class_of(b)))
                .collect();
            assert_eq!(ok, vec![sigma.clone()], "split {split:?}");
            assert_eq!(crossings(&sigma), 0);
        }
    }
}

#[test]
fn master_sign_identity_exhaustive() {
    for size in (2..=8).step_by(2) {
        for c in balanced_colorings(size) {
            for rho in black_white_pairings(&c) {
                assert_eq!(sign_product(&rho, &c).unwrap(), parity_sign(crossings(&rho)), "{c} {rho}");
                if rho.is_odd_even() {
                    assert_eq!(sign_bw(&rho, &c).unwrap(), sign_oe(&rho).unwrap(), "{c} {rho}");
                }
            }
        }
    }
}

#[test]
fn admissible_splits_count_and_sign_routes() {
    for size in (2..=8).step_by(2) {
        for c in balanced_colorings(size) {
            let t = t_set(&c);
            let oe: Vec<Pairing> = all_pairings(size).into_iter().filter(|p| p.is_odd_even()).collect();
            for s in balanced_subsets(&c) {
                let def = sign_set(&s, &c, SignSetRoute::Definition).unwrap();
                assert_eq!(def, sign_set(&s, &c, SignSetRoute::Formula).unwrap(), "{c} {s:?}");
            }
            for pi in &oe {
                for rho in black_white_pairings(&c) {
                    let splits = admissible_splits(pi, &rho, &c).unwrap();
                    assert_eq!(splits.len(), 1 << components(pi, &rho), "{c} {pi} {rho}");
                    let distinct: BTreeSet<_> = splits.iter().collect();
                    assert_eq!(distinct.len(), splits.len());
                    for s in &splits {
                        let st: BTreeSet<usize> = s.symmetric_difference(&t).copied().collect();
                        assert!(c.is_balanced(s) && !rho.connects(s) && !pi.connects(&st));
                        // Every admissible (π, ρ) gives the same sign(S).
                        let def = sign_set(s, &c, SignSetRoute::Definition).unwrap();
                        assert_eq!(sign_set_with(s, pi, &rho, &c).unwrap(), def);
                    }
                }
            }
        }
    }
}

#[test]
fn resolution_preserves_meander_pairings() {
    // sign_OE(π)·(−1)^{C(π,ρ)}·(−1)^n·2^{C(π,ρ)} = Σ_σ P_{σ,ρ}·sign_OE(σ)·2^{C(π,σ)}
    // for every pairing ρ and planar π.
    for size in (2..=8).step_by(2) {
        let n = size / 2;
        let planar = planar_pairings(size);
        for rho in all_pairings(size) {
            let resolved = resolve_crossings(&rho);
            for pi in &planar {
                let c = components(pi, &rho);
                let lhs = i64::from(sign_oe(pi).unwrap() * parity_sign(n + c)) << c;
                let rhs: i64 = resolved
                    .iter()
                    .map(|(sigma, &k)| k * i64::from(sign_oe(sigma).unwrap()) * (1i64 << components(pi, sigma)))
                    .sum();
                assert_eq!(lhs, rhs, "{pi} / {rho}");
            }
        }
    }
}

#[test]
fn q_matrix_solves_the_meander_system() {
    for size in (2..=8).step_by(2) {
        let m2 = meander_matrix(size / 2).to_matrix();
        for c in balanced_colorings(size) {
            let a = q_matrix(&c, QRoute::Resolve).unwrap();
            let b = q_matrix(&c, QRoute::Solve).unwrap();
            assert_eq!(a, b, "{c}");
            let q = a.to_matrix();
            assert!(q.is_integral());
            assert_eq!(m2.mul(&q), b2_matrix(&c).unwrap().to_matrix(), "{c}");
        }
    }
}

#[test]
fn checkerboard_parity_exhaustive() {
    for size in (2..=10).step_by(2) {
        for c in balanced_colorings(size) {
            let board = checkerboard_t(&c);
            assert!(board.holds, "{board:?}");
        }
    }
}

#[test]
fn oracle_outputs_are_nonnegative() {
    for seed in 0..8 {
        let g = instance(3, 4, 4, seed, false);
        assert!(!oracle::zd_enumerate(&g).unwrap().is_negative());
        for (_, z) in oracle::all_pairing_sums(&g).unwrap() {
            assert!(z > Rational::zero());
        }
        assert!(zd_det(&g).unwrap() >= int(0));
    }
}

#[test]
fn generation_is_reproducible() {
    for seed in [0, 1, u64::MAX] {
        let spec = InstanceSpec::grid(4, 4, 6, seed);
        assert_eq!(generate(&spec).unwrap().to_text(), generate(&spec).unwrap().to_text());
    }
}
