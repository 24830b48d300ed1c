//! Build a Kasteleyn weighting, print the signed matrix, and check that
//! deleting balanced sets of boundary nodes leaves Kasteleyn submatrices.

use std::collections::BTreeSet;

use ddimer::exact::abs;
use ddimer::instance::grid_graph;
use ddimer::kasteleyn::{build_weighting, kasteleyn_matrix, non_flat_faces, submatrix_check};
use ddimer::oracle::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A 3×2 grid with all six vertices counted as nodes (counterclockwise).
    let g = grid_graph(3, 2, &[(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)], None)?;
    let w = build_weighting(&g)?;
    println!("edge signs: {:?}", w.signs);
    println!("non-flat bounded faces: {:?}", non_flat_faces(&g, &w));

    let k = kasteleyn_matrix(&g, &w);
    println!("K ({}×{}):", k.rows(), k.cols());
    for r in 0..k.rows() {
        let row: Vec<String> = (0..k.cols()).map(|c| format!("{:>2}", k[(r, c)].to_string())).collect();
        println!("  [{}]", row.join(" "));
    }
    println!("|det K| = {}", abs(&k.determinant()));

    let c = g.node_coloring();
    for mask in 1u32..(1 << g.node_count()) {
        let s: BTreeSet<usize> = (1..=g.node_count()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if !c.is_balanced(&s) {
            continue;
        }
        let labels: Vec<usize> = s.into_iter().collect();
        let r = submatrix_check(&g, &labels, DEFAULT_CAP)?;
        println!("delete {:?}: det {}, enumerated {}, flat {}", labels, r.determinant, r.enumerated, r.flat);
    }
    Ok(())
}
