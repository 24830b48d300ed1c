//! Parse a graph file and compute its dimer partition function two ways.
//!
//! ```text
//! cargo run --example partition_function -- fixtures/grid4x4.graph
//! ```
//!
//! Without an argument a 4×4 grid with unit weights is used.

use ddimer::instance::grid_graph;
use ddimer::kasteleyn::zd_det;
use ddimer::oracle;
use ddimer::{parse_graph, EmbeddedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: EmbeddedGraph = match std::env::args().nth(1) {
        Some(path) => parse_graph(&std::fs::read_to_string(path)?)?,
        None => grid_graph(4, 4, &[], None)?,
    };
    println!("{} vertices, {} edges, {} nodes", g.vertices().len(), g.edges().len(), g.node_count());
    println!("bounded faces: {}", g.embedding().bounded_faces().count());

    let det = zd_det(&g)?;
    println!("Z^D by Kasteleyn determinant: {det}");
    match oracle::zd_enumerate(&g) {
        Ok(z) => println!("Z^D by enumeration:           {z}  (agree: {})", z == det),
        Err(e) => println!("enumeration skipped: {e}"),
    }
    Ok(())
}
