//! Enumerate double-dimer configurations of a small graph, grouped by the
//! pairing their node paths induce.

use ddimer::exact::fmt_rational;
use ddimer::instance::grid_graph;
use ddimer::oracle;
use ddimer::pairings::{crossings, planar_pairings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 4×3 grid, six boundary nodes listed counterclockwise.
    let g = grid_graph(4, 3, &[(0, 0), (1, 0), (3, 0), (3, 1), (3, 2), (2, 2)], None)?;
    println!("node colours: {}", g.node_coloring());

    let mut shown = 0;
    let mut total = 0usize;
    oracle::for_each_double_dimer(&g, oracle::DEFAULT_CAP, |cfg| {
        total += 1;
        if shown < 3 {
            println!(
                "configuration: pairing {}, paths {:?}, {} loops, {} doubled edges, weight {}",
                cfg.pairing,
                cfg.paths,
                cfg.loops,
                cfg.doubled,
                fmt_rational(&cfg.weight)
            );
            shown += 1;
        }
        Ok(())
    })?;
    println!("{total} double-dimer configurations");

    let zd = oracle::zd_enumerate(&g)?;
    let sums = oracle::all_pairing_sums(&g)?;
    println!("Z^D = {zd}");
    for (sigma, z) in &sums {
        let planar = if crossings(sigma) == 0 { "planar" } else { "crossing" };
        println!("{sigma:<20} {planar:<9} Z^DD = {:<8} Pr~ = {}", fmt_rational(z), fmt_rational(&(z / (&zd * &zd))));
    }
    // Only planar pairings can occur.
    assert!(sums.keys().all(|s| planar_pairings(6).contains(s)));
    Ok(())
}
