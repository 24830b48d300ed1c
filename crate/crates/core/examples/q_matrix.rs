//! `Q^(DD)` for a node colouring by crossing resolution and by solving the
//! meander system, plus the `Y`-polynomial of one planar pairing.
//!
//! ```text
//! cargo run --example q_matrix -- BWBWBW
//! ```

use ddimer::qdd::{meander_matrix, pr_polynomial, q_matrix, resolve_crossings, QRoute};
use ddimer::pairings::{black_white_pairings, planar_pairings};
use ddimer::NodeColoring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "BWBWBW".to_string());
    let c: NodeColoring = arg.parse()?;

    let m2 = meander_matrix(c.n());
    println!("meander matrix over {} planar pairings:\n{m2}", m2.rows.len());

    for rho in black_white_pairings(&c).iter().take(3) {
        let combo: Vec<String> = resolve_crossings(rho).iter().map(|(s, k)| format!("{k:+} {s}")).collect();
        println!("resolve {rho} = {}", combo.join(" "));
    }

    let a = q_matrix(&c, QRoute::Resolve)?;
    let b = q_matrix(&c, QRoute::Solve)?;
    println!("\nQ^(DD) for {c}:\n{a}routes agree: {}", a == b);

    for sigma in planar_pairings(c.len()) {
        println!("Pr~({sigma}) = {}", pr_polynomial(&sigma, &c)?);
    }
    Ok(())
}
