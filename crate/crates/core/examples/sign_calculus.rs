//! The pairing sign functions for a node colouring: couples, `sign(b, w)`,
//! the master identity, `T`, admissible splits and `sign(S)`.
//!
//! ```text
//! cargo run --example sign_calculus -- BWWBBW
//! ```

use std::collections::BTreeSet;

use ddimer::pairings::{
    admissible_splits, black_white_pairings, components, couples, crossings, planar_bw_pairing, sign_bw, sign_cons,
    sign_oe, sign_pair, sign_product, sign_set, t_set, SignSetRoute,
};
use ddimer::NodeColoring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "BBWBWW".to_string());
    let c: NodeColoring = arg.parse()?;
    let size = c.len();
    println!("colouring {c}: black {:?}, white {:?}", c.black_nodes(), c.white_nodes());
    let cp = couples(&c);
    println!("same-colour couples (first element): {:?}", cp.all);
    println!("sign_cons = {}", sign_cons(&c));
    println!("T = {:?}", t_set(&c));

    println!("sign(b, w):");
    for b in c.black_nodes() {
        let row: Vec<String> = c.white_nodes().iter().map(|&w| format!("{:>2}", sign_pair(&c, b, w).unwrap())).collect();
        println!("  b={b}: {}", row.join(" "));
    }

    println!("black-white pairings (master identity: product = (-1)^crossings):");
    for rho in black_white_pairings(&c) {
        println!("  {rho:<20} crossings {}  sign_bw {:>2}  product {:>2}", crossings(&rho), sign_bw(&rho, &c)?, sign_product(&rho, &c)?);
    }

    let pi = planar_bw_pairing(&c);
    let rho = black_white_pairings(&c).pop().expect("balanced colouring");
    println!("π = {pi} (sign_OE {}), ρ = {rho}", sign_oe(&pi)?);
    let splits = admissible_splits(&pi, &rho, &c)?;
    println!("{} components, {} admissible splits:", components(&pi, &rho), splits.len());
    for s in splits {
        let a = sign_set(&s, &c, SignSetRoute::Definition)?;
        let b = sign_set(&s, &c, SignSetRoute::Formula)?;
        println!("  S = {:?}: sign(S) = {a} (closed form {b})", s);
    }

    let full: BTreeSet<usize> = (1..=size).collect();
    println!("sign(N) = {}", sign_set(&full, &c, SignSetRoute::Formula)?);
    Ok(())
}
