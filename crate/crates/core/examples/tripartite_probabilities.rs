//! Tripartite pairing probabilities from the `Y` table: determinant and
//! Pfaffian formulas against brute-force enumeration, for every RGB split.

use ddimer::exact::fmt_rational;
use ddimer::instance::{generate, InstanceSpec};
use ddimer::oracle;
use ddimer::pairings::{sign_cons, sign_oe};
use ddimer::tripartite::{pfaffian_matrix, YTable};
use ddimer::{rgb_pairing, Rational, RgbSplit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5u64);
    // The whole 4×4 grid with random weights and six random boundary nodes.
    let mut spec = InstanceSpec::grid(4, 4, 6, seed);
    spec.delete_prob = 0.0;
    let g = generate(&spec)?;
    println!("{}", g.to_text());

    let table = YTable::new(&g)?;
    let labels: Vec<usize> = (1..=g.node_count()).collect();
    let c = table.coloring();
    println!("Z^D = {}, node colours {c}", fmt_rational(table.zd()));
    for &b in &c.black_nodes() {
        let row: Vec<String> = c.white_nodes().iter().map(|&w| format!("Y[{b},{w}]={}", fmt_rational(&table.get(b, w)))).collect();
        println!("  {}", row.join("  "));
    }

    for split in RgbSplit::all_valid(g.node_count()) {
        let sigma = rgb_pairing(labels.len(), split)?;
        let det = table.pr(&labels, split)?;
        let pf = pfaffian_matrix(&table, split)?.pfaffian();
        let pf_route = pf * Rational::from_integer((sign_cons(c) * sign_oe(&sigma)?).into());
        let enumerated = oracle::pr_tilde_oracle(&g, &sigma)?;
        println!(
            "split {},{},{}  σ = {sigma:<18} det {:<12} pfaffian {:<12} enumerated {:<12} {}",
            split.r,
            split.g,
            split.b,
            fmt_rational(&det),
            fmt_rational(&pf_route),
            fmt_rational(&enumerated),
            if det == enumerated && pf_route == det { "ok" } else { "MISMATCH" }
        );
    }
    Ok(())
}
