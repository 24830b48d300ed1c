//! Kuo's graphical condensation on a random grid subgraph, with every
//! partition function also enumerated.

use ddimer::instance::{aux_rng, generate, random_face_quad, InstanceSpec};
use ddimer::tripartite::kuo_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1u64);
    let g = generate(&InstanceSpec::grid(4, 4, 0, seed))?;
    let mut rng = aux_rng(seed);
    let quad = random_face_quad(&g, &mut rng).ok_or("no face has four alternating vertices")?;
    let r = kuo_check(&g, quad, Some(ddimer::oracle::DEFAULT_CAP))?;
    println!("{} vertices; a, b, c, d = {:?}", g.vertices().len(), r.vertices);
    println!("Z(G)·Z(G−abcd)         = {}·{} = {}", r.z, r.z_abcd, r.lhs);
    println!("Z(G−ab)·Z(G−cd) + Z(G−ad)·Z(G−bc) = {}·{} + {}·{} = {}", r.z_ab, r.z_cd, r.z_ad, r.z_bc, r.rhs);
    println!("holds: {}, enumeration agrees: {:?}", r.holds, r.enumeration_agrees);
    Ok(())
}
