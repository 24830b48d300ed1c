//! Double-dimer condensation on the 8×8 grid with eight nodes and split
//! (3, 3, 2), removing nodes x = 8, y = 1, w = 2, v = 5.

use ddimer::exact::fmt_rational;
use ddimer::instance::condensation_grid;
use ddimer::tripartite::{dd_condensation_check_with, YTable};
use ddimer::RgbSplit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = condensation_grid();
    let table = YTable::new(&g)?;
    let r = dd_condensation_check_with(&g, &table, RgbSplit::new(3, 3, 2), [8, 1, 2, 5], None)?;
    println!("Z^D = {}", fmt_rational(&r.zd));
    for t in &r.terms {
        println!(
            "{:<5} removed {:?}  split {},{},{}  pairing {:<26} sign_OE {:>2}  Z^DD = {}",
            t.name,
            t.removed,
            t.split.r,
            t.split.g,
            t.split.b,
            t.pairing.as_deref().unwrap_or("-"),
            t.sign_oe.unwrap_or(0),
            t.zdd.as_ref().map_or("-".into(), fmt_rational)
        );
    }
    println!("branch {:?}, order sign {}", r.branch, r.order_sign);
    println!("signed:   {} = {}  ({})", fmt_rational(&r.signed_lhs), fmt_rational(&r.signed_rhs), r.signed_holds);
    if let Some(p) = &r.positive_form {
        println!("positive: {} = {}  ({})", fmt_rational(&p.lhs), fmt_rational(&p.rhs), p.holds);
    }
    Ok(())
}
