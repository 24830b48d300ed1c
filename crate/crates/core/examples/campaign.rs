//! A seeded verification campaign and its JSON report.
//!
//! ```text
//! cargo run --example campaign -- condense 7 5
//! ```

use ddimer::campaign::{run, CampaignConfig, Suite};
use ddimer::oracle::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().unwrap_or_else(|| "tripartite".into()).parse()?;
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5);

    let report = run(&CampaignConfig { suite, seed, count, cap: DEFAULT_CAP })?;
    for case in &report.cases {
        println!("{} {:>3} {}", if case.passed { "PASS" } else { "FAIL" }, case.index, case.label);
    }
    println!("{} passed, {} failed", report.passed, report.failed);
    // The full report, byte-identical for the same arguments.
    let json = serde_json::to_string(&report)?;
    println!("report: {} bytes of JSON", json.len());
    Ok(())
}
