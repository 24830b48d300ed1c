//! `ddimer`: exact dimer and double-dimer computations from the command
//! line.
//!
//! Exit codes: 0 on success, 1 when an identity or a cross-check fails, 2 on
//! malformed input (including argument errors).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ddimer::campaign::{self, CampaignConfig, Suite};
use ddimer::exact::fmt_rational;
use ddimer::kasteleyn::zd_det;
use ddimer::oracle::{self, DEFAULT_CAP};
use ddimer::pairings::sign_oe;
use ddimer::qdd::{pr_polynomial, q_matrix, QRoute};
use ddimer::tripartite::{tripartite_pr, YTable};
use ddimer::{parse_graph, rgb_pairing, EmbeddedGraph, Error, NodeColoring, Pairing, RgbSplit};

#[derive(Parser)]
#[command(name = "ddimer", version, about = "Exact dimer and double-dimer computations on planar bipartite graphs")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search-state cap for brute-force enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimer partition function Z^D by Kasteleyn determinant (and by
    /// enumeration when the graph is small enough).
    Zd { file: PathBuf },
    /// Normalized double-dimer probability Pr~(σ) = Z^DD_σ / (Z^D)².
    ///
    /// With --split, σ is the tripartite pairing of that RGB split and the
    /// determinant formula is used; with --pairing, σ is given explicitly and
    /// Pr~ is enumerated (and, for planar σ, also evaluated from its Y
    /// polynomial).
    Pr {
        file: PathBuf,
        /// RGB split `r,g,b` of the nodes.
        #[arg(long)]
        split: Option<RgbSplit>,
        /// Explicit pairing, e.g. "(1 4)(2 3)".
        #[arg(long)]
        pairing: Option<Pairing>,
    },
    /// The integer matrix Q^(DD) for a node colouring, by both routes.
    Qmatrix {
        /// Node colours as a string such as BWBW.
        #[arg(long)]
        coloring: NodeColoring,
        /// Print only the Y polynomial of this planar pairing's row.
        #[arg(long)]
        pairing: Option<Pairing>,
    },
    /// Run a seeded verification campaign.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: text and JSON renderings plus whether every
/// identity held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Zd { file } => cmd_zd(&load(file)?, cli.cap),
        Command::Pr { file, split, pairing } => cmd_pr(&load(file)?, *split, pairing.as_ref(), cli.cap),
        Command::Qmatrix { coloring, pairing } => cmd_qmatrix(coloring, pairing.as_ref()),
        Command::Verify { suite, seed, count } => {
            cmd_verify(&CampaignConfig { suite: *suite, seed: *seed, count: *count, cap: cli.cap })
        }
    }
}

fn load(path: &Path) -> Result<EmbeddedGraph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidGraph(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Runs an enumeration, treating an exceeded cap as "not attempted".
fn try_enumerate<T>(f: impl FnOnce() -> Result<T, Error>) -> Result<Option<T>, Error> {
    match f() {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn cmd_zd(g: &EmbeddedGraph, cap: u64) -> Result<Outcome, Error> {
    let det = zd_det(g)?;
    let enumerated = try_enumerate(|| oracle::zd_enumerate_capped(g, cap))?;
    let ok = enumerated.as_ref().is_none_or(|e| e == &det);
    let mut text = format!("{}\n", fmt_rational(&det));
    match &enumerated {
        Some(_) if ok => text += "enumeration: agrees\n",
        Some(e) => text += &format!("enumeration: {} (MISMATCH)\n", fmt_rational(e)),
        None => text += "enumeration: skipped (cap exceeded)\n",
    }
    let json = json!({
        "determinant": fmt_rational(&det),
        "enumerated": enumerated.as_ref().map(fmt_rational),
        "agree": ok,
    });
    Ok(Outcome { text, json, ok })
}

fn cmd_pr(g: &EmbeddedGraph, split: Option<RgbSplit>, pairing: Option<&Pairing>, cap: u64) -> Result<Outcome, Error> {
    // An explicit pairing takes precedence over the file's rgb line.
    let split = if pairing.is_some() { split } else { split.or(g.rgb()) };
    let sigma = match (split, pairing) {
        (Some(s), _) => rgb_pairing(g.node_count(), s)?,
        (None, Some(p)) => p.clone(),
        (None, None) => return Err(Error::Precondition("give --split, --pairing, or an rgb line in the file".into())),
    };
    if let Some(p) = pairing {
        if p != &sigma {
            return Err(Error::Precondition(format!("--pairing {p} is not the tripartite pairing {sigma} of the split")));
        }
    }
    if sigma.size() != g.node_count() {
        return Err(Error::MalformedPairing(format!("pairing has {} labels, graph has {} nodes", sigma.size(), g.node_count())));
    }

    let formula = match split {
        Some(s) => Some(tripartite_pr(g, s)?),
        None if sigma.is_planar() => {
            let table = YTable::new(g)?;
            let poly = pr_polynomial(&sigma, &g.node_coloring())?;
            Some(poly.evaluate(|b, w| table.get(b, w)))
        }
        None => None,
    };
    let enumerated = try_enumerate(|| oracle::pr_tilde_oracle_capped(g, &sigma, cap))?;
    let ok = match (&formula, &enumerated) {
        (Some(f), Some(e)) => f == e,
        _ => true,
    };
    let sign = if sigma.is_odd_even() { Some(sign_oe(&sigma)?) } else { None };

    let mut text = format!("pairing: {sigma}\n");
    if let Some(s) = sign {
        text += &format!("sign_oe: {s}\n");
    }
    let value = formula.as_ref().or(enumerated.as_ref()).expect("some route ran or the pairing is non-planar");
    text += &format!("pr: {}\n", fmt_rational(value));
    match (&formula, &enumerated) {
        (Some(_), Some(_)) if ok => text += "enumeration: agrees\n",
        (Some(_), Some(e)) => text += &format!("enumeration: {} (MISMATCH)\n", fmt_rational(e)),
        (_, None) => text += "enumeration: skipped (cap exceeded)\n",
        (None, Some(_)) => text += "formula: not applicable (non-planar pairing)\n",
    }
    let json = json!({
        "pairing": sigma.to_string(),
        "split": split,
        "sign_oe": sign,
        "formula": formula.as_ref().map(fmt_rational),
        "enumerated": enumerated.as_ref().map(fmt_rational),
        "agree": ok,
    });
    Ok(Outcome { text, json, ok })
}

fn cmd_qmatrix(c: &NodeColoring, pairing: Option<&Pairing>) -> Result<Outcome, Error> {
    let a = q_matrix(c, QRoute::Resolve)?;
    let b = q_matrix(c, QRoute::Solve)?;
    let ok = a == b;
    if let Some(sigma) = pairing {
        let poly = pr_polynomial(sigma, c)?;
        let text = format!("{poly}\n");
        let terms: Vec<Value> = poly
            .terms
            .iter()
            .map(|(k, mono)| json!({ "coefficient": k, "monomial": mono }))
            .collect();
        let json = json!({ "coloring": c.to_string(), "pairing": sigma.to_string(), "polynomial": poly.to_string(), "terms": terms, "routes_agree": ok });
        return Ok(Outcome { text, json, ok });
    }
    let text = if a.rows.len() == 1 && a.cols.len() == 1 {
        format!("[{}]\nroutes agree: {ok}\n", a.entries[0][0])
    } else {
        format!("{a}routes agree: {ok}\n")
    };
    let json = json!({
        "coloring": c.to_string(),
        "rows": a.rows.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "columns": a.cols.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "entries": a.entries,
        "routes_agree": ok,
    });
    Ok(Outcome { text, json, ok })
}

fn cmd_verify(cfg: &CampaignConfig) -> Result<Outcome, Error> {
    let report = campaign::run(cfg)?;
    let ok = report.all_passed();
    let mut text = String::new();
    for case in &report.cases {
        let seed = case.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        text += &format!("{} #{} seed {seed}: {}\n", if case.passed { "PASS" } else { "FAIL" }, case.index, case.label);
    }
    text += &format!("{} passed, {} failed\n", report.passed, report.failed);
    if let Some(bad) = report.first_failure() {
        text += &format!("first failure:\n{}\n", serde_json::to_string_pretty(&bad.detail).expect("json"));
    }
    let json = serde_json::to_value(&report).expect("json");
    Ok(Outcome { text, json, ok })
}
