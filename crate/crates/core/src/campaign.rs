//! Verification campaigns: run many seeded instances through one of the
//! identity checkers and collect a machine-readable report.
//!
//! Reports depend only on the suite, master seed, count and cap, so equal
//! inputs produce byte-identical JSON.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parity_sign, Rational};
use crate::graph::{EmbeddedGraph, RgbSplit};
use crate::instance::{aux_rng, condensation_grid, generate, instance_seeds, random_face_quad, InstanceSpec};
use crate::kasteleyn::{submatrix_check, zd_det};
use crate::oracle;
use crate::pairings::{
    admissible_splits, all_pairings, balanced_colorings, black_white_pairings, components, crossings, sign_product,
    sign_set, NodeColoring, SignSetRoute,
};
use crate::tripartite::{checkerboard_t, dd_condensation_check_with, kuo_check, pfaffian_matrix, YTable};

/// The available checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kuo,
    Condense,
    Tripartite,
    Kasteleyn,
    Signs,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kuo" => Ok(Suite::Kuo),
            "condense" => Ok(Suite::Condense),
            "tripartite" => Ok(Suite::Tripartite),
            "kasteleyn" => Ok(Suite::Kasteleyn),
            "signs" => Ok(Suite::Signs),
            other => Err(Error::Precondition(format!("unknown suite `{other}`"))),
        }
    }
}

/// What to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Number of random instances (ignored by the exhaustive `signs` suite).
    pub count: usize,
    /// Search-state cap for every enumeration.
    pub cap: u64,
}

/// The outcome of one instance.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub index: usize,
    /// Instance seed (absent for fixed fixtures and exhaustive cases).
    pub seed: Option<u64>,
    pub label: String,
    pub passed: bool,
    pub detail: Value,
}

/// The outcome of a whole campaign.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub cap: u64,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// The first failing case, if any.
    pub fn first_failure(&self) -> Option<&CaseReport> {
        self.cases.iter().find(|c| !c.passed)
    }
}

/// Runs a campaign.  Errors only for problems with the campaign itself
/// (such as an instance that cannot be generated or an exceeded cap);
/// identity failures are recorded in the report.
pub fn run(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let mut cases = Vec::new();
    match cfg.suite {
        Suite::Signs => cases.extend(signs_cases(8)?),
        Suite::Condense => {
            cases.push(grid8x8_case()?);
            for (i, seed) in instance_seeds(cfg.seed, cfg.count).into_iter().enumerate() {
                cases.push(condense_case(i + 1, seed, cfg.cap)?);
            }
        }
        suite => {
            for (i, seed) in instance_seeds(cfg.seed, cfg.count).into_iter().enumerate() {
                cases.push(match suite {
                    Suite::Kuo => kuo_case(i, seed, cfg.cap)?,
                    Suite::Tripartite => tripartite_case(i, seed, cfg.cap)?,
                    Suite::Kasteleyn => kasteleyn_case(i, seed, cfg.cap)?,
                    Suite::Signs | Suite::Condense => unreachable!("handled above"),
                });
            }
        }
    }
    let passed = cases.iter().filter(|c| c.passed).count();
    Ok(CampaignReport {
        suite: cfg.suite,
        seed: cfg.seed,
        count: cfg.count,
        cap: cfg.cap,
        passed,
        failed: cases.len() - passed,
        cases,
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialise")
}

/// Largest graph (in vertices) that campaigns also enumerate.
const ENUMERATE_LIMIT: usize = 14;

/// Kuo's identity on a random grid subgraph and a random face quadruple.
pub fn kuo_case(index: usize, seed: u64, cap: u64) -> Result<CaseReport> {
    let mut rng = aux_rng(seed);
    let (w, h) = (rng.gen_range(3..=5), rng.gen_range(3..=5));
    // Some random subgraphs are trees or have no usable face; redraw the
    // graph from a deterministic sequence of derived seeds.
    let mut found = None;
    for k in 0..100u64 {
        let sub = seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let g = generate(&InstanceSpec::grid(w, h, 0, sub))?;
        if let Some(q) = random_face_quad(&g, &mut rng) {
            found = Some((g, q));
            break;
        }
    }
    let (g, quad) = found.ok_or_else(|| Error::Precondition(format!("no face quadruple for instance {seed}")))?;
    let enumerate = (g.vertices().len() <= ENUMERATE_LIMIT).then_some(cap);
    let r = kuo_check(&g, quad, enumerate)?;
    Ok(CaseReport {
        index,
        seed: Some(seed),
        label: format!("{w}x{h} grid subgraph, {} vertices", g.vertices().len()),
        passed: r.holds,
        detail: json!({ "vertex_count": g.vertices().len(), "graph": g.to_text(), "report": to_value(&r) }),
    })
}

/// The illustrated condensation example on the 8×8 grid.
pub fn grid8x8_case() -> Result<CaseReport> {
    let g = condensation_grid();
    let table = YTable::new(&g)?;
    let r = dd_condensation_check_with(&g, &table, RgbSplit::new(3, 3, 2), [8, 1, 2, 5], None)?;
    let passed = r.holds && r.positive_form.as_ref().is_some_and(|p| p.holds);
    Ok(CaseReport { index: 0, seed: None, label: "8x8 grid, split 3,3,2, x=8 y=1 w=2 v=5".into(), passed, detail: to_value(&r) })
}

/// Double-dimer condensation on a small random instance, with every
/// `Z^DD` factor also enumerated.
pub fn condense_case(index: usize, seed: u64, cap: u64) -> Result<CaseReport> {
    let mut rng = aux_rng(seed);
    let dims = [(3, 4), (4, 3), (3, 3), (4, 4)];
    let (w, h) = *dims.choose(&mut rng).expect("nonempty");
    let nodes = *[4usize, 6, 8].choose(&mut rng).expect("nonempty");
    let g = generate(&InstanceSpec::grid(w, h, nodes, seed))?;
    let split = g.rgb().expect("generated with a split");
    let c = g.node_coloring();
    let (mut a, mut b) = (c.black_nodes(), c.white_nodes());
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut a, &mut b);
    }
    let xw: Vec<usize> = a.choose_multiple(&mut rng, 2).copied().collect();
    let yv: Vec<usize> = b.choose_multiple(&mut rng, 2).copied().collect();
    let quad = [xw[0], yv[0], xw[1], yv[1]];
    let table = YTable::new(&g)?;
    let enumerate = (g.vertices().len() <= ENUMERATE_LIMIT).then_some(cap);
    let r = dd_condensation_check_with(&g, &table, split, quad, enumerate)?;
    Ok(CaseReport {
        index,
        seed: Some(seed),
        label: format!("{} vertices, {nodes} nodes, split {},{},{}", g.vertices().len(), split.r, split.g, split.b),
        passed: r.holds,
        detail: json!({ "graph": g.to_text(), "report": to_value(&r) }),
    })
}

/// The determinant and Pfaffian formulas for every valid split of a random
/// instance, against one enumeration of all double-dimer configurations.
pub fn tripartite_case(index: usize, seed: u64, cap: u64) -> Result<CaseReport> {
    let mut rng = aux_rng(seed);
    let nodes = *[4usize, 6, 8].choose(&mut rng).expect("nonempty");
    let mut spec = InstanceSpec::grid(4, 4, nodes, seed);
    // Sparse deletions keep most splits at nonzero probability.
    spec.delete_prob = 0.05;
    let g = generate(&spec)?;
    let (passed, splits) = tripartite_agreement(&g, cap)?;
    Ok(CaseReport {
        index,
        seed: Some(seed),
        label: format!("{} vertices, {nodes} nodes", g.vertices().len()),
        passed,
        detail: json!({ "graph": g.to_text(), "splits": splits }),
    })
}

/// Checks every valid split of `g`: determinant route against enumeration,
/// and the Pfaffian route against the determinant route.
pub fn tripartite_agreement(g: &EmbeddedGraph, cap: u64) -> Result<(bool, Vec<Value>)> {
    let table = YTable::new(g)?;
    let sums = oracle::all_pairing_sums_capped(g, cap)?;
    let zd2 = table.zd() * table.zd();
    let labels: Vec<usize> = (1..=g.node_count()).collect();
    let cons = crate::pairings::sign_cons(table.coloring());
    let mut all = true;
    let mut out = Vec::new();
    for split in RgbSplit::all_valid(g.node_count()) {
        let sigma = crate::graph::rgb_pairing(labels.len(), split)?;
        let det_route = table.pr(&labels, split)?;
        let oracle_value = sums.get(&sigma).cloned().unwrap_or_else(Rational::zero) / &zd2;
        let pf = pfaffian_matrix(&table, split)?.pfaffian();
        let pf_route = pf * Rational::from_integer((cons * crate::pairings::sign_oe(&sigma)?).into());
        let ok = det_route == oracle_value && pf_route == det_route;
        all &= ok;
        out.push(json!({
            "split": split,
            "pairing": sigma.to_string(),
            "determinant": fmt_rational(&det_route),
            "enumerated": fmt_rational(&oracle_value),
            "pfaffian_route": fmt_rational(&pf_route),
            "holds": ok,
        }));
    }
    Ok((all, out))
}

/// `|det K| = Z^D` by enumeration, and the deleted-submatrix property for
/// every balanced set of nodes.
pub fn kasteleyn_case(index: usize, seed: u64, cap: u64) -> Result<CaseReport> {
    let mut rng = aux_rng(seed);
    let nodes = *[2usize, 4, 6].choose(&mut rng).expect("nonempty");
    let mut spec = InstanceSpec::grid(4, 4, nodes, seed);
    spec.require_nonzero = false;
    let g = generate(&spec)?;
    let (passed, detail) = kasteleyn_agreement(&g, cap)?;
    Ok(CaseReport { index, seed: Some(seed), label: format!("{} vertices, {nodes} nodes", g.vertices().len()), passed, detail })
}

/// The Kasteleyn checks for one graph.
pub fn kasteleyn_agreement(g: &EmbeddedGraph, cap: u64) -> Result<(bool, Value)> {
    let det = zd_det(g)?;
    let enumerated = oracle::zd_enumerate_capped(g, cap)?;
    let mut all = det == enumerated;
    let c = g.node_coloring();
    let size = g.node_count();
    let mut subsets = Vec::new();
    for mask in 1u64..(1u64 << size) {
        let s: BTreeSet<usize> = (1..=size).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if !c.is_balanced(&s) {
            continue;
        }
        let r = submatrix_check(g, &s.iter().copied().collect::<Vec<_>>(), cap)?;
        all &= r.holds;
        subsets.push(to_value(&r));
    }
    Ok((
        all,
        json!({
            "graph": g.to_text(),
            "determinant": fmt_rational(&det),
            "enumerated": fmt_rational(&enumerated),
            "submatrices": subsets,
        }),
    ))
}

/// Sign-calculus facts checked for one colouring.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SignTally {
    /// Black-white pairings checked against `(−1)^{crossings}`.
    pub master: usize,
    /// Balanced sets whose two `sign(S)` routes were compared.
    pub sign_sets: usize,
    /// `(π, ρ)` pairs whose admissible-split count was compared with
    /// `2^{components}`.
    pub split_counts: usize,
    pub failures: Vec<String>,
}

/// Exhaustive sign checks for one colouring.
pub fn sign_checks(c: &NodeColoring) -> Result<SignTally> {
    let mut t = SignTally::default();
    let size = c.len();
    let bw = black_white_pairings(c);
    for rho in &bw {
        t.master += 1;
        if sign_product(rho, c)? != parity_sign(crossings(rho)) {
            t.failures.push(format!("master identity fails for {rho}"));
        }
    }
    for mask in 0u64..(1u64 << size) {
        let s: BTreeSet<usize> = (1..=size).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if !c.is_balanced(&s) {
            continue;
        }
        t.sign_sets += 1;
        let a = sign_set(&s, c, SignSetRoute::Definition)?;
        let b = sign_set(&s, c, SignSetRoute::Formula)?;
        if a != b {
            t.failures.push(format!("sign(S) routes differ for S = {s:?}"));
        }
    }
    let odd_even: Vec<_> = all_pairings(size).into_iter().filter(|p| p.is_odd_even()).collect();
    for pi in &odd_even {
        for rho in &bw {
            t.split_counts += 1;
            let n = admissible_splits(pi, rho, c)?.len();
            if n != 1 << components(pi, rho) {
                t.failures.push(format!("{n} admissible splits for {pi} / {rho}"));
            }
        }
    }
    Ok(t)
}

/// One case per balanced colouring of up to `max_size` nodes.
pub fn signs_cases(max_size: usize) -> Result<Vec<CaseReport>> {
    let mut cases = Vec::new();
    for size in (2..=max_size).step_by(2) {
        for c in balanced_colorings(size) {
            let tally = sign_checks(&c)?;
            let board = checkerboard_t(&c);
            let passed = tally.failures.is_empty() && board.holds;
            cases.push(CaseReport {
                index: cases.len(),
                seed: None,
                label: c.to_string(),
                passed,
                detail: json!({ "signs": tally, "checkerboard": board }),
            });
        }
    }
    Ok(cases)
}
