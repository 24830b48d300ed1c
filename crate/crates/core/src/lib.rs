//! Exact dimer and double-dimer computations on planar bipartite graphs with
//! boundary nodes.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] — rational numbers, Bareiss determinants, exact solves and
//!   Pfaffians;
//! * [`graph`] and [`embed`] — validated straight-line embeddings, the text
//!   and JSON formats, node deletion and tripartite pairings;
//! * [`oracle`] — brute-force enumeration of dimer and double-dimer
//!   configurations, the ground truth for everything else;
//! * [`kasteleyn`] — Kasteleyn sign weightings and `Z^D = |det K|`;
//! * [`pairings`] — crossings, nestings and the black-white sign calculus;
//! * [`qdd`] — crossing resolution, meander matrices and the integer matrix
//!   `Q^(DD)` expressing pairing probabilities as polynomials;
//! * [`tripartite`] — `Y` ratios, the tripartite determinant and Pfaffian
//!   formulas, and the condensation recurrences;
//! * [`instance`] and [`campaign`] — seeded random grid instances and the
//!   verification campaigns driven by the command-line tool.

pub mod campaign;
pub mod embed;
pub mod error;
pub mod exact;
pub mod graph;
pub mod instance;
pub mod kasteleyn;
pub mod oracle;
pub mod pairings;
pub mod qdd;
pub mod tripartite;

pub use error::{Error, Result};
pub use exact::{Matrix, Rational};
pub use graph::{parse_graph, rgb_pairing, EmbeddedGraph, RgbSplit};
pub use pairings::{Color, NodeColoring, Pairing};
