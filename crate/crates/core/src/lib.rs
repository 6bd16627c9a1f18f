//! Exact algorithms for b-colourings, tight b-colourings and fall
//! colourings of graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`] and [`colouring`]: graphs, m-degree analysis and validators.
//! - [`pattern`]: induced-subgraph detection and H-free classifiers.
//! - [`matching`]: bipartite and general maximum matching.
//! - [`oracles`]: exponential exact solvers used as ground truth.
//! - [`tight`]: partial b-colourings, the precolouring-extension decision
//!   and the polynomial tight b-colouring algorithms.
//! - [`fall`]: the polynomial fall-colouring algorithm for `(P3+P1)`-free graphs.
//! - [`gadgets`]: hardness-reduction constructions and their certificates.
//! - [`io`]: DIMACS, edge-list and formula text formats.

pub mod colouring;
pub mod fall;
pub mod formula;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracles;
pub mod pattern;
pub mod tight;

pub use colouring::{is_b_colouring, is_fall_colouring, is_tight_b_colouring, Colouring};
pub use graph::{analyze_tight, Graph, TightAnalysis};
