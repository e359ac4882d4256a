//! Exact divisor theory on tropical curves (metric graphs).
//!
//! Everything here is exact: edge lengths and point offsets are arbitrary-precision
//! rationals, divisors have integer coefficients, and piecewise-linear functions carry
//! integer slopes. The main entry points are:
//!
//! - [`MetricGraph`] / [`Point`] / [`Region`]: the ambient curve and subsets of it,
//! - [`Divisor`] / [`PLFunction`]: chips and the witnesses moving them around,
//! - [`reduction::reduce`]: the unique `q`-reduced representative via Dhar burning,
//! - [`RankContext`]: divisor rank, gap sequences and weights,
//! - [`weierstrass`]: per-edge gap maps, Weierstrass loci and the weight functional μ,
//! - [`catalog`]: the built-in graph families and the gap-sequence classification,
//! - [`oracle`]: independent brute-force ground truth for small instances.

pub mod catalog;
pub mod divisor;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod plfunction;
pub mod rational;
pub mod rank;
pub mod reduction;
pub mod region;
pub mod weierstrass;

pub use divisor::{Divisor, GapSequence};
pub use error::TropError;
pub use graph::{EdgeId, MetricGraph, Point, TangentDirection, VertexId};
pub use plfunction::PLFunction;
pub use rank::RankContext;
pub use rational::Rat;
pub use region::Region;
