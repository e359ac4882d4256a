//! `q`-reduced divisors via integer scaling, unit subdivision and Dhar burning.
//!
//! The pipeline: (stage 0) scale the metric by λ = lcm of all denominators so
//! every relevant point sits on an integer lattice, and subdivide each edge
//! into unit segments; (stage 1) make the divisor effective away from `q` by
//! greedy borrowing (un-firing) at deficit lattice vertices; (stage 2) repeat
//! Dhar burning from `q` and fire the unburnt set with the maximal admissible
//! multiplicity until the fire consumes everything. Every move is principal on
//! the metric graph, and the accumulated firing counts give the witness
//! function `f_q` with `D + div(f_q) = D_q` exactly.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::divisor::Divisor;
use crate::error::{Result, TropError};
use crate::graph::{MetricGraph, Point, TangentDirection};
use crate::plfunction::PLFunction;
use crate::rational::{lcm_denoms, Rat};

/// Cap on λ × total length: number of unit edges after scaling.
pub const DEFAULT_SCALING_BUDGET: u64 = 1_000_000;
/// Cap on elementary chip operations per reduction.
const OPS_BUDGET: u64 = 400_000_000;

/// The λ-scaled unit subdivision of the model: a finite graph whose vertices
/// are the lattice points, used by both the reducer and the oracle.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub lambda: u64,
    /// integer length (segment count) per edge
    pub segments: Vec<u64>,
    /// interior nodes of edge `e` are `base[e] .. base[e] + segments[e] − 1`
    base: Vec<usize>,
    pub n_nodes: usize,
    /// neighbor lists with multiplicity (parallel unit edges repeat)
    pub adj: Vec<Vec<u32>>,
}

impl Subdivision {
    /// Build the subdivision fine enough to host all of `extra` (edge lengths
    /// are always included in the lcm).
    pub fn build<'a>(
        g: &MetricGraph,
        extra: impl IntoIterator<Item = &'a Point>,
        budget: u64,
    ) -> Result<Subdivision> {
        let mut rats: Vec<Rat> = g.edges().iter().map(|e| e.len.clone()).collect();
        for p in extra {
            if let Point::Interior(_, t) = p {
                rats.push(t.clone());
            }
        }
        let lambda_big = lcm_denoms(rats.iter());
        let lambda = lambda_big
            .to_u64()
            .ok_or(TropError::ScalingBudget(u64::MAX, budget))?;
        let mut segments = Vec::with_capacity(g.n_edges());
        let mut total: u64 = 0;
        for e in g.edges() {
            let scaled = &e.len * Rat::from(BigInt::from(lambda));
            debug_assert!(scaled.denom().is_one());
            let s = scaled
                .numer()
                .to_u64()
                .ok_or(TropError::ScalingBudget(u64::MAX, budget))?;
            total = total.saturating_add(s);
            segments.push(s);
        }
        if total > budget {
            return Err(TropError::ScalingBudget(total, budget));
        }
        let mut base = Vec::with_capacity(g.n_edges());
        let mut n_nodes = g.n_vertices();
        for &s in &segments {
            base.push(n_nodes);
            n_nodes += (s - 1) as usize;
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n_nodes];
        for (e, edge) in g.edges().iter().enumerate() {
            let s = segments[e];
            let node = |k: u64| -> usize {
                if k == 0 {
                    edge.u
                } else if k == s {
                    edge.v
                } else {
                    base[e] + (k - 1) as usize
                }
            };
            for k in 0..s {
                let a = node(k);
                let b = node(k + 1);
                adj[a].push(b as u32);
                adj[b].push(a as u32);
            }
        }
        Ok(Subdivision {
            lambda,
            segments,
            base,
            n_nodes,
            adj,
        })
    }

    pub fn node_of_point(&self, g: &MetricGraph, p: &Point) -> Result<usize> {
        match p {
            Point::Vertex(v) => Ok(*v),
            Point::Interior(e, t) => {
                let scaled = t * Rat::from(BigInt::from(self.lambda));
                if !scaled.denom().is_one() {
                    return Err(TropError::Internal(format!(
                        "point {} not on the λ-lattice",
                        g.point_label(p)
                    )));
                }
                let k = scaled.numer().to_u64().unwrap();
                debug_assert!(k > 0 && k < self.segments[*e]);
                Ok(self.base[*e] + (k - 1) as usize)
            }
        }
    }

    pub fn point_of_node(&self, g: &MetricGraph, node: usize) -> Point {
        if node < g.n_vertices() {
            return Point::Vertex(node);
        }
        for e in 0..g.n_edges() {
            let lo = self.base[e];
            let hi = lo + (self.segments[e] - 1) as usize;
            if node >= lo && node < hi {
                let k = (node - lo + 1) as u64;
                return Point::Interior(
                    e,
                    Rat::new(BigInt::from(k), BigInt::from(self.lambda)),
                );
            }
        }
        unreachable!("node index out of range")
    }

    pub fn chips_of_divisor(&self, g: &MetricGraph, d: &Divisor) -> Result<Vec<i64>> {
        let mut chips = vec![0i64; self.n_nodes];
        for (p, c) in d.iter() {
            chips[self.node_of_point(g, p)?] += c;
        }
        Ok(chips)
    }

    /// Dhar burning from `q`: returns the burnt mask (true = burnt). `chips`
    /// must be nonnegative away from `q`.
    pub fn dhar(&self, chips: &[i64], q: usize) -> Vec<bool> {
        let mut burnt = vec![false; self.n_nodes];
        let mut heat = vec![0i64; self.n_nodes]; // burning incident edge count
        let mut stack = vec![q];
        burnt[q] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                let w = w as usize;
                if burnt[w] {
                    continue;
                }
                heat[w] += 1;
                if heat[w] > chips[w] {
                    burnt[w] = true;
                    stack.push(w);
                }
            }
        }
        burnt
    }
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    /// the `q`-reduced representative `D_q`
    pub reduced: Divisor,
    /// witness `f_q` with `D + div(f_q) = D_q`, normalized to vanish at `q`
    pub witness: PLFunction,
    /// fired sets with multiplicities (populated only when tracing)
    pub firing_log: Vec<(Vec<Point>, i64)>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReduceOptions {
    pub trace: bool,
    pub scaling_budget: u64,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            trace: false,
            scaling_budget: DEFAULT_SCALING_BUDGET,
        }
    }
}

/// Compute the unique `q`-reduced divisor equivalent to `D` with its witness.
pub fn reduce(g: &MetricGraph, d: &Divisor, q: &Point) -> Result<ReductionResult> {
    reduce_opts(g, d, q, ReduceOptions::default())
}

pub fn reduce_opts(
    g: &MetricGraph,
    d: &Divisor,
    q: &Point,
    opts: ReduceOptions,
) -> Result<ReductionResult> {
    let pts: Vec<&Point> = d.support().chain(std::iter::once(q)).collect();
    let sub = Subdivision::build(g, pts, opts.scaling_budget)?;
    let mut chips = sub.chips_of_divisor(g, d)?;
    let qn = sub.node_of_point(g, q)?;
    let mut fires = vec![0i64; sub.n_nodes];
    let mut ops: u64 = 0;
    let mut log: Vec<(Vec<Point>, i64)> = Vec::new();

    // stage 1: greedy borrowing at deficit nodes until effective off q
    let mut stack: Vec<usize> = (0..sub.n_nodes)
        .filter(|&v| v != qn && chips[v] < 0)
        .collect();
    while let Some(v) = stack.pop() {
        if v == qn || chips[v] >= 0 {
            continue;
        }
        let deg = sub.adj[v].len() as i64;
        let m = (-chips[v] + deg - 1) / deg; // ceil(deficit / deg)
        fires[v] -= m;
        chips[v] += m * deg;
        for &w in &sub.adj[v] {
            let w = w as usize;
            chips[w] -= m;
            if w != qn && chips[w] < 0 {
                stack.push(w);
            }
        }
        ops += sub.adj[v].len() as u64;
        if ops > OPS_BUDGET {
            return Err(TropError::ReductionBudget);
        }
    }

    // stage 2: Dhar burning + maximal-multiplicity set firing
    loop {
        let burnt = sub.dhar(&chips, qn);
        ops += sub.n_nodes as u64;
        if ops > OPS_BUDGET {
            return Err(TropError::ReductionBudget);
        }
        if burnt.iter().all(|&b| b) {
            break;
        }
        // outdegree of each unburnt node toward the burnt part
        let mut mult: Option<i64> = None;
        let mut outdeg = vec![0i64; sub.n_nodes];
        for v in 0..sub.n_nodes {
            if burnt[v] {
                continue;
            }
            let od = sub.adj[v].iter().filter(|&&w| burnt[w as usize]).count() as i64;
            outdeg[v] = od;
            if od > 0 {
                let m = chips[v] / od;
                debug_assert!(m >= 1, "Dhar guarantees one admissible firing");
                mult = Some(mult.map_or(m, |cur: i64| cur.min(m)));
            }
        }
        let m = mult.ok_or_else(|| {
            TropError::Internal("unburnt set with empty boundary".into())
        })?;
        for v in 0..sub.n_nodes {
            if burnt[v] {
                continue;
            }
            fires[v] += m;
            chips[v] -= m * outdeg[v];
            for &w in &sub.adj[v] {
                let w = w as usize;
                if burnt[w] {
                    chips[w] += m;
                }
            }
        }
        if opts.trace {
            let set = (0..sub.n_nodes)
                .filter(|&v| !burnt[v])
                .map(|v| sub.point_of_node(g, v))
                .collect();
            log.push((set, m));
        }
    }

    // witness: f = −fires/λ, then reduced = D + div(f)
    let witness = witness_from_fires(g, &sub, &fires).normalized_at(g, q);
    let mut reduced = Divisor::zero();
    for (v, &c) in chips.iter().enumerate() {
        if c != 0 {
            reduced.add_coeff(sub.point_of_node(g, v), c);
        }
    }
    Ok(ReductionResult {
        reduced,
        witness,
        firing_log: log,
    })
}

fn witness_from_fires(g: &MetricGraph, sub: &Subdivision, fires: &[i64]) -> PLFunction {
    let lam = BigInt::from(sub.lambda);
    let val = |node: usize| -> Rat { Rat::new(BigInt::from(-fires[node]), lam.clone()) };
    let vertex_values = (0..g.n_vertices()).map(val).collect();
    let mut edge_breaks = Vec::with_capacity(g.n_edges());
    for e in 0..g.n_edges() {
        let s = sub.segments[e];
        let mut brs = Vec::new();
        for k in 1..s {
            let node = sub.base[e] + (k - 1) as usize;
            brs.push((
                Rat::new(BigInt::from(k), lam.clone()),
                val(node),
            ));
        }
        edge_breaks.push(brs);
    }
    PLFunction::from_values(g, vertex_values, edge_breaks)
        .expect("unit firing counts give integer slopes")
        .simplified(g)
}

/// Is `D` `q`-reduced? Condition (i): effective away from `q`; condition (ii):
/// Dhar burning from `q` consumes the whole curve (on a subdivision fine
/// enough for `supp(D)`, mid-edge boundary points satisfy the closed-set
/// condition automatically).
pub fn is_reduced(g: &MetricGraph, d: &Divisor, q: &Point) -> Result<bool> {
    if !d.is_effective_off(q) {
        return Ok(false);
    }
    let pts: Vec<&Point> = d.support().chain(std::iter::once(q)).collect();
    let sub = Subdivision::build(g, pts, DEFAULT_SCALING_BUDGET)?;
    let chips = sub.chips_of_divisor(g, d)?;
    let qn = sub.node_of_point(g, q)?;
    Ok(sub.dhar(&chips, qn).into_iter().all(|b| b))
}

/// Outgoing slopes of the witness at `p`, one per tangent direction.
pub fn boundary_slopes(
    g: &MetricGraph,
    res: &ReductionResult,
    p: &Point,
) -> Vec<(TangentDirection, i64)> {
    g.tangent_directions(p)
        .into_iter()
        .map(|dir| {
            let s = res.witness.slope(g, &dir);
            (dir, s)
        })
        .collect()
}
