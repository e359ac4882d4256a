//! Continuous piecewise-affine functions with integer slopes and their
//! principal divisors.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::divisor::Divisor;
use crate::error::{Result, TropError};
use crate::graph::{EdgeId, MetricGraph, Point, TangentDirection};
use crate::rational::Rat;

/// A piecewise-affine function on the curve, stored over a refinement of the
/// base model: values at all model vertices plus per-edge interior breakpoints
/// `(offset, value)`. Slopes (value difference / metric length) must be
/// integers on every affine piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    vertex_values: Vec<Rat>,
    edge_breaks: Vec<Vec<(Rat, Rat)>>,
}

impl PLFunction {
    pub fn constant(g: &MetricGraph, value: Rat) -> PLFunction {
        PLFunction {
            vertex_values: vec![value; g.n_vertices()],
            edge_breaks: vec![Vec::new(); g.n_edges()],
        }
    }

    /// Raw constructor; breakpoints must be sorted, strictly interior and
    /// strictly increasing in offset.
    pub fn from_values(
        g: &MetricGraph,
        vertex_values: Vec<Rat>,
        edge_breaks: Vec<Vec<(Rat, Rat)>>,
    ) -> Result<PLFunction> {
        if vertex_values.len() != g.n_vertices() || edge_breaks.len() != g.n_edges() {
            return Err(TropError::BadInput("value table shape mismatch".into()));
        }
        for (e, brs) in edge_breaks.iter().enumerate() {
            let len = &g.edge(e).len;
            for w in brs.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(TropError::BadInput("breakpoints not sorted".into()));
                }
            }
            if let (Some(first), Some(last)) = (brs.first(), brs.last()) {
                if first.0 <= Rat::zero() || &last.0 >= len {
                    return Err(TropError::BadInput("breakpoint not interior".into()));
                }
            }
        }
        let f = PLFunction {
            vertex_values,
            edge_breaks,
        };
        f.validate_slopes(g)?;
        Ok(f)
    }

    /// Nodes of edge `e` including both endpoints: `(offset, value)`.
    fn edge_profile(&self, g: &MetricGraph, e: EdgeId) -> Vec<(Rat, Rat)> {
        let edge = g.edge(e);
        let mut prof = Vec::with_capacity(self.edge_breaks[e].len() + 2);
        prof.push((Rat::zero(), self.vertex_values[edge.u].clone()));
        prof.extend(self.edge_breaks[e].iter().cloned());
        prof.push((edge.len.clone(), self.vertex_values[edge.v].clone()));
        prof
    }

    fn validate_slopes(&self, g: &MetricGraph) -> Result<()> {
        for e in 0..g.n_edges() {
            let prof = self.edge_profile(g, e);
            for w in prof.windows(2) {
                let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                if !slope.is_integer() {
                    return Err(TropError::BadInput(format!(
                        "non-integer slope {} on edge {}",
                        crate::rational::fmt_rat(&slope),
                        g.edge(e).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn value_at(&self, g: &MetricGraph, p: &Point) -> Rat {
        match p {
            Point::Vertex(v) => self.vertex_values[*v].clone(),
            Point::Interior(e, t) => {
                let prof = self.edge_profile(g, *e);
                for w in prof.windows(2) {
                    if &w[0].0 <= t && t <= &w[1].0 {
                        let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                        return &w[0].1 + slope * (t - &w[0].0);
                    }
                }
                unreachable!("offset inside edge")
            }
        }
    }

    /// Exact outgoing slope at `p` in direction `dir` (an integer).
    pub fn slope(&self, g: &MetricGraph, dir: &TangentDirection) -> i64 {
        let e = dir.edge;
        let t = match &dir.base {
            Point::Vertex(v) => {
                if g.edge(e).u == *v && dir.up {
                    Rat::zero()
                } else if g.edge(e).v == *v && !dir.up {
                    g.edge(e).len.clone()
                } else if g.edge(e).u == *v {
                    // v == u but direction down: only for degenerate, not expected
                    Rat::zero()
                } else {
                    g.edge(e).len.clone()
                }
            }
            Point::Interior(_, t) => t.clone(),
        };
        let prof = self.edge_profile(g, e);
        // the affine piece adjacent to t in the given direction
        let mut slope = Rat::zero();
        for w in prof.windows(2) {
            if dir.up && w[0].0 <= t && t < w[1].0 {
                slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                break;
            }
            if !dir.up && w[0].0 < t && t <= w[1].0 {
                slope = -(&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                break;
            }
        }
        debug_assert!(slope.is_integer());
        i64::try_from(slope.numer().clone()).expect("slope fits i64")
    }

    /// `div(f)`: coefficient at `p` is `−Σ_ν sl_ν(f)`, supported on refinement
    /// vertices; always degree 0.
    pub fn div(&self, g: &MetricGraph) -> Result<Divisor> {
        self.validate_slopes(g)?;
        let mut d = Divisor::zero();
        for v in 0..g.n_vertices() {
            let p = Point::Vertex(v);
            let s: i64 = g
                .tangent_directions(&p)
                .iter()
                .map(|dir| self.slope(g, dir))
                .sum();
            d.add_coeff(p, -s);
        }
        for e in 0..g.n_edges() {
            for (t, _) in &self.edge_breaks[e] {
                let p = Point::Interior(e, t.clone());
                let s: i64 = g
                    .tangent_directions(&p)
                    .iter()
                    .map(|dir| self.slope(g, dir))
                    .sum();
                d.add_coeff(p, -s);
            }
        }
        if d.degree() != 0 {
            return Err(TropError::Internal("div(f) must have degree 0".into()));
        }
        Ok(d)
    }

    pub fn add(&self, g: &MetricGraph, other: &PLFunction) -> PLFunction {
        let vertex_values = self
            .vertex_values
            .iter()
            .zip(&other.vertex_values)
            .map(|(a, b)| a + b)
            .collect();
        let mut edge_breaks = Vec::with_capacity(g.n_edges());
        for e in 0..g.n_edges() {
            let mut offs: Vec<Rat> = self.edge_breaks[e]
                .iter()
                .chain(other.edge_breaks[e].iter())
                .map(|(t, _)| t.clone())
                .collect();
            offs.sort();
            offs.dedup();
            let brs = offs
                .into_iter()
                .map(|t| {
                    let p = Point::Interior(e, t.clone());
                    let v = self.value_at(g, &p) + other.value_at(g, &p);
                    (t, v)
                })
                .collect();
            edge_breaks.push(brs);
        }
        PLFunction {
            vertex_values,
            edge_breaks,
        }
        .simplified(g)
    }

    pub fn negate(&self) -> PLFunction {
        PLFunction {
            vertex_values: self.vertex_values.iter().map(|v| -v).collect(),
            edge_breaks: self
                .edge_breaks
                .iter()
                .map(|brs| brs.iter().map(|(t, v)| (t.clone(), -v)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, g: &MetricGraph, other: &PLFunction) -> PLFunction {
        self.add(g, &other.negate())
    }

    /// Drop interior breakpoints where the slope does not change.
    pub fn simplified(&self, g: &MetricGraph) -> PLFunction {
        let mut edge_breaks = Vec::with_capacity(g.n_edges());
        for e in 0..g.n_edges() {
            let prof = self.edge_profile(g, e);
            let mut kept: Vec<(Rat, Rat)> = Vec::new();
            for i in 1..prof.len() - 1 {
                let sl = (&prof[i].1 - &prof[i - 1].1) / (&prof[i].0 - &prof[i - 1].0);
                let sr = (&prof[i + 1].1 - &prof[i].1) / (&prof[i + 1].0 - &prof[i].0);
                if sl != sr {
                    kept.push(prof[i].clone());
                }
            }
            edge_breaks.push(kept);
        }
        PLFunction {
            vertex_values: self.vertex_values.clone(),
            edge_breaks,
        }
    }

    pub fn is_constant(&self) -> bool {
        let c = &self.vertex_values[0];
        self.vertex_values.iter().all(|v| v == c)
            && self
                .edge_breaks
                .iter()
                .flatten()
                .all(|(_, v)| v == c)
    }

    /// Shift so that the value at `p` is 0 (witnesses are defined up to constants).
    pub fn normalized_at(&self, g: &MetricGraph, p: &Point) -> PLFunction {
        let c = self.value_at(g, p);
        PLFunction {
            vertex_values: self.vertex_values.iter().map(|v| v - &c).collect(),
            edge_breaks: self
                .edge_breaks
                .iter()
                .map(|brs| brs.iter().map(|(t, v)| (t.clone(), v - &c)).collect())
                .collect(),
        }
    }

    /// Vertex/breakpoint values for debugging export.
    pub fn sample_points(&self, g: &MetricGraph) -> Vec<(Point, Rat)> {
        let mut out: Vec<(Point, Rat)> = (0..g.n_vertices())
            .map(|v| (Point::Vertex(v), self.vertex_values[v].clone()))
            .collect();
        for (e, brs) in self.edge_breaks.iter().enumerate() {
            for (t, v) in brs {
                out.push((Point::Interior(e, t.clone()), v.clone()));
            }
        }
        out
    }

    /// The chip-transport move: slope +1 along the waypoint path from `x` to
    /// `y` (consecutive waypoints must share an edge), slope 0 elsewhere, so
    /// that `div(f) = (y) − (x)`. Fails when no such continuous function
    /// exists (a cycle through the path closes with unequal values).
    pub fn transport(g: &MetricGraph, waypoints: &[Point]) -> Result<PLFunction> {
        if waypoints.is_empty() {
            return Err(TropError::BadInput("empty transport path".into()));
        }
        if waypoints.len() == 1 || waypoints.first() == waypoints.last() && waypoints.len() == 2 {
            return Ok(PLFunction::constant(g, Rat::zero()));
        }
        // locate a waypoint on a given edge
        let offset_on = |p: &Point, e: EdgeId| -> Option<Rat> {
            match p {
                Point::Vertex(v) if g.edge(e).u == *v => Some(Rat::zero()),
                Point::Vertex(v) if g.edge(e).v == *v => Some(g.edge(e).len.clone()),
                Point::Interior(pe, t) if *pe == e => Some(t.clone()),
                _ => None,
            }
        };
        // cumulative values along the path, plus per-edge linear segments
        let mut vertex_vals: HashMap<usize, Rat> = HashMap::new();
        let mut segments: HashMap<EdgeId, (Rat, Rat, Rat, Rat)> = HashMap::new(); // a, b, va, vb with a<b
        let mut breaks: Vec<Vec<(Rat, Rat)>> = vec![Vec::new(); g.n_edges()];
        let assign_vertex = |vv: &mut HashMap<usize, Rat>, v: usize, val: Rat| -> Result<()> {
            match vv.get(&v) {
                Some(old) if old != &val => Err(TropError::TransportNotExact),
                Some(_) => Ok(()),
                None => {
                    vv.insert(v, val);
                    Ok(())
                }
            }
        };
        let mut cum = Rat::zero();
        for w in waypoints.windows(2) {
            let (p, q) = (&w[0], &w[1]);
            if p == q {
                continue;
            }
            let e = (0..g.n_edges())
                .find(|&e| offset_on(p, e).is_some() && offset_on(q, e).is_some())
                .ok_or_else(|| {
                    TropError::BadInput("consecutive waypoints share no edge".into())
                })?;
            let a = offset_on(p, e).unwrap();
            let b = offset_on(q, e).unwrap();
            if a == b {
                return Err(TropError::BadInput("zero-length path segment".into()));
            }
            let va = cum.clone();
            cum = &cum + (&b - &a).abs();
            let vb = cum.clone();
            let seg = if a < b { (a, b, va, vb) } else { (b, a, vb, va) };
            if segments.insert(e, seg).is_some() {
                return Err(TropError::BadInput("transport path revisits an edge".into()));
            }
        }
        // implied endpoint values of path edges (constant off the segment)
        for (&e, (a, b, va, vb)) in &segments {
            let edge = g.edge(e);
            assign_vertex(&mut vertex_vals, edge.u, va.clone())?;
            assign_vertex(&mut vertex_vals, edge.v, vb.clone())?;
            if !a.is_zero() {
                breaks[e].push((a.clone(), va.clone()));
            }
            if b != &edge.len {
                breaks[e].push((b.clone(), vb.clone()));
            }
            breaks[e].sort_by(|x, y| x.0.cmp(&y.0));
        }
        // propagate constants across the remaining (slope-0) edges
        let mut queue: VecDeque<usize> = vertex_vals.keys().copied().collect();
        while let Some(v) = queue.pop_front() {
            let val = vertex_vals[&v].clone();
            for &(e, from_u) in g.incident(v) {
                if segments.contains_key(&e) {
                    continue;
                }
                let w = if from_u { g.edge(e).v } else { g.edge(e).u };
                match vertex_vals.get(&w) {
                    Some(old) if old != &val => return Err(TropError::TransportNotExact),
                    Some(_) => {}
                    None => {
                        vertex_vals.insert(w, val.clone());
                        queue.push_back(w);
                    }
                }
            }
        }
        let vertex_values = (0..g.n_vertices())
            .map(|v| vertex_vals.get(&v).cloned().unwrap_or_else(Rat::zero))
            .collect();
        PLFunction::from_values(g, vertex_values, breaks).map(|f| f.simplified(g))
    }
}
