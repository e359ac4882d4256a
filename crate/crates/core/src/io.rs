//! JSON serialization: graphs, points, divisors, regions and function samples.
//! Rationals travel as decimal-free `"p/q"` (or integer) strings, so every
//! value round-trips exactly.

use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Result, TropError};
use crate::graph::{MetricGraph, Point};
use crate::plfunction::PLFunction;
use crate::rational::{fmt_rat, parse_rat};
use crate::region::Region;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub u: String,
    pub v: String,
    pub len: String,
}

/// A point reference: a vertex by name, or an interior offset on a named edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Vertex { vertex: String },
    OnEdge { edge: String, t: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorEntryJson {
    pub at: PointJson,
    pub c: i64,
}

/// One region fragment: a vertex, or closed intervals on one edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionPartJson {
    Vertex { vertex: String },
    OnEdge { edge: String, intervals: Vec<(String, String)> },
}

pub fn graph_to_json(g: &MetricGraph) -> GraphJson {
    GraphJson {
        vertices: (0..g.n_vertices()).map(|v| g.vertex_name(v).to_string()).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                name: Some(e.name.clone()),
                u: g.vertex_name(e.u).to_string(),
                v: g.vertex_name(e.v).to_string(),
                len: fmt_rat(&e.len),
            })
            .collect(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<MetricGraph> {
    let edges: Vec<(String, String, String, crate::rational::Rat)> = j
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            Ok((
                e.name.clone().unwrap_or_else(|| format!("e{i}")),
                e.u.clone(),
                e.v.clone(),
                parse_rat(&e.len)?,
            ))
        })
        .collect::<Result<_>>()?;
    MetricGraph::build_named(&j.vertices, &edges)
}

pub fn graph_from_str(s: &str) -> Result<MetricGraph> {
    let j: GraphJson =
        serde_json::from_str(s).map_err(|e| TropError::BadInput(format!("graph JSON: {e}")))?;
    graph_from_json(&j)
}

pub fn point_to_json(g: &MetricGraph, p: &Point) -> PointJson {
    match p {
        Point::Vertex(v) => PointJson::Vertex {
            vertex: g.vertex_name(*v).to_string(),
        },
        Point::Interior(e, t) => PointJson::OnEdge {
            edge: g.edge(*e).name.clone(),
            t: fmt_rat(t),
        },
    }
}

pub fn point_from_json(g: &MetricGraph, j: &PointJson) -> Result<Point> {
    match j {
        PointJson::Vertex { vertex } => Ok(Point::Vertex(g.vertex_by_name(vertex)?)),
        PointJson::OnEdge { edge, t } => {
            let e = g.edge_by_name(edge)?;
            g.point_on_edge(e, parse_rat(t)?)
        }
    }
}

/// Parse a point label as used on the command line: a vertex name, or
/// `edge:offset` like `e0:1/3`.
pub fn point_from_label(g: &MetricGraph, label: &str) -> Result<Point> {
    if let Some((edge, t)) = label.rsplit_once(':') {
        if let Ok(e) = g.edge_by_name(edge) {
            return g.point_on_edge(e, parse_rat(t)?);
        }
    }
    Ok(Point::Vertex(g.vertex_by_name(label)?))
}

pub fn divisor_to_json(g: &MetricGraph, d: &Divisor) -> Vec<DivisorEntryJson> {
    d.iter()
        .map(|(p, c)| DivisorEntryJson {
            at: point_to_json(g, p),
            c,
        })
        .collect()
}

pub fn divisor_from_json(g: &MetricGraph, j: &[DivisorEntryJson]) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for entry in j {
        d.add_coeff(point_from_json(g, &entry.at)?, entry.c);
    }
    Ok(d)
}

pub fn divisor_from_str(g: &MetricGraph, s: &str) -> Result<Divisor> {
    let j: Vec<DivisorEntryJson> =
        serde_json::from_str(s).map_err(|e| TropError::BadInput(format!("divisor JSON: {e}")))?;
    divisor_from_json(g, &j)
}

pub fn region_to_json(g: &MetricGraph, b: &Region) -> Vec<RegionPartJson> {
    let mut parts: Vec<RegionPartJson> = b
        .vertices()
        .map(|v| RegionPartJson::Vertex {
            vertex: g.vertex_name(v).to_string(),
        })
        .collect();
    for e in b.edges_touched() {
        parts.push(RegionPartJson::OnEdge {
            edge: g.edge(e).name.clone(),
            intervals: b
                .edge_intervals(e)
                .iter()
                .map(|(a, c)| (fmt_rat(a), fmt_rat(c)))
                .collect(),
        });
    }
    parts
}

pub fn region_from_json(g: &MetricGraph, j: &[RegionPartJson]) -> Result<Region> {
    let mut ivs: Vec<(usize, crate::rational::Rat, crate::rational::Rat)> = Vec::new();
    let mut verts: Vec<usize> = Vec::new();
    for part in j {
        match part {
            RegionPartJson::Vertex { vertex } => verts.push(g.vertex_by_name(vertex)?),
            RegionPartJson::OnEdge { edge, intervals } => {
                let e = g.edge_by_name(edge)?;
                for (a, b) in intervals {
                    ivs.push((e, parse_rat(a)?, parse_rat(b)?));
                }
            }
        }
    }
    Region::new(g, ivs, verts)
}

pub fn region_from_str(g: &MetricGraph, s: &str) -> Result<Region> {
    let j: Vec<RegionPartJson> =
        serde_json::from_str(s).map_err(|e| TropError::BadInput(format!("region JSON: {e}")))?;
    region_from_json(g, &j)
}

/// Debug export of a piecewise-linear function: its value at every vertex and
/// breakpoint of its refinement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionSampleJson {
    pub at: PointJson,
    pub value: String,
}

pub fn plfunction_to_json(g: &MetricGraph, f: &PLFunction) -> Vec<FunctionSampleJson> {
    f.sample_points(g)
        .into_iter()
        .map(|(p, v)| FunctionSampleJson {
            at: point_to_json(g, &p),
            value: fmt_rat(&v),
        })
        .collect()
}
