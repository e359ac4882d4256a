//! Metric graphs (loopless models of tropical curves), points and tangent directions.

use std::collections::HashMap;

use num_traits::Zero;

use crate::divisor::Divisor;
use crate::error::{Result, TropError};
use crate::rational::{rat, Rat};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone)]
pub struct Edge {
    pub name: String,
    pub u: VertexId,
    pub v: VertexId,
    pub len: Rat,
}

/// A connected loopless model `(G, ℓ)` with positive rational edge lengths.
/// Loops in the input are split by a midpoint vertex so the model stays loopless.
#[derive(Debug, Clone)]
pub struct MetricGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    /// per vertex: incident (edge, true when the vertex is the `u` end)
    adj: Vec<Vec<(EdgeId, bool)>>,
}

/// An exact location on the curve: a model vertex, or an interior point of an
/// edge at `0 < offset < ℓ(e)` from the `u` end. Offsets `0` and `ℓ(e)`
/// normalize to the endpoint vertices, so equality means "same location".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(VertexId),
    Interior(EdgeId, Rat),
}

/// An outgoing tangent direction at a point: along `edge`, `up` meaning toward
/// the `v` end (increasing offset).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangentDirection {
    pub base: Point,
    pub edge: EdgeId,
    pub up: bool,
}

impl MetricGraph {
    /// Build a model from named vertices and weighted edges `(u, v, len)`.
    /// Edges may repeat endpoints (parallel edges); loops are auto-split.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, Rat)]) -> Result<MetricGraph> {
        let named: Vec<(String, String, String, Rat)> = edges
            .iter()
            .enumerate()
            .map(|(i, (u, v, l))| (format!("e{i}"), u.to_string(), v.to_string(), l.clone()))
            .collect();
        Self::build_named(
            &vertices.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &named,
        )
    }

    /// Build from explicitly named edges `(edge name, u, v, len)`.
    pub fn build_named(
        vertices: &[String],
        edges: &[(String, String, String, Rat)],
    ) -> Result<MetricGraph> {
        if edges.is_empty() && vertices.len() != 1 {
            return Err(TropError::BadInput("nonempty edge list required".into()));
        }
        let mut vertex_names: Vec<String> = vertices.to_vec();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        for (i, n) in vertex_names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(TropError::BadInput(format!("duplicate vertex `{n}`")));
            }
        }
        let mut out: Vec<Edge> = Vec::new();
        for (name, u, v, len) in edges {
            if len <= &Rat::zero() {
                return Err(TropError::NonpositiveLength(name.clone()));
            }
            let &ui = index
                .get(u)
                .ok_or_else(|| TropError::UnknownVertex(u.clone()))?;
            let &vi = index
                .get(v)
                .ok_or_else(|| TropError::UnknownVertex(v.clone()))?;
            if ui == vi {
                // split the loop at its midpoint to keep the model loopless
                let mid = format!("{name}.mid");
                if index.contains_key(&mid) {
                    return Err(TropError::BadInput(format!("vertex name `{mid}` taken")));
                }
                let mi = vertex_names.len();
                vertex_names.push(mid);
                index.insert(vertex_names[mi].clone(), mi);
                let half = len.clone() * rat(1, 2);
                out.push(Edge {
                    name: format!("{name}.a"),
                    u: ui,
                    v: mi,
                    len: half.clone(),
                });
                out.push(Edge {
                    name: format!("{name}.b"),
                    u: mi,
                    v: vi,
                    len: half,
                });
            } else {
                out.push(Edge {
                    name: name.clone(),
                    u: ui,
                    v: vi,
                    len: len.clone(),
                });
            }
        }
        let mut adj: Vec<Vec<(EdgeId, bool)>> = vec![Vec::new(); vertex_names.len()];
        for (i, e) in out.iter().enumerate() {
            adj[e.u].push((i, true));
            adj[e.v].push((i, false));
        }
        let g = MetricGraph {
            vertex_names,
            edges: out,
            adj,
        };
        if !g.is_connected() {
            return Err(TropError::NotConnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_names.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(e, from_u) in &self.adj[v] {
                let w = if from_u { self.edges[e].v } else { self.edges[e].u };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| TropError::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| TropError::UnknownEdge(name.to_string()))
    }

    pub fn incident(&self, v: VertexId) -> &[(EdgeId, bool)] {
        &self.adj[v]
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// First Betti number `|E| − |V| + 1`.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertex_names.len() as i64 + 1
    }

    /// `K = Σ (val(p) − 2)(p)`, degree `2g − 2`.
    pub fn canonical_divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for v in 0..self.n_vertices() {
            d.add_coeff(Point::Vertex(v), self.valence(v) as i64 - 2);
        }
        d
    }

    /// Normalize `(edge, offset)` to a `Point`; endpoint offsets become vertices.
    pub fn point_on_edge(&self, e: EdgeId, offset: Rat) -> Result<Point> {
        let edge = &self.edges[e];
        if offset < Rat::zero() || offset > edge.len {
            return Err(TropError::OffsetOutOfRange {
                edge: edge.name.clone(),
                offset: crate::rational::fmt_rat(&offset),
                len: crate::rational::fmt_rat(&edge.len),
            });
        }
        if offset.is_zero() {
            Ok(Point::Vertex(edge.u))
        } else if offset == edge.len {
            Ok(Point::Vertex(edge.v))
        } else {
            Ok(Point::Interior(e, offset))
        }
    }

    /// Valence: number of outgoing tangent directions (2 at interior points).
    pub fn val(&self, p: &Point) -> usize {
        match p {
            Point::Vertex(v) => self.valence(*v),
            Point::Interior(..) => 2,
        }
    }

    pub fn tangent_directions(&self, p: &Point) -> Vec<TangentDirection> {
        match p {
            Point::Vertex(v) => self.adj[*v]
                .iter()
                .map(|&(e, from_u)| TangentDirection {
                    base: p.clone(),
                    edge: e,
                    up: from_u,
                })
                .collect(),
            Point::Interior(e, _) => vec![
                TangentDirection {
                    base: p.clone(),
                    edge: *e,
                    up: true,
                },
                TangentDirection {
                    base: p.clone(),
                    edge: *e,
                    up: false,
                },
            ],
        }
    }

    /// The vertex with the lexicographically smallest name; used as the fixed
    /// base point of rank computations for determinism.
    pub fn base_vertex(&self) -> VertexId {
        (0..self.n_vertices())
            .min_by(|&a, &b| self.vertex_names[a].cmp(&self.vertex_names[b]))
            .expect("nonempty graph")
    }

    /// Human-readable point label, e.g. `v` or `e0:1/3`.
    pub fn point_label(&self, p: &Point) -> String {
        match p {
            Point::Vertex(v) => self.vertex_names[*v].clone(),
            Point::Interior(e, t) => {
                format!("{}:{}", self.edges[*e].name, crate::rational::fmt_rat(t))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rint;

    pub fn dipole(g: i64) -> MetricGraph {
        let edges: Vec<(&str, &str, Rat)> =
            (0..=g).map(|_| ("v", "w", rint(1))).collect();
        MetricGraph::build(&["v", "w"], &edges).unwrap()
    }

    #[test]
    fn dipole_genus_and_canonical() {
        let b3 = dipole(3);
        assert_eq!(b3.genus(), 3);
        let k = b3.canonical_divisor();
        assert_eq!(k.degree(), 4);
        assert_eq!(k.coeff(&Point::Vertex(0)), 2);
        assert_eq!(k.coeff(&Point::Vertex(1)), 2);
        let b4 = dipole(4);
        assert_eq!(b4.genus(), 4);
    }

    #[test]
    fn loop_is_split() {
        let g = MetricGraph::build(&["v"], &[("v", "v", rint(1))]).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.genus(), 1);
        assert_eq!(g.edge(0).len, rat(1, 2));
        // circle: canonical divisor vanishes
        assert_eq!(g.canonical_divisor().degree(), 0);
        assert!(g.canonical_divisor().is_zero());
    }

    #[test]
    fn tree_is_genus_zero() {
        let g = MetricGraph::build(&["a", "b"], &[("a", "b", rint(1))]).unwrap();
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn disconnected_rejected() {
        let r = MetricGraph::build(
            &["a", "b", "c", "d"],
            &[("a", "b", rint(1)), ("c", "d", rint(1))],
        );
        assert!(matches!(r, Err(TropError::NotConnected)));
    }

    #[test]
    fn point_normalization() {
        let g = dipole(3);
        assert_eq!(g.point_on_edge(0, rint(0)).unwrap(), Point::Vertex(0));
        assert_eq!(g.point_on_edge(0, rint(1)).unwrap(), Point::Vertex(1));
        assert_eq!(
            g.point_on_edge(0, rat(1, 3)).unwrap(),
            Point::Interior(0, rat(1, 3))
        );
        assert!(g.point_on_edge(0, rat(4, 3)).is_err());
    }

    #[test]
    fn tangent_direction_counts() {
        let g = dipole(3);
        assert_eq!(g.tangent_directions(&Point::Vertex(0)).len(), 4);
        let p = g.point_on_edge(1, rat(1, 2)).unwrap();
        assert_eq!(g.tangent_directions(&p).len(), 2);
    }
}
