//! Closed regions of the curve: finite unions of closed intervals and vertices.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Result, TropError};
use crate::graph::{EdgeId, MetricGraph, Point, TangentDirection, VertexId};
use crate::rational::Rat;

/// A finite union of closed subintervals of edges (degenerate `[a,a]` allowed:
/// an isolated interior point) plus vertices. Stored normalized: intervals on
/// one edge are disjoint, sorted, and never touch; intervals reaching an edge
/// end register the endpoint vertex in `vertices`. Two regions denoting the
/// same point set are structurally equal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Region {
    intervals: BTreeMap<EdgeId, Vec<(Rat, Rat)>>,
    vertices: BTreeSet<VertexId>,
}

impl Region {
    pub fn empty() -> Region {
        Region::default()
    }

    /// Normalizing constructor from raw intervals `(edge, a, b)` and vertices.
    pub fn new(
        g: &MetricGraph,
        intervals: impl IntoIterator<Item = (EdgeId, Rat, Rat)>,
        vertices: impl IntoIterator<Item = VertexId>,
    ) -> Result<Region> {
        let mut by_edge: BTreeMap<EdgeId, Vec<(Rat, Rat)>> = BTreeMap::new();
        let mut verts: BTreeSet<VertexId> = vertices.into_iter().collect();
        for (e, a, b) in intervals {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            let len = &g.edge(e).len;
            if a < Rat::zero() || &b > len {
                return Err(TropError::BadInput(format!(
                    "interval outside edge {}",
                    g.edge(e).name
                )));
            }
            if a.is_zero() {
                verts.insert(g.edge(e).u);
            }
            if &b == len {
                verts.insert(g.edge(e).v);
            }
            if a == b {
                if a.is_zero() || &a == len {
                    continue; // degenerate endpoint: just the vertex
                }
            }
            by_edge.entry(e).or_default().push((a, b));
        }
        for ivs in by_edge.values_mut() {
            ivs.sort();
            let mut merged: Vec<(Rat, Rat)> = Vec::new();
            for (a, b) in ivs.drain(..) {
                match merged.last_mut() {
                    Some((_, hb)) if *hb >= a => {
                        if b > *hb {
                            *hb = b;
                        }
                    }
                    _ => merged.push((a, b)),
                }
            }
            *ivs = merged;
        }
        by_edge.retain(|_, ivs| !ivs.is_empty());
        Ok(Region {
            intervals: by_edge,
            vertices: verts,
        })
    }

    pub fn point(g: &MetricGraph, p: &Point) -> Region {
        match p {
            Point::Vertex(v) => Region {
                intervals: BTreeMap::new(),
                vertices: BTreeSet::from([*v]),
            },
            Point::Interior(e, t) => Region::new(g, [(*e, t.clone(), t.clone())], []).unwrap(),
        }
    }

    pub fn whole(g: &MetricGraph) -> Region {
        Region::new(
            g,
            (0..g.n_edges()).map(|e| (e, Rat::zero(), g.edge(e).len.clone())),
            0..g.n_vertices(),
        )
        .unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.vertices.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Vertex(v) => self.vertices.contains(v),
            Point::Interior(e, t) => self
                .intervals
                .get(e)
                .map(|ivs| ivs.iter().any(|(a, b)| a <= t && t <= b))
                .unwrap_or(false),
        }
    }

    pub fn edge_intervals(&self, e: EdgeId) -> &[(Rat, Rat)] {
        self.intervals.get(&e).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn edges_touched(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.intervals.keys().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn union(&self, g: &MetricGraph, other: &Region) -> Region {
        let ivs = self
            .intervals
            .iter()
            .chain(other.intervals.iter())
            .flat_map(|(&e, v)| v.iter().map(move |(a, b)| (e, a.clone(), b.clone())))
            .collect::<Vec<_>>();
        Region::new(
            g,
            ivs,
            self.vertices.iter().chain(other.vertices.iter()).copied(),
        )
        .expect("union of valid regions")
    }

    pub fn intersect(&self, g: &MetricGraph, other: &Region) -> Region {
        let mut ivs: Vec<(EdgeId, Rat, Rat)> = Vec::new();
        for (&e, mine) in &self.intervals {
            if let Some(theirs) = other.intervals.get(&e) {
                for (a, b) in mine {
                    for (c, d) in theirs {
                        let lo = a.clone().max(c.clone());
                        let hi = b.clone().min(d.clone());
                        if lo <= hi {
                            ivs.push((e, lo, hi));
                        }
                    }
                }
            }
        }
        let verts: Vec<VertexId> = (0..g.n_vertices())
            .filter(|&v| {
                let p = Point::Vertex(v);
                self.contains(&p) && other.contains(&p)
            })
            .collect();
        Region::new(g, ivs, verts).expect("intersection of valid regions")
    }

    /// Is `self` a subset of `other`?
    pub fn subset_of(&self, g: &MetricGraph, other: &Region) -> bool {
        &self.intersect(g, other) == self
    }

    /// Connected components as separate regions.
    pub fn components(&self, g: &MetricGraph) -> Vec<Region> {
        // nodes of a union-find: vertices first, then (edge, interval index)
        let mut keys: Vec<(Option<VertexId>, Option<(EdgeId, usize)>)> = Vec::new();
        let mut vert_node: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &v in &self.vertices {
            vert_node.insert(v, keys.len());
            keys.push((Some(v), None));
        }
        let mut iv_node: BTreeMap<(EdgeId, usize), usize> = BTreeMap::new();
        for (&e, ivs) in &self.intervals {
            for (i, _) in ivs.iter().enumerate() {
                iv_node.insert((e, i), keys.len());
                keys.push((None, Some((e, i))));
            }
        }
        let mut dsu: Vec<usize> = (0..keys.len()).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        for (&e, ivs) in &self.intervals {
            let len = &g.edge(e).len;
            for (i, (a, b)) in ivs.iter().enumerate() {
                let n = iv_node[&(e, i)];
                if a.is_zero() {
                    let r = find(&mut dsu, vert_node[&g.edge(e).u]);
                    let s = find(&mut dsu, n);
                    dsu[r] = s;
                }
                if b == len {
                    let r = find(&mut dsu, vert_node[&g.edge(e).v]);
                    let s = find(&mut dsu, n);
                    dsu[r] = s;
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<(EdgeId, Rat, Rat)>, Vec<VertexId>)> = BTreeMap::new();
        for (i, key) in keys.iter().enumerate() {
            let root = find(&mut dsu, i);
            let slot = groups.entry(root).or_default();
            match key {
                (Some(v), None) => slot.1.push(*v),
                (None, Some((e, j))) => {
                    let (a, b) = &self.intervals[e][*j];
                    slot.0.push((*e, a.clone(), b.clone()));
                }
                _ => unreachable!(),
            }
        }
        groups
            .into_values()
            .map(|(ivs, vs)| Region::new(g, ivs, vs).expect("component of valid region"))
            .collect()
    }

    pub fn component_count(&self, g: &MetricGraph) -> usize {
        self.components(g).len()
    }

    /// First Betti number of the region (arcs − nodes + components).
    pub fn genus(&self, g: &MetricGraph) -> i64 {
        let mut arcs: i64 = 0;
        let mut nodes: i64 = self.vertices.len() as i64;
        for (&e, ivs) in &self.intervals {
            let len = &g.edge(e).len;
            for (a, b) in ivs {
                if a < b {
                    arcs += 1;
                }
                if !a.is_zero() {
                    nodes += 1; // interior endpoint (or isolated interior point)
                }
                if b > a && b != len {
                    nodes += 1;
                }
            }
        }
        arcs - nodes + self.component_count(g) as i64
    }

    /// Boundary points with their outgoing directions leaving the region.
    pub fn boundary(&self, g: &MetricGraph) -> Vec<(Point, Vec<TangentDirection>)> {
        let mut out: Vec<(Point, Vec<TangentDirection>)> = Vec::new();
        for (&e, ivs) in &self.intervals {
            let len = &g.edge(e).len;
            for (a, b) in ivs {
                if !a.is_zero() {
                    let p = Point::Interior(e, a.clone());
                    out.push((
                        p.clone(),
                        vec![TangentDirection {
                            base: p,
                            edge: e,
                            up: false,
                        }],
                    ));
                }
                if b != len && b > a {
                    let p = Point::Interior(e, b.clone());
                    out.push((
                        p.clone(),
                        vec![TangentDirection {
                            base: p,
                            edge: e,
                            up: true,
                        }],
                    ));
                }
                if b == a && !a.is_zero() {
                    // isolated interior point: both directions leave
                    let p = Point::Interior(e, a.clone());
                    let d = g.tangent_directions(&p);
                    out.last_mut().unwrap().1 = d;
                }
            }
        }
        for &v in &self.vertices {
            let mut dirs = Vec::new();
            for &(e, from_u) in g.incident(v) {
                let covered = self.edge_intervals(e).iter().any(|(a, b)| {
                    if from_u {
                        a.is_zero() && b > a
                    } else {
                        b == &g.edge(e).len && a < b
                    }
                });
                if !covered {
                    dirs.push(TangentDirection {
                        base: Point::Vertex(v),
                        edge: e,
                        up: from_u,
                    });
                }
            }
            if !dirs.is_empty() {
                out.push((Point::Vertex(v), dirs));
            }
        }
        out.sort_by_key(|(p, _)| p.clone());
        out
    }

    /// `outdeg_B(p)`: number of outgoing directions at `p` leaving the region.
    pub fn outdeg(&self, g: &MetricGraph, p: &Point) -> usize {
        self.boundary(g)
            .into_iter()
            .find(|(q, _)| q == p)
            .map(|(_, d)| d.len())
            .unwrap_or(0)
    }
}
