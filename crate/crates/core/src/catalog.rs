//! Built-in graph families with verified metadata, the gap-sequence
//! classification driver, and the randomized exclusion probe.
//!
//! Every constructor re-checks its declared genus, and every family declaring
//! a hyperelliptic structure proves it at build time by computing the rank of
//! `2(v0)` exactly. Expected census totals (the sum of weights of maximal
//! Weierstrass loci of the canonical divisor) ride along as metadata so
//! verification runs can compare against them.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divisor::{Divisor, GapSequence};
use crate::error::{Result, TropError};
use crate::graph::{MetricGraph, Point};
use crate::rank::RankContext;
use crate::rational::{rat, rint, Rat};
use crate::weierstrass::{semigroup_check, sweep_all, SweepOptions};

#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub graph: MetricGraph,
    pub genus: i64,
    pub hyperelliptic: bool,
    /// a point fixed by a hyperelliptic involution, with `rank(2(v0)) = 1`
    /// verified at build time
    pub v0: Option<Point>,
    pub bridgeless: bool,
    pub has_cut_vertices: bool,
    /// sum of weights of the maximal Weierstrass loci of `K`, when known
    pub expected_weight_total: Option<i64>,
}

fn finish(
    name: String,
    graph: MetricGraph,
    genus: i64,
    v0: Option<Point>,
    expected_weight_total: Option<i64>,
) -> Result<Family> {
    if graph.genus() != genus {
        return Err(TropError::Internal(format!(
            "family {name}: built genus {} ≠ declared {genus}",
            graph.genus()
        )));
    }
    let hyperelliptic = v0.is_some();
    if let Some(p) = &v0 {
        let mut ctx = RankContext::new(&graph);
        let r = ctx.rank(&Divisor::single(p.clone(), 2))?;
        if r != 1 {
            return Err(TropError::Internal(format!(
                "family {name}: rank(2(v0)) = {r} ≠ 1 at {}",
                graph.point_label(p)
            )));
        }
    }
    let bridgeless = !has_bridge(&graph);
    let has_cut_vertices = has_cut_vertex(&graph);
    Ok(Family {
        name,
        graph,
        genus,
        hyperelliptic,
        v0,
        bridgeless,
        has_cut_vertices,
        expected_weight_total,
    })
}

fn connected_without(g: &MetricGraph, skip_edge: Option<usize>, skip_vertex: Option<usize>) -> bool {
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    let start = (0..n).find(|v| Some(*v) != skip_vertex).unwrap();
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &(e, from_u) in g.incident(v) {
            if Some(e) == skip_edge {
                continue;
            }
            let w = if from_u { g.edge(e).v } else { g.edge(e).u };
            if Some(w) == skip_vertex || seen[w] {
                continue;
            }
            seen[w] = true;
            stack.push(w);
        }
    }
    (0..n).all(|v| Some(v) == skip_vertex || seen[v])
}

fn has_bridge(g: &MetricGraph) -> bool {
    (0..g.n_edges()).any(|e| !connected_without(g, Some(e), None))
}

fn has_cut_vertex(g: &MetricGraph) -> bool {
    g.n_vertices() > 2 && (0..g.n_vertices()).any(|v| !connected_without(g, None, Some(v)))
}

fn unit_lengths(n: usize) -> Vec<Rat> {
    vec![rint(1); n]
}

fn take_lengths(given: Option<&[Rat]>, n: usize, what: &str) -> Result<Vec<Rat>> {
    match given {
        None => Ok(unit_lengths(n)),
        Some(ls) if ls.len() == n => Ok(ls.to_vec()),
        Some(ls) => Err(TropError::BadInput(format!(
            "{what} expects {n} lengths, got {}",
            ls.len()
        ))),
    }
}

/// Two vertices joined by `g + 1` parallel edges.
pub fn dipole(genus: i64, lengths: Option<&[Rat]>) -> Result<Family> {
    if genus < 1 {
        return Err(TropError::BadInput("dipole needs genus ≥ 1".into()));
    }
    let ls = take_lengths(lengths, (genus + 1) as usize, "dipole")?;
    let edges: Vec<(&str, &str, Rat)> = ls.iter().map(|l| ("v", "w", l.clone())).collect();
    let g = MetricGraph::build(&["v", "w"], &edges)?;
    // the involution swaps the two vertices; edge midpoints are its fixed points
    let v0 = Some(g.point_on_edge(0, ls[0].clone() * rat(1, 2))?);
    let expected = if genus == 2 {
        Some(3)
    } else if genus == 3 {
        Some(12)
    } else {
        None
    };
    finish(format!("dipole genus {genus}"), g, genus, v0, expected)
}

/// A cycle `v1 … vg` with a center `w` joined to every rim vertex. Edge order:
/// the `g` rim edges, then the `g` spokes `w–v_i`.
pub fn wheel(genus: i64, lengths: Option<&[Rat]>) -> Result<Family> {
    if genus < 3 {
        return Err(TropError::BadInput("wheel needs genus ≥ 3".into()));
    }
    let n = genus as usize;
    let ls = take_lengths(lengths, 2 * n, "wheel")?;
    let names: Vec<String> = std::iter::once("w".to_string())
        .chain((1..=n).map(|i| format!("v{i}")))
        .collect();
    let mut edges: Vec<(String, String, String, Rat)> = Vec::new();
    for i in 0..n {
        let a = format!("v{}", i + 1);
        let b = format!("v{}", (i + 1) % n + 1);
        edges.push((format!("e{i}"), a, b, ls[i].clone()));
    }
    for i in 0..n {
        edges.push((
            format!("e{}", n + i),
            "w".to_string(),
            format!("v{}", i + 1),
            ls[n + i].clone(),
        ));
    }
    let g = MetricGraph::build_named(&names, &edges)?;
    let expected = if genus == 3 { Some(8) } else { None };
    finish(format!("wheel genus {genus}"), g, genus, None, expected)
}

/// A row of `g` circles, consecutive ones sharing a tangent point; the two
/// attachment points on each interior circle are antipodal.
pub fn chain_of_circles(genus: i64, circumferences: Option<&[Rat]>) -> Result<Family> {
    if genus < 2 {
        return Err(TropError::BadInput("chain needs genus ≥ 2".into()));
    }
    let n = genus as usize;
    let cs = match circumferences {
        None => vec![rint(2); n],
        Some(cs) if cs.len() == n => cs.to_vec(),
        Some(cs) => {
            return Err(TropError::BadInput(format!(
                "chain expects {n} circumferences, got {}",
                cs.len()
            )))
        }
    };
    let names: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
    let mut edges: Vec<(String, String, String, Rat)> = Vec::new();
    let mut idx = 0usize;
    let mut push = |edges: &mut Vec<_>, u: String, v: String, l: Rat| {
        edges.push((format!("e{idx}"), u, v, l));
        idx += 1;
    };
    push(&mut edges, "x1".into(), "x1".into(), cs[0].clone());
    for i in 2..n {
        let half = cs[i - 1].clone() * rat(1, 2);
        let (u, v) = (format!("x{}", i - 1), format!("x{i}"));
        push(&mut edges, u.clone(), v.clone(), half.clone());
        push(&mut edges, u, v, half);
    }
    let last = format!("x{}", n - 1);
    push(&mut edges, last.clone(), last, cs[n - 1].clone());
    let g = MetricGraph::build_named(&names, &edges)?;
    let expected = match genus {
        2 => Some(3),
        3 => Some(24),
        _ => None,
    };
    finish(
        format!("chain of {genus} circles"),
        g,
        genus,
        Some(Point::Vertex(0)),
        expected,
    )
}

/// `g` circles all sharing one point.
pub fn rose(genus: i64, circumferences: Option<&[Rat]>) -> Result<Family> {
    if genus < 2 {
        return Err(TropError::BadInput("rose needs genus ≥ 2".into()));
    }
    let n = genus as usize;
    let cs = match circumferences {
        None => vec![rint(2); n],
        Some(cs) if cs.len() == n => cs.to_vec(),
        Some(cs) => {
            return Err(TropError::BadInput(format!(
                "rose expects {n} circumferences, got {}",
                cs.len()
            )))
        }
    };
    let edges: Vec<(&str, &str, Rat)> = cs.iter().map(|c| ("c", "c", c.clone())).collect();
    let g = MetricGraph::build(&["c"], &edges)?;
    let expected = match genus {
        2 => Some(3),
        3 => Some(24),
        _ => None,
    };
    finish(
        format!("rose with {genus} petals"),
        g,
        genus,
        Some(Point::Vertex(0)),
        expected,
    )
}

/// Three circles in a row (genus 3). With `antipodal` attachment points on the
/// middle circle the curve is hyperelliptic; with the offset attachment
/// (arcs 2/3 and 4/3 of a circumference-2 circle) it is not.
pub fn three_circle_row(antipodal: bool) -> Result<Family> {
    let (a, b) = if antipodal {
        (rint(1), rint(1))
    } else {
        (rat(2, 3), rat(4, 3))
    };
    let g = MetricGraph::build(
        &["x1", "x2"],
        &[
            ("x1", "x1", rint(2)), // left circle
            ("x1", "x2", a),       // middle circle, two arcs
            ("x1", "x2", b),
            ("x2", "x2", rint(2)), // right circle
        ],
    )?;
    let (name, v0, expected) = if antipodal {
        ("three circles, antipodal".to_string(), Some(Point::Vertex(0)), Some(24))
    } else {
        ("three circles, offset".to_string(), None, Some(12))
    };
    finish(name, g, 3, v0, expected)
}

/// Where the pendant circle of `theta_circle` is attached.
#[derive(Debug, Clone)]
pub enum ThetaAttach {
    /// at one of the two trivalent vertices
    Vertex,
    /// at coordinate `a ∈ (0, 1)` along the third edge
    Edge(Rat),
}

/// Theta graph (two vertices, three unit edges) with a circumference-2 circle
/// attached (genus 3). Attaching at the midpoint of an edge keeps the
/// hyperelliptic symmetry; an off-midpoint or vertex attachment breaks it.
pub fn theta_circle(attach: ThetaAttach) -> Result<Family> {
    match attach {
        ThetaAttach::Vertex => {
            let g = MetricGraph::build(
                &["v", "vp"],
                &[
                    ("v", "vp", rint(1)),
                    ("v", "vp", rint(1)),
                    ("v", "vp", rint(1)),
                    ("v", "v", rint(2)),
                ],
            )?;
            finish("theta with circle at a vertex".to_string(), g, 3, None, Some(10))
        }
        ThetaAttach::Edge(a) => {
            use num_traits::Zero;
            if a <= Rat::zero() || a >= rint(1) {
                return Err(TropError::BadInput(
                    "attachment coordinate must lie in (0, 1)".into(),
                ));
            }
            let midpoint = a == rat(1, 2);
            let g = MetricGraph::build(
                &["v", "vp", "w"],
                &[
                    ("v", "vp", rint(1)),
                    ("v", "vp", rint(1)),
                    ("v", "w", a.clone()),
                    ("w", "vp", rint(1) - a),
                    ("w", "w", rint(2)),
                ],
            )?;
            let (name, v0, expected) = if midpoint {
                (
                    "theta with circle at an edge midpoint".to_string(),
                    Some(Point::Vertex(2)),
                    Some(16),
                )
            } else {
                ("theta with circle on an edge".to_string(), None, Some(8))
            };
            finish(name, g, 3, v0, expected)
        }
    }
}

/// A circle with two chords sharing an endpoint (genus 3, non-hyperelliptic).
pub fn circle_two_chords() -> Result<Family> {
    let g = MetricGraph::build(
        &["a", "b", "c"],
        &[
            ("a", "b", rint(1)), // arc
            ("b", "c", rint(1)), // arc
            ("c", "a", rint(1)), // arc
            ("a", "b", rint(1)), // chord
            ("a", "c", rint(1)), // chord
        ],
    )?;
    finish("circle with two chords".to_string(), g, 3, None, Some(8))
}

/// Two parallel-edge pairs joined by two vertical edges (genus 3); the curve
/// is hyperelliptic exactly when the verticals have equal length. Edge order:
/// top pair, bottom pair, vertical `a–c` (index 4), vertical `b–d` (index 5).
pub fn ladder(l1: Rat, l2: Rat) -> Result<Family> {
    let equal = l1 == l2;
    let g = MetricGraph::build(
        &["a", "b", "c", "d"],
        &[
            ("a", "b", rint(1)),
            ("a", "b", rint(1)),
            ("c", "d", rint(1)),
            ("c", "d", rint(1)),
            ("a", "c", l1.clone()),
            ("b", "d", l2),
        ],
    )?;
    let (name, v0, expected) = if equal {
        // the involution fixes the midpoints of the four parallel arcs
        let mid = g.point_on_edge(0, rat(1, 2))?;
        ("ladder, equal verticals".to_string(), Some(mid), Some(12))
    } else {
        ("ladder, unequal verticals".to_string(), None, Some(8))
    };
    finish(name, g, 3, v0, expected)
}

/// The complete graph on four vertices with a pendant edge carrying a circle
/// (genus 4). The pendant vertex `v5` has gap sequence `(1, 2, 4, 7)`.
pub fn k4_circle() -> Result<Family> {
    let g = MetricGraph::build(
        &["v1", "v2", "v3", "v4", "v5", "v6"],
        &[
            ("v1", "v2", rint(1)),
            ("v1", "v3", rint(1)),
            ("v1", "v4", rint(1)),
            ("v2", "v3", rint(1)),
            ("v2", "v4", rint(1)),
            ("v3", "v4", rint(1)),
            ("v4", "v5", rint(1)),
            ("v5", "v6", rint(1)),
            ("v5", "v6", rint(1)),
        ],
    )?;
    finish("complete graph with a pendant circle".to_string(), g, 4, None, None)
}

/// A circle and a genus-3 dipole joined by a bridge between a circle point `q`
/// and the midpoint `qp` of a dipole edge (genus 4, hyperelliptic). The point
/// `p`, a quarter-turn from `q`, has gap sequence `(1, 2, 5, 6)`.
pub fn bridge_join() -> Result<Family> {
    let h = rat(1, 2);
    let g = MetricGraph::build(
        &["p", "q", "r", "s", "qp", "x", "y"],
        &[
            ("p", "q", h.clone()),
            ("q", "r", h.clone()),
            ("r", "s", h.clone()),
            ("s", "p", h.clone()),
            ("q", "qp", rint(1)), // the bridge
            ("x", "qp", h.clone()),
            ("qp", "y", h),
            ("x", "y", rint(1)),
            ("x", "y", rint(1)),
            ("x", "y", rint(1)),
        ],
    )?;
    finish(
        "circle joined to a genus-3 dipole".to_string(),
        g,
        4,
        Some(Point::Vertex(1)),
        None,
    )
}

/// Build a family by name, as used on the command line. `lengths` are
/// interpreted per family (edge lengths, circumferences, or the ladder's two
/// verticals).
pub fn build_family(name: &str, genus: Option<i64>, lengths: Option<&[Rat]>) -> Result<Family> {
    let need_genus = || genus.ok_or_else(|| TropError::BadInput(format!("family `{name}` needs --genus")));
    match name {
        "dipole" => dipole(need_genus()?, lengths),
        "wheel" => wheel(need_genus()?, lengths),
        "k4" => wheel(3, lengths),
        "chain-of-circles" => chain_of_circles(need_genus()?, lengths),
        "rose" => rose(need_genus()?, lengths),
        "three-circle-row-antipodal" => three_circle_row(true),
        "three-circle-row-offset" => three_circle_row(false),
        "theta-circle-vertex" => theta_circle(ThetaAttach::Vertex),
        "theta-circle-edge" => {
            let a = lengths
                .and_then(|ls| ls.first().cloned())
                .unwrap_or_else(|| rat(1, 3));
            theta_circle(ThetaAttach::Edge(a))
        }
        "theta-circle-midpoint" => theta_circle(ThetaAttach::Edge(rat(1, 2))),
        "circle-two-chords" => circle_two_chords(),
        "ladder" => {
            let ls = take_lengths(lengths, 2, "ladder").unwrap_or_else(|_| vec![rint(1), rint(2)]);
            ladder(ls[0].clone(), ls[1].clone())
        }
        "k4-circle" => k4_circle(),
        "bridge-join" => bridge_join(),
        _ => Err(TropError::BadInput(format!("unknown family `{name}`"))),
    }
}

pub fn family_names() -> &'static [&'static str] {
    &[
        "dipole",
        "wheel",
        "k4",
        "chain-of-circles",
        "rose",
        "three-circle-row-antipodal",
        "three-circle-row-offset",
        "theta-circle-vertex",
        "theta-circle-edge",
        "theta-circle-midpoint",
        "circle-two-chords",
        "ladder",
        "k4-circle",
        "bridge-join",
    ]
}

/// The bridgeless genus-3 curves of the census, with their expected maximal
/// weight totals attached.
pub fn genus3_census() -> Result<Vec<Family>> {
    Ok(vec![
        // no cut vertices: hyperelliptic (total 12) and not (total 8)
        dipole(3, None)?,
        ladder(rint(1), rint(1))?,
        wheel(3, None)?,
        circle_two_chords()?,
        ladder(rint(1), rint(2))?,
        // with cut vertices
        three_circle_row(false)?,
        theta_circle(ThetaAttach::Edge(rat(1, 3)))?,
        theta_circle(ThetaAttach::Vertex)?,
        three_circle_row(true)?,
        theta_circle(ThetaAttach::Edge(rat(1, 2)))?,
        rose(3, None)?,
    ])
}

/// The witness graphs whose sweeps together attain every achievable canonical
/// gap sequence of the given genus.
pub fn witness_set(genus: i64) -> Result<Vec<Family>> {
    match genus {
        2 => Ok(vec![dipole(2, None)?, chain_of_circles(2, None)?]),
        3 => Ok(vec![dipole(3, None)?, wheel(3, None)?]),
        4 => Ok(vec![
            dipole(4, None)?,
            wheel(4, None)?,
            k4_circle()?,
            bridge_join()?,
        ]),
        _ => Err(TropError::BadInput(format!(
            "classification covers genus 2–4, not {genus}"
        ))),
    }
}

/// Every gap sequence attained by the canonical divisor anywhere on the
/// witness graphs of the given genus.
pub fn classify(genus: i64) -> Result<BTreeSet<GapSequence>> {
    let mut out = BTreeSet::new();
    for fam in witness_set(genus)? {
        let mut ctx = RankContext::new(&fam.graph);
        let k = ctx.canonical().clone();
        let atlas = sweep_all(&mut ctx, &k, &SweepOptions::default())?;
        out.extend(atlas.achieved());
    }
    Ok(out)
}

fn seqs(genus: i64, lists: &[&[i64]]) -> Vec<GapSequence> {
    lists
        .iter()
        .map(|l| GapSequence::new(l.to_vec(), 2 * genus - 2).expect("valid sequence"))
        .collect()
}

/// The known full set of canonical gap sequences per genus.
pub fn known_sequences(genus: i64) -> Result<Vec<GapSequence>> {
    match genus {
        2 => Ok(seqs(2, &[&[1, 2], &[1, 3]])),
        3 => Ok(seqs(3, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[1, 3, 5]])),
        4 => Ok(seqs(
            4,
            &[
                &[1, 2, 3, 4],
                &[1, 2, 3, 5],
                &[1, 2, 3, 6],
                &[1, 2, 3, 7],
                &[1, 2, 4, 5],
                &[1, 2, 4, 6],
                &[1, 2, 4, 7],
                &[1, 2, 5, 6],
                &[1, 3, 5, 7],
            ],
        )),
        _ => Err(TropError::BadInput(format!(
            "classification covers genus 2–4, not {genus}"
        ))),
    }
}

/// All strictly increasing length-`g` sequences in `[1, 2g−1]` whose
/// complement in `ℤ>0` is a numerical semigroup, enumerated from scratch.
pub fn semigroup_sequences(genus: i64) -> Vec<GapSequence> {
    let g = genus as usize;
    let max = 2 * genus - 1;
    let mut out = Vec::new();
    let mut pick: Vec<i64> = Vec::with_capacity(g);
    fn rec(pick: &mut Vec<i64>, next: i64, g: usize, max: i64, genus: i64, out: &mut Vec<GapSequence>) {
        if pick.len() == g {
            let n = GapSequence::new(pick.clone(), 2 * genus - 2).expect("in range");
            if semigroup_check(&n) {
                out.push(n);
            }
            return;
        }
        for v in next..=max {
            pick.push(v);
            rec(pick, v + 1, g, max, genus, out);
            pick.pop();
        }
    }
    rec(&mut pick, 1, g, max, genus, &mut out);
    out
}

/// The sequences proven unattainable in genus 4.
pub fn excluded_sequences_genus4() -> Vec<GapSequence> {
    seqs(4, &[&[1, 2, 5, 7], &[1, 2, 6, 7]])
}

#[derive(Debug, Clone)]
pub struct ExclusionReport {
    pub instances: usize,
    pub points_checked: usize,
    pub achieved: BTreeSet<GapSequence>,
    /// point labels where an excluded sequence appeared (must stay empty)
    pub violations: Vec<String>,
}

/// Randomized search for the two excluded genus-4 sequences: random catalog
/// topologies with random rational edge lengths, gap sequences evaluated at
/// every vertex and a spread of interior points. Finding one would contradict
/// the exclusion proof.
pub fn exclusion_probe(instances: usize, seed: u64) -> Result<ExclusionReport> {
    let excluded = excluded_sequences_genus4();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut achieved = BTreeSet::new();
    let mut violations = Vec::new();
    let mut points_checked = 0usize;
    let rand_len = |rng: &mut ChaCha8Rng| -> Rat {
        let denoms = [1i64, 2, 3, 4];
        let n = rng.gen_range(1..=2);
        let d = denoms[rng.gen_range(0..denoms.len())];
        rat(n, d) + rat(1, 2) // lengths in [1, 5/2], denominators ≤ 4
    };
    for i in 0..instances {
        let fam = match i % 4 {
            0 => {
                let ls: Vec<Rat> = (0..5).map(|_| rand_len(&mut rng)).collect();
                dipole(4, Some(&ls))?
            }
            1 => {
                let ls: Vec<Rat> = (0..8).map(|_| rand_len(&mut rng)).collect();
                wheel(4, Some(&ls))?
            }
            2 => {
                let cs: Vec<Rat> = (0..4).map(|_| rand_len(&mut rng)).collect();
                chain_of_circles(4, Some(&cs))?
            }
            _ => {
                let cs: Vec<Rat> = (0..4).map(|_| rand_len(&mut rng)).collect();
                rose(4, Some(&cs))?
            }
        };
        let g = &fam.graph;
        let mut ctx = RankContext::new(g);
        let k = ctx.canonical().clone();
        let mut points: Vec<Point> = (0..g.n_vertices()).map(Point::Vertex).collect();
        for _ in 0..4 {
            let e = rng.gen_range(0..g.n_edges());
            let b = rng.gen_range(2..=8i64);
            let a = rng.gen_range(1..b);
            let t = &g.edge(e).len * rat(a, b);
            points.push(g.point_on_edge(e, t)?);
        }
        for p in points {
            let n = ctx.gap_sequence(&k, &p)?;
            points_checked += 1;
            if excluded.contains(&n) {
                violations.push(format!("{}: {} at {}", fam.name, n, g.point_label(&p)));
            }
            achieved.insert(n);
        }
    }
    Ok(ExclusionReport {
        instances,
        points_checked,
        achieved,
        violations,
    })
}

/// The designated non-semigroup witness on the unit dipole of genus `g ≥ 4`:
/// the point at `1/2 − 1/(4(2g−3))` on the first edge attains
/// `(1, 2, 4, 6, …, 2g−2)`, whose complement is not a numerical semigroup.
pub fn nonsemigroup_witness(genus: i64) -> Result<(GapSequence, bool)> {
    if genus < 4 {
        return Err(TropError::BadInput("witness needs genus ≥ 4".into()));
    }
    let fam = dipole(genus, None)?;
    let t = rat(1, 2) - rat(1, 4 * (2 * genus - 3));
    let p = fam.graph.point_on_edge(0, t)?;
    let mut ctx = RankContext::new(&fam.graph);
    let k = ctx.canonical().clone();
    let n = ctx.gap_sequence(&k, &p)?;
    let mut want: Vec<i64> = vec![1];
    want.extend((1..genus).map(|i| 2 * i));
    if n.gaps() != want.as_slice() {
        return Err(TropError::Internal(format!(
            "expected (1,2,4,…,{}) at the witness point, got {n}",
            2 * genus - 2
        )));
    }
    Ok((n.clone(), semigroup_check(&n)))
}
