//! Piecewise gap-sequence maps along edges, Weierstrass loci as regions,
//! the weight functional μ, and the identity verifiers built on them.
//!
//! The gap-sequence map `p ↦ n_D(p)` restricted to an edge is piecewise
//! constant with finitely many breakpoints, and upper-semicontinuous for the
//! coordinatewise order. `sweep_edge` recovers it exactly under an explicit
//! denominator bound: it probes every rational offset with bounded denominator
//! (in λ-scaled coordinates), samples each open gap between consecutive probes
//! at the mediant, and certifies semicontinuity at every probe. Breakpoints
//! beyond the bound surface as errors, never as silently wrong output.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::divisor::{Divisor, GapSequence};
use crate::error::{Result, TropError};
use crate::graph::{EdgeId, MetricGraph, Point};
use crate::rank::RankContext;
use crate::rational::{as_u64, fmt_rat, lcm_denoms, rint, Rat};
use crate::reduction::boundary_slopes;
use crate::region::Region;

#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Probe-denominator bound in λ-scaled edge coordinates; defaults to
    /// `deg(D) + 1`.
    pub denom_bound: Option<u64>,
    /// Multiplier on the bound; doubling it must not change any result.
    pub grid: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            denom_bound: None,
            grid: 1,
        }
    }
}

/// The exact piecewise description of `p ↦ n_D(p)` on one edge: values at the
/// endpoint vertices, interior breakpoints with their own values, and one
/// value per open cell between consecutive breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGapMap {
    pub edge: EdgeId,
    pub len: Rat,
    pub at_start: GapSequence,
    pub at_end: GapSequence,
    /// sorted interior breakpoints in `(0, len)` with the value at the point
    pub breakpoints: Vec<(Rat, GapSequence)>,
    /// open-cell values; `cells.len() == breakpoints.len() + 1`
    pub cells: Vec<GapSequence>,
}

impl EdgeGapMap {
    pub fn value_at(&self, t: &Rat) -> &GapSequence {
        use num_traits::Zero;
        if t.is_zero() {
            return &self.at_start;
        }
        if t == &self.len {
            return &self.at_end;
        }
        let mut cell = 0usize;
        for (i, (b, v)) in self.breakpoints.iter().enumerate() {
            if t == b {
                return v;
            }
            if t > b {
                cell = i + 1;
            }
        }
        &self.cells[cell]
    }

    /// Closed region of this edge where the (upward-closed) predicate holds.
    /// Upward-closed means `pred(n) && m ≥ n ⇒ pred(m)`; semicontinuity then
    /// guarantees the result is closed, so qualifying open cells may be taken
    /// with their endpoints.
    pub fn region_where(
        &self,
        g: &MetricGraph,
        pred: impl Fn(&GapSequence) -> bool,
    ) -> Region {
        use num_traits::Zero;
        let mut ivs: Vec<(EdgeId, Rat, Rat)> = Vec::new();
        let lows: Vec<Rat> = std::iter::once(Rat::zero())
            .chain(self.breakpoints.iter().map(|(b, _)| b.clone()))
            .collect();
        let highs: Vec<Rat> = self
            .breakpoints
            .iter()
            .map(|(b, _)| b.clone())
            .chain(std::iter::once(self.len.clone()))
            .collect();
        for (i, v) in self.cells.iter().enumerate() {
            if pred(v) {
                ivs.push((self.edge, lows[i].clone(), highs[i].clone()));
            }
        }
        for (b, v) in &self.breakpoints {
            if pred(v) {
                ivs.push((self.edge, b.clone(), b.clone()));
            }
        }
        if pred(&self.at_start) {
            ivs.push((self.edge, Rat::zero(), Rat::zero()));
        }
        if pred(&self.at_end) {
            ivs.push((self.edge, self.len.clone(), self.len.clone()));
        }
        Region::new(g, ivs, []).expect("intervals within the edge")
    }

    /// Every value the map attains on this edge.
    pub fn achieved(&self) -> BTreeSet<GapSequence> {
        let mut out: BTreeSet<GapSequence> = self.cells.iter().cloned().collect();
        out.extend(self.breakpoints.iter().map(|(_, v)| v.clone()));
        out.insert(self.at_start.clone());
        out.insert(self.at_end.clone());
        out
    }
}

/// Fractions `a/b` in `(0, 1)` with `b ≤ qmax`, sorted.
fn farey(qmax: u64) -> Vec<Rat> {
    let mut set: BTreeSet<Rat> = BTreeSet::new();
    for b in 2..=qmax.max(1) {
        for a in 1..b {
            set.insert(Rat::new(BigInt::from(a), BigInt::from(b)));
        }
    }
    set.into_iter().collect()
}

/// The mediant of two reduced fractions lies strictly between them; between
/// Farey neighbours it is the simplest interior rational, so it samples the
/// open cell they bound.
fn mediant(a: &Rat, b: &Rat) -> Rat {
    Rat::new(a.numer() + b.numer(), a.denom() + b.denom())
}

/// Sweep one edge: the exact gap-sequence map under the probe bound.
pub fn sweep_edge(
    ctx: &mut RankContext,
    d: &Divisor,
    e: EdgeId,
    opts: &SweepOptions,
) -> Result<EdgeGapMap> {
    use num_traits::Zero;
    let g = ctx.graph();
    let edge_len = g.edge(e).len.clone();
    let lambda0 = lcm_denoms(g.edges().iter().map(|ed| &ed.len));
    let qmax = opts.grid.max(1)
        * opts
            .denom_bound
            .unwrap_or_else(|| d.degree().max(0) as u64 + 1)
            .max(1);
    let lam = Rat::from(lambda0);
    let l_scaled = &edge_len * &lam;
    let l = as_u64(&l_scaled).ok_or_else(|| {
        TropError::BadInput(format!(
            "edge {} too long to sweep (scaled length {})",
            g.edge(e).name,
            fmt_rat(&l_scaled)
        ))
    })?;

    // probe offsets: every rational in (0, L) with denominator ≤ qmax,
    // in λ-scaled coordinates
    let fr = farey(qmax);
    let mut probes_s: Vec<Rat> = Vec::new();
    for n in 0..l {
        if n > 0 {
            probes_s.push(rint(n as i64));
        }
        let base = rint(n as i64);
        probes_s.extend(fr.iter().map(|f| &base + f));
    }
    // open-cell samples: mediants of consecutive probes (with the endpoints)
    let mut fence: Vec<Rat> = Vec::with_capacity(probes_s.len() + 2);
    fence.push(Rat::zero());
    fence.extend(probes_s.iter().cloned());
    fence.push(rint(l as i64));
    let samples_s: Vec<Rat> = fence.windows(2).map(|w| mediant(&w[0], &w[1])).collect();

    let mut eval = |s: &Rat| -> Result<GapSequence> {
        let t = s / &lam;
        let p = g.point_on_edge(e, t)?;
        ctx.gap_sequence(d, &p)
    };
    let probe_vals: Vec<GapSequence> =
        probes_s.iter().map(&mut eval).collect::<Result<_>>()?;
    let cell_vals: Vec<GapSequence> =
        samples_s.iter().map(&mut eval).collect::<Result<_>>()?;
    let at_start = ctx.gap_sequence(d, &Point::Vertex(g.edge(e).u))?;
    let at_end = ctx.gap_sequence(d, &Point::Vertex(g.edge(e).v))?;

    // certification: the value at every probe (and endpoint) must dominate
    // both adjacent open cells; a violation means a breakpoint finer than the
    // probe bound sits nearby
    let inconsistent = |s: &Rat| TropError::SweepInconsistent {
        edge: g.edge(e).name.clone(),
        at: fmt_rat(&(s / &lam)),
    };
    if !at_start.ge(&cell_vals[0]) {
        return Err(inconsistent(&Rat::zero()));
    }
    if !at_end.ge(cell_vals.last().unwrap()) {
        return Err(inconsistent(&rint(l as i64)));
    }
    for (i, v) in probe_vals.iter().enumerate() {
        if !v.ge(&cell_vals[i]) || !v.ge(&cell_vals[i + 1]) {
            return Err(inconsistent(&probes_s[i]));
        }
    }

    // keep probes that separate anything; merge equal runs of cells
    let mut breakpoints: Vec<(Rat, GapSequence)> = Vec::new();
    let mut cells: Vec<GapSequence> = Vec::new();
    let mut current = cell_vals[0].clone();
    for (i, v) in probe_vals.iter().enumerate() {
        let next = &cell_vals[i + 1];
        if v == &current && next == &current {
            continue; // interior of one cell
        }
        breakpoints.push((&probes_s[i] / &lam, v.clone()));
        cells.push(current);
        current = next.clone();
    }
    cells.push(current);

    Ok(EdgeGapMap {
        edge: e,
        len: edge_len,
        at_start,
        at_end,
        breakpoints,
        cells,
    })
}

/// The gap-sequence maps of every edge of the graph, for one divisor.
#[derive(Debug, Clone)]
pub struct GapAtlas {
    pub maps: Vec<EdgeGapMap>,
}

pub fn sweep_all(ctx: &mut RankContext, d: &Divisor, opts: &SweepOptions) -> Result<GapAtlas> {
    let maps = (0..ctx.graph().n_edges())
        .map(|e| sweep_edge(ctx, d, e, opts))
        .collect::<Result<_>>()?;
    Ok(GapAtlas { maps })
}

impl GapAtlas {
    pub fn value_at(&self, g: &MetricGraph, p: &Point) -> &GapSequence {
        match p {
            Point::Vertex(v) => {
                let &(e, from_u) = &g.incident(*v)[0];
                if from_u {
                    &self.maps[e].at_start
                } else {
                    &self.maps[e].at_end
                }
            }
            Point::Interior(e, t) => self.maps[*e].value_at(t),
        }
    }

    /// Union over edges of the region where `pred` (upward-closed) holds.
    pub fn region_where(
        &self,
        g: &MetricGraph,
        pred: impl Fn(&GapSequence) -> bool,
    ) -> Region {
        self.maps
            .iter()
            .map(|m| m.region_where(g, &pred))
            .fold(Region::empty(), |acc, r| acc.union(g, &r))
    }

    /// The Weierstrass locus: points whose gap sequence is nontrivial.
    pub fn wl(&self, g: &MetricGraph) -> Region {
        self.region_where(g, |n| !n.is_trivial())
    }

    /// Points whose gap sequence dominates `n` coordinatewise.
    pub fn wl_ge(&self, g: &MetricGraph, n: &GapSequence) -> Region {
        self.region_where(g, |v| v.ge(n))
    }

    /// Every gap sequence attained anywhere on the curve.
    pub fn achieved(&self) -> BTreeSet<GapSequence> {
        self.maps.iter().flat_map(|m| m.achieved()).collect()
    }

    /// The constant value of the map on `b`, if it is constant there.
    pub fn constant_value_on(&self, g: &MetricGraph, b: &Region) -> Option<GapSequence> {
        let mut value: Option<GapSequence> = None;
        let mut take = |v: &GapSequence| -> bool {
            match &value {
                Some(cur) => cur == v,
                None => {
                    value = Some(v.clone());
                    true
                }
            }
        };
        for v in b.vertices() {
            if !take(self.value_at(g, &Point::Vertex(v))) {
                return None;
            }
        }
        for e in b.edges_touched() {
            let map = &self.maps[e];
            for (a, c) in b.edge_intervals(e) {
                if a == c {
                    if !take(map.value_at(a)) {
                        return None;
                    }
                    continue;
                }
                for (bp, v) in &map.breakpoints {
                    if bp >= a && bp <= c && !take(v) {
                        return None;
                    }
                }
                let lows: Vec<Rat> = std::iter::once(num_traits::Zero::zero())
                    .chain(map.breakpoints.iter().map(|(b, _)| b.clone()))
                    .collect();
                let highs: Vec<Rat> = map
                    .breakpoints
                    .iter()
                    .map(|(b, _)| b.clone())
                    .chain(std::iter::once(map.len.clone()))
                    .collect();
                for (i, v) in map.cells.iter().enumerate() {
                    // open cell (lows[i], highs[i]) meets the closed interval
                    if &highs[i] > a && &lows[i] < c && !take(v) {
                        return None;
                    }
                }
            }
        }
        value
    }
}

/// A maximal Weierstrass locus: a component of `WL≥n` on which the map is
/// constantly `n`, with its combinatorial weight and μ.
#[derive(Debug, Clone)]
pub struct WeightedLocus {
    pub region: Region,
    pub gap: GapSequence,
    pub weight: i64,
    pub mu: i64,
}

pub fn maximal_loci(
    ctx: &mut RankContext,
    d: &Divisor,
    atlas: &GapAtlas,
) -> Result<Vec<WeightedLocus>> {
    let g = ctx.graph();
    let mut out: Vec<WeightedLocus> = Vec::new();
    for n in atlas.achieved() {
        if n.is_trivial() {
            continue;
        }
        let rgn = atlas.wl_ge(g, &n);
        for comp in rgn.components(g) {
            if atlas.constant_value_on(g, &comp).as_ref() != Some(&n) {
                continue;
            }
            if out.iter().any(|w| w.region == comp) {
                continue;
            }
            let mu_val = mu(ctx, d, &comp)?;
            out.push(WeightedLocus {
                weight: n.weight(),
                mu: mu_val,
                gap: n.clone(),
                region: comp,
            });
        }
    }
    Ok(out)
}

/// The weight functional
/// `μ_D(B) = Σ_{p∈B} D(p) + (g(B) − c(B))·r − Σ_{p∈∂B} Σ_{ν out} sl_ν(f_p)`,
/// where `f_p` witnesses the `p`-reduction of `D` and only directions leaving
/// `B` are summed.
pub fn mu(ctx: &mut RankContext, d: &Divisor, b: &Region) -> Result<i64> {
    mu_signed(ctx, d, b, false)
}

/// The sign-flipped variant (`… + Σ sl`) kept computable for auditing the
/// convention; the two differ only when the boundary slope sum is nonzero.
pub fn mu_signed(
    ctx: &mut RankContext,
    d: &Divisor,
    b: &Region,
    plus_variant: bool,
) -> Result<i64> {
    if b.is_empty() {
        return Err(TropError::EmptyRegion);
    }
    let g = ctx.graph();
    let r = ctx.rank(d)?;
    if r < 0 {
        return Err(TropError::NegativeRankGaps);
    }
    let gb = b.genus(g);
    let cb = b.component_count(g) as i64;
    let mut slope_sum: i64 = 0;
    for (p, dirs) in b.boundary(g) {
        let res = ctx.reduce_at(d, &p)?;
        for (dir, s) in boundary_slopes(g, &res, &p) {
            if dirs.contains(&dir) {
                slope_sum += s;
            }
        }
    }
    let base = d.restrict_sum(b) + (gb - cb) * r;
    Ok(if plus_variant {
        base + slope_sum
    } else {
        base - slope_sum
    })
}

/// One component of the Weierstrass locus in a totals report.
#[derive(Debug, Clone)]
pub struct LocusReport {
    pub region: Region,
    pub mu: i64,
    /// constant gap sequence on the component, when it is constant
    pub gap: Option<GapSequence>,
}

/// The ledger of a full verification run: μ of every component of `WL(D)`
/// against the expected total `r·g − r + d`, and — when the locus is finite —
/// the weight total and the isolated-point gap formula.
#[derive(Debug, Clone)]
pub struct TotalsReport {
    pub genus: i64,
    pub rank: i64,
    pub degree: i64,
    pub expected: i64,
    pub components: Vec<LocusReport>,
    pub mu_total: i64,
    pub all_isolated: bool,
    pub weight_total: Option<i64>,
    pub checks: Vec<(&'static str, bool)>,
}

impl TotalsReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// If `b` is a single point, that point.
pub fn region_point(b: &Region) -> Option<Point> {
    let verts: Vec<_> = b.vertices().collect();
    let edges: Vec<_> = b.edges_touched().collect();
    match (verts.as_slice(), edges.as_slice()) {
        ([v], []) => Some(Point::Vertex(*v)),
        ([], [e]) => match b.edge_intervals(*e) {
            [(a, c)] if a == c => Some(Point::Interior(*e, a.clone())),
            _ => None,
        },
        _ => None,
    }
}

pub fn verify_totals(
    ctx: &mut RankContext,
    d: &Divisor,
    opts: &SweepOptions,
) -> Result<TotalsReport> {
    let g = ctx.graph();
    let r = ctx.rank(d)?;
    if r < 0 {
        return Err(TropError::NegativeRankGaps);
    }
    let genus = ctx.genus();
    let degree = d.degree();
    let expected = r * genus - r + degree;
    let atlas = sweep_all(ctx, d, opts)?;
    let wl = atlas.wl(g);
    let mut components: Vec<LocusReport> = Vec::new();
    let mut mu_total = 0i64;
    let mut all_isolated = true;
    for comp in wl.components(g) {
        let m = mu(ctx, d, &comp)?;
        mu_total += m;
        if region_point(&comp).is_none() {
            all_isolated = false;
        }
        components.push(LocusReport {
            gap: atlas.constant_value_on(g, &comp),
            mu: m,
            region: comp,
        });
    }
    let mut checks: Vec<(&'static str, bool)> = vec![("total_mu", mu_total == expected)];
    let mut weight_total: Option<i64> = None;
    if all_isolated {
        let mut wt = 0i64;
        let mut formula_ok = true;
        for c in &components {
            let p = region_point(&c.region).expect("isolated component");
            let n = atlas.value_at(g, &p).clone();
            wt += n.weight();
            let top = ctx.top_gap_base(d, &p)?;
            let mut want: Vec<i64> = (1..=r).collect();
            want.push(top + 1);
            if n.gaps() != want.as_slice() {
                formula_ok = false;
            }
        }
        weight_total = Some(wt);
        checks.push(("total_weight", wt == expected));
        checks.push(("isolated_gap_formula", formula_ok));
    }
    Ok(TotalsReport {
        genus,
        rank: r,
        degree,
        expected,
        components,
        mu_total,
        all_isolated,
        weight_total,
        checks,
    })
}

/// Is the complement of the gaps in `ℤ>0` closed under addition (a numerical
/// semigroup)? Gap sequences of classical curves always pass; tropical ones
/// need not.
pub fn semigroup_check(n: &GapSequence) -> bool {
    let max = *n.gaps().last().unwrap();
    let is_gap = |x: i64| n.gaps().contains(&x);
    for a in 1..=max {
        if is_gap(a) {
            continue;
        }
        for b in a..=(max - a) {
            if !is_gap(b) && is_gap(a + b) {
                return false;
            }
        }
    }
    true
}

/// At every point value `nb` that strictly dominates an adjacent cell value
/// `n`, with `k` minimal where they differ: either `k` is the last index, or
/// the cell value must jump, `n_k + 1 < n_{k+1}`.
pub fn gap_jump_check(map: &EdgeGapMap) -> bool {
    let mut pairs: Vec<(&GapSequence, &GapSequence)> = Vec::new();
    pairs.push((&map.cells[0], &map.at_start));
    pairs.push((map.cells.last().unwrap(), &map.at_end));
    for (i, (_, nb)) in map.breakpoints.iter().enumerate() {
        pairs.push((&map.cells[i], nb));
        pairs.push((&map.cells[i + 1], nb));
    }
    for (cell, point) in pairs {
        if cell == point {
            continue;
        }
        let Some(k) = cell
            .gaps()
            .iter()
            .zip(point.gaps())
            .position(|(c, p)| c < p)
        else {
            return false; // point value fails to dominate: semicontinuity broken
        };
        if k + 1 < cell.gaps().len() && cell.gaps()[k] + 1 >= cell.gaps()[k + 1] {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn dipole(n_edges: usize) -> MetricGraph {
        let edges: Vec<(&str, &str, Rat)> =
            (0..n_edges).map(|_| ("v", "w", rint(1))).collect();
        MetricGraph::build(&["v", "w"], &edges).unwrap()
    }

    fn seq(gaps: &[i64], degree: i64) -> GapSequence {
        GapSequence::new(gaps.to_vec(), degree).unwrap()
    }

    #[test]
    fn genus3_dipole_edge_map() {
        let g = dipole(4);
        let k = g.canonical_divisor();
        let mut ctx = RankContext::new(&g);
        let map = sweep_edge(&mut ctx, &k, 0, &SweepOptions::default()).unwrap();
        let bps: Vec<Rat> = map.breakpoints.iter().map(|(b, _)| b.clone()).collect();
        assert_eq!(bps, vec![rat(1, 3), rat(1, 2), rat(2, 3)]);
        assert_eq!(map.at_start, seq(&[1, 2, 3], 4));
        assert_eq!(map.at_end, seq(&[1, 2, 3], 4));
        assert_eq!(
            map.cells,
            vec![
                seq(&[1, 2, 3], 4),
                seq(&[1, 2, 4], 4),
                seq(&[1, 2, 4], 4),
                seq(&[1, 2, 3], 4)
            ]
        );
        assert_eq!(map.breakpoints[0].1, seq(&[1, 2, 4], 4));
        assert_eq!(map.breakpoints[1].1, seq(&[1, 3, 5], 4));
        assert_eq!(map.breakpoints[2].1, seq(&[1, 2, 4], 4));
        assert_eq!(*map.value_at(&rat(1, 2)), seq(&[1, 3, 5], 4));
        assert_eq!(*map.value_at(&rat(2, 5)), seq(&[1, 2, 4], 4));
        assert!(gap_jump_check(&map));
    }

    #[test]
    fn genus3_dipole_loci_and_totals() {
        let g = dipole(4);
        let k = g.canonical_divisor();
        let mut ctx = RankContext::new(&g);
        let atlas = sweep_all(&mut ctx, &k, &SweepOptions::default()).unwrap();
        let wl = atlas.wl(&g);
        assert_eq!(wl.component_count(&g), 4);
        for e in 0..4 {
            assert_eq!(wl.edge_intervals(e), &[(rat(1, 3), rat(2, 3))]);
        }
        let mids = atlas.wl_ge(&g, &seq(&[1, 3, 5], 4));
        assert_eq!(mids.component_count(&g), 4);
        assert!(mids.contains(&Point::Interior(2, rat(1, 2))));
        assert!(!mids.contains(&Point::Interior(2, rat(1, 3))));

        let loci = maximal_loci(&mut ctx, &k, &atlas).unwrap();
        assert_eq!(loci.len(), 4);
        for l in &loci {
            assert_eq!(l.gap, seq(&[1, 3, 5], 4));
            assert_eq!(l.weight, 3);
        }
        assert_eq!(loci.iter().map(|l| l.weight).sum::<i64>(), 12);

        let report = verify_totals(&mut ctx, &k, &SweepOptions::default()).unwrap();
        assert_eq!(report.expected, 8); // r·g − r + d = 2·3 − 2 + 4
        assert_eq!(report.mu_total, 8);
        assert_eq!(report.components.len(), 4);
        assert!(!report.all_isolated); // components are the middle thirds
        assert!(report.checks.iter().any(|(n, ok)| *n == "total_mu" && *ok));
    }

    #[test]
    fn genus3_dipole_mu_of_middle_third() {
        let g = dipole(4);
        let k = g.canonical_divisor();
        let mut ctx = RankContext::new(&g);
        let a = Region::new(&g, [(0, rat(1, 3), rat(2, 3))], []).unwrap();
        assert_eq!(mu(&mut ctx, &k, &a).unwrap(), 2);
        // singleton: μ({b}) = D_b(b) − r
        let b = Region::point(&g, &Point::Interior(0, rat(1, 2)));
        let top = ctx.top_gap_base(&k, &Point::Interior(0, rat(1, 2))).unwrap();
        assert_eq!(mu(&mut ctx, &k, &b).unwrap(), top - 2);
        assert_eq!(mu(&mut ctx, &k, &b).unwrap(), 2);
        assert!(matches!(
            mu(&mut ctx, &k, &Region::empty()),
            Err(TropError::EmptyRegion)
        ));
    }

    #[test]
    fn genus2_dipole_midpoints() {
        let g = dipole(3);
        let k = g.canonical_divisor();
        let mut ctx = RankContext::new(&g);
        let atlas = sweep_all(&mut ctx, &k, &SweepOptions::default()).unwrap();
        let loci = maximal_loci(&mut ctx, &k, &atlas).unwrap();
        assert_eq!(loci.len(), 3);
        for l in &loci {
            assert_eq!(l.gap, seq(&[1, 3], 2));
        }
        assert_eq!(loci.iter().map(|l| l.weight).sum::<i64>(), 3);
        let report = verify_totals(&mut ctx, &k, &SweepOptions::default()).unwrap();
        assert!(report.all_isolated);
        assert_eq!(report.weight_total, Some(3)); // r·g − r + d = 1·2 − 1 + 2
        assert!(report.ok());
    }

    #[test]
    fn tree_has_single_trivial_cell() {
        let g = MetricGraph::build(
            &["a", "b", "c"],
            &[("a", "b", rint(1)), ("b", "c", rint(1))],
        )
        .unwrap();
        let d = Divisor::single(Point::Vertex(0), 2);
        let mut ctx = RankContext::new(&g);
        let map = sweep_edge(&mut ctx, &d, 0, &SweepOptions::default()).unwrap();
        assert!(map.breakpoints.is_empty());
        assert_eq!(map.cells.len(), 1);
        assert!(map.cells[0].is_trivial());
        let atlas = sweep_all(&mut ctx, &d, &SweepOptions::default()).unwrap();
        assert!(atlas.wl(&g).is_empty());
        assert!(maximal_loci(&mut ctx, &d, &atlas).unwrap().is_empty());
    }

    #[test]
    fn sweep_stability_under_refinement() {
        let g = dipole(4);
        let k = g.canonical_divisor();
        let mut ctx = RankContext::new(&g);
        let base = sweep_edge(&mut ctx, &k, 0, &SweepOptions::default()).unwrap();
        let fine = sweep_edge(
            &mut ctx,
            &k,
            0,
            &SweepOptions {
                denom_bound: None,
                grid: 2,
            },
        )
        .unwrap();
        assert_eq!(base, fine);
    }

    #[test]
    fn semigroup_complement_closure() {
        assert!(semigroup_check(&seq(&[1, 3, 5], 4)));
        assert!(semigroup_check(&seq(&[1, 2, 3], 4)));
        assert!(semigroup_check(&seq(&[1, 2, 5], 4)));
        assert!(!semigroup_check(&seq(&[1, 2, 4, 6], 6))); // 3+3=6 is a gap
        assert!(!semigroup_check(&seq(&[1, 2, 5, 6], 6))); // 3+3=6 is a gap
        assert!(semigroup_check(&seq(&[1, 3, 5, 7], 6)));
    }
}
