//! Baker–Norine rank over rank-determining sets, gap sequences and weights.

use std::collections::HashMap;

use crate::divisor::{Divisor, GapSequence};
use crate::error::{Result, TropError};
use crate::graph::{MetricGraph, Point};
use crate::reduction::{reduce, ReductionResult};

/// Rank computations over a fixed graph, with memoized reductions. The
/// rank-determining set is the model's vertex set extended by the interior
/// support of the queried divisors (a vertex set of a refined model, hence
/// rank-determining).
pub struct RankContext<'g> {
    g: &'g MetricGraph,
    q0: Point,
    canonical: Divisor,
    genus: i64,
    nonneg_cache: HashMap<Divisor, bool>,
    reduce_cache: HashMap<(Divisor, Point), ReductionResult>,
}

impl<'g> RankContext<'g> {
    pub fn new(g: &'g MetricGraph) -> RankContext<'g> {
        RankContext {
            g,
            q0: Point::Vertex(g.base_vertex()),
            canonical: g.canonical_divisor(),
            genus: g.genus(),
            nonneg_cache: HashMap::new(),
            reduce_cache: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &'g MetricGraph {
        self.g
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn canonical(&self) -> &Divisor {
        &self.canonical
    }

    /// Memoized reduction at an arbitrary base point.
    pub fn reduce_at(&mut self, d: &Divisor, q: &Point) -> Result<ReductionResult> {
        let key = (d.clone(), q.clone());
        if let Some(r) = self.reduce_cache.get(&key) {
            return Ok(r.clone());
        }
        let r = reduce(self.g, d, q)?;
        self.reduce_cache.insert(key, r.clone());
        Ok(r)
    }

    /// Is `D` equivalent to an effective divisor? (`r(D) ≥ 0`.)
    pub fn rank_nonnegative(&mut self, d: &Divisor) -> Result<bool> {
        if d.degree() < 0 {
            return Ok(false);
        }
        if let Some(&b) = self.nonneg_cache.get(d) {
            return Ok(b);
        }
        let q0 = self.q0.clone();
        let res = self.reduce_at(d, &q0)?;
        let b = res.reduced.coeff(&q0) >= 0;
        self.nonneg_cache.insert(d.clone(), b);
        Ok(b)
    }

    /// The rank-determining set for queries about `d`: model vertices plus
    /// the interior points of `supp(d)`.
    fn determining_set(&self, d: &Divisor) -> Vec<Point> {
        let mut w: Vec<Point> = (0..self.g.n_vertices()).map(Point::Vertex).collect();
        for p in d.support() {
            if matches!(p, Point::Interior(..)) {
                w.push(p.clone());
            }
        }
        w
    }

    /// Does every effective `E` of degree `k` on the determining set leave
    /// `D − E` equivalent to effective? Fails fast; optionally reports the
    /// failing witness.
    fn covers_degree(&mut self, d: &Divisor, k: i64) -> Result<Option<Divisor>> {
        if k <= 0 {
            return Ok(if self.rank_nonnegative(d)? {
                None
            } else {
                Some(Divisor::zero())
            });
        }
        let w = self.determining_set(d);
        let mut stack: Vec<(usize, i64, Divisor)> = vec![(0, k, Divisor::zero())];
        while let Some((i, left, e)) = stack.pop() {
            if left == 0 {
                if !self.rank_nonnegative(&d.sub(&e))? {
                    return Ok(Some(e));
                }
                continue;
            }
            if i == w.len() {
                continue;
            }
            if i + 1 == w.len() {
                let mut e2 = e;
                e2.add_coeff(w[i].clone(), left);
                stack.push((i + 1, 0, e2));
                continue;
            }
            for c in 0..=left {
                let mut e2 = e.clone();
                e2.add_coeff(w[i].clone(), c);
                stack.push((i + 1, left - c, e2));
            }
        }
        Ok(None)
    }

    /// `rank(D) ≥ k`, with degree shortcuts applied first.
    pub fn rank_at_least(&mut self, d: &Divisor, k: i64) -> Result<bool> {
        let deg = d.degree();
        if k <= -1 {
            return Ok(true);
        }
        if deg < k {
            return Ok(false); // rank never exceeds the degree
        }
        if deg > 2 * self.genus - 2 {
            return Ok(deg - self.genus >= k);
        }
        if d == &self.canonical {
            return Ok(self.genus - 1 >= k);
        }
        Ok(self.covers_degree(d, k)?.is_none())
    }

    /// Baker–Norine rank.
    pub fn rank(&mut self, d: &Divisor) -> Result<i64> {
        let deg = d.degree();
        if deg < 0 {
            return Ok(-1);
        }
        if deg > 2 * self.genus - 2 {
            return Ok(deg - self.genus);
        }
        if d == &self.canonical {
            return Ok(self.genus - 1);
        }
        let mut k = 0;
        while self.rank_at_least(d, k)? {
            k += 1;
        }
        Ok(k - 1)
    }

    /// Rank without the shortcuts (used by their property tests).
    pub fn rank_by_enumeration(&mut self, d: &Divisor) -> Result<i64> {
        let mut k = 0;
        if !self.rank_nonnegative(d)? {
            return Ok(-1);
        }
        loop {
            k += 1;
            if d.degree() < k || self.covers_degree(d, k)?.is_some() {
                return Ok(k - 1);
            }
        }
    }

    /// An effective divisor of degree `rank(D) + 1` certifying the rank upper
    /// bound (`None` when the degree shortcuts decided the rank).
    pub fn rank_certificate(&mut self, d: &Divisor) -> Result<(i64, Option<Divisor>)> {
        let r = self.rank(d)?;
        if d.degree() > 2 * self.genus - 2 || d == &self.canonical {
            return Ok((r, None));
        }
        Ok((r, self.covers_degree(d, r + 1)?))
    }

    /// The largest `m` with `r(D − m(p)) ≥ 0`; equals the coefficient of the
    /// `p`-reduced representative at `p`, and `m + 1` is the largest gap.
    pub fn top_gap_base(&mut self, d: &Divisor, p: &Point) -> Result<i64> {
        let res = self.reduce_at(d, p)?;
        Ok(res.reduced.coeff(p))
    }

    /// The gap sequence of `D` at `p`: the `r+1` values `m` where
    /// `r(D − m(p)) < r(D − (m−1)(p))`.
    pub fn gap_sequence(&mut self, d: &Divisor, p: &Point) -> Result<GapSequence> {
        let r = self.rank(d)?;
        if r < 0 {
            return Err(TropError::NegativeRankGaps);
        }
        let cap = self.top_gap_base(d, p)?; // r(D − m(p)) ≥ 0 iff m ≤ cap
        let mut gaps = Vec::with_capacity(r as usize + 1);
        let mut cur = r;
        for m in 1..=cap {
            let dm = d.sub(&Divisor::single(p.clone(), m));
            if !self.rank_at_least(&dm, cur)? {
                gaps.push(m);
                cur -= 1; // ranks drop by at most one per chip
            }
        }
        gaps.push(cap + 1);
        if gaps.len() != r as usize + 1 {
            return Err(TropError::Internal(format!(
                "gap count {} != rank+1 = {}",
                gaps.len(),
                r + 1
            )));
        }
        let n = GapSequence::new(gaps, d.degree())?;
        // dual characterization of Weierstrass points must agree
        if (!n.is_trivial()) != (cap >= r + 1) {
            return Err(TropError::Internal(
                "gap-sequence and reduced-coefficient characterizations disagree".into(),
            ));
        }
        Ok(n)
    }

    /// Is `p` a `D`-Weierstrass point? Both characterizations are computed and
    /// must agree: nontrivial gap sequence iff `D_p(p) ≥ r + 1`.
    pub fn is_weierstrass(&mut self, d: &Divisor, p: &Point) -> Result<bool> {
        let n = self.gap_sequence(d, p)?;
        Ok(!n.is_trivial())
    }

    /// Fast rank for effective divisors on a hyperelliptic graph with a
    /// declared two-to-one base point `v0`.
    pub fn hyperelliptic_rank(&mut self, d: &Divisor, v0: &Point) -> Result<i64> {
        if !d.is_effective() {
            return Err(TropError::BadInput(
                "hyperelliptic fast path needs an effective divisor".into(),
            ));
        }
        let deg = d.degree();
        let mut p = 0i64;
        loop {
            let d2 = d.sub(&Divisor::single(v0.clone(), 2 * (p + 1)));
            if d2.degree() < 0 || !self.rank_nonnegative(&d2)? {
                break;
            }
            p += 1;
        }
        Ok(if deg - p <= self.genus { p } else { deg - self.genus })
    }

    /// `2·r(D) ≤ deg(D)` for special divisors (assert-style utility).
    pub fn clifford_check(&mut self, d: &Divisor) -> Result<bool> {
        let r = self.rank(d)?;
        let rk = self.rank(&self.canonical.clone().sub(d))?;
        if r < 0 || rk < 0 {
            return Err(TropError::BadInput("divisor is not special".into()));
        }
        Ok(2 * r <= d.degree())
    }
}
