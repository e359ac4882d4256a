//! Seeded random instance generation for the randomized verification suites
//! (`oracle-check` on the command line and the randomized test batteries).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::divisor::Divisor;
use crate::error::Result;
use crate::graph::{MetricGraph, Point};
use crate::rational::{rat, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_len(rng: &mut ChaCha8Rng, max_denom: i64) -> Rat {
    let d = rng.gen_range(1..=max_denom);
    let n = rng.gen_range(1..=2 * d);
    rat(n, d)
}

/// A random graph of genus 2–4 drawn from the catalog topologies with random
/// rational edge lengths (denominators ≤ 4).
pub fn random_graph(rng: &mut ChaCha8Rng) -> Result<MetricGraph> {
    let genus = rng.gen_range(2..=4i64);
    let fam = match rng.gen_range(0..4) {
        0 => {
            let ls: Vec<Rat> = (0..genus + 1).map(|_| random_len(rng, 4)).collect();
            catalog::dipole(genus, Some(&ls))?
        }
        1 if genus >= 3 => {
            let ls: Vec<Rat> = (0..2 * genus).map(|_| random_len(rng, 4)).collect();
            catalog::wheel(genus, Some(&ls))?
        }
        2 => {
            let cs: Vec<Rat> = (0..genus).map(|_| random_len(rng, 4)).collect();
            catalog::chain_of_circles(genus, Some(&cs))?
        }
        _ => {
            let cs: Vec<Rat> = (0..genus).map(|_| random_len(rng, 4)).collect();
            catalog::rose(genus, Some(&cs))?
        }
    };
    Ok(fam.graph)
}

/// A tiny graph with unit-compatible lengths, sized for the brute-force
/// oracle caps (≤ 10 lattice vertices at half-integer supports).
pub fn random_small_graph(rng: &mut ChaCha8Rng) -> Result<MetricGraph> {
    let one = || rat(1, 1);
    match rng.gen_range(0..5) {
        // path tree
        0 => MetricGraph::build(
            &["a", "b", "c"],
            &[("a", "b", one()), ("b", "c", one())],
        ),
        // circle
        1 => MetricGraph::build(&["a", "b"], &[("a", "b", one()), ("a", "b", one())]),
        // genus-2 dipole
        2 => MetricGraph::build(
            &["a", "b"],
            &[("a", "b", one()), ("a", "b", one()), ("a", "b", one())],
        ),
        // triangle with a tail
        3 => MetricGraph::build(
            &["a", "b", "c", "d"],
            &[
                ("a", "b", one()),
                ("b", "c", one()),
                ("c", "a", one()),
                ("a", "d", one()),
            ],
        ),
        // figure eight
        _ => MetricGraph::build(&["a"], &[("a", "a", rat(2, 1)), ("a", "a", rat(2, 1))]),
    }
}

/// A uniformly chosen vertex or interior edge point with offset denominator
/// dividing `denom`.
pub fn random_point(rng: &mut ChaCha8Rng, g: &MetricGraph, denom: i64) -> Result<Point> {
    if rng.gen_bool(0.4) {
        return Ok(Point::Vertex(rng.gen_range(0..g.n_vertices())));
    }
    let e = rng.gen_range(0..g.n_edges());
    let k = rng.gen_range(0..=denom);
    g.point_on_edge(e, &g.edge(e).len * rat(k, denom))
}

/// A random divisor with degree in `[min_deg, max_deg]`: signed coefficients
/// at a few random points, then padded at a random point to hit the degree.
pub fn random_divisor(
    rng: &mut ChaCha8Rng,
    g: &MetricGraph,
    min_deg: i64,
    max_deg: i64,
    denom: i64,
) -> Result<Divisor> {
    let target = rng.gen_range(min_deg..=max_deg);
    let mut d = Divisor::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = rng.gen_range(-2..=3i64);
        if c != 0 {
            d.add_coeff(random_point(rng, g, denom)?, c);
        }
    }
    let pad = target - d.degree();
    if pad != 0 {
        d.add_coeff(random_point(rng, g, denom)?, pad);
    }
    debug_assert_eq!(d.degree(), target);
    Ok(d)
}

/// A random *effective* divisor of the given degree.
pub fn random_effective(
    rng: &mut ChaCha8Rng,
    g: &MetricGraph,
    degree: i64,
    denom: i64,
) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for _ in 0..degree {
        d.add_coeff(random_point(rng, g, denom)?, 1);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_bounds() {
        let mut r1 = rng(7);
        let mut r2 = rng(7);
        for _ in 0..20 {
            let g1 = random_graph(&mut r1).unwrap();
            let g2 = random_graph(&mut r2).unwrap();
            assert_eq!(g1.n_edges(), g2.n_edges());
            assert!((2..=4).contains(&g1.genus()));
            let d1 = random_divisor(&mut r1, &g1, -3, 6, 4).unwrap();
            let d2 = random_divisor(&mut r2, &g2, -3, 6, 4).unwrap();
            assert_eq!(d1.degree(), d2.degree());
            assert!((-3..=6).contains(&d1.degree()));
        }
    }

    #[test]
    fn small_graphs_fit_oracle_caps() {
        use crate::oracle::MAX_BRUTE_NODES;
        use crate::reduction::{Subdivision, DEFAULT_SCALING_BUDGET};
        let mut r = rng(11);
        for _ in 0..20 {
            let g = random_small_graph(&mut r).unwrap();
            let p = random_point(&mut r, &g, 2).unwrap();
            let sub = Subdivision::build(&g, [&p], DEFAULT_SCALING_BUDGET).unwrap();
            assert!(sub.n_nodes <= MAX_BRUTE_NODES, "{} nodes", sub.n_nodes);
        }
    }

    #[test]
    fn effective_divisors_are_effective() {
        let mut r = rng(3);
        let g = random_small_graph(&mut r).unwrap();
        for k in 0..4 {
            let d = random_effective(&mut r, &g, k, 2).unwrap();
            assert!(d.is_effective());
            assert_eq!(d.degree(), k);
        }
    }
}
