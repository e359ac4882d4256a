//! Divisors (finite integer formal sums of points) and gap sequences.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Result, TropError};
use crate::graph::Point;
use crate::region::Region;

/// A finite integer-coefficient formal sum of points. Zero coefficients are
/// never stored, so structural equality is equality of divisors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    coeffs: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn single(p: Point, c: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_coeff(p, c);
        d
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Point, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, c) in entries {
            d.add_coeff(p, c);
        }
        d
    }

    pub fn add_coeff(&mut self, p: Point, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(p.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Point) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Effective away from `q` (the `q`-reduced precondition (i)).
    pub fn is_effective_off(&self, q: &Point) -> bool {
        self.coeffs.iter().all(|(p, &c)| c >= 0 || p == q)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, c) in other.iter() {
            d.add_coeff(p.clone(), c);
        }
        d
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|(p, &c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor {
            coeffs: self.coeffs.iter().map(|(p, &c)| (p.clone(), k * c)).collect(),
        }
    }

    /// `Σ_{p ∈ B} D(p)`.
    pub fn restrict_sum(&self, b: &Region) -> i64 {
        self.coeffs
            .iter()
            .filter(|(p, _)| b.contains(p))
            .map(|(_, &c)| c)
            .sum()
    }
}

/// A strictly increasing sequence of gaps `1 ≤ n₁ < ⋯ < n_{r+1} ≤ d+1`
/// attached to a divisor of degree `d` and rank `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapSequence {
    gaps: Vec<i64>,
    degree: i64,
}

impl GapSequence {
    pub fn new(gaps: Vec<i64>, degree: i64) -> Result<GapSequence> {
        if gaps.is_empty() {
            return Err(TropError::BadInput("empty gap sequence".into()));
        }
        for w in gaps.windows(2) {
            if w[0] >= w[1] {
                return Err(TropError::BadInput(format!(
                    "gap sequence not strictly increasing: {gaps:?}"
                )));
            }
        }
        if gaps[0] < 1 || *gaps.last().unwrap() > degree + 1 {
            return Err(TropError::BadInput(format!(
                "gap sequence {gaps:?} out of range for degree {degree}"
            )));
        }
        Ok(GapSequence { gaps, degree })
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `r + 1`, the length of the sequence.
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Σ (n_i − i)`.
    pub fn weight(&self) -> i64 {
        self.gaps
            .iter()
            .enumerate()
            .map(|(i, &n)| n - (i as i64 + 1))
            .sum()
    }

    /// The minimum `(1, 2, …, r+1)` of the coordinatewise order.
    pub fn is_trivial(&self) -> bool {
        self.weight() == 0
    }

    /// Coordinatewise `self ≥ other` (only sequences of equal length compare).
    pub fn ge(&self, other: &GapSequence) -> bool {
        self.gaps.len() == other.gaps.len()
            && self.gaps.iter().zip(&other.gaps).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for GapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.gaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;

    #[test]
    fn formal_sum_semantics() {
        let p = Point::Vertex(0);
        let q = Point::Vertex(1);
        let d = Divisor::from_entries([(p.clone(), 2), (q.clone(), -1)]);
        assert_eq!(d.degree(), 1);
        assert!(!d.is_effective());
        assert!(d.is_effective_off(&q));
        let e = d.add(&Divisor::single(q.clone(), 1));
        assert!(e.is_effective());
        assert_eq!(e.coeff(&q), 0);
        assert_eq!(e.support().count(), 1);
        assert!(d.sub(&d).is_zero());
        assert_eq!(d.negate().degree(), -1);
    }

    #[test]
    fn gap_sequence_validation_and_weight() {
        let n = GapSequence::new(vec![1, 3, 5], 4).unwrap();
        assert_eq!(n.weight(), 3);
        assert!(!n.is_trivial());
        assert_eq!(n.to_string(), "(1,3,5)");
        let t = GapSequence::new(vec![1, 2, 3], 4).unwrap();
        assert!(t.is_trivial());
        assert!(n.ge(&t));
        assert!(!t.ge(&n));
        assert!(GapSequence::new(vec![1, 1, 2], 4).is_err());
        assert!(GapSequence::new(vec![0, 1], 4).is_err());
        assert!(GapSequence::new(vec![1, 6], 4).is_err());
        assert!(GapSequence::new(vec![], 4).is_err());
    }
}
