//! Exact rational scalars: parsing, formatting and common-denominator helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TropError};

/// All lengths and offsets in the library. Stored in lowest terms with a
/// positive denominator (guaranteed by `BigRational`).
pub type Rat = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"` (decimal-free, exact).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || TropError::BadInput(format!("not a rational: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Format as `"p/q"`, or `"p"` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators of `rs`.
pub fn lcm_denoms<'a>(rs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut l = BigInt::one();
    for r in rs {
        l = l.lcm(r.denom());
    }
    l
}

/// `r` as an exact `u64`, if it is a small nonnegative integer.
pub fn as_u64(r: &Rat) -> Option<u64> {
    if !r.denom().is_one() || r.is_negative() {
        return None;
    }
    u64::try_from(r.numer().clone()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/2", "-7/3", "0", "5", "-4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        let rs = [rat(1, 2), rat(2, 3), rat(5, 1)];
        assert_eq!(lcm_denoms(rs.iter()), BigInt::from(6));
    }
}
