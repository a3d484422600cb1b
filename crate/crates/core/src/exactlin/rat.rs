//! Exact rationals and the `"p/q"` string encoding used in every JSON file.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinAlgError;

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`; integers keep the explicit `/1`.
pub fn format_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"`, `"p"` and surrounding whitespace.
pub fn parse_rat(s: &str) -> Result<Rat, LinAlgError> {
    let s = s.trim();
    let bad = || LinAlgError::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn lcm_denominators<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Sign as -1, 0 or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), int(7));
        assert_eq!(format_rat(&rat(4, 2)), "2/1");
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [rat(1, 2), rat(2, 3), int(5)];
        assert_eq!(lcm_denominators(&xs), BigInt::from(6));
    }
}
