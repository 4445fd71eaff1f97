//! Exact rational scalars.
//!
//! Coefficients are arbitrary-precision rationals kept in lowest terms with
//! positive denominator; `num-rational` maintains both invariants.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics on `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// n! as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient C(n, k) as a rational, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// Parses `p` or `p/q` with optional sign. `q` must be non-zero.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: msg.to_string(),
    };
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| err("expected an integer numerator"))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| err("expected an integer denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Formats as `p` when the denominator is one, `p/q` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// True when `r` is a negative number.
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "17", "-3", "2/3", "-7/2"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // Non-canonical inputs normalize.
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a").is_err());
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(6, 3), rat_i64(20));
        assert_eq!(binomial(18, 3), rat_i64(816));
        assert_eq!(binomial(2, 5), rat_i64(0));
        assert_eq!(factorial(5), rat_i64(120));
        assert_eq!(factorial(0), rat_i64(1));
    }
}
