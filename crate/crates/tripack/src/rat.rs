//! Exact rational arithmetic used everywhere in the core.
//!
//! All weights, LP values and thresholds are arbitrary-precision rationals;
//! no floating point enters any comparison. `num_rational` keeps values in
//! lowest terms after every operation, so equality tests and the half-open
//! threshold buckets are exact.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_usize(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}

/// Parses `"p"` or `"p/q"` with optional sign, rejecting zero denominators.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator `{s}`"))?;
    let denom: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid rational denominator `{s}`"))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(numer, denom))
}

/// Lowest-terms `p/q` string; integers print without the denominator.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Decimal approximation for human-readable tables only.
pub fn approx(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-2", "1/2", "22/7", "-5/9"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_reduces_to_lowest_terms() {
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn exact_threshold_comparisons() {
        // 1/3 lies in (2/9, 3/9]: strictly above 2/9, not above 3/9.
        let third = rat(1, 3);
        assert!(third > rat(2, 9));
        assert!(!(third > rat(3, 9)));
        assert_eq!(third, rat(3, 9));
    }
}
