use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::AlgError;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgError> {
    let s = s.trim();
    let bad = || AlgError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(AlgError::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_rational(&rat(3, 1)), "3");
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("1/0"), Err(AlgError::ZeroDenominator));
        assert!(parse_rational("x").is_err());
    }
}
