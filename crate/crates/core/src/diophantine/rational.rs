//! Checked rational arithmetic on top of `Ratio<i64>`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};

use super::checked;
use crate::error::{Error, Result};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = Ratio<i64>;

pub type RatVector = Vec<Rational>;

pub fn add(a: &Rational, b: &Rational) -> Result<Rational> {
    checked(a.checked_add(b), "rational sum")
}

pub fn sub(a: &Rational, b: &Rational) -> Result<Rational> {
    checked(a.checked_sub(b), "rational difference")
}

pub fn mul(a: &Rational, b: &Rational) -> Result<Rational> {
    checked(a.checked_mul(b), "rational product")
}

pub fn div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::Overflow("rational division by zero"));
    }
    checked(a.checked_div(b), "rational quotient")
}

/// `x . r` for an integer vector `x` and a rational vector `r`.
pub fn dot_int(x: &[i64], r: &[Rational]) -> Result<Rational> {
    x.iter().zip(r).try_fold(Rational::zero(), |acc, (a, b)| {
        let term = mul(&Rational::from_integer(*a), b)?;
        add(&acc, &term)
    })
}

/// Smallest positive integer multiple of `r` that is integral, divided by the gcd
/// of its entries. Returns the zero vector for `r = 0`.
pub fn primitive_integer_multiple(r: &[Rational]) -> Result<Vec<i64>> {
    let lcm = r
        .iter()
        .try_fold(1i64, |acc, q| -> Result<i64> {
            let g = acc.gcd(q.denom());
            checked((acc / g).checked_mul(*q.denom()), "denominator lcm")
        })?;
    let scaled = r
        .iter()
        .map(|q| checked((lcm / q.denom()).checked_mul(*q.numer()), "grading scale"))
        .collect::<Result<Vec<i64>>>()?;
    let g = scaled.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return Ok(scaled);
    }
    Ok(scaled.into_iter().map(|x| x / g).collect())
}

/// Renders `p/q` or `p` when integral.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_multiple_clears_denominators() {
        let r = vec![Rational::new(1, 10)];
        assert_eq!(primitive_integer_multiple(&r).unwrap(), vec![1]);
        let r = vec![Rational::new(2, 3), Rational::new(-1, 6), Rational::from_integer(0)];
        assert_eq!(primitive_integer_multiple(&r).unwrap(), vec![4, -1, 0]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::from_integer(i64::MAX);
        assert_eq!(add(&big, &big), Err(Error::Overflow("rational sum")));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse(" 3/6 ").unwrap(), Rational::new(1, 2));
        assert_eq!(format(&Rational::new(-4, 2)), "-2");
        assert!(parse("1/0").is_err());
    }
}
