//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// `num/den` as a scalar. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

/// Formats as `p/q`, dropping `/1`.
pub fn format(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses an integer, a fraction `p/q`, or a finite decimal such as `-0.25`.
pub fn parse(token: &str) -> Result<Scalar> {
    let t = token.trim();
    let bad = || Error::Precondition(format!("not an exact rational: {t:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, d)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, d));
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let x = BigRational::new(numer, denom);
    Ok(if neg { -x } else { x })
}

pub(crate) fn sign_str(x: &Scalar) -> (&'static str, Scalar) {
    if x.is_negative() {
        ("-", -x.clone())
    } else {
        ("+", x.clone())
    }
}
