//! Exact rational helpers shared by the table, report and IO layers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as a reduced rational. `den` must be nonzero.
pub fn ratio(num: &BigUint, den: &BigUint) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Parses a weight token: a decimal integer or `p/q` with `q > 0`.
pub fn parse_weight(token: &str) -> Result<Rational> {
    let bad = || Error::InvalidWeight(token.to_string());
    let t = token.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(p) || !digits(q) {
        return Err(bad());
    }
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `p/q` in lowest terms; integers keep the `/1`.
pub fn to_json_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `p/q` in lowest terms; integers are printed bare.
pub fn to_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales nonnegative rationals to coprime integers with the same ratios.
/// Returns `None` when any weight is negative.
pub fn integer_weights(weights: &[Rational]) -> Option<Vec<BigUint>> {
    if weights.iter().any(|w| w.is_negative()) {
        return None;
    }
    let lcm = weights
        .iter()
        .fold(BigInt::from(1u8), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<BigInt> = weights
        .iter()
        .map(|w| w.numer() * (&lcm / w.denom()))
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, w| acc.gcd(w));
    Some(
        scaled
            .into_iter()
            .map(|w| {
                let w = if g.is_zero() { w } else { w / &g };
                w.to_biguint().expect("nonnegative")
            })
            .collect(),
    )
}
