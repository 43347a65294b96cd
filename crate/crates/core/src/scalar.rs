//! Exact rational scalars and tiny helpers shared across the crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar p/qd.
pub fn q_ratio(p: i64, qd: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(qd))
}

pub fn is_zero(s: &Scalar) -> bool {
    s.is_zero()
}

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Renders a scalar as `p` or `p/q` for reports and documents.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p` or `p/q` (exact).
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = text.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Divides a vector by the gcd of its numerators (after clearing denominators),
/// normalizing the leading nonzero entry to be positive. Keeps kernel-vector
/// entries small during long eliminations.
pub fn normalize_vector(v: &mut [Scalar]) {
    let mut lcm_den = BigInt::one();
    for s in v.iter() {
        if !s.is_zero() {
            lcm_den = num_integer::lcm(lcm_den, s.denom().clone());
        }
    }
    let mut gcd_num = BigInt::zero();
    for s in v.iter() {
        if !s.is_zero() {
            let cleared = s.numer() * (&lcm_den / s.denom());
            gcd_num = num_integer::gcd(gcd_num, cleared);
        }
    }
    if gcd_num.is_zero() {
        return;
    }
    let scale = BigRational::new(lcm_den, gcd_num);
    for s in v.iter_mut() {
        *s *= &scale;
    }
    if let Some(first) = v.iter().find(|s| !s.is_zero()) {
        if first.is_negative() {
            for s in v.iter_mut() {
                *s = -std::mem::take(s);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        for s in [q(0), q(7), q(-3), q_ratio(2, 4), q_ratio(-9, 6)] {
            assert_eq!(parse_scalar(&format_scalar(&s)).unwrap(), s);
        }
        assert!(parse_scalar("1/0").is_none());
    }

    #[test]
    fn normalization_clears_denominators() {
        let mut v = vec![q_ratio(1, 2), q(0), q_ratio(-3, 4)];
        normalize_vector(&mut v);
        assert_eq!(v, vec![q(2), q(0), q(-3)]);
        let mut w = vec![q_ratio(-1, 3), q(2)];
        normalize_vector(&mut w);
        assert_eq!(w, vec![q(1), q(-6)]);
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigUint::from(1u8));
        assert_eq!(factorial(5), BigUint::from(120u8));
    }
}
