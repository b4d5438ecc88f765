//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn sign_q(s: i8) -> Q {
    match s {
        1 => Q::one(),
        -1 => -Q::one(),
        _ => Q::zero(),
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Reduces `x` modulo the prime `p`; `None` when the denominator vanishes mod `p`.
pub fn q_mod_p(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let to_u = |v: &BigInt| -> u64 {
        let r = ((v % &pb) + &pb) % &pb;
        r.to_string().parse().unwrap()
    };
    let den = to_u(x.denom());
    if den == 0 {
        return None;
    }
    let num = to_u(x.numer());
    Some((num as u128 * modinv(den, p) as u128 % p as u128) as u64)
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn modinv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-5/3"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("4/2").unwrap(), q(2));
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("x").is_none());
    }

    #[test]
    fn reduction_mod_p() {
        let p = 1_000_003;
        let half = q_frac(1, 2);
        let h = q_mod_p(&half, p).unwrap();
        assert_eq!(h * 2 % p, 1);
        assert_eq!(q_mod_p(&q(-1), p), Some(p - 1));
    }
}
