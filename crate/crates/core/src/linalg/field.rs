//! Scalar fields used by elimination: the rationals and prime fields.

use num_traits::{One, Zero};

use crate::rational::{modinv, q_mod_p, Q};

/// Below 2^32, so that products of two residues fit in a `u64`.
pub const PRIME_A: u64 = 2_147_483_647;
pub const PRIME_B: u64 = 2_147_483_629;

pub trait Field {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// Image of a rational; `None` when it is not defined in this field.
    fn from_q(&self, q: &Q) -> Option<Self::E>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Q {
        a.recip()
    }
    fn from_q(&self, q: &Q) -> Option<Q> {
        Some(q.clone())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ModP(pub u64);

impl Field for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        modinv(*a, self.0)
    }
    fn from_q(&self, q: &Q) -> Option<u64> {
        q_mod_p(q, self.0)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn default_primes() {
        assert!(is_prime(PRIME_A) && is_prime(PRIME_B));
        assert!(PRIME_A > 1 << 20 && PRIME_B > 1 << 20 && PRIME_A != PRIME_B);
        assert!(PRIME_A < 1 << 32);
    }

    #[test]
    fn modp_arithmetic() {
        let f = ModP(7);
        assert_eq!(f.from_q(&q_frac(1, 2)), Some(4));
        assert_eq!(f.from_q(&q_frac(1, 7)), None);
        assert_eq!(f.mul(&4, &f.inv(&4)), 1);
        assert_eq!(f.add(&f.neg(&3), &3), 0);
    }
}
