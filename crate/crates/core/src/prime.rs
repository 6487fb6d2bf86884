use num_bigint::BigUint;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, PerfectionOracle};

/// The prime field F_p. Elements are canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(a, self.p - 2))
    }
    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
    fn same_field(&self, other: &Self) -> bool {
        self.p == other.p
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl PerfectionOracle for PrimeField {
    fn pth_root(&self, a: &u64) -> Option<u64> {
        // Frobenius is the identity on F_p.
        Some(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(AlgebraError::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(AlgebraError::NotPrime(1)));
        assert!(PrimeField::new(13).is_ok());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn inverse_of_zero_is_absent() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.inv(&3), Some(5));
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..13, b in 0u64..13, c in 0u64..13) {
            let f = PrimeField::new(13).unwrap();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
