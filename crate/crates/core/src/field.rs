//! The field abstraction every algorithm in the crate is written against.
//!
//! Fields are runtime values (a prime, a tower handle) rather than types, so
//! the trait takes the field as a context object and elements are plain data.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<BigUint>;
    fn same_field(&self, other: &Self) -> bool;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Size hint used for pivot selection; smaller is cheaper.
    fn weight(&self, _a: &Self::Elem) -> usize {
        0
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }
}

/// Fields where p-th roots can be decided and polynomials factored.
///
/// `pth_root` returns the unique `r` with `r^p = a` when it exists; the
/// Frobenius map is injective, so at most one such `r` exists.
pub trait PerfectionOracle: Field {
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

pub(crate) fn big_pow(base: u64, exp: usize) -> BigUint {
    let mut acc = BigUint::one();
    let b = BigUint::from(base);
    for _ in 0..exp {
        acc *= &b;
    }
    if acc.is_zero() {
        BigUint::one()
    } else {
        acc
    }
}
