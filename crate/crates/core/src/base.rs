//! Root fields of a tower: F_p and F_p(t).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::factor::{self, FactorConfig};
use crate::field::{Field, PerfectionOracle};
use crate::poly::Poly;
use crate::prime::PrimeField;
use crate::ratfunc::{RatFunc, RationalFunctionField};

/// A field a tower can be built on.
pub trait BaseField: Field + PerfectionOracle + Copy + PartialEq + Send + Sync + 'static {
    fn prime_field(&self) -> PrimeField;

    /// `F_p` or `F_p(t)`.
    fn describe(&self) -> String;

    /// The scalar with the given index in the fixed enumeration
    /// `0, 1, ..., p-1, t, t+1, ..., t^2, ...` (digits of the index in base p
    /// are the coefficients). `None` once a finite field is exhausted.
    fn scalar(&self, index: u64) -> Option<Self::Elem>;

    fn random_scalar(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> Self::Elem;

    /// Number of components returned by [`BaseField::frobenius_components`].
    fn frobenius_rank(&self) -> usize;

    /// Decomposes `a = sum_i m_i * c_i^p` over the fixed monomials
    /// `m_i = t^i` (or just `1` for F_p) and returns the `c_i`.
    fn frobenius_components(&self, a: &Self::Elem) -> Vec<Self::Elem>;

    /// Irreducible monic factors of a monic, squarefree, separable polynomial.
    fn factor_squarefree(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>>;

    /// The element `t`, if this field has one.
    fn variable(&self) -> Option<Self::Elem>;
}

impl BaseField for PrimeField {
    fn prime_field(&self) -> PrimeField {
        *self
    }

    fn describe(&self) -> String {
        format!("F_{}", self.p())
    }

    fn scalar(&self, index: u64) -> Option<u64> {
        (index < self.p()).then_some(index)
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng, _max_degree: usize) -> u64 {
        rng.gen_range(0..self.p())
    }

    fn frobenius_rank(&self) -> usize {
        1
    }

    fn frobenius_components(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }

    fn factor_squarefree(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>> {
        Ok(factor::finite::cantor_zassenhaus(f, cfg.seed, |rng| self.random_scalar(rng, 0)))
    }

    fn variable(&self) -> Option<u64> {
        None
    }
}

impl BaseField for RationalFunctionField {
    fn prime_field(&self) -> PrimeField {
        RationalFunctionField::prime_field(self)
    }

    fn describe(&self) -> String {
        format!("F_{}(t)", self.prime_field().p())
    }

    fn scalar(&self, mut index: u64) -> Option<RatFunc> {
        let fp = self.prime_field();
        let mut digits = Vec::new();
        while index > 0 {
            digits.push(index % fp.p());
            index /= fp.p();
        }
        Some(RatFunc::from_poly(Poly::new(fp, digits)))
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> RatFunc {
        let fp = self.prime_field();
        let cs = (0..=max_degree).map(|_| rng.gen_range(0..fp.p())).collect();
        RatFunc::from_poly(Poly::new(fp, cs))
    }

    fn frobenius_rank(&self) -> usize {
        self.prime_field().p() as usize
    }

    fn frobenius_components(&self, a: &RatFunc) -> Vec<RatFunc> {
        RationalFunctionField::frobenius_components(self, a)
    }

    fn factor_squarefree(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>> {
        factor::function_field::factor_squarefree(f, cfg)
    }

    fn variable(&self) -> Option<RatFunc> {
        Some(self.t())
    }
}
