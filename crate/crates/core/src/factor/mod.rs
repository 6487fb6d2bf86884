//! Complete factorization of univariate polynomials over F_p, F_p(t) and
//! towers over either.
//!
//! The generic driver peels off repeated and inseparable parts; the fields
//! themselves only have to factor monic, squarefree, separable inputs:
//!
//! * finite fields: Cantor–Zassenhaus ([`finite`]),
//! * F_p(t): Kronecker substitution down to F_p ([`function_field`]),
//! * separable tower stages: norms over the parent stage (Trager),
//! * inseparable tower stages: a Frobenius transfer to a separable stage
//!   ([`tower`]).

pub mod finite;
pub mod function_field;
pub mod tower;

use serde::{Deserialize, Serialize};

use crate::base::BaseField;
use crate::error::{AlgebraError, Result};
use crate::field::{Field, PerfectionOracle};
use crate::poly::Poly;
use crate::prime::PrimeField;
use crate::ratfunc::RationalFunctionField;
use crate::tower::Tower;

/// Knobs shared by every factoring routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorConfig {
    /// Coefficient height (degree in t) for bounded divisor searches.
    pub height_bound: usize,
    /// Seed for every randomized step.
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self { height_bound: 6, seed: 0 }
    }
}

/// Fields whose monic squarefree separable polynomials can be factored.
pub trait Factorable: PerfectionOracle {
    fn factor_separable(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>>;
}

impl Factorable for PrimeField {
    fn factor_separable(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>> {
        self.factor_squarefree(f, cfg)
    }
}

impl Factorable for RationalFunctionField {
    fn factor_separable(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>> {
        self.factor_squarefree(f, cfg)
    }
}

impl<B: BaseField> Factorable for Tower<B> {
    fn factor_separable(&self, f: &Poly<Self>, cfg: &FactorConfig) -> Result<Vec<Poly<Self>>> {
        tower::factor_separable(self, f, cfg)
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree.
#[derive(Debug, Clone)]
pub struct Factorization<F: Field> {
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// A proper monic divisor, when the input was reducible.
    pub fn nontrivial_factor(&self) -> Option<&Poly<F>> {
        (!self.is_irreducible()).then(|| self.factors.first().map(|(g, _)| g)).flatten()
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(g, m)| g.deg() * m).sum()
    }

    /// The factors of degree one, as roots.
    pub fn roots(&self) -> Vec<F::Elem> {
        let field = self.factors.first().map(|(g, _)| g.field().clone());
        self.factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| field.as_ref().unwrap().neg(&g.coeff(0)))
            .collect()
    }
}

/// Factors `f` into monic irreducibles (the leading coefficient is dropped).
pub fn factor<F: Factorable>(f: &Poly<F>, cfg: &FactorConfig) -> Result<Factorization<F>> {
    if f.is_zero() {
        return Err(AlgebraError::Precondition("cannot factor the zero polynomial".into()));
    }
    let mut factors = factor_monic(&f.monic(), cfg)?;
    factors.sort_by_key(|(g, _)| (g.deg(), g.to_string()));
    Ok(Factorization { factors })
}

/// Whether `f` (degree at least one) is irreducible.
pub fn is_irreducible<F: Factorable>(f: &Poly<F>, cfg: &FactorConfig) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    Ok(factor(f, cfg)?.is_irreducible())
}

/// Distinct roots of `f` in its coefficient field.
pub fn roots_in<F: Factorable>(f: &Poly<F>, cfg: &FactorConfig) -> Result<Vec<F::Elem>> {
    Ok(factor(f, cfg)?.roots())
}

/// Writes an irreducible `f` as `g(x^(p^e))` with `g` separable; returns `(g, e)`.
pub fn separable_decompose<F: Field>(f: &Poly<F>) -> (Poly<F>, u32) {
    let p = f.field().characteristic() as usize;
    let mut g = f.clone();
    let mut e = 0;
    while g.deg() > 0 && g.derivative().is_zero() {
        g = g.deflate(p).expect("zero derivative means only p-divisible exponents");
        e += 1;
    }
    (g, e)
}

/// Number of distinct roots of `g = h(x^(p^e))` with h separable, in a
/// splitting field. Every irreducible g has this shape, and each root of h
/// has exactly one `p^e`-th root.
pub fn distinct_root_count<F: Field>(g: &Poly<F>) -> usize {
    let d = g.derivative();
    if d.is_zero() {
        // g = h(x^p): every root has multiplicity at least p; recurse on h
        if g.deg() == 0 {
            return 0;
        }
        let p = g.field().characteristic() as usize;
        return distinct_root_count(&g.deflate(p).unwrap());
    }
    g.deg() - g.gcd(&d).expect("nonzero").deg()
}

fn coefficient_root<F: PerfectionOracle>(f: &Poly<F>) -> Option<Poly<F>> {
    let field = f.field();
    let cs = f.coeffs().iter().map(|c| field.pth_root(c)).collect::<Option<Vec<_>>>()?;
    Some(Poly::new(field.clone(), cs))
}

fn merge<F: Field>(into: &mut Vec<(Poly<F>, usize)>, more: Vec<(Poly<F>, usize)>) {
    for (g, m) in more {
        match into.iter_mut().find(|(h, _)| *h == g) {
            Some(slot) => slot.1 += m,
            None => into.push((g, m)),
        }
    }
}

fn factor_monic<F: Factorable>(f: &Poly<F>, cfg: &FactorConfig) -> Result<Vec<(Poly<F>, usize)>> {
    match f.deg() {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![(f.clone(), 1)]),
        _ => {}
    }
    let field = f.field();
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p); an irreducible q(x^p) is either q̂(x)^p, where q̂ takes
        // p-th roots coefficientwise, or irreducible.
        let p = field.characteristic() as usize;
        let g = f.deflate(p).unwrap();
        let mut out = Vec::new();
        for (q, m) in factor_monic(&g, cfg)? {
            match coefficient_root(&q) {
                Some(root) => merge(&mut out, vec![(root, m * p)]),
                None => merge(&mut out, vec![(q.inflate(p), m)]),
            }
        }
        return Ok(out);
    }
    let g = f.gcd(&d)?;
    if g.deg() == 0 {
        return Ok(field.factor_separable(f, cfg)?.into_iter().map(|q| (q, 1)).collect());
    }
    let mut out = factor_monic(&g, cfg)?;
    let rest = f.exact_div(&g).ok_or_else(|| AlgebraError::Internal("gcd does not divide".into()))?;
    merge(&mut out, factor_monic(&rest.monic(), cfg)?);
    Ok(out)
}
