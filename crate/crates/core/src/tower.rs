//! Finite towers of simple extensions `K ⊂ K(θ₁) ⊂ K(θ₁, θ₂) ⊂ …` over a
//! base field K.
//!
//! Elements are coordinate vectors over K in the product power basis
//! `θ₁^e₁ ⋯ θₖ^eₖ` (`0 ≤ eᵢ <` stage degree). The index of a monomial is the
//! mixed-radix number with the bottom stage least significant, so an element
//! of a lower stage lifts into a higher one by appending zero coordinates.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;

use crate::base::BaseField;
use crate::error::{AlgebraError, Result};
use crate::factor::{self, FactorConfig};
use crate::field::{big_pow, Field, PerfectionOracle};
use crate::linalg;
use crate::poly::Poly;

/// Polynomials whose coefficients live in a tower stage.
pub type TowerPoly<B> = Poly<Tower<B>>;

/// Handle to a tower stage. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Tower<B: BaseField>(Arc<Node<B>>);

struct Node<B: BaseField> {
    base: B,
    stage: Option<Stage<B>>,
    degree: usize,
    depth: usize,
    frobenius_columns: OnceLock<Vec<Vec<B::Elem>>>,
}

struct Stage<B: BaseField> {
    parent: Tower<B>,
    name: String,
    minpoly: Poly<Tower<B>>,
    degree: usize,
}

/// Element of a tower stage. The stage itself is passed alongside, as with
/// every [`Field`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<B: BaseField> {
    coords: Vec<B::Elem>,
}

impl<B: BaseField> fmt::Debug for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

impl<B: BaseField> Element<B> {
    pub fn from_coords(coords: Vec<B::Elem>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[B::Elem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<B::Elem> {
        self.coords
    }
}

impl<B: BaseField> fmt::Debug for Tower<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({})", self.describe())
    }
}

impl<B: BaseField> PartialEq for Tower<B> {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl<B: BaseField> Tower<B> {
    pub fn base(base: B) -> Self {
        Tower(Arc::new(Node { base, stage: None, degree: 1, depth: 0, frobenius_columns: OnceLock::new() }))
    }

    /// Adjoins a root of `f` after certifying that `f` is irreducible.
    pub fn make_extension(&self, f: &TowerPoly<B>, name: &str, cfg: &FactorConfig) -> Result<Self> {
        if !f.field().same_field(self) {
            return Err(AlgebraError::FieldMismatch);
        }
        if !f.is_monic() {
            return Err(AlgebraError::NotMonic);
        }
        if f.deg() < 2 {
            return Err(AlgebraError::DegreeTooSmall);
        }
        let fac = factor::factor(f, cfg)?;
        if let Some(witness) = fac.nontrivial_factor() {
            return Err(AlgebraError::Reducible { factor: witness.to_string() });
        }
        Ok(self.extend_unchecked(f, name))
    }

    /// Adjoins a root of a monic polynomial already known to be irreducible.
    pub fn extend_unchecked(&self, f: &TowerPoly<B>, name: &str) -> Self {
        debug_assert!(f.is_monic() && f.deg() >= 2);
        let degree = f.deg();
        Tower(Arc::new(Node {
            base: self.0.base,
            stage: Some(Stage { parent: self.clone(), name: name.to_string(), minpoly: f.clone(), degree }),
            degree: self.0.degree * degree,
            depth: self.0.depth + 1,
            frobenius_columns: OnceLock::new(),
        }))
    }

    pub fn base_field(&self) -> B {
        self.0.base
    }

    pub fn parent(&self) -> Option<&Tower<B>> {
        self.0.stage.as_ref().map(|s| &s.parent)
    }

    pub fn name(&self) -> Option<&str> {
        self.0.stage.as_ref().map(|s| s.name.as_str())
    }

    /// Defining polynomial of the top stage over its parent.
    pub fn minpoly(&self) -> Option<&TowerPoly<B>> {
        self.0.stage.as_ref().map(|s| &s.minpoly)
    }

    pub fn stage_degree(&self) -> usize {
        self.0.stage.as_ref().map_or(1, |s| s.degree)
    }

    /// Absolute degree over the base field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn is_base(&self) -> bool {
        self.0.stage.is_none()
    }

    /// Stages from the base up to and including `self`.
    pub fn stages(&self) -> Vec<Tower<B>> {
        let mut out = vec![self.clone()];
        while let Some(p) = out.last().unwrap().parent() {
            let p = p.clone();
            out.push(p);
        }
        out.reverse();
        out
    }

    pub fn root(&self) -> Tower<B> {
        self.stages().into_iter().next().unwrap()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.stages().iter().filter_map(|s| s.name().map(str::to_string)).collect()
    }

    pub fn describe(&self) -> String {
        let mut s = self.0.base.describe();
        for name in self.generator_names() {
            s.push_str(&format!("({name})"));
        }
        s
    }

    /// True when `self` is `other` or one of its lower stages.
    pub fn is_ancestor_of(&self, other: &Tower<B>) -> bool {
        if self.depth() > other.depth() {
            return false;
        }
        let mut cur = other.clone();
        while cur.depth() > self.depth() {
            cur = cur.parent().unwrap().clone();
        }
        cur.same_field(self)
    }

    /// The stage generator of the top stage.
    pub fn generator(&self) -> Element<B> {
        assert!(!self.is_base(), "the base field has no generator");
        let pd = self.parent().unwrap().degree();
        self.unit_vector(pd)
    }

    /// All stage generators, bottom-up, as elements of `self`.
    pub fn generators(&self) -> Vec<Element<B>> {
        self.stages()
            .iter()
            .filter(|s| !s.is_base())
            .map(|s| self.lift_from(s, &s.generator()))
            .collect()
    }

    pub(crate) fn unit_vector(&self, index: usize) -> Element<B> {
        let b = self.0.base;
        let mut coords = vec![b.zero(); self.degree()];
        coords[index] = b.one();
        Element { coords }
    }

    /// The product-power basis monomial with the given index.
    pub fn basis_element(&self, index: usize) -> Element<B> {
        self.unit_vector(index)
    }

    /// Stage exponents of the basis monomial with the given index, bottom-up.
    pub fn exponents(&self, mut index: usize) -> Vec<usize> {
        self.stages()
            .iter()
            .filter(|s| !s.is_base())
            .map(|s| {
                let d = s.stage_degree();
                let e = index % d;
                index /= d;
                e
            })
            .collect()
    }

    /// Embeds an element of an ancestor stage.
    pub fn lift_from(&self, from: &Tower<B>, a: &Element<B>) -> Element<B> {
        debug_assert!(from.is_ancestor_of(self));
        let mut coords = a.coords.clone();
        coords.resize(self.degree(), self.0.base.zero());
        Element { coords }
    }

    pub fn lift_poly_from(&self, from: &Tower<B>, f: &TowerPoly<B>) -> TowerPoly<B> {
        f.map_into(self, |c| self.lift_from(from, c))
    }

    /// Inverse of [`Tower::lift_from`]: `None` if `a` is not in `to`.
    pub fn restrict_to(&self, to: &Tower<B>, a: &Element<B>) -> Option<Element<B>> {
        let b = self.0.base;
        let n = to.degree();
        if a.coords[n..].iter().any(|c| !b.is_zero(c)) {
            return None;
        }
        Some(Element { coords: a.coords[..n].to_vec() })
    }

    pub fn scalar(&self, c: B::Elem) -> Element<B> {
        let b = self.0.base;
        let mut coords = vec![b.zero(); self.degree()];
        coords[0] = c;
        Element { coords }
    }

    /// The base-field value of `a`, if `a` lies in the base.
    pub fn scalar_part(&self, a: &Element<B>) -> Option<B::Elem> {
        let b = self.0.base;
        a.coords[1..].iter().all(|c| b.is_zero(c)).then(|| a.coords[0].clone())
    }

    pub fn scale(&self, c: &B::Elem, a: &Element<B>) -> Element<B> {
        let b = self.0.base;
        Element { coords: a.coords.iter().map(|x| b.mul(c, x)).collect() }
    }

    /// Splits into coefficients over the parent stage.
    pub fn split(&self, a: &Element<B>) -> Vec<Element<B>> {
        let pd = self.parent().expect("extension stage").degree();
        a.coords.chunks(pd).map(|c| Element { coords: c.to_vec() }).collect()
    }

    pub fn merge(&self, parts: Vec<Element<B>>) -> Element<B> {
        let pd = self.parent().expect("extension stage").degree();
        let b = self.0.base;
        let mut coords = Vec::with_capacity(self.degree());
        for p in parts.into_iter().take(self.stage_degree()) {
            coords.extend(p.coords);
        }
        coords.resize(self.degree(), b.zero());
        debug_assert_eq!(coords.len() % pd, 0);
        Element { coords }
    }

    /// `a` as a polynomial in the top generator with parent coefficients.
    pub fn as_parent_poly(&self, a: &Element<B>) -> TowerPoly<B> {
        Poly::new(self.parent().unwrap().clone(), self.split(a))
    }

    pub fn from_parent_poly(&self, f: &TowerPoly<B>) -> Element<B> {
        let (_, r) = f.div_rem(self.minpoly().unwrap()).expect("monic modulus");
        self.merge(r.into_coeffs())
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> Element<B> {
        let b = self.0.base;
        Element { coords: (0..self.degree()).map(|_| b.random_scalar(rng, max_degree)).collect() }
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &Element<B>) -> Element<B> {
        self.pow(a, self.characteristic())
    }

    /// Columns of the K-linear system whose solution is a p-th root.
    fn frobenius_columns(&self) -> &Vec<Vec<B::Elem>> {
        self.0.frobenius_columns.get_or_init(|| {
            let b = self.0.base;
            (0..self.degree())
                .map(|j| {
                    let bp = self.frobenius(&self.unit_vector(j));
                    bp.coords.iter().flat_map(|c| b.frobenius_components(c)).collect()
                })
                .collect()
        })
    }

    fn monomial_name(&self, index: usize) -> String {
        let names = self.generator_names();
        let parts: Vec<String> = self
            .exponents(index)
            .into_iter()
            .zip(names)
            .filter(|(e, _)| *e > 0)
            .map(|(e, n)| if e == 1 { n } else { format!("{n}^{e}") })
            .collect();
        parts.join("*")
    }
}

impl<B: BaseField> Field for Tower<B> {
    type Elem = Element<B>;

    fn zero(&self) -> Element<B> {
        Element { coords: vec![self.0.base.zero(); self.degree()] }
    }

    fn one(&self) -> Element<B> {
        self.scalar(self.0.base.one())
    }

    fn is_zero(&self, a: &Element<B>) -> bool {
        let b = self.0.base;
        a.coords.iter().all(|c| b.is_zero(c))
    }

    fn add(&self, x: &Element<B>, y: &Element<B>) -> Element<B> {
        let b = self.0.base;
        Element { coords: x.coords.iter().zip(&y.coords).map(|(u, v)| b.add(u, v)).collect() }
    }

    fn sub(&self, x: &Element<B>, y: &Element<B>) -> Element<B> {
        let b = self.0.base;
        Element { coords: x.coords.iter().zip(&y.coords).map(|(u, v)| b.sub(u, v)).collect() }
    }

    fn neg(&self, x: &Element<B>) -> Element<B> {
        let b = self.0.base;
        Element { coords: x.coords.iter().map(|u| b.neg(u)).collect() }
    }

    fn mul(&self, x: &Element<B>, y: &Element<B>) -> Element<B> {
        let Some(stage) = &self.0.stage else {
            return Element { coords: vec![self.0.base.mul(&x.coords[0], &y.coords[0])] };
        };
        let parent = &stage.parent;
        let d = stage.degree;
        let xs = self.split(x);
        let ys = self.split(y);
        let mut prod = vec![parent.zero(); 2 * d - 1];
        for (i, a) in xs.iter().enumerate() {
            if parent.is_zero(a) {
                continue;
            }
            for (j, c) in ys.iter().enumerate() {
                if parent.is_zero(c) {
                    continue;
                }
                prod[i + j] = parent.add(&prod[i + j], &parent.mul(a, c));
            }
        }
        let mu = stage.minpoly.coeffs();
        for k in (d..2 * d - 1).rev() {
            if parent.is_zero(&prod[k]) {
                continue;
            }
            let c = prod[k].clone();
            for (j, m) in mu.iter().enumerate().take(d) {
                if parent.is_zero(m) {
                    continue;
                }
                prod[k - d + j] = parent.sub(&prod[k - d + j], &parent.mul(&c, m));
            }
        }
        prod.truncate(d);
        self.merge(prod)
    }

    /// Extended Euclid over the parent stage against the stage minpoly.
    fn inv(&self, a: &Element<B>) -> Option<Element<B>> {
        if self.is_zero(a) {
            return None;
        }
        let Some(stage) = &self.0.stage else {
            return self.0.base.inv(&a.coords[0]).map(|c| self.scalar(c));
        };
        let ap = self.as_parent_poly(a);
        let (g, s, _) = ap.ext_gcd(&stage.minpoly).ok()?;
        debug_assert_eq!(g.degree(), Some(0), "stage minpoly must be irreducible");
        Some(self.from_parent_poly(&s))
    }

    fn from_u64(&self, n: u64) -> Element<B> {
        self.scalar(self.0.base.from_u64(n))
    }

    fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    fn order(&self) -> Option<BigUint> {
        self.0.base.order()?;
        Some(big_pow(self.characteristic(), self.degree()))
    }

    fn same_field(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.degree != other.0.degree || self.0.depth != other.0.depth || self.0.base != other.0.base {
            return false;
        }
        match (&self.0.stage, &other.0.stage) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.name == b.name && a.parent.same_field(&b.parent) && a.minpoly.coeffs() == b.minpoly.coeffs()
            }
            _ => false,
        }
    }

    fn format_elem(&self, a: &Element<B>) -> String {
        let b = self.0.base;
        let mut terms = Vec::new();
        for (i, c) in a.coords.iter().enumerate().rev() {
            if b.is_zero(c) {
                continue;
            }
            let coef = b.format_elem(c);
            if i == 0 {
                terms.push(coef);
                continue;
            }
            let mono = self.monomial_name(i);
            if b.is_one(c) {
                terms.push(mono);
            } else if coef.contains(['+', '/', '*']) {
                terms.push(format!("({coef})*{mono}"));
            } else {
                terms.push(format!("{coef}*{mono}"));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn weight(&self, a: &Element<B>) -> usize {
        let b = self.0.base;
        a.coords.iter().map(|c| b.weight(c)).sum()
    }
}

impl<B: BaseField> PerfectionOracle for Tower<B> {
    /// Frobenius is semilinear over K: writing `r = sum c_j b_j` gives
    /// `r^p = sum c_j^p b_j^p`, which becomes a K-linear system after
    /// splitting every coordinate over the p-th powers of K.
    fn pth_root(&self, a: &Element<B>) -> Option<Element<B>> {
        let b = self.0.base;
        if self.is_base() {
            return b.pth_root(&a.coords[0]).map(|c| self.scalar(c));
        }
        let target: Vec<B::Elem> = a.coords.iter().flat_map(|c| b.frobenius_components(c)).collect();
        let sol = linalg::solve(&b, self.frobenius_columns(), &target)?;
        let r = Element { coords: sol };
        (self.frobenius(&r) == *a).then_some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::PrimeField;
    use crate::ratfunc::RationalFunctionField;
    use proptest::prelude::*;

    fn f4() -> Tower<PrimeField> {
        let k = Tower::base(PrimeField::new(2).unwrap());
        k.make_extension(&Poly::from_ints(k.clone(), &[1, 1, 1]), "w", &FactorConfig::default()).unwrap()
    }

    fn f3t_sqrt_t() -> Tower<RationalFunctionField> {
        let kf = RationalFunctionField::new(PrimeField::new(3).unwrap());
        let k = Tower::base(kf);
        let f = Poly::new(k.clone(), vec![k.neg(&k.scalar(kf.t())), k.zero(), k.one()]);
        k.make_extension(&f, "s", &FactorConfig::default()).unwrap()
    }

    #[test]
    fn f4_arithmetic() {
        let e = f4();
        let w = e.generator();
        let w1 = e.add(&w, &e.one());
        assert_eq!(e.mul(&w, &w1), e.one());
        assert_eq!(e.inv(&w).unwrap(), w1);
        assert!(e.inv(&e.zero()).is_none());
        assert_eq!(e.format_elem(&w1), "w + 1");
    }

    #[test]
    fn reducible_modulus_is_rejected_with_factor() {
        let k = Tower::base(PrimeField::new(2).unwrap());
        let err = k.make_extension(&Poly::from_ints(k.clone(), &[1, 0, 1]), "w", &FactorConfig::default());
        assert_eq!(err.unwrap_err(), AlgebraError::Reducible { factor: "x + 1".into() });
        let k3 = Tower::base(PrimeField::new(3).unwrap());
        let err = k3.make_extension(&Poly::from_ints(k3.clone(), &[1, 0, 2]), "w", &FactorConfig::default());
        assert_eq!(err.unwrap_err(), AlgebraError::NotMonic);
    }

    #[test]
    fn square_root_of_t() {
        let e = f3t_sqrt_t();
        let s = e.generator();
        let t = e.scalar(e.base_field().t());
        assert_eq!(e.mul(&s, &s), t);
        assert_eq!(e.mul(&s, &e.inv(&s).unwrap()), e.one());
    }

    #[test]
    fn pth_roots_in_towers() {
        let kf = RationalFunctionField::new(PrimeField::new(2).unwrap());
        let k = Tower::base(kf);
        let f = Poly::new(k.clone(), vec![k.scalar(kf.t()), k.zero(), k.zero(), k.zero(), k.one()]);
        let e = k.make_extension(&f, "a", &FactorConfig::default()).unwrap();
        let a = e.generator();
        let a2 = e.mul(&a, &a);
        assert_eq!(e.pth_root(&a2), Some(a.clone()));
        assert_eq!(e.pth_root(&a), None);
        let t = e.scalar(kf.t());
        assert_eq!(e.pth_root(&t), Some(a2));
    }

    proptest! {
        #[test]
        fn frobenius_is_a_ring_map(seed in 0u64..500) {
            use rand::SeedableRng;
            let e = f3t_sqrt_t();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = e.random_element(&mut rng, 2);
            let y = e.random_element(&mut rng, 2);
            prop_assert_eq!(e.frobenius(&e.add(&x, &y)), e.add(&e.frobenius(&x), &e.frobenius(&y)));
            prop_assert_eq!(e.frobenius(&e.mul(&x, &y)), e.mul(&e.frobenius(&x), &e.frobenius(&y)));
            prop_assert_eq!(e.pth_root(&e.frobenius(&x)), Some(x.clone()));
            if !e.is_zero(&x) {
                prop_assert_eq!(e.mul(&x, &e.inv(&x).unwrap()), e.one());
            }
        }
    }
}
