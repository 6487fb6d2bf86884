//! Intermediate fields `K ⊆ L ⊆ E` given by generators inside a tower.
//!
//! A subfield stores a K-basis of `K[g_1, ..., g_r]` found by closing `{1}`
//! under multiplication by the generators. Every basis vector remembers the
//! monomial in the generators it came from, which lets embeddings defined on
//! the generators be evaluated on the whole subfield.

use crate::base::BaseField;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::poly::Poly;
use crate::tower::{Element, Tower, TowerPoly};

#[derive(Clone, Debug)]
pub struct Subfield<B: BaseField> {
    ambient: Tower<B>,
    generators: Vec<Element<B>>,
    basis: Vec<Element<B>>,
    words: Vec<Vec<usize>>,
    echelon: Echelon<B>,
}

impl<B: BaseField> Subfield<B> {
    /// The base field K inside `ambient`.
    pub fn base(ambient: &Tower<B>) -> Self {
        Self::generated(ambient, &[])
    }

    /// The whole ambient field, generated by its tower generators.
    pub fn whole(ambient: &Tower<B>) -> Self {
        Self::generated(ambient, &ambient.generators())
    }

    /// `K(generators)`.
    pub fn generated(ambient: &Tower<B>, generators: &[Element<B>]) -> Self {
        let b = ambient.base_field();
        let mut echelon = Echelon::new(b, ambient.degree());
        let one = ambient.one();
        echelon.insert(one.coords());
        let mut basis = vec![one];
        let mut words = vec![vec![0; generators.len()]];
        let mut i = 0;
        while i < basis.len() {
            for (j, g) in generators.iter().enumerate() {
                let v = ambient.mul(&basis[i], g);
                if echelon.insert(v.coords()) {
                    let mut w = words[i].clone();
                    w[j] += 1;
                    basis.push(v);
                    words.push(w);
                }
            }
            i += 1;
        }
        Self { ambient: ambient.clone(), generators: generators.to_vec(), basis, words, echelon }
    }

    pub fn ambient(&self) -> &Tower<B> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element<B>] {
        &self.generators
    }

    /// K-basis as ambient elements.
    pub fn basis(&self) -> &[Element<B>] {
        &self.basis
    }

    /// Exponent vector in the generators for each basis element.
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Degree over K.
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, a: &Element<B>) -> bool {
        self.echelon.contains(a.coords())
    }

    /// Coordinates of `a` in [`Subfield::basis`].
    pub fn coordinates(&self, a: &Element<B>) -> Option<Vec<B::Elem>> {
        self.echelon.coordinates(a.coords())
    }

    pub fn is_subfield_of(&self, other: &Subfield<B>) -> bool {
        self.degree() <= other.degree() && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_as(&self, other: &Subfield<B>) -> bool {
        self.degree() == other.degree() && self.is_subfield_of(other)
    }

    /// `K(generators, extra)`.
    pub fn adjoin(&self, extra: &[Element<B>]) -> Self {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::generated(&self.ambient, &gens)
    }

    /// Checks that the span is closed under products and inverses.
    pub fn validate(&self) -> Result<()> {
        let e = &self.ambient;
        for x in &self.basis {
            for y in &self.basis {
                if !self.contains(&e.mul(x, y)) {
                    return Err(AlgebraError::Internal("span is not closed under multiplication".into()));
                }
            }
            if !self.contains(&e.inv(x).unwrap()) {
                return Err(AlgebraError::Internal("span is not closed under inversion".into()));
            }
        }
        Ok(())
    }

    /// A short description listing the generators.
    pub fn describe(&self) -> String {
        let b = self.ambient.base_field().describe();
        if self.generators.is_empty() {
            return b;
        }
        let gens: Vec<String> = self.generators.iter().map(|g| self.ambient.format_elem(g)).collect();
        format!("{b}({})", gens.join(", "))
    }
}

/// Minimal polynomial of `a` over the subfield `over`, with coefficients
/// given as ambient elements.
pub fn minimal_polynomial<B: BaseField>(a: &Element<B>, over: &Subfield<B>) -> TowerPoly<B> {
    let e = over.ambient();
    let b = e.base_field();
    let m = over.degree();
    let mut echelon = Echelon::new(b, e.degree());
    let mut accepted: Vec<(usize, usize)> = Vec::new();
    let mut power = e.one();
    let mut d = 0;
    loop {
        let vecs: Vec<Element<B>> = over.basis().iter().map(|bj| e.mul(bj, &power)).collect();
        if let Some(c) = echelon.coordinates(power.coords()) {
            let mut coeffs = vec![e.zero(); d + 1];
            for ((i, j), cij) in accepted.iter().zip(c) {
                let term = e.scale(&cij, &over.basis()[*j]);
                coeffs[*i] = e.sub(&coeffs[*i], &term);
            }
            coeffs[d] = e.one();
            return Poly::new(e.clone(), coeffs);
        }
        for (j, v) in vecs.iter().enumerate() {
            if echelon.insert(v.coords()) {
                accepted.push((d, j));
            }
        }
        debug_assert_eq!(accepted.len(), m * (d + 1));
        power = e.mul(&power, a);
        d += 1;
    }
}

/// Minimal polynomial of `a` over the base field K.
pub fn minimal_polynomial_over_base<B: BaseField>(e: &Tower<B>, a: &Element<B>) -> Poly<B> {
    let f = minimal_polynomial(a, &Subfield::base(e));
    f.map_into(&e.base_field(), |c| e.scalar_part(c).expect("coefficient in K"))
}

/// Degree of `K(a)` over K.
pub fn element_degree<B: BaseField>(e: &Tower<B>, a: &Element<B>) -> usize {
    minimal_polynomial(a, &Subfield::base(e)).deg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorConfig;
    use crate::prime::PrimeField;
    use crate::ratfunc::RationalFunctionField;

    fn biquadratic() -> Tower<RationalFunctionField> {
        let kf = RationalFunctionField::new(PrimeField::new(3).unwrap());
        let k = Tower::base(kf);
        let cfg = FactorConfig::default();
        let t = k.scalar(kf.t());
        let s = k.make_extension(&Poly::new(k.clone(), vec![k.neg(&t), k.zero(), k.one()]), "s", &cfg).unwrap();
        let t1 = s.scalar(kf.add(&kf.t(), &kf.one()));
        s.make_extension(&Poly::new(s.clone(), vec![s.neg(&t1), s.zero(), s.one()]), "u", &cfg).unwrap()
    }

    #[test]
    fn spans_and_degrees() {
        let e = biquadratic();
        let g = e.generators();
        let whole = Subfield::whole(&e);
        assert_eq!(whole.degree(), 4);
        whole.validate().unwrap();
        let su = e.add(&g[0], &g[1]);
        let l = Subfield::generated(&e, &[su.clone()]);
        assert_eq!(l.degree(), 4);
        assert!(l.same_as(&whole));
        let prod = Subfield::generated(&e, &[e.mul(&g[0], &g[1])]);
        assert_eq!(prod.degree(), 2);
        assert!(!prod.contains(&g[0]));
        assert!(prod.is_subfield_of(&whole));
    }

    #[test]
    fn minimal_polynomials() {
        let e = biquadratic();
        let g = e.generators();
        let su = e.add(&g[0], &g[1]);
        let f = minimal_polynomial_over_base(&e, &su);
        assert_eq!(f.deg(), 4);
        let fe = f.map_into(&e, |c| e.scalar(c.clone()));
        assert!(e.is_zero(&fe.eval(&su)));
        let over_s = Subfield::generated(&e, &[g[0].clone()]);
        let h = minimal_polynomial(&su, &over_s);
        assert_eq!(h.deg(), 2);
        assert!(e.is_zero(&h.eval(&su)));
        assert!(h.coeffs().iter().all(|c| over_s.contains(c)));
    }
}
