//! Intermediate fields of `E/K`, where they can be listed.
//!
//! * finite fields: one subfield per divisor, cut out by a power of
//!   Frobenius (complete);
//! * separable extensions of small degree: fixed fields of the subgroups of
//!   `Aut_K(N)` intersected with E (complete, by the Galois correspondence);
//! * simple inseparable extensions: the chain `K(α^(p^i))` (sound only).

use serde::Serialize;

use crate::base::BaseField;
use crate::embed::{hom_set_over_base, Embedding, SplittingContext};
use crate::error::{AlgebraError, Result};
use crate::factor::separable_decompose;
use crate::field::Field;
use crate::linalg;
use crate::subfield::{minimal_polynomial_over_base, Subfield};
use crate::tower::{Element, Tower};

/// Largest `[E:K]` handled by [`subfields_separable`].
pub const MAX_SEPARABLE_DEGREE: usize = 8;
/// Largest automorphism group enumerated by [`subfields_separable`].
pub const MAX_GROUP_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    SoundOnly,
}

#[derive(Debug, Clone)]
pub struct SubfieldLattice<B: BaseField> {
    ambient: Tower<B>,
    nodes: Vec<Subfield<B>>,
    completeness: Completeness,
}

impl<B: BaseField> SubfieldLattice<B> {
    pub(crate) fn new(ambient: &Tower<B>, candidates: Vec<Subfield<B>>, completeness: Completeness) -> Self {
        let mut nodes: Vec<Subfield<B>> = Vec::new();
        for c in candidates {
            if !nodes.iter().any(|n| n.same_as(&c)) {
                nodes.push(c);
            }
        }
        nodes.sort_by_key(|n| (n.degree(), n.describe()));
        Self { ambient: ambient.clone(), nodes, completeness }
    }

    pub fn ambient(&self) -> &Tower<B> {
        &self.ambient
    }

    /// Nodes ordered by degree, K first and E last.
    pub fn nodes(&self) -> &[Subfield<B>] {
        &self.nodes
    }

    /// Nodes other than E itself.
    pub fn proper_nodes(&self) -> impl Iterator<Item = &Subfield<B>> {
        let top = self.ambient.degree();
        self.nodes.iter().filter(move |n| n.degree() < top)
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    /// Validates every node as a subfield.
    pub fn validate(&self) -> Result<()> {
        let n = self.ambient.degree();
        for node in &self.nodes {
            node.validate()?;
            if n % node.degree() != 0 {
                return Err(AlgebraError::Internal("subfield degree does not divide [E:K]".into()));
            }
        }
        Ok(())
    }
}

/// A small generating set for the K-span of `basis`, which must be a field.
fn generators_for<B: BaseField>(e: &Tower<B>, basis: &[Element<B>]) -> Subfield<B> {
    let mut current = Subfield::base(e);
    for v in basis {
        if current.degree() == basis.len() {
            break;
        }
        if !current.contains(v) {
            current = current.adjoin(std::slice::from_ref(v));
        }
    }
    current
}

/// Elements of E fixed by every map in `maps` (embeddings of E into N).
fn fixed_subspace<B: BaseField>(e: &Tower<B>, maps: &[Embedding<B>], n: &Tower<B>) -> Vec<Element<B>> {
    let cols: Vec<Vec<B::Elem>> = (0..e.degree())
        .map(|j| {
            let bj = e.basis_element(j);
            let lifted = n.lift_from(e, &bj);
            maps.iter().flat_map(|m| n.sub(&m.apply(&bj), &lifted).into_coords()).collect()
        })
        .collect();
    if maps.is_empty() {
        return (0..e.degree()).map(|j| e.basis_element(j)).collect();
    }
    linalg::nullspace(&e.base_field(), &cols).into_iter().map(Element::from_coords).collect()
}

/// All subfields of a finite tower E containing `over` (of degree m over
/// the prime field): one per d with `m | d | n`, the fixed field of `x -> x^(p^d)`.
pub fn subfields_finite<B: BaseField>(e: &Tower<B>, over: &Subfield<B>) -> Result<SubfieldLattice<B>> {
    if !e.is_finite() {
        return Err(AlgebraError::Precondition("not a finite field".into()));
    }
    let n = e.degree();
    let m = over.degree();
    if n % m != 0 {
        return Err(AlgebraError::Precondition(format!("{m} does not divide {n}")));
    }
    let p = e.characteristic();
    let mut nodes = Vec::new();
    for d in (m..=n).filter(|d| d % m == 0 && n % d == 0) {
        let cols: Vec<Vec<B::Elem>> = (0..n)
            .map(|j| {
                let bj = e.basis_element(j);
                let mut img = bj.clone();
                for _ in 0..d {
                    img = e.pow(&img, p);
                }
                e.sub(&img, &bj).into_coords()
            })
            .collect();
        let kernel: Vec<Element<B>> =
            linalg::nullspace(&e.base_field(), &cols).into_iter().map(Element::from_coords).collect();
        let node = generators_for(e, &kernel);
        if node.degree() != d {
            return Err(AlgebraError::Internal(format!("fixed field of degree {} instead of {d}", node.degree())));
        }
        nodes.push(node);
    }
    Ok(SubfieldLattice::new(e, nodes, Completeness::Complete))
}

/// All subfields of a separable E/K via the Galois correspondence in N.
pub fn subfields_separable<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<SubfieldLattice<B>> {
    if e.degree() > MAX_SEPARABLE_DEGREE {
        return Err(AlgebraError::Capability(format!("degree {} exceeds {MAX_SEPARABLE_DEGREE}", e.degree())));
    }
    if hom_set_over_base(e, ctx)?.len() != e.degree() {
        return Err(AlgebraError::Precondition("extension is not separable".into()));
    }
    let n = ctx.field();
    let group = hom_set_over_base(n, ctx)?;
    if group.len() > MAX_GROUP_ORDER {
        return Err(AlgebraError::Capability(format!("automorphism group of order {}", group.len())));
    }
    if group.len() != n.degree() {
        return Err(AlgebraError::Internal("splitting field is not Galois over K".into()));
    }
    let table = multiplication_table(&group)?;
    let subgroups = enumerate_subgroups(&table);
    let mut nodes = vec![Subfield::base(e), Subfield::whole(e)];
    for h in subgroups {
        let maps: Vec<Embedding<B>> = members(h).map(|i| group[i].restrict(e)).collect();
        let fixed = fixed_subspace(e, &maps, n);
        nodes.push(generators_for(e, &fixed));
    }
    Ok(SubfieldLattice::new(e, nodes, Completeness::Complete))
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// `table[i][j]` is the index of `group[i] ∘ group[j]`.
fn multiplication_table<B: BaseField>(group: &[Embedding<B>]) -> Result<Vec<Vec<usize>>> {
    let mut table = Vec::with_capacity(group.len());
    for sigma in group {
        let mut row = Vec::with_capacity(group.len());
        for tau in group {
            let images: Vec<Element<B>> = tau.images().iter().map(|g| sigma.apply(g)).collect();
            let idx = group
                .iter()
                .position(|g| g.images() == images.as_slice())
                .ok_or_else(|| AlgebraError::Internal("automorphisms not closed under composition".into()))?;
            row.push(idx);
        }
        table.push(row);
    }
    Ok(table)
}

/// Every subgroup, as a bitmask, by closing generating sets.
fn enumerate_subgroups(table: &[Vec<usize>]) -> Vec<u32> {
    let order = table.len();
    let identity = (0..order).find(|&i| (0..order).all(|j| table[i][j] == j)).expect("identity");
    let close = |mut mask: u32| loop {
        let mut next = mask;
        for i in members(mask) {
            for j in members(mask) {
                next |= 1 << table[i][j];
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    };
    let mut found = vec![1u32 << identity];
    let mut k = 0;
    while k < found.len() {
        let h = found[k];
        for g in 0..order {
            if h & (1 << g) == 0 {
                let c = close(h | (1 << g));
                if !found.contains(&c) {
                    found.push(c);
                }
            }
        }
        k += 1;
    }
    found
}

/// `K ⊆ K(α^(p^e)) ⊆ ... ⊆ K(α^p) ⊆ K(α)` for an inseparable α.
pub fn canonical_chain<B: BaseField>(e: &Tower<B>, alpha: &Element<B>) -> Result<SubfieldLattice<B>> {
    let f = minimal_polynomial_over_base(e, alpha);
    let (_, exp) = separable_decompose(&f);
    if exp == 0 {
        return Err(AlgebraError::Precondition("element is separable".into()));
    }
    let mut nodes = vec![Subfield::base(e)];
    let mut power = alpha.clone();
    for _ in 0..=exp {
        nodes.push(Subfield::generated(e, std::slice::from_ref(&power)));
        power = e.frobenius(&power);
    }
    Ok(SubfieldLattice::new(e, nodes, Completeness::SoundOnly))
}

/// The most complete lattice available for E/K.
pub fn lattice_for<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<SubfieldLattice<B>> {
    if e.is_finite() {
        return subfields_finite(e, &Subfield::base(e));
    }
    let separable = hom_set_over_base(e, ctx)?.len() == e.degree();
    if separable {
        return subfields_separable(e, ctx);
    }
    if e.depth() == 1 {
        return canonical_chain(e, &e.generator());
    }
    Err(AlgebraError::Capability("no subfield enumeration for inseparable towers of several stages".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorConfig;
    use crate::poly::Poly;
    use crate::prime::PrimeField;
    use crate::ratfunc::RationalFunctionField;

    fn gf(p: u64, cs: &[i64]) -> Tower<PrimeField> {
        let k = Tower::base(PrimeField::new(p).unwrap());
        k.make_extension(&Poly::from_ints(k.clone(), cs), "a", &FactorConfig::default()).unwrap()
    }

    fn degrees<B: BaseField>(l: &SubfieldLattice<B>) -> Vec<usize> {
        l.nodes().iter().map(|n| n.degree()).collect()
    }

    #[test]
    fn finite_lattices() {
        // x^6 + x + 1 is irreducible over F_2
        let e = gf(2, &[1, 1, 0, 0, 0, 0, 1]);
        let l = subfields_finite(&e, &Subfield::base(&e)).unwrap();
        assert_eq!(degrees(&l), vec![1, 2, 3, 6]);
        l.validate().unwrap();
        let f8 = gf(2, &[1, 1, 0, 1]);
        assert_eq!(degrees(&subfields_finite(&f8, &Subfield::base(&f8)).unwrap()), vec![1, 3]);
    }

    #[test]
    fn separable_route_agrees_with_finite_route() {
        let e = gf(2, &[1, 1, 0, 0, 1]);
        let ctx = SplittingContext::new(&e, &FactorConfig::default()).unwrap();
        let a = subfields_finite(&e, &Subfield::base(&e)).unwrap();
        let b = subfields_separable(&e, &ctx).unwrap();
        assert_eq!(degrees(&a), degrees(&b));
        for (x, y) in a.nodes().iter().zip(b.nodes()) {
            assert!(x.same_as(y));
        }
    }

    #[test]
    fn biquadratic_has_five_subfields() {
        let kf = RationalFunctionField::new(PrimeField::new(3).unwrap());
        let k = Tower::base(kf);
        let cfg = FactorConfig::default();
        let t = k.scalar(kf.t());
        let s = k.make_extension(&Poly::new(k.clone(), vec![k.neg(&t), k.zero(), k.one()]), "s", &cfg).unwrap();
        let t1 = s.scalar(kf.add(&kf.t(), &kf.one()));
        let e = s.make_extension(&Poly::new(s.clone(), vec![s.neg(&t1), s.zero(), s.one()]), "u", &cfg).unwrap();
        let ctx = SplittingContext::new(&e, &cfg).unwrap();
        let l = subfields_separable(&e, &ctx).unwrap();
        assert_eq!(degrees(&l), vec![1, 2, 2, 2, 4]);
        l.validate().unwrap();
    }

    #[test]
    fn chain_of_fourth_root() {
        let kf = RationalFunctionField::new(PrimeField::new(2).unwrap());
        let k = Tower::base(kf);
        let f = Poly::new(k.clone(), vec![k.scalar(kf.t()), k.zero(), k.zero(), k.zero(), k.one()]);
        let e = k.make_extension(&f, "a", &FactorConfig::default()).unwrap();
        let l = canonical_chain(&e, &e.generator()).unwrap();
        assert_eq!(degrees(&l), vec![1, 2, 4]);
        assert_eq!(l.completeness(), Completeness::SoundOnly);
    }
}
