//! Embeddings of tower fields into a finite splitting field N that stands in
//! for an algebraic closure.
//!
//! N is built on top of the source tower E by adjoining roots of the
//! K-minimal polynomials of E's generators until they split, so E sits in N
//! by zero padding and N contains a normal closure of E/K. Every generator of
//! N keeps the list of distinct roots of its K-minimal polynomial in N; an
//! embedding sends a generator to one of those roots.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::base::BaseField;
use crate::error::{AlgebraError, Result};
use crate::factor::{self, FactorConfig};
use crate::field::Field;
use crate::poly::Poly;
use crate::subfield::{minimal_polynomial, minimal_polynomial_over_base, Subfield};
use crate::tower::{Element, Tower, TowerPoly};

/// A finite stand-in for an algebraic closure of the source tower.
#[derive(Debug)]
pub struct SplittingContext<B: BaseField> {
    source: Tower<B>,
    n: Tower<B>,
    cfg: FactorConfig,
    /// Distinct roots in N of the K-minimal polynomial of each generator of N.
    pools: Vec<Vec<Element<B>>>,
    cache: Mutex<HashMap<String, Vec<Element<B>>>>,
}

impl<B: BaseField> SplittingContext<B> {
    /// Context for embeddings of `source` (and its subfields).
    pub fn new(source: &Tower<B>, cfg: &FactorConfig) -> Result<Self> {
        let polys: Vec<Poly<B>> =
            source.generators().iter().map(|g| minimal_polynomial_over_base(source, g)).collect();
        Self::build(source, &polys, cfg)
    }

    /// A splitting field of `f` over the base of `base`.
    pub fn splitting_field(base: &Tower<B>, f: &Poly<B>, cfg: &FactorConfig) -> Result<Self> {
        Self::build(base, &[f.clone()], cfg)
    }

    fn build(source: &Tower<B>, polys: &[Poly<B>], cfg: &FactorConfig) -> Result<Self> {
        let mut n = source.clone();
        let mut names = source.generator_names();
        let mut fresh = 0;
        let mut cache = HashMap::new();
        'outer: loop {
            for f in polys {
                let lifted = lift_base_poly(&n, f);
                let fac = factor::factor(&lifted, cfg)?;
                if let Some((q, _)) = fac.factors.iter().find(|(q, _)| q.deg() > 1) {
                    let name = loop {
                        fresh += 1;
                        let cand = format!("z{fresh}");
                        if !names.contains(&cand) {
                            break cand;
                        }
                    };
                    names.push(name.clone());
                    n = n.extend_unchecked(q, &name);
                    continue 'outer;
                }
            }
            break;
        }
        for f in polys {
            let roots = factor::roots_in(&lift_base_poly(&n, f), cfg)?;
            cache.insert(poly_key(f), roots);
        }
        let ctx = Self { source: source.clone(), n: n.clone(), cfg: *cfg, pools: Vec::new(), cache: Mutex::new(cache) };
        let pools = n
            .generators()
            .iter()
            .map(|g| ctx.roots_of(&minimal_polynomial_over_base(&n, g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { pools, ..ctx })
    }

    pub fn source(&self) -> &Tower<B> {
        &self.source
    }

    /// The splitting field N.
    pub fn field(&self) -> &Tower<B> {
        &self.n
    }

    pub fn config(&self) -> &FactorConfig {
        &self.cfg
    }

    /// Distinct roots in N of a polynomial over K, cached by polynomial.
    pub fn roots_of(&self, f: &Poly<B>) -> Result<Vec<Element<B>>> {
        let key = poly_key(f);
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let roots = factor::roots_in(&lift_base_poly(&self.n, f), &self.cfg)?;
        self.cache.lock().unwrap().insert(key, roots.clone());
        Ok(roots)
    }

    /// Roots of the K-minimal polynomial of the i-th generator of N.
    pub fn generator_pool(&self, i: usize) -> &[Element<B>] {
        &self.pools[i]
    }

    /// Lifts an element of `e` (an ancestor of N) into N.
    pub fn lift(&self, e: &Tower<B>, a: &Element<B>) -> Element<B> {
        self.n.lift_from(e, a)
    }

    fn check_domain(&self, e: &Tower<B>) -> Result<()> {
        if e.is_ancestor_of(&self.n) {
            Ok(())
        } else {
            Err(AlgebraError::ContextTooSmall(format!("{} is not part of {}", e.describe(), self.n.describe())))
        }
    }
}

fn poly_key<B: BaseField>(f: &Poly<B>) -> String {
    f.monic().to_string()
}

fn lift_base_poly<B: BaseField>(n: &Tower<B>, f: &Poly<B>) -> TowerPoly<B> {
    f.map_into(n, |c| n.scalar(c.clone()))
}

/// A K-embedding of a tower stage into N, stored as generator images.
#[derive(Clone, Debug)]
pub struct Embedding<B: BaseField> {
    domain: Tower<B>,
    codomain: Tower<B>,
    images: Vec<Element<B>>,
    basis_images: Vec<Element<B>>,
}

impl<B: BaseField> PartialEq for Embedding<B> {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl<B: BaseField> Embedding<B> {
    /// Builds the map from generator images. The caller guarantees that the
    /// images satisfy the stage relations.
    pub fn from_images(domain: &Tower<B>, codomain: &Tower<B>, images: Vec<Element<B>>) -> Self {
        let stages: Vec<Tower<B>> = domain.stages().into_iter().filter(|s| !s.is_base()).collect();
        debug_assert_eq!(stages.len(), images.len());
        let mut basis_images = vec![codomain.one()];
        for (s, img) in stages.iter().zip(&images) {
            let mut next = Vec::with_capacity(basis_images.len() * s.stage_degree());
            let mut power = codomain.one();
            for _ in 0..s.stage_degree() {
                next.extend(basis_images.iter().map(|b| codomain.mul(b, &power)));
                power = codomain.mul(&power, img);
            }
            basis_images = next;
        }
        Self { domain: domain.clone(), codomain: codomain.clone(), images, basis_images }
    }

    /// The inclusion of `domain` into an extension tower.
    pub fn inclusion(domain: &Tower<B>, codomain: &Tower<B>) -> Self {
        let images = domain.generators().iter().map(|g| codomain.lift_from(domain, g)).collect();
        Self::from_images(domain, codomain, images)
    }

    pub fn domain(&self) -> &Tower<B> {
        &self.domain
    }

    pub fn codomain(&self) -> &Tower<B> {
        &self.codomain
    }

    /// Images of the domain's tower generators.
    pub fn images(&self) -> &[Element<B>] {
        &self.images
    }

    pub fn apply(&self, a: &Element<B>) -> Element<B> {
        let n = &self.codomain;
        let mut acc = n.zero();
        for (c, img) in a.coords().iter().zip(&self.basis_images) {
            if !self.domain.base_field().is_zero(c) {
                acc = n.add(&acc, &n.scale(c, img));
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &TowerPoly<B>) -> TowerPoly<B> {
        f.map_into(&self.codomain, |c| self.apply(c))
    }

    /// Restriction to a lower stage of the domain.
    pub fn restrict(&self, to: &Tower<B>) -> Self {
        let k = to.depth();
        Self::from_images(to, &self.codomain, self.images[..k].to_vec())
    }

    pub fn describe(&self) -> String {
        let names = self.domain.generator_names();
        let parts: Vec<String> = names
            .iter()
            .zip(&self.images)
            .map(|(n, img)| format!("{n} -> {}", self.codomain.format_elem(img)))
            .collect();
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join(", ")
        }
    }
}

/// All K-embeddings of `e` into N, extending stage by stage.
pub fn hom_set_over_base<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<Vec<Embedding<B>>> {
    ctx.check_domain(e)?;
    if e.is_finite() && ctx.field().is_finite() {
        return Ok(frobenius_homs(e, ctx));
    }
    hom_set_generic(e, ctx)
}

/// The generic root-chasing enumeration, used directly as an oracle for the
/// finite-field fast path.
pub fn hom_set_generic<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<Vec<Embedding<B>>> {
    ctx.check_domain(e)?;
    let n = ctx.field();
    let mut partial = vec![Embedding::from_images(&e.root(), n, Vec::new())];
    for (i, stage) in e.stages().into_iter().skip(1).enumerate() {
        let mut next = Vec::new();
        for phi in &partial {
            next.extend(extend_with_pool(phi, &stage, ctx.generator_pool(i))?);
        }
        partial = next;
    }
    Ok(partial)
}

fn extend_with_pool<B: BaseField>(
    phi: &Embedding<B>,
    stage: &Tower<B>,
    pool: &[Element<B>],
) -> Result<Vec<Embedding<B>>> {
    let n = phi.codomain();
    let mu = phi.apply_poly(stage.minpoly().unwrap());
    let roots: Vec<&Element<B>> = pool.iter().filter(|r| n.is_zero(&mu.eval(r))).collect();
    if roots.is_empty() {
        return Err(AlgebraError::ContextTooSmall(format!(
            "image of the minimal polynomial of {} has no root",
            stage.name().unwrap_or("?")
        )));
    }
    Ok(roots
        .into_iter()
        .map(|r| {
            let mut images = phi.images().to_vec();
            images.push(r.clone());
            Embedding::from_images(stage, n, images)
        })
        .collect())
}

/// Finite fields: the K-embeddings of `E = F_{p^n}` are the powers of
/// Frobenius, restricted from N.
fn frobenius_homs<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Vec<Embedding<B>> {
    let n = ctx.field();
    let gens: Vec<Element<B>> = e.generators().iter().map(|g| n.lift_from(e, g)).collect();
    let mut out = Vec::with_capacity(e.degree());
    let mut cur = gens;
    for _ in 0..e.degree() {
        out.push(Embedding::from_images(e, n, cur.clone()));
        cur = cur.iter().map(|g| n.frobenius(g)).collect();
    }
    out
}

/// `Hom_L(E, N)`: K-embeddings of E fixing the subfield `l` pointwise.
pub fn hom_set<B: BaseField>(e: &Tower<B>, l: &Subfield<B>, ctx: &SplittingContext<B>) -> Result<Vec<Embedding<B>>> {
    let all = hom_set_over_base(e, ctx)?;
    Ok(all.into_iter().filter(|phi| fixes(phi, l, ctx)).collect())
}

fn fixes<B: BaseField>(phi: &Embedding<B>, l: &Subfield<B>, ctx: &SplittingContext<B>) -> bool {
    let e = l.ambient();
    l.generators().iter().all(|g| phi.apply(g) == ctx.lift(e, g))
}

/// Whether `phi` and `psi` agree on every element of `l`.
pub fn agree_on<B: BaseField>(phi: &Embedding<B>, psi: &Embedding<B>, l: &Subfield<B>) -> bool {
    l.basis().iter().all(|b| phi.apply(b) == psi.apply(b))
}

/// Extensions of `phi` (defined on the parent of `stage`) to `stage`.
pub fn extend_embedding<B: BaseField>(
    phi: &Embedding<B>,
    stage: &Tower<B>,
    ctx: &SplittingContext<B>,
) -> Result<Vec<Embedding<B>>> {
    ctx.check_domain(stage)?;
    let parent = stage.parent().ok_or_else(|| AlgebraError::Precondition("stage has no parent".into()))?;
    if !parent.same_field(phi.domain()) {
        return Err(AlgebraError::Precondition("embedding is not defined on the parent stage".into()));
    }
    extend_with_pool(phi, stage, ctx.generator_pool(stage.depth() - 1))
}

/// `|Hom_L(E, N)|`.
pub fn count_hom<B: BaseField>(e: &Tower<B>, l: &Subfield<B>, ctx: &SplittingContext<B>) -> Result<usize> {
    Ok(hom_set(e, l, ctx)?.len())
}

/// A K-embedding of a subfield `K(γ_1, ..., γ_r)` of E into N, stored as
/// images of the subfield's generators.
#[derive(Clone, Debug)]
pub struct SubfieldMap<B: BaseField> {
    domain: Subfield<B>,
    images: Vec<Element<B>>,
    basis_images: Vec<Element<B>>,
}

impl<B: BaseField> SubfieldMap<B> {
    fn new(domain: Subfield<B>, images: Vec<Element<B>>, n: &Tower<B>) -> Self {
        let basis_images = domain
            .words()
            .iter()
            .map(|w| w.iter().zip(&images).fold(n.one(), |acc, (&k, g)| n.mul(&acc, &n.pow(g, k as u64))))
            .collect();
        Self { domain, images, basis_images }
    }

    pub fn domain(&self) -> &Subfield<B> {
        &self.domain
    }

    pub fn images(&self) -> &[Element<B>] {
        &self.images
    }

    /// Image of an element of the domain subfield, `None` outside it.
    pub fn apply(&self, a: &Element<B>, n: &Tower<B>) -> Option<Element<B>> {
        let c = self.domain.coordinates(a)?;
        let mut acc = n.zero();
        for (ci, img) in c.iter().zip(&self.basis_images) {
            acc = n.add(&acc, &n.scale(ci, img));
        }
        Some(acc)
    }
}

/// Embeddings of `upper` into N that fix `lower` pointwise, found by chasing
/// the generators of `upper` one at a time through their minimal
/// polynomials over the part already mapped.
pub fn restricted_homs<B: BaseField>(
    lower: &Subfield<B>,
    upper: &Subfield<B>,
    ctx: &SplittingContext<B>,
) -> Result<Vec<SubfieldMap<B>>> {
    let e = upper.ambient();
    let n = ctx.field();
    ctx.check_domain(e)?;
    if !lower.is_subfield_of(upper) {
        return Err(AlgebraError::Precondition("lower field is not contained in the upper one".into()));
    }
    let start_gens = lower.generators().to_vec();
    let start_imgs: Vec<Element<B>> = start_gens.iter().map(|g| ctx.lift(e, g)).collect();
    let mut partial = vec![SubfieldMap::new(Subfield::generated(e, &start_gens), start_imgs, n)];
    for gamma in upper.generators() {
        let current = partial[0].domain().clone();
        if current.contains(gamma) {
            continue;
        }
        let h = minimal_polynomial(gamma, &current);
        let pool = ctx.roots_of(&minimal_polynomial_over_base(e, gamma))?;
        let next_domain = current.adjoin(std::slice::from_ref(gamma));
        let mut next = Vec::new();
        for phi in &partial {
            let mapped = h.map_into(n, |c| phi.apply(c, n).expect("coefficient in the mapped subfield"));
            for r in pool.iter().filter(|r| n.is_zero(&mapped.eval(r))) {
                let mut images = phi.images().to_vec();
                images.push(r.clone());
                next.push(SubfieldMap::new(next_domain.clone(), images, n));
            }
        }
        if next.is_empty() {
            return Err(AlgebraError::ContextTooSmall("a generator has no admissible image".into()));
        }
        partial = next;
    }
    Ok(partial)
}

/// Counts in the tower formula `|Hom_A(M)| = |Hom_L(M)| * |Hom_A(L)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TowerAudit {
    pub hom_k_top: usize,
    pub hom_l_top: usize,
    pub hom_k_l: usize,
    pub degree_top: usize,
    pub degree_l: usize,
}

impl TowerAudit {
    pub fn formula_holds(&self) -> bool {
        self.hom_k_top == self.hom_l_top * self.hom_k_l
    }

    pub fn bounded_by_degree(&self) -> bool {
        self.hom_k_top <= self.degree_top
    }
}

/// Enumerates the three embedding sets of `K ⊆ L ⊆ M` independently.
pub fn tower_audit<B: BaseField>(
    l: &Subfield<B>,
    m: &Subfield<B>,
    ctx: &SplittingContext<B>,
) -> Result<TowerAudit> {
    chain_audit(&Subfield::base(m.ambient()), l, m, ctx)
}

/// [`tower_audit`] with an arbitrary bottom field `A ⊆ L ⊆ M`; degrees are
/// taken over A.
pub fn chain_audit<B: BaseField>(
    a: &Subfield<B>,
    l: &Subfield<B>,
    m: &Subfield<B>,
    ctx: &SplittingContext<B>,
) -> Result<TowerAudit> {
    Ok(TowerAudit {
        hom_k_top: restricted_homs(a, m, ctx)?.len(),
        hom_l_top: restricted_homs(l, m, ctx)?.len(),
        hom_k_l: restricted_homs(a, l, ctx)?.len(),
        degree_top: m.degree() / a.degree(),
        degree_l: l.degree() / a.degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::PrimeField;
    use crate::ratfunc::RationalFunctionField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f16() -> Tower<PrimeField> {
        let cfg = FactorConfig::default();
        let k = Tower::base(PrimeField::new(2).unwrap());
        let f4 = k.make_extension(&Poly::from_ints(k.clone(), &[1, 1, 1]), "w", &cfg).unwrap();
        let w = f4.generator();
        let f = Poly::new(f4.clone(), vec![w, f4.one(), f4.one()]);
        f4.make_extension(&f, "v", &cfg).unwrap()
    }

    fn sqrt_t(p: u64) -> Tower<RationalFunctionField> {
        let kf = RationalFunctionField::new(PrimeField::new(p).unwrap());
        let k = Tower::base(kf);
        let f = Poly::new(k.clone(), vec![k.neg(&k.scalar(kf.t())), k.zero(), k.one()]);
        k.make_extension(&f, "s", &FactorConfig::default()).unwrap()
    }

    #[test]
    fn f4_embeddings() {
        let e = f16().parent().unwrap().clone();
        let ctx = SplittingContext::new(&e, &FactorConfig::default()).unwrap();
        let homs = hom_set(&e, &Subfield::base(&e), &ctx).unwrap();
        assert_eq!(homs.len(), 2);
        let w = e.generator();
        let frob = homs.iter().find(|h| h.apply(&w) != w).unwrap();
        assert_eq!(frob.apply(&w), e.add(&w, &e.one()));
        assert!(agree_on(&homs[0], &homs[1], &Subfield::base(&e)));
        assert!(!agree_on(&homs[0], &homs[1], &Subfield::whole(&e)));
    }

    #[test]
    fn fast_path_matches_generic() {
        let e = f16();
        let ctx = SplittingContext::new(&e, &FactorConfig::default()).unwrap();
        let mut fast: Vec<String> = hom_set_over_base(&e, &ctx).unwrap().iter().map(|h| h.describe()).collect();
        let mut slow: Vec<String> = hom_set_generic(&e, &ctx).unwrap().iter().map(|h| h.describe()).collect();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 4);
        let f4 = Subfield::generated(&e, &[e.generators()[0].clone()]);
        assert_eq!(count_hom(&e, &f4, &ctx).unwrap(), 2);
        let audit = tower_audit(&f4, &Subfield::whole(&e), &ctx).unwrap();
        assert_eq!((audit.hom_k_top, audit.hom_l_top, audit.hom_k_l), (4, 2, 2));
    }

    #[test]
    fn inseparable_square_root_has_one_embedding() {
        let e = sqrt_t(2);
        let ctx = SplittingContext::new(&e, &FactorConfig::default()).unwrap();
        assert_eq!(ctx.field().degree(), 2);
        assert_eq!(count_hom(&e, &Subfield::base(&e), &ctx).unwrap(), 1);
    }

    #[test]
    fn separable_square_root_and_extension() {
        let e = sqrt_t(3);
        let ctx = SplittingContext::new(&e, &FactorConfig::default()).unwrap();
        let homs = hom_set(&e, &Subfield::base(&e), &ctx).unwrap();
        assert_eq!(homs.len(), 2);
        let s = e.generator();
        for h in &homs {
            assert_eq!(h.apply(&e.mul(&s, &s)), e.scalar(e.base_field().t()));
        }
        let id = Embedding::from_images(&e.root(), ctx.field(), Vec::new());
        assert_eq!(extend_embedding(&id, &e, &ctx).unwrap().len(), 2);
    }

    #[test]
    fn splitting_field_of_a_quadratic() {
        let k = Tower::base(PrimeField::new(2).unwrap());
        let f = Poly::from_ints(PrimeField::new(2).unwrap(), &[1, 1, 1]);
        let ctx = SplittingContext::splitting_field(&k, &f, &FactorConfig::default()).unwrap();
        assert_eq!(ctx.field().degree(), 2);
        assert_eq!(ctx.roots_of(&f).unwrap().len(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn embeddings_are_ring_maps(seed in 0u64..1000) {
            let e = sqrt_t(3);
            let ctx = SplittingContext::new(&e, &FactorConfig::default()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = e.random_element(&mut rng, 2);
            let b = e.random_element(&mut rng, 2);
            let c = e.random_element(&mut rng, 2);
            let n = ctx.field();
            for h in hom_set_over_base(&e, &ctx).unwrap() {
                let lhs = h.apply(&e.add(&e.mul(&a, &b), &c));
                let rhs = n.add(&n.mul(&h.apply(&a), &h.apply(&b)), &h.apply(&c));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
