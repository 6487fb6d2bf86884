//! Separability of elements and extensions, decided three ways: by the
//! derivative of the minimal polynomial, by embeddings that separate an
//! element from intermediate fields, and by counting embeddings.

use num_bigint::BigUint;
use serde::Serialize;

use crate::base::BaseField;
use crate::embed::{hom_set, hom_set_over_base, Embedding, SplittingContext};
use crate::error::{AlgebraError, Result};
use crate::factor::{distinct_root_count, separable_decompose};
use crate::field::Field;
use crate::lattice::{canonical_chain, subfields_finite, subfields_separable, Completeness, SubfieldLattice};
use crate::linalg;
use crate::poly::Poly;
use crate::subfield::{element_degree, minimal_polynomial_over_base, Subfield};
use crate::tower::{Element, Tower};

/// The derivative criterion applied to one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeVerdict {
    pub degree: usize,
    pub distinct_roots: usize,
    /// `e` in `f = g(x^(p^e))`.
    pub exponent: u32,
    pub separable: bool,
}

/// Minimal polynomial over K has distinct roots.
pub fn is_separable_element<B: BaseField>(e: &Tower<B>, alpha: &Element<B>) -> DerivativeVerdict {
    let f = minimal_polynomial_over_base(e, alpha);
    let (_, exponent) = separable_decompose(&f);
    let distinct_roots = distinct_root_count(&f);
    DerivativeVerdict { degree: f.deg(), distinct_roots, exponent, separable: distinct_roots == f.deg() }
}

/// Two L-embeddings of E that differ on α.
pub fn separation_witness<B: BaseField>(
    alpha: &Element<B>,
    l: &Subfield<B>,
    ctx: &SplittingContext<B>,
) -> Result<Option<(Embedding<B>, Embedding<B>)>> {
    if l.contains(alpha) {
        return Err(AlgebraError::Precondition("the element lies in the subfield".into()));
    }
    let homs = hom_set(l.ambient(), l, ctx)?;
    let Some(first) = homs.first() else { return Ok(None) };
    let image = first.apply(alpha);
    Ok(homs.iter().find(|h| h.apply(alpha) != image).map(|h| (first.clone(), h.clone())))
}

/// Number of distinct images of α under `Hom_K(E, N)`, i.e. `|Hom_K(K(α), N)|`.
pub fn element_hom_count<B: BaseField>(e: &Tower<B>, alpha: &Element<B>, ctx: &SplittingContext<B>) -> Result<usize> {
    let mut images: Vec<Element<B>> = Vec::new();
    for h in hom_set_over_base(e, ctx)? {
        let img = h.apply(alpha);
        if !images.contains(&img) {
            images.push(img);
        }
    }
    Ok(images.len())
}

/// The subfield `K(α^(p^e))` that no pair of embeddings separates from α.
#[derive(Debug, Clone)]
pub struct CanonicalWitness<B: BaseField> {
    pub subfield: Subfield<B>,
    pub exponent: u32,
    pub alpha_outside: bool,
    /// Ordered pairs in `Hom_L(E, N)²` with different images of α.
    pub separating_pairs: usize,
}

impl<B: BaseField> CanonicalWitness<B> {
    pub fn holds(&self) -> bool {
        self.alpha_outside && self.separating_pairs == 0
    }
}

pub fn canonical_inseparable_witness<B: BaseField>(
    e: &Tower<B>,
    alpha: &Element<B>,
    ctx: &SplittingContext<B>,
) -> Result<CanonicalWitness<B>> {
    let f = minimal_polynomial_over_base(e, alpha);
    let (_, exponent) = separable_decompose(&f);
    if exponent == 0 {
        return Err(AlgebraError::Precondition("the element is separable".into()));
    }
    let p = e.characteristic();
    let q = BigUint::from(p).pow(exponent);
    let generator = e.pow_big(alpha, &q);
    let subfield = if e.scalar_part(&generator).is_some() {
        Subfield::base(e)
    } else {
        Subfield::generated(e, &[generator])
    };
    let homs = hom_set(e, &subfield, ctx)?;
    let images: Vec<Element<B>> = homs.iter().map(|h| h.apply(alpha)).collect();
    let separating_pairs = images.iter().flat_map(|a| images.iter().map(move |b| a != b)).filter(|&d| d).count();
    Ok(CanonicalWitness { alpha_outside: !subfield.contains(alpha), subfield, exponent, separating_pairs })
}

/// Which intermediate fields of `K(α)/K` the witness criterion quantified over.
#[derive(Debug, Clone)]
pub struct WitnessVerdict<B: BaseField> {
    pub separable: bool,
    pub completeness: Completeness,
    pub checked: usize,
    /// A subfield not containing α over which no pair separates α.
    pub failure: Option<Subfield<B>>,
    pub pair: Option<(Subfield<B>, Embedding<B>, Embedding<B>)>,
}

/// Intermediate fields of `K(α)/K` available for quantification.
pub fn subfields_of_simple<B: BaseField>(
    e: &Tower<B>,
    alpha: &Element<B>,
    ctx: &SplittingContext<B>,
) -> Result<SubfieldLattice<B>> {
    let ka = Subfield::generated(e, std::slice::from_ref(alpha));
    let d = ka.degree();
    let verdict = is_separable_element(e, alpha);
    let restrict = |l: SubfieldLattice<B>| -> Vec<Subfield<B>> {
        l.nodes().iter().filter(|n| n.is_subfield_of(&ka)).cloned().collect()
    };
    let (nodes, completeness) = if d == 1 || is_prime(d) {
        (vec![Subfield::base(e), ka.clone()], Completeness::Complete)
    } else if e.is_finite() {
        (restrict(subfields_finite(e, &Subfield::base(e))?), Completeness::Complete)
    } else if verdict.separable && hom_set_over_base(e, ctx)?.len() == e.degree() {
        match subfields_separable(e, ctx) {
            Ok(l) => (restrict(l), Completeness::Complete),
            Err(AlgebraError::Capability(_)) => (vec![Subfield::base(e), ka.clone()], Completeness::SoundOnly),
            Err(err) => return Err(err),
        }
    } else if !verdict.separable {
        (canonical_chain(e, alpha)?.nodes().to_vec(), Completeness::SoundOnly)
    } else {
        (vec![Subfield::base(e), ka.clone()], Completeness::SoundOnly)
    };
    Ok(SubfieldLattice::new(e, nodes, completeness))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// α is separable iff it can be separated from every intermediate field of
/// `K(α)/K` not containing it.
pub fn witness_criterion<B: BaseField>(
    e: &Tower<B>,
    alpha: &Element<B>,
    ctx: &SplittingContext<B>,
) -> Result<WitnessVerdict<B>> {
    let lattice = subfields_of_simple(e, alpha, ctx)?;
    let mut checked = 0;
    let mut pair = None;
    for l in lattice.nodes() {
        if l.contains(alpha) {
            continue;
        }
        checked += 1;
        match separation_witness(alpha, l, ctx)? {
            Some((phi, psi)) => {
                if pair.is_none() {
                    pair = Some((l.clone(), phi, psi));
                }
            }
            None => {
                return Ok(WitnessVerdict {
                    separable: false,
                    completeness: lattice.completeness(),
                    checked,
                    failure: Some(l.clone()),
                    pair: None,
                })
            }
        }
    }
    Ok(WitnessVerdict { separable: true, completeness: lattice.completeness(), checked, failure: None, pair })
}

/// `|Hom_K(E, N)|` against `[E:K]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomCount {
    pub hom_count: usize,
    pub degree: usize,
}

impl HomCount {
    pub fn separable(&self) -> bool {
        self.hom_count == self.degree
    }
}

pub fn hom_count_criterion<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<HomCount> {
    Ok(HomCount { hom_count: hom_set_over_base(e, ctx)?.len(), degree: e.degree() })
}

/// `|Hom_L(E, N)|` for every proper intermediate field L.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomGt1 {
    pub counts: Vec<(String, usize, usize)>,
    /// `Some(false)` as soon as one count is 1; `Some(true)` only when the
    /// lattice was complete.
    pub verdict: Option<bool>,
}

pub fn hom_gt1_criterion<B: BaseField>(
    e: &Tower<B>,
    lattice: &SubfieldLattice<B>,
    ctx: &SplittingContext<B>,
) -> Result<HomGt1> {
    let mut counts = Vec::new();
    let mut all = true;
    for l in lattice.proper_nodes() {
        let c = hom_set(e, l, ctx)?.len();
        all &= c > 1;
        counts.push((l.describe(), l.degree(), c));
    }
    let verdict = if !all {
        Some(false)
    } else if lattice.is_complete() {
        Some(true)
    } else {
        None
    };
    Ok(HomGt1 { counts, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct L1L2 {
    pub containment: bool,
    pub implication: bool,
}

impl L1L2 {
    pub fn equivalent(&self) -> bool {
        self.containment == self.implication
    }
}

/// `L1 ⊆ L2` against "agreeing on L2 forces agreeing on L1".
pub fn l1l2_check<B: BaseField>(l1: &Subfield<B>, l2: &Subfield<B>, ctx: &SplittingContext<B>) -> Result<L1L2> {
    let homs = hom_set_over_base(l1.ambient(), ctx)?;
    l1l2_with(l1, l2, &homs)
}

/// [`l1l2_check`] with a precomputed `Hom_K(E, N)`.
pub fn l1l2_with<B: BaseField>(l1: &Subfield<B>, l2: &Subfield<B>, homs: &[Embedding<B>]) -> Result<L1L2> {
    let on = |l: &Subfield<B>| -> Vec<Vec<Element<B>>> {
        homs.iter().map(|h| l.basis().iter().map(|b| h.apply(b)).collect()).collect()
    };
    let (a1, a2) = (on(l1), on(l2));
    let mut implication = true;
    for i in 0..homs.len() {
        for j in 0..homs.len() {
            if a2[i] == a2[j] && a1[i] != a1[j] {
                implication = false;
            }
        }
    }
    Ok(L1L2 { containment: l1.is_subfield_of(l2), implication })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub by_embeddings: bool,
    pub by_linear_algebra: bool,
}

/// Decides `α ∈ K(β)` from embeddings; requires a separable E/K.
pub fn membership_by_embeddings<B: BaseField>(
    alpha: &Element<B>,
    beta: &Element<B>,
    e: &Tower<B>,
    ctx: &SplittingContext<B>,
) -> Result<Membership> {
    let homs = hom_set_over_base(e, ctx)?;
    if homs.len() != e.degree() {
        return Err(AlgebraError::Precondition("the extension is not separable".into()));
    }
    let ia: Vec<Element<B>> = homs.iter().map(|h| h.apply(alpha)).collect();
    let ib: Vec<Element<B>> = homs.iter().map(|h| h.apply(beta)).collect();
    let by_embeddings = (0..homs.len()).all(|i| (0..homs.len()).all(|j| ib[i] != ib[j] || ia[i] == ia[j]));
    let by_linear_algebra = Subfield::generated(e, std::slice::from_ref(beta)).contains(alpha);
    Ok(Membership { by_embeddings, by_linear_algebra })
}

/// The separable closure of K in E.
#[derive(Debug, Clone)]
pub struct SeparableClosure<B: BaseField> {
    pub subfield: Subfield<B>,
    /// `[closure : K]`.
    pub degree: usize,
    /// `[E : closure]`, a power of p.
    pub inseparable_degree: usize,
}

/// Generated by `g^(p^e)` for every tower generator g, where `p^e` is the
/// inseparable exponent of its K-minimal polynomial: those elements are
/// separable, and E is purely inseparable over the field they generate.
pub fn separable_closure<B: BaseField>(e: &Tower<B>) -> SeparableClosure<B> {
    let p = e.characteristic();
    let gens: Vec<Element<B>> = e
        .generators()
        .iter()
        .map(|g| {
            let (_, k) = separable_decompose(&minimal_polynomial_over_base(e, g));
            e.pow_big(g, &BigUint::from(p).pow(k))
        })
        .filter(|g| e.scalar_part(g).is_none())
        .collect();
    let subfield = Subfield::generated(e, &gens);
    let degree = subfield.degree();
    SeparableClosure { subfield, degree, inseparable_degree: e.degree() / degree }
}

/// Candidate points `α + cβ` on the plane spanned by two generators.
#[derive(Debug, Clone)]
pub struct PrimitiveSearchPlan<B: BaseField> {
    pub alpha: Element<B>,
    pub beta: Element<B>,
    pub candidates: Vec<B::Elem>,
}

impl<B: BaseField> PrimitiveSearchPlan<B> {
    /// More than `[E:K]^2` distinct scalars from the fixed enumeration.
    pub fn new(e: &Tower<B>, alpha: Element<B>, beta: Element<B>) -> Self {
        let need = e.degree() * e.degree() + 1;
        let b = e.base_field();
        let candidates = (0..need as u64).map_while(|i| b.scalar(i)).collect();
        Self { alpha, beta, candidates }
    }
}

#[derive(Debug, Clone)]
pub struct PrimitiveElement<B: BaseField> {
    pub element: Element<B>,
    pub minpoly: Poly<B>,
    /// Candidates examined before acceptance, over all steps.
    pub candidates_tried: usize,
}

/// An element γ with `E = K(γ)`, for separable E/K.
pub fn primitive_element<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<PrimitiveElement<B>> {
    if hom_set_over_base(e, ctx)?.len() != e.degree() {
        return Err(AlgebraError::Precondition("the extension is not separable".into()));
    }
    let (element, tried) = if e.is_finite() { primitive_finite(e)? } else { primitive_infinite(e)? };
    let minpoly = minimal_polynomial_over_base(e, &element);
    if power_rank(e, &element) != e.degree() || minpoly.deg() != e.degree() {
        return Err(AlgebraError::Internal("primitive element fails the degree check".into()));
    }
    Ok(PrimitiveElement { element, minpoly, candidates_tried: tried })
}

/// Rank of `1, γ, ..., γ^(n-1)`: an independent check that `K(γ) = E`.
pub fn power_rank<B: BaseField>(e: &Tower<B>, gamma: &Element<B>) -> usize {
    let mut powers = Vec::with_capacity(e.degree());
    let mut cur = e.one();
    for _ in 0..e.degree() {
        powers.push(cur.coords().to_vec());
        cur = e.mul(&cur, gamma);
    }
    linalg::rank(&e.base_field(), &powers)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Scans elements by their coordinate code and keeps the first one lying in
/// no maximal subfield: `γ^(p^(n/ℓ)) != γ` for each prime ℓ dividing n.
fn primitive_finite<B: BaseField>(e: &Tower<B>) -> Result<(Element<B>, usize)> {
    let n = e.degree();
    let p = e.characteristic();
    let b = e.base_field();
    let primes = prime_divisors(n);
    for code in 1u64.. {
        let mut c = code;
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            coords.push(b.scalar(c % p).unwrap());
            c /= p;
        }
        if c > 0 {
            break;
        }
        let gamma = Element::from_coords(coords);
        let escapes = primes.iter().all(|&l| {
            let q = BigUint::from(p).pow((n / l) as u32);
            e.pow_big(&gamma, &q) != gamma
        });
        if escapes {
            return Ok((gamma, code as usize));
        }
    }
    Err(AlgebraError::Internal("no primitive element found".into()))
}

/// Merges generators two at a time along `α + cβ`.
fn primitive_infinite<B: BaseField>(e: &Tower<B>) -> Result<(Element<B>, usize)> {
    let gens = e.generators();
    let mut gamma = gens.first().cloned().unwrap_or_else(|| e.one());
    let mut tried = 0;
    for beta in gens.iter().skip(1) {
        let target = Subfield::generated(e, &[gamma.clone(), beta.clone()]).degree();
        let plan = PrimitiveSearchPlan::new(e, gamma.clone(), beta.clone());
        let mut found = None;
        for c in &plan.candidates {
            tried += 1;
            let cand = e.add(&plan.alpha, &e.scale(c, &plan.beta));
            if element_degree(e, &cand) == target {
                found = Some(cand);
                break;
            }
        }
        gamma = found.ok_or_else(|| AlgebraError::Internal("candidate scalars exhausted".into()))?;
    }
    Ok((gamma, tried))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub lower: HomCount,
    pub upper: HomCount,
    pub total: HomCount,
}

impl Transitivity {
    /// `E/L` and `L/K` separable imply `E/K` separable.
    pub fn implication_holds(&self) -> bool {
        !(self.lower.separable() && self.upper.separable()) || self.total.separable()
    }
}

/// Separability of `L/K`, `E/L` and `E/K` for a stage L of the tower E.
pub fn transitivity_check<B: BaseField>(
    e: &Tower<B>,
    l: &Tower<B>,
    ctx: &SplittingContext<B>,
) -> Result<Transitivity> {
    if !l.is_ancestor_of(e) {
        return Err(AlgebraError::Precondition("L is not a stage of E".into()));
    }
    let lower = HomCount { hom_count: hom_set_over_base(l, ctx)?.len(), degree: l.degree() };
    let l_in_e = Subfield::generated(e, &l.generators().iter().map(|g| e.lift_from(l, g)).collect::<Vec<_>>());
    let upper = HomCount { hom_count: hom_set(e, &l_in_e, ctx)?.len(), degree: e.degree() / l.degree() };
    let total = hom_count_criterion(e, ctx)?;
    Ok(Transitivity { lower, upper, total })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetCriterion {
    pub holds: bool,
    /// Indices into `Hom_K(E, N)` of the embeddings giving a nonzero determinant.
    pub chosen: Option<Vec<usize>>,
}

/// Some n embeddings σ with `det(σ_i(a_j)) != 0`.
pub fn det_criterion<B: BaseField>(a: &[Element<B>], e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<DetCriterion> {
    let vectors: Vec<Vec<B::Elem>> = a.iter().map(|x| x.coords().to_vec()).collect();
    if linalg::rank(&e.base_field(), &vectors) != a.len() {
        return Err(AlgebraError::Precondition("elements are linearly dependent".into()));
    }
    let homs = hom_set_over_base(e, ctx)?;
    let n = ctx.field();
    let k = a.len();
    let images: Vec<Vec<Element<B>>> = homs.iter().map(|h| a.iter().map(|x| h.apply(x)).collect()).collect();
    let mut chosen: Vec<usize> = (0..k).collect();
    if k > homs.len() {
        return Ok(DetCriterion { holds: false, chosen: None });
    }
    loop {
        let m: Vec<Vec<Element<B>>> = chosen.iter().map(|&i| images[i].clone()).collect();
        if !n.is_zero(&linalg::det(n, &m)) {
            return Ok(DetCriterion { holds: true, chosen: Some(chosen) });
        }
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(DetCriterion { holds: false, chosen: None });
            }
            i -= 1;
            if chosen[i] < homs.len() - k + i {
                break;
            }
        }
        chosen[i] += 1;
        for j in i + 1..k {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

/// Verdicts of the three criteria. `witness` is `None` when the
/// quantification over intermediate fields could not be made complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriteriaVerdicts {
    pub derivative: bool,
    pub hom_count: bool,
    pub witness: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Pair,
    CanonicalSubfield,
}

/// A separating pair over L, or the subfield `K(α^(p^e))` no pair separates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub kind: Option<WitnessKind>,
    /// Generators of L.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    /// `φ(α)` and `ψ(α)` for a pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparabilityReport {
    pub schema: u32,
    pub subject: String,
    pub degree: usize,
    pub hom_count: usize,
    pub separable: bool,
    pub criteria: CriteriaVerdicts,
    pub witness: WitnessSummary,
    pub closure_degree: Option<usize>,
    pub primitive: Option<String>,
    pub notes: Vec<String>,
}

fn generator_strings<B: BaseField>(l: &Subfield<B>) -> Vec<String> {
    l.generators().iter().map(|g| l.ambient().format_elem(g)).collect()
}

fn canonical_summary<B: BaseField>(
    e: &Tower<B>,
    alpha: &Element<B>,
    ctx: &SplittingContext<B>,
) -> Result<WitnessSummary> {
    let c = canonical_inseparable_witness(e, alpha, ctx)?;
    if !c.holds() {
        return Err(AlgebraError::Internal("canonical subfield separates the element".into()));
    }
    Ok(WitnessSummary {
        kind: Some(WitnessKind::CanonicalSubfield),
        generators: Some(generator_strings(&c.subfield)),
        element: Some(e.format_elem(alpha)),
        exponent: Some(c.exponent),
        ..Default::default()
    })
}

fn witness_verdict<B: BaseField>(w: &WitnessVerdict<B>) -> Option<bool> {
    match (w.separable, w.completeness) {
        (false, _) => Some(false),
        (true, Completeness::Complete) => Some(true),
        (true, Completeness::SoundOnly) => None,
    }
}

fn check_agreement(criteria: &CriteriaVerdicts) -> Result<()> {
    let w = criteria.witness.unwrap_or(criteria.derivative);
    if criteria.derivative != criteria.hom_count || criteria.derivative != w {
        return Err(AlgebraError::Internal(format!("criteria disagree: {criteria:?}")));
    }
    Ok(())
}

/// All three criteria for one element α over K.
pub fn report_element<B: BaseField>(
    e: &Tower<B>,
    alpha: &Element<B>,
    ctx: &SplittingContext<B>,
) -> Result<SeparabilityReport> {
    let d = is_separable_element(e, alpha);
    let hom_count = element_hom_count(e, alpha, ctx)?;
    let w = witness_criterion(e, alpha, ctx)?;
    let criteria = CriteriaVerdicts {
        derivative: d.separable,
        hom_count: hom_count == d.degree,
        witness: witness_verdict(&w),
    };
    check_agreement(&criteria)?;
    let witness = if !d.separable {
        canonical_summary(e, alpha, ctx)?
    } else if let Some((l, phi, psi)) = &w.pair {
        WitnessSummary {
            kind: Some(WitnessKind::Pair),
            generators: Some(generator_strings(l)),
            element: Some(e.format_elem(alpha)),
            images: Some(vec![ctx.field().format_elem(&phi.apply(alpha)), ctx.field().format_elem(&psi.apply(alpha))]),
            ..Default::default()
        }
    } else {
        WitnessSummary::default()
    };
    let mut notes = Vec::new();
    if w.completeness == Completeness::SoundOnly {
        notes.push("intermediate fields of K(a)/K not certified complete".into());
    }
    Ok(SeparabilityReport {
        schema: 1,
        subject: e.format_elem(alpha),
        degree: d.degree,
        hom_count,
        separable: d.separable,
        criteria,
        witness,
        closure_degree: None,
        primitive: None,
        notes,
    })
}

/// All three criteria for E/K, decided on the tower generators.
pub fn report_extension<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<SeparabilityReport> {
    let hc = hom_count_criterion(e, ctx)?;
    let gens = e.generators();
    let derivative = gens.iter().all(|g| is_separable_element(e, g).separable);
    let mut witness_all = Some(true);
    let mut witness = WitnessSummary::default();
    for g in &gens {
        let w = witness_criterion(e, g, ctx)?;
        match witness_verdict(&w) {
            Some(false) => {
                witness_all = Some(false);
                witness = canonical_summary(e, g, ctx)?;
                break;
            }
            None => witness_all = None,
            Some(true) => {}
        }
        if let (None, Some((l, phi, psi))) = (witness.kind, &w.pair) {
            witness = WitnessSummary {
                kind: Some(WitnessKind::Pair),
                generators: Some(generator_strings(l)),
                element: Some(e.format_elem(g)),
                images: Some(vec![ctx.field().format_elem(&phi.apply(g)), ctx.field().format_elem(&psi.apply(g))]),
                ..Default::default()
            };
        }
    }
    let criteria = CriteriaVerdicts { derivative, hom_count: hc.separable(), witness: witness_all };
    check_agreement(&criteria)?;
    let closure = separable_closure(e);
    let primitive = if derivative {
        let g = primitive_element(e, ctx)?;
        Some(e.format_elem(&g.element))
    } else {
        None
    };
    let mut notes = Vec::new();
    if witness_all.is_none() {
        notes.push("intermediate fields not certified complete for some generator".into());
    }
    if !derivative {
        notes.push(format!("[E:closure] = {}", closure.inseparable_degree));
    }
    Ok(SeparabilityReport {
        schema: 1,
        subject: e.describe(),
        degree: hc.degree,
        hom_count: hc.hom_count,
        separable: derivative,
        criteria,
        witness,
        closure_degree: Some(closure.degree),
        primitive,
        notes,
    })
}
