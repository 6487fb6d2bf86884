//! The builtin verification corpus: twelve checks, each an exact
//! computation with a pass/fail outcome.

use fieldsep::embed::{chain_audit, hom_set_over_base, tower_audit, SplittingContext};
use fieldsep::factor::{self, FactorConfig};
use fieldsep::lattice::{canonical_chain, subfields_finite, subfields_separable};
use fieldsep::separability::{
    canonical_inseparable_witness, det_criterion, hom_count_criterion, hom_gt1_criterion, is_separable_element,
    l1l2_with, power_rank, primitive_element, report_element, report_extension, separable_closure,
    transitivity_check,
};
use fieldsep::subfield::{element_degree, Subfield};
use fieldsep::{AlgebraError, BaseField, Element, Field, Poly, PrimeField, RationalFunctionField, Result, Tower};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::parse::{parse_tower, LoadedTower, TowerSpec};

/// Tower files shipped with the corpus, by name.
pub const TOWERS: &[(&str, &str)] = &[
    ("f4", include_str!("../corpus/f4.tower")),
    ("f16", include_str!("../corpus/f16.tower")),
    ("f27", include_str!("../corpus/f27.tower")),
    ("f81", include_str!("../corpus/f81.tower")),
    ("f729", include_str!("../corpus/f729.tower")),
    ("f4096", include_str!("../corpus/f4096.tower")),
    ("biquadratic", include_str!("../corpus/biquadratic.tower")),
    ("sqrt_t_3", include_str!("../corpus/sqrt_t_3.tower")),
    ("root_t_2", include_str!("../corpus/root_t_2.tower")),
    ("root_t_3", include_str!("../corpus/root_t_3.tower")),
    ("root_t_5", include_str!("../corpus/root_t_5.tower")),
    ("fourth_root_t", include_str!("../corpus/fourth_root_t.tower")),
    ("mixed", include_str!("../corpus/mixed.tower")),
    ("artin_schreier", include_str!("../corpus/artin_schreier.tower")),
    ("transitivity", include_str!("../corpus/transitivity.tower")),
];

pub fn tower_text(name: &str) -> &'static str {
    TOWERS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("corpus tower")
}

fn load(name: &str, cfg: &FactorConfig) -> Result<LoadedTower> {
    parse_tower(tower_text(name), cfg).map_err(|e| AlgebraError::Internal(format!("corpus tower {name}: {e}")))
}

pub fn finite(name: &str, cfg: &FactorConfig) -> Result<TowerSpec<PrimeField>> {
    match load(name, cfg)? {
        LoadedTower::Finite(s) => Ok(s),
        LoadedTower::Function(_) => Err(AlgebraError::Internal(format!("{name} is not finite"))),
    }
}

pub fn function(name: &str, cfg: &FactorConfig) -> Result<TowerSpec<RationalFunctionField>> {
    match load(name, cfg)? {
        LoadedTower::Function(s) => Ok(s),
        LoadedTower::Finite(_) => Err(AlgebraError::Internal(format!("{name} is finite"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const NAMES: [&str; 12] = [
    "factorization oracle equivalence",
    "tower formula for embedding counts",
    "criteria equivalence",
    "canonical inseparability witness",
    "containment versus agreement of embeddings",
    "more than one embedding over every proper subfield",
    "primitive element",
    "embedding count equals degree",
    "separable closure",
    "transitivity",
    "determinant criterion",
    "determinism",
];

/// Runs one criterion by number (1 to 12).
pub fn run_criterion(id: u32, cfg: &FactorConfig) -> CriterionResult {
    let outcome = match id {
        1 => factorization_oracle(cfg),
        2 => tower_formula(cfg),
        3 => criteria_equivalence(cfg),
        4 => canonical_witness(cfg),
        5 => containment_agreement(cfg),
        6 => hom_gt1(cfg),
        7 => primitive(cfg),
        8 => hom_count_equals_degree(cfg),
        9 => closure(cfg),
        10 => transitivity(cfg),
        11 => determinant(cfg),
        12 => determinism(cfg),
        _ => Err(AlgebraError::Precondition(format!("no criterion {id}"))),
    };
    let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name: NAMES.get(id as usize - 1).copied().unwrap_or("unknown"), pass, detail }
}

pub fn run_all(cfg: &FactorConfig) -> Vec<CriterionResult> {
    (1..=12).map(|id| run_criterion(id, cfg)).collect()
}

type Outcome = Result<(bool, String)>;

/// Every monic polynomial of the given degree over F_p.
fn monic_polys(fp: PrimeField, degree: usize) -> Vec<Poly<PrimeField>> {
    let p = fp.p();
    let count = p.pow(degree as u32);
    (0..count)
        .map(|code| {
            let mut cs: Vec<u64> = (0..degree).map(|i| (code / p.pow(i as u32)) % p).collect();
            cs.push(1);
            Poly::new(fp, cs)
        })
        .collect()
}

/// Factorization by trial division with every monic polynomial of degree
/// up to half the remaining degree, smallest first.
fn trial_division(f: &Poly<PrimeField>) -> Vec<Poly<PrimeField>> {
    let fp = *f.field();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap_or(0) {
        let mut divided = false;
        for g in monic_polys(fp, d) {
            if let Some(q) = rest.exact_div(&g) {
                out.push(g);
                rest = q;
                divided = true;
                break;
            }
        }
        if !divided {
            d += 1;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

fn sorted_strings(polys: impl IntoIterator<Item = Poly<PrimeField>>) -> Vec<String> {
    let mut v: Vec<String> = polys.into_iter().map(|q| q.to_string()).collect();
    v.sort();
    v
}

fn factorization_oracle(cfg: &FactorConfig) -> Outcome {
    let mut checked = 0;
    for p in [2, 3] {
        let fp = PrimeField::new(p)?;
        for degree in 1..=4 {
            for f in monic_polys(fp, degree) {
                let fac = factor::factor(&f, cfg)?;
                let product = fac.factors.iter().fold(Poly::one(fp), |acc, (q, m)| acc.mul(&q.pow(*m as u64)));
                if product != f {
                    return Ok((false, format!("product mismatch for {f}")));
                }
                let ours = sorted_strings(fac.factors.iter().flat_map(|(q, m)| std::iter::repeat(q.clone()).take(*m)));
                if ours != sorted_strings(trial_division(&f)) {
                    return Ok((false, format!("factors of {f} disagree with trial division")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} polynomials agree with trial division")))
}

/// Every chain `A ⊆ L ⊆ M` in a finite lattice; returns (audits, failures).
fn audit_all_chains<B: BaseField>(e: &Tower<B>, ctx: &SplittingContext<B>) -> Result<(usize, Vec<String>)> {
    let lattice = subfields_finite(e, &Subfield::base(e))?;
    let nodes = lattice.nodes();
    let mut count = 0;
    let mut failures = Vec::new();
    for a in nodes {
        for l in nodes.iter().filter(|l| a.is_subfield_of(l)) {
            for m in nodes.iter().filter(|m| l.is_subfield_of(m)) {
                let audit = chain_audit(a, l, m, ctx)?;
                count += 1;
                if !audit.formula_holds() || audit.hom_k_top != audit.degree_top {
                    failures.push(format!("{} ⊆ {} ⊆ {}: {audit:?}", a.degree(), l.degree(), m.degree()));
                }
            }
        }
    }
    Ok((count, failures))
}

fn tower_formula(cfg: &FactorConfig) -> Outcome {
    let mut count = 0;
    let mut failures = Vec::new();
    for name in ["f4096", "f729"] {
        let e = finite(name, cfg)?.top().clone();
        let ctx = SplittingContext::new(&e, cfg)?;
        let (c, f) = audit_all_chains(&e, &ctx)?;
        count += c;
        failures.extend(f);
    }
    let bq = function("biquadratic", cfg)?;
    let e = bq.top().clone();
    let ctx = SplittingContext::new(&e, cfg)?;
    let (s, u) = (bq.element("s").unwrap(), bq.element("u").unwrap());
    let whole = Subfield::whole(&e);
    for mid in [vec![s.clone()], vec![u.clone()], vec![e.mul(&s, &u)]] {
        let audit = tower_audit(&Subfield::generated(&e, &mid), &whole, &ctx)?;
        count += 1;
        if !audit.formula_holds() || audit.hom_k_top != 4 {
            failures.push(format!("biquadratic: {audit:?}"));
        }
    }
    let mx = function("mixed", cfg)?;
    let e = mx.top().clone();
    let ctx = SplittingContext::new(&e, cfg)?;
    let a = e.generator();
    let audit = tower_audit(&Subfield::generated(&e, &[e.mul(&a, &a)]), &Subfield::whole(&e), &ctx)?;
    count += 1;
    if !audit.formula_holds() || (audit.hom_k_top, audit.hom_l_top, audit.hom_k_l) != (2, 1, 2) {
        failures.push(format!("x^4 + x^2 + t: {audit:?}"));
    }
    let pass = failures.is_empty() && count >= 50;
    let detail = if failures.is_empty() {
        format!("{count} towers satisfy the formula exactly")
    } else {
        format!("{} of {count} towers fail: {}", failures.len(), failures.join("; "))
    };
    Ok((pass, detail))
}

/// Reports every element; `report_element` raises an internal error when
/// the criteria disagree.
fn check_elements<B: BaseField>(e: &Tower<B>, elements: &[Element<B>], ctx: &SplittingContext<B>) -> Result<usize> {
    for a in elements {
        let r = report_element(e, a, ctx)?;
        let w = r.criteria.witness.unwrap_or(r.criteria.derivative);
        if r.criteria.derivative != r.criteria.hom_count || w != r.criteria.derivative {
            return Err(AlgebraError::Internal(format!("criteria disagree on {}", e.format_elem(a))));
        }
    }
    Ok(elements.len())
}

fn all_elements(e: &Tower<PrimeField>) -> Vec<Element<PrimeField>> {
    let p = e.characteristic();
    let n = e.degree() as u32;
    (0..p.pow(n))
        .map(|code| Element::from_coords((0..n).map(|i| (code / p.pow(i)) % p).collect()))
        .collect()
}

fn criteria_equivalence(cfg: &FactorConfig) -> Outcome {
    let mut checked = 0;
    for name in ["f16", "f27"] {
        let e = finite(name, cfg)?.top().clone();
        let ctx = SplittingContext::new(&e, cfg)?;
        checked += check_elements(&e, &all_elements(&e), &ctx)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for name in [
        "root_t_2",
        "root_t_3",
        "root_t_5",
        "fourth_root_t",
        "mixed",
        "artin_schreier",
        "sqrt_t_3",
        "biquadratic",
        "transitivity",
    ] {
        let e = function(name, cfg)?.top().clone();
        let ctx = SplittingContext::new(&e, cfg)?;
        let mut elements = e.generators();
        elements.extend((0..20).map(|_| e.random_element(&mut rng, 1)));
        checked += check_elements(&e, &elements, &ctx)?;
    }
    Ok((true, format!("derivative, witness and embedding-count verdicts agree on {checked} elements")))
}

fn canonical_witness(cfg: &FactorConfig) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for name in ["root_t_2", "root_t_3", "root_t_5", "fourth_root_t", "mixed"] {
        let e = function(name, cfg)?.top().clone();
        let ctx = SplittingContext::new(&e, cfg)?;
        let w = canonical_inseparable_witness(&e, &e.generator(), &ctx)?;
        pass &= w.holds();
        lines.push(format!(
            "{name}: [L:K] = {}, a outside L: {}, separating pairs: {}",
            w.subfield.degree(),
            w.alpha_outside,
            w.separating_pairs
        ));
    }
    Ok((pass, lines.join("; ")))
}

fn containment_agreement(cfg: &FactorConfig) -> Outcome {
    let e = finite("f4096", cfg)?.top().clone();
    let ctx = SplittingContext::new(&e, cfg)?;
    let homs = hom_set_over_base(&e, &ctx)?;
    let lattice = subfields_finite(&e, &Subfield::base(&e))?;
    let mut pairs = 0;
    let mut exceptions = 0;
    for l1 in lattice.nodes() {
        for l2 in lattice.nodes() {
            pairs += 1;
            if !l1l2_with(l1, l2, &homs)?.equivalent() {
                exceptions += 1;
            }
        }
    }
    let r = function("root_t_2", cfg)?.top().clone();
    let rctx = SplittingContext::new(&r, cfg)?;
    let rhoms = hom_set_over_base(&r, &rctx)?;
    let converse = l1l2_with(&Subfield::whole(&r), &Subfield::base(&r), &rhoms)?;
    let pass = pairs == 36 && exceptions == 0 && !converse.equivalent();
    Ok((
        pass,
        format!(
            "F_4096: {pairs} pairs, {exceptions} exceptions; t^(1/2) with L1 = E, L2 = K: containment {}, implication {}",
            converse.containment, converse.implication
        ),
    ))
}

fn hom_gt1(cfg: &FactorConfig) -> Outcome {
    let e = finite("f4096", cfg)?.top().clone();
    let ctx = SplittingContext::new(&e, cfg)?;
    let big = hom_gt1_criterion(&e, &subfields_finite(&e, &Subfield::base(&e))?, &ctx)?;
    let bq = function("biquadratic", cfg)?.top().clone();
    let bctx = SplittingContext::new(&bq, cfg)?;
    let quad = hom_gt1_criterion(&bq, &subfields_separable(&bq, &bctx)?, &bctx)?;
    let r = function("root_t_2", cfg)?.top().clone();
    let rctx = SplittingContext::new(&r, cfg)?;
    let root = hom_gt1_criterion(&r, &canonical_chain(&r, &r.generator())?, &rctx)?;
    let fails_at_k = root.counts.iter().any(|(_, d, c)| *d == 1 && *c == 1);
    let pass = big.verdict == Some(true) && quad.verdict == Some(true) && root.verdict == Some(false) && fails_at_k;
    let min = |v: &fieldsep::separability::HomGt1| v.counts.iter().map(|c| c.2).min().unwrap_or(0);
    Ok((
        pass,
        format!(
            "F_4096: {} proper subfields, least count {}; biquadratic: {} proper subfields, least count {}; t^(1/2): count 1 over K",
            big.counts.len(),
            min(&big),
            quad.counts.len(),
            min(&quad)
        ),
    ))
}

fn primitive(cfg: &FactorConfig) -> Outcome {
    let bq = function("biquadratic", cfg)?.top().clone();
    let ctx = SplittingContext::new(&bq, cfg)?;
    let g = primitive_element(&bq, &ctx)?;
    let mut pass = g.minpoly.degree() == Some(4) && g.candidates_tried <= 20 && power_rank(&bq, &g.element) == 4;
    pass &= element_degree(&bq, &g.element) == 4;
    let mut detail = format!("biquadratic: {} after {} candidates", bq.format_elem(&g.element), g.candidates_tried);
    for name in ["f16", "f81"] {
        let e = finite(name, cfg)?.top().clone();
        let ctx = SplittingContext::new(&e, cfg)?;
        let g = primitive_element(&e, &ctx)?;
        pass &= g.minpoly.degree() == Some(e.degree()) && power_rank(&e, &g.element) == e.degree();
        detail.push_str(&format!("; {name}: {} with minimal polynomial {}", e.format_elem(&g.element), g.minpoly));
    }
    Ok((pass, detail))
}

fn hom_count_equals_degree(cfg: &FactorConfig) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["f4", "f16", "f27", "f81", "f729", "f4096"] {
        let e = finite(name, cfg)?.top().clone();
        let h = hom_count_criterion(&e, &SplittingContext::new(&e, cfg)?)?;
        pass &= h.separable();
        parts.push(format!("{name} {}/{}", h.hom_count, h.degree));
    }
    for name in ["biquadratic", "sqrt_t_3", "transitivity", "artin_schreier"] {
        let e = function(name, cfg)?.top().clone();
        let h = hom_count_criterion(&e, &SplittingContext::new(&e, cfg)?)?;
        pass &= h.separable();
        parts.push(format!("{name} {}/{}", h.hom_count, h.degree));
    }
    for (name, expected) in [("root_t_2", (1, 2)), ("mixed", (2, 4))] {
        let e = function(name, cfg)?.top().clone();
        let h = hom_count_criterion(&e, &SplittingContext::new(&e, cfg)?)?;
        pass &= (h.hom_count, h.degree) == expected;
        parts.push(format!("{name} {}/{}", h.hom_count, h.degree));
    }
    Ok((pass, parts.join(", ")))
}

fn closure(cfg: &FactorConfig) -> Outcome {
    let e = function("mixed", cfg)?.top().clone();
    let a = e.generator();
    let c = separable_closure(&e);
    let expected = Subfield::generated(&e, &[e.mul(&a, &a)]);
    let mut pass = c.degree == 2 && c.inseparable_degree == 2 && c.subfield.same_as(&expected);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = e.base_field();
    let sample_closure = |rng: &mut ChaCha8Rng| {
        c.subfield.basis().iter().fold(e.zero(), |acc, v| e.add(&acc, &e.scale(&b.random_scalar(rng, 1), v)))
    };
    let mut law_failures = 0;
    for _ in 0..100 {
        let (x, y) = (sample_closure(&mut rng), sample_closure(&mut rng));
        for z in [e.add(&x, &y), e.mul(&x, &y)] {
            if !is_separable_element(&e, &z).separable {
                law_failures += 1;
            }
        }
    }
    let mut outside = 0;
    let mut outside_failures = 0;
    while outside < 20 {
        let z = e.random_element(&mut rng, 1);
        if c.subfield.contains(&z) {
            continue;
        }
        outside += 1;
        if is_separable_element(&e, &z).separable {
            outside_failures += 1;
        }
    }
    pass &= law_failures == 0 && outside_failures == 0;
    Ok((
        pass,
        format!(
            "[closure:K] = {}, [E:closure] = {}; sums and products: {law_failures} failures in 200; outside the closure: {outside_failures} separable of 20",
            c.degree, c.inseparable_degree
        ),
    ))
}

fn transitivity(cfg: &FactorConfig) -> Outcome {
    let f16 = finite("f16", cfg)?;
    let e = f16.top().clone();
    let t1 = transitivity_check(&e, &f16.stages[1], &SplittingContext::new(&e, cfg)?)?;
    let tt = function("transitivity", cfg)?;
    let e = tt.top().clone();
    let t2 = transitivity_check(&e, &tt.stages[1], &SplittingContext::new(&e, cfg)?)?;
    let ok = |t: &fieldsep::separability::Transitivity| {
        t.lower.separable()
            && t.upper.separable()
            && t.total.separable()
            && t.total.hom_count == 4
            && t.total.hom_count == t.lower.hom_count * t.upper.hom_count
    };
    Ok((
        ok(&t1) && ok(&t2),
        format!(
            "F_2 ⊂ F_4 ⊂ F_16: {} = {}·{}; F_3(t) ⊂ K(s) ⊂ K(s, r): {} = {}·{}",
            t1.total.hom_count,
            t1.lower.hom_count,
            t1.upper.hom_count,
            t2.total.hom_count,
            t2.lower.hom_count,
            t2.upper.hom_count
        ),
    ))
}

fn determinant(cfg: &FactorConfig) -> Outcome {
    let f4 = finite("f4", cfg)?.top().clone();
    let d1 = det_criterion(&[f4.one(), f4.generator()], &f4, &SplittingContext::new(&f4, cfg)?)?;
    let bq = function("biquadratic", cfg)?.top().clone();
    let basis: Vec<Element<_>> = (0..bq.degree()).map(|j| bq.basis_element(j)).collect();
    let d2 = det_criterion(&basis, &bq, &SplittingContext::new(&bq, cfg)?)?;
    let r = function("root_t_2", cfg)?.top().clone();
    let d3 = det_criterion(&[r.one(), r.generator()], &r, &SplittingContext::new(&r, cfg)?)?;
    Ok((
        d1.holds && d2.holds && !d3.holds,
        format!("F_4 (1, w): {}; biquadratic basis: {}; (1, t^(1/2)): {}", d1.holds, d2.holds, d3.holds),
    ))
}

/// JSON for every corpus tower, as printed by `check --json`.
pub fn corpus_reports(cfg: &FactorConfig) -> Result<String> {
    let mut out = String::new();
    for (name, _) in TOWERS {
        let text = match load(name, cfg)? {
            LoadedTower::Finite(s) => report_json(s.top(), cfg)?,
            LoadedTower::Function(s) => report_json(s.top(), cfg)?,
        };
        out.push_str(&text);
        out.push('\n');
    }
    Ok(out)
}

fn report_json<B: BaseField>(e: &Tower<B>, cfg: &FactorConfig) -> Result<String> {
    let ctx = SplittingContext::new(e, cfg)?;
    let r = report_extension(e, &ctx)?;
    serde_json::to_string(&r).map_err(|err| AlgebraError::Internal(err.to_string()))
}

/// Two independent runs over the corpus print the same bytes.
fn determinism(cfg: &FactorConfig) -> Outcome {
    let first = corpus_reports(cfg)?;
    let second = corpus_reports(cfg)?;
    Ok((first == second, format!("{} bytes of reports, identical across runs: {}", first.len(), first == second)))
}
