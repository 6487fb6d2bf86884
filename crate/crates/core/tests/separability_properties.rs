use fieldsep::embed::{agree_on, hom_set_over_base, SplittingContext};
use fieldsep::factor::distinct_root_count;
use fieldsep::lattice::{canonical_chain, subfields_separable};
use fieldsep::linalg;
use fieldsep::separability::{
    det_criterion, is_separable_element, l1l2_with, power_rank, primitive_element, report_element,
    separable_closure, witness_criterion,
};
use fieldsep::subfield::{minimal_polynomial, Subfield};
use fieldsep::{BaseField, Element, FactorConfig, Field, FunctionTower, Poly, PrimeField, RationalFunctionField, Tower};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rff(p: u64) -> RationalFunctionField {
    RationalFunctionField::new(PrimeField::new(p).unwrap())
}

/// Adjoins a root of `x^2 + b x + c` to `k`.
fn quadratic(k: &FunctionTower, b: Element<RationalFunctionField>, c: Element<RationalFunctionField>, name: &str) -> FunctionTower {
    k.make_extension(&Poly::new(k.clone(), vec![c, b, k.one()]), name, &FactorConfig::default()).unwrap()
}

fn t_in(k: &FunctionTower) -> Element<RationalFunctionField> {
    k.scalar(k.base_field().t())
}

fn sqrt_t(p: u64) -> FunctionTower {
    let k = Tower::base(rff(p));
    quadratic(&k, k.zero(), k.neg(&t_in(&k)), "s")
}

fn biquadratic() -> FunctionTower {
    let s = sqrt_t(3);
    let c = s.neg(&s.add(&t_in(&s), &s.one()));
    quadratic(&s, s.zero(), c, "u")
}

/// Root of `x^4 + x^2 + t` over F_2(t).
fn mixed() -> FunctionTower {
    let k = Tower::base(rff(2));
    let f = Poly::new(k.clone(), vec![t_in(&k), k.zero(), k.one(), k.zero(), k.one()]);
    k.make_extension(&f, "a", &FactorConfig::default()).unwrap()
}

fn context(e: &FunctionTower) -> SplittingContext<RationalFunctionField> {
    SplittingContext::new(e, &FactorConfig::default()).unwrap()
}

#[test]
fn separating_pairs_are_sound() {
    let e = biquadratic();
    let ctx = context(&e);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = e.random_element(&mut rng, 1);
        let w = witness_criterion(&e, &a, &ctx).unwrap();
        if let Some((l, phi, psi)) = w.pair {
            assert!(agree_on(&phi, &psi, &l));
            assert_ne!(phi.apply(&a), psi.apply(&a));
            assert!(!l.contains(&a));
        }
    }
}

#[test]
fn verdict_does_not_depend_on_the_ambient_tower() {
    let small = sqrt_t(3);
    let big = biquadratic();
    let s_small = small.generator();
    let s_big = big.lift_from(&small, &s_small);
    assert_eq!(is_separable_element(&small, &s_small), is_separable_element(&big, &s_big));

    // t^(1/2) over F_2(t), alone and under an Artin-Schreier stage
    let r = sqrt_t(2);
    let top = quadratic(&r, r.one(), t_in(&r), "b");
    let a = r.generator();
    let lifted = top.lift_from(&r, &a);
    assert_eq!(is_separable_element(&r, &a), is_separable_element(&top, &lifted));
    assert!(!is_separable_element(&top, &lifted).separable);
}

#[test]
fn separable_over_k_stays_separable_over_every_subfield() {
    let e = biquadratic();
    let ctx = context(&e);
    let lattice = subfields_separable(&e, &ctx).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..8 {
        let a = e.random_element(&mut rng, 1);
        assert!(is_separable_element(&e, &a).separable);
        for l in lattice.nodes() {
            let f = minimal_polynomial(&a, l);
            assert_eq!(distinct_root_count(&f), f.degree().unwrap());
        }
    }
}

#[test]
fn l1l2_equivalence_and_its_converse() {
    let e = biquadratic();
    let ctx = context(&e);
    let homs = hom_set_over_base(&e, &ctx).unwrap();
    let lattice = subfields_separable(&e, &ctx).unwrap();
    for l1 in lattice.nodes() {
        for l2 in lattice.nodes() {
            assert!(l1l2_with(l1, l2, &homs).unwrap().equivalent());
        }
    }
    let m = mixed();
    let mctx = context(&m);
    let mhoms = hom_set_over_base(&m, &mctx).unwrap();
    let chain = canonical_chain(&m, &m.generator()).unwrap();
    let violations = chain
        .nodes()
        .iter()
        .flat_map(|l1| chain.nodes().iter().map(move |l2| (l1, l2)))
        .filter(|(l1, l2)| !l1l2_with(l1, l2, &mhoms).unwrap().equivalent())
        .count();
    assert!(violations > 0);
}

#[test]
fn separable_closure_of_the_fourth_root() {
    let k = Tower::base(rff(2));
    let f = Poly::new(k.clone(), vec![k.neg(&t_in(&k)), k.zero(), k.zero(), k.zero(), k.one()]);
    let e = k.make_extension(&f, "a", &FactorConfig::default()).unwrap();
    let c = separable_closure(&e);
    assert_eq!((c.degree, c.inseparable_degree), (1, 4));
    let m = mixed();
    let c = separable_closure(&m);
    for b in c.subfield.basis() {
        assert!(is_separable_element(&m, b).separable);
    }
}

#[test]
fn primitive_element_generates() {
    let e = biquadratic();
    let ctx = context(&e);
    let g = primitive_element(&e, &ctx).unwrap();
    assert_eq!(power_rank(&e, &g.element), 4);
    assert!(Subfield::generated(&e, &[g.element.clone()]).same_as(&Subfield::whole(&e)));
    let fe = g.minpoly.map_into(&e, |c| e.scalar(c.clone()));
    assert!(e.is_zero(&fe.eval(&g.element)));
}

/// `a * M` for a K-matrix M given by rows.
fn transform<B: BaseField>(e: &Tower<B>, a: &[Element<B>], m: &[Vec<B::Elem>]) -> Vec<Element<B>> {
    (0..a.len())
        .map(|j| a.iter().zip(m).fold(e.zero(), |acc, (ai, row)| e.add(&acc, &e.scale(&row[j], ai))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn criteria_agree_on_random_elements(seed in any::<u64>(), which in 0usize..3) {
        let e = match which {
            0 => biquadratic(),
            1 => mixed(),
            _ => sqrt_t(5),
        };
        let ctx = context(&e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = e.random_element(&mut rng, 2);
        let r = report_element(&e, &a, &ctx).unwrap();
        prop_assert_eq!(r.criteria.derivative, r.criteria.hom_count);
        if let Some(w) = r.criteria.witness {
            prop_assert_eq!(w, r.criteria.derivative);
        }
    }

    #[test]
    fn sums_and_products_of_separable_elements(seed in any::<u64>()) {
        let e = biquadratic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (e.random_element(&mut rng, 1), e.random_element(&mut rng, 1));
        prop_assert!(is_separable_element(&e, &e.add(&a, &b)).separable);
        prop_assert!(is_separable_element(&e, &e.mul(&a, &b)).separable);
    }

    #[test]
    fn determinant_criterion_is_invariant_under_base_change(entries in proptest::collection::vec(0u64..3, 16)) {
        let e = biquadratic();
        let ctx = context(&e);
        let kf = e.base_field();
        let m: Vec<Vec<_>> = entries.chunks(4).map(|r| r.iter().map(|&c| kf.scalar(c).unwrap()).collect()).collect();
        prop_assume!(linalg::rank(&kf, &m) == 4);
        let basis: Vec<_> = (0..4).map(|j| e.basis_element(j)).collect();
        prop_assert!(det_criterion(&transform(&e, &basis, &m), &e, &ctx).unwrap().holds);
    }

    #[test]
    fn determinant_criterion_fails_for_every_basis_of_the_root(entries in proptest::collection::vec(0u64..2, 4)) {
        let r = sqrt_t(2);
        let ctx = context(&r);
        let kf = r.base_field();
        let m: Vec<Vec<_>> = entries.chunks(2).map(|row| row.iter().map(|&c| kf.scalar(c).unwrap()).collect()).collect();
        prop_assume!(linalg::rank(&kf, &m) == 2);
        let pair = [r.one(), r.generator()];
        prop_assert!(!det_criterion(&transform(&r, &pair, &m), &r, &ctx).unwrap().holds);
    }
}
