use fieldsep::factor::is_irreducible;
use fieldsep::{FactorConfig, Field, Poly, PrimeField};
use fieldsep_cli::corpus::TOWERS;
use fieldsep_cli::parse::{parse_tower, LoadError, LoadedTower};
use proptest::prelude::*;

fn load(text: &str) -> Result<LoadedTower, LoadError> {
    parse_tower(text, &FactorConfig::default())
}

#[test]
fn f4_and_biquadratic() {
    let LoadedTower::Finite(f4) = load("base Fp 2\ngen w : x^2 + x + 1").unwrap() else { panic!() };
    assert_eq!(f4.top().degree(), 2);
    let LoadedTower::Function(bq) = load("base FpT 3\ngen s : x^2 - t\ngen u : x^2 - (t+1)").unwrap() else {
        panic!()
    };
    assert_eq!(bq.top().degree(), 4);
    assert_eq!(bq.top().describe(), "F_3(t)(s)(u)");
}

#[test]
fn reducible_minpoly_reports_factor() {
    let err = load("base FpT 2\ngen s : x^2 - t^2").unwrap_err();
    assert_eq!(err, LoadError::Reducible { line: 2, name: "s".into(), factor: "x + t".into() });
}

#[test]
fn positional_errors() {
    match load("base Fp 3\n\ngen a : x^3 - x + 1\nelem b = a * c").unwrap_err() {
        LoadError::UnknownIdentifier { line, column, name } => assert_eq!((line, column, name.as_str()), (4, 14, "c")),
        e => panic!("{e}"),
    }
    match load("base Fp 2\ngen w : x^2 + $").unwrap_err() {
        LoadError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 15)),
        e => panic!("{e}"),
    }
    assert!(matches!(load("gen w : x^2 + x + 1"), Err(LoadError::Syntax { line: 1, .. })));
    assert!(matches!(load("base Fp 4"), Err(LoadError::Algebra { line: 1, .. })));
    assert!(matches!(load("base Fp 2\ngen w : x^2 + x + 1\ngen w : x^2 + x + w"), Err(LoadError::Syntax { .. })));
    assert!(matches!(load("base Fp 2\nelem a = x"), Err(LoadError::UnknownIdentifier { .. })));
    assert!(matches!(load("base Fp 2\ngen t : x^2 + x + 1"), Err(LoadError::Syntax { .. })));
}

#[test]
fn comments_whitespace_and_elements() {
    let text = "# a comment\n  base   FpT 3  # trailing\n\ngen s:x^2-t\nelem a = (s + 1)/t\nelem b = a^2 - 2a";
    let LoadedTower::Function(spec) = load(text).unwrap() else { panic!() };
    let e = spec.top();
    let a = spec.element("a").unwrap();
    let t = e.scalar(e.base_field().t());
    assert_eq!(e.mul(&a, &t), e.add(&spec.element("s").unwrap(), &e.one()));
    let b = spec.element("b").unwrap();
    assert_eq!(b, e.sub(&e.mul(&a, &a), &e.add(&a, &a)));
}

#[test]
fn division_by_zero_is_an_input_error() {
    assert!(matches!(load("base Fp 5\ngen a : x^2 - 2\nelem b = 1/(a - a)"), Err(LoadError::Algebra { line: 3, .. })));
}

#[test]
fn corpus_round_trips() {
    for (name, text) in TOWERS {
        let once = load(text).unwrap().to_text();
        let twice = load(&once).unwrap().to_text();
        assert_eq!(once, twice, "{name}");
    }
}

proptest! {
    #[test]
    fn random_cubics_round_trip(cs in proptest::collection::vec(0u64..5, 3)) {
        let fp = PrimeField::new(5).unwrap();
        let mut coeffs = cs.clone();
        coeffs.push(1);
        let f = Poly::new(fp, coeffs);
        let text = format!("base Fp 5\ngen a : {f}\nelem b = a^2 + 3*a\n");
        let irreducible = is_irreducible(&f, &FactorConfig::default()).unwrap();
        match load(&text) {
            Ok(loaded) => {
                prop_assert!(irreducible);
                let printed = loaded.to_text();
                let LoadedTower::Finite(again) = load(&printed).unwrap() else { panic!() };
                let LoadedTower::Finite(orig) = loaded else { panic!() };
                prop_assert_eq!(again.top().minpoly().unwrap().coeffs(), orig.top().minpoly().unwrap().coeffs());
                prop_assert_eq!(again.element("b"), orig.element("b"));
            }
            Err(LoadError::Reducible { .. }) => prop_assert!(!irreducible),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
