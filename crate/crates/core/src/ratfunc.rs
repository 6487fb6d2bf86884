//! The rational function field F_p(t) with canonical reduced fractions.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::field::{Field, PerfectionOracle};
use crate::poly::Poly;
use crate::prime::PrimeField;

/// Polynomials in `t` over F_p.
pub type FpPoly = Poly<PrimeField>;

/// A reduced fraction `num / den` with `den` monic and coprime to `num`.
/// Zero is `0/1`, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", format_ratfunc(self))
    }
}

impl std::hash::Hash for RatFunc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.coeffs().hash(state);
        self.den.coeffs().hash(state);
    }
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize(num, den))
    }

    fn normalize(num: FpPoly, den: FpPoly) -> Self {
        let fp = *num.field();
        if num.is_zero() {
            return Self { num, den: Poly::one(fp) };
        }
        let g = num.gcd(&den).expect("nonzero operands");
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc_inv = fp.inv(den.leading().unwrap()).unwrap();
        Self { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let den = Poly::one(*num.field());
        Self { num, den }
    }

    pub fn constant(fp: PrimeField, c: u64) -> Self {
        Self::from_poly(Poly::constant(fp, fp.from_u64(c)))
    }

    pub fn t(fp: PrimeField) -> Self {
        Self::from_poly(Poly::x(fp))
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant value when this is an element of F_p.
    pub fn as_constant(&self) -> Option<u64> {
        if self.den.is_constant() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// max(deg num, deg den)
    pub fn height(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

pub(crate) fn format_fp_poly(p: &FpPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if *c == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        match (i, *c) {
            (0, c) => write!(s, "{c}").unwrap(),
            (1, 1) => s.push_str(var),
            (1, c) => write!(s, "{c}*{var}").unwrap(),
            (i, 1) => write!(s, "{var}^{i}").unwrap(),
            (i, c) => write!(s, "{c}*{var}^{i}").unwrap(),
        }
    }
    s
}

fn format_ratfunc(a: &RatFunc) -> String {
    let n = format_fp_poly(&a.num, "t");
    if a.is_poly() {
        n
    } else {
        let d = format_fp_poly(&a.den, "t");
        let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

/// The field F_p(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalFunctionField {
    fp: PrimeField,
}

impl RationalFunctionField {
    pub fn new(fp: PrimeField) -> Self {
        Self { fp }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn t(&self) -> RatFunc {
        RatFunc::t(self.fp)
    }

    pub fn from_poly(&self, p: FpPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }

    /// Splits `a = sum_i t^i * c_i^p` (i < p) and returns the `c_i`.
    ///
    /// F_p(t) is a vector space over its subfield of p-th powers with basis
    /// `1, t, ..., t^(p-1)`; the components are returned already pulled back
    /// through Frobenius.
    pub fn frobenius_components(&self, a: &RatFunc) -> Vec<RatFunc> {
        let p = self.fp.p() as usize;
        // a = N/D = N D^(p-1) / D^p and D^p = D(t^p).
        let scaled = a.num.mul(&a.den.pow(p as u64 - 1));
        (0..p)
            .map(|i| {
                let parts: Vec<u64> = scaled.coeffs().iter().skip(i).step_by(p).cloned().collect();
                RatFunc::normalize(Poly::new(self.fp, parts), a.den.clone())
            })
            .collect()
    }
}

impl Field for RationalFunctionField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(Poly::zero(self.fp))
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_poly(Poly::one(self.fp))
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.is_poly() && b.is_poly() {
            return RatFunc::from_poly(a.num.add(&b.num));
        }
        if a.den == b.den {
            return RatFunc::normalize(a.num.add(&b.num), a.den.clone());
        }
        RatFunc::normalize(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(), den: a.den.clone() }
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.is_poly() && b.is_poly() {
            return RatFunc::from_poly(a.num.mul(&b.num));
        }
        RatFunc::normalize(a.num.mul(&b.num), a.den.mul(&b.den))
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.is_zero() {
            return None;
        }
        Some(RatFunc::normalize(a.den.clone(), a.num.clone()))
    }
    fn from_u64(&self, n: u64) -> RatFunc {
        RatFunc::constant(self.fp, n)
    }
    fn characteristic(&self) -> u64 {
        self.fp.p()
    }
    fn order(&self) -> Option<BigUint> {
        None
    }
    fn same_field(&self, other: &Self) -> bool {
        self.fp == other.fp
    }
    fn format_elem(&self, a: &RatFunc) -> String {
        format_ratfunc(a)
    }
    fn weight(&self, a: &RatFunc) -> usize {
        a.num.coeffs().len() + a.den.coeffs().len()
    }
}

impl PerfectionOracle for RationalFunctionField {
    /// `a` has a p-th root exactly when its reduced numerator and denominator
    /// only use exponents divisible by p; the root substitutes `t^p -> t`.
    fn pth_root(&self, a: &RatFunc) -> Option<RatFunc> {
        let p = self.fp.p() as usize;
        let num = a.num.deflate(p)?;
        let den = a.den.deflate(p)?;
        Some(RatFunc::normalize(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(p: u64) -> RationalFunctionField {
        RationalFunctionField::new(PrimeField::new(p).unwrap())
    }

    fn poly(p: u64, cs: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(PrimeField::new(p).unwrap(), cs))
    }

    #[test]
    fn pth_root_examples() {
        let k2 = k(2);
        assert_eq!(k2.pth_root(&poly(2, &[0, 0, 1])), Some(k2.t()));
        assert_eq!(k2.pth_root(&k2.t()), None);
        let k3 = k(3);
        // t^3 + t^6 = (t + t^2)^3
        assert_eq!(k3.pth_root(&poly(3, &[0, 0, 0, 1, 0, 0, 1])), Some(poly(3, &[0, 1, 1])));
    }

    #[test]
    fn canonical_form() {
        let fp = PrimeField::new(5).unwrap();
        // (2t+2)/(3t^2-3) = 2(t+1)/(3(t-1)(t+1)) = 4/(t-1) normalized to monic den
        let a = RatFunc::new(Poly::from_ints(fp, &[2, 2]), Poly::from_ints(fp, &[-3, 0, 3])).unwrap();
        assert_eq!(a.denominator(), &Poly::from_ints(fp, &[-1, 1]));
        assert_eq!(a.numerator(), &Poly::from_ints(fp, &[4]));
        assert!(RatFunc::new(Poly::one(fp), Poly::zero(fp)).is_none());
    }

    #[test]
    fn frobenius_components_reassemble() {
        let k3 = k(3);
        let a = k3.add(&k3.inv(&poly(3, &[1, 1])).unwrap(), &poly(3, &[0, 2, 1, 1]));
        let comps = k3.frobenius_components(&a);
        let mut acc = k3.zero();
        for (i, c) in comps.iter().enumerate() {
            let cp = k3.pow(c, 3);
            acc = k3.add(&acc, &k3.mul(&k3.pow(&k3.t(), i as u64), &cp));
        }
        assert_eq!(acc, a);
    }

    fn arb_rat(p: u64) -> impl Strategy<Value = RatFunc> {
        (proptest::collection::vec(0..p, 0..4), proptest::collection::vec(0..p, 1..4)).prop_filter_map(
            "nonzero denominator",
            move |(n, d)| {
                let fp = PrimeField::new(p).unwrap();
                RatFunc::new(Poly::new(fp, n), Poly::new(fp, d))
            },
        )
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rat(3), b in arb_rat(3), c in arb_rat(3)) {
            let k3 = k(3);
            prop_assert_eq!(k3.add(&a, &k3.neg(&a)), k3.zero());
            prop_assert_eq!(k3.mul(&k3.mul(&a, &b), &c), k3.mul(&a, &k3.mul(&b, &c)));
            prop_assert_eq!(k3.mul(&a, &k3.add(&b, &c)), k3.add(&k3.mul(&a, &b), &k3.mul(&a, &c)));
            let renorm = RatFunc::new(a.numerator().clone(), a.denominator().clone()).unwrap();
            prop_assert_eq!(renorm, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(k3.mul(&a, &k3.inv(&a).unwrap()), k3.one());
            }
        }

        #[test]
        fn pth_root_of_pth_power(a in arb_rat(5)) {
            let k5 = k(5);
            prop_assert_eq!(k5.pth_root(&k5.pow(&a, 5)), Some(a));
        }
    }

    /// Exhaustive oracle: a has no p-th root iff no candidate n/d with
    /// height at most height(a) satisfies (n/d)^p = a.
    #[test]
    fn pth_root_absence_matches_bounded_search() {
        let p = 2u64;
        let fp = PrimeField::new(p).unwrap();
        let k2 = k(p);
        let polys: Vec<FpPoly> = (0u64..16)
            .map(|m| Poly::new(fp, (0..4).map(|i| (m >> i) & 1).collect()))
            .collect();
        let cands: Vec<RatFunc> = polys
            .iter()
            .flat_map(|n| polys.iter().filter_map(move |d| RatFunc::new(n.clone(), d.clone())))
            .collect();
        for n in polys.iter() {
            for d in polys.iter().take(8) {
                let Some(a) = RatFunc::new(n.clone(), d.clone()) else { continue };
                let h = a.height();
                let found = cands.iter().filter(|c| c.height() <= h).any(|c| k2.pow(c, p) == a);
                assert_eq!(k2.pth_root(&a).is_some(), found, "{a:?}");
            }
        }
    }
}
