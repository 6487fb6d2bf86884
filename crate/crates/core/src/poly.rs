//! Dense univariate polynomials over any [`Field`].

use std::fmt;

use num_bigint::BigUint;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

/// Coefficients are stored low-to-high; the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient list).
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> where F::Elem: Eq {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: F) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn x(field: F) -> Self {
        let (z, o) = (field.zero(), field.one());
        Self::new(field, vec![z, o])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^n`
    pub fn monomial(field: F, c: F::Elem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// Builds from small integer coefficients, low-to-high.
    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let p = field.characteristic() as i64;
        let cs = coeffs
            .iter()
            .map(|&c| field.from_u64(c.rem_euclid(p) as u64))
            .collect();
        Self::new(field, cs)
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.field.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for nonzero-aware callers.
    pub(crate) fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| self.field.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `(q, r)` with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let f = &self.field;
        let lead = divisor.leading().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = f.inv(lead).ok_or(AlgebraError::DivisionByZero)?;
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if f.is_zero(&rem[i]) {
                continue;
            }
            let q = f.mul(&rem[i], &lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(&rem[k], &f.mul(&q, d));
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient when `divisor` divides exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).map_or(false, |r| r.is_zero())
    }

    /// Monic associate; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.leading().unwrap()).unwrap();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Formal derivative; multiples of the characteristic vanish.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_u64(i as u64), c))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval(&self, at: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, at), c))
    }

    /// Substitutes `x -> x + shift`.
    pub fn shift(&self, shift: &F::Elem) -> Self {
        let f = self.field.clone();
        let lin = Self::new(f.clone(), vec![shift.clone(), f.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(f.clone()), |acc, c| acc.mul(&lin).add(&Self::constant(f.clone(), c.clone())))
    }

    /// `g` with `self(x) = g(x^k)`, when only exponents divisible by `k` occur.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        let f = &self.field;
        if self.coeffs.iter().enumerate().any(|(i, c)| i % k != 0 && !f.is_zero(c)) {
            return None;
        }
        Some(Self::new(f.clone(), self.coeffs.iter().step_by(k).cloned().collect()))
    }

    /// `self(x^k)`
    pub fn inflate(&self, k: usize) -> Self {
        let f = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![f.zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(f.clone(), coeffs)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(self.field.clone()).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Applies `map` to every coefficient, landing in `target`.
    pub fn map_into<G: Field>(&self, target: &G, map: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(map).collect())
    }

    /// The polynomial of degree `< points.len()` through the given values
    /// (Newton divided differences). Points must be distinct.
    pub fn interpolate(field: F, points: &[F::Elem], values: &[F::Elem]) -> Self {
        let f = &field;
        let n = points.len();
        let mut dd = values.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = f.inv(&f.sub(&points[i], &points[i - j])).expect("distinct points");
                dd[i] = f.mul(&f.sub(&dd[i], &dd[i - 1]), &den);
            }
        }
        let mut acc = Self::zero(field.clone());
        for i in (0..n).rev() {
            let lin = Self::new(field.clone(), vec![f.neg(&points[i]), f.one()]);
            acc = acc.mul(&lin).add(&Self::constant(field.clone(), dd[i].clone()));
        }
        acc
    }

    pub fn with_field(self, field: F) -> Self {
        Self { field, coeffs: self.coeffs }
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let s = f.format_elem(c);
            let compound = s.contains(['+', '-', '/', '*']) && !(s.starts_with('(') && s.ends_with(')'));
            let coef = if i == 0 {
                if compound && !first {
                    format!("({s})")
                } else {
                    s
                }
            } else if f.is_one(c) {
                String::new()
            } else if compound {
                format!("({s})*")
            } else {
                format!("{s}*")
            };
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if !first {
                write!(out, " + ")?;
            }
            write!(out, "{coef}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::PrimeField;
    use proptest::prelude::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn square_of_x_plus_one_in_char_two() {
        let a = Poly::from_ints(f2(), &[1, 1]);
        assert_eq!(a.mul(&a), Poly::from_ints(f2(), &[1, 0, 1]));
        let (q, r) = Poly::from_ints(f2(), &[1, 0, 1]).div_rem(&a).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let a = Poly::from_ints(f2(), &[1, 1]);
        let z = Poly::zero(f2());
        assert_eq!(a.div_rem(&z).unwrap_err(), AlgebraError::DivisionByZero);
        let b = Poly::from_ints(PrimeField::new(3).unwrap(), &[1, 1]);
        assert_eq!(a.try_add(&b).unwrap_err(), AlgebraError::FieldMismatch);
        assert_eq!(z.gcd(&z).unwrap_err(), AlgebraError::GcdOfZeros);
    }

    #[test]
    fn gcd_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let a = Poly::from_ints(f3, &[-1, 0, 1]);
        let b = Poly::from_ints(f3, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let f = Poly::from_ints(f3, &[2, 0, 2]);
        assert_eq!(f.gcd(&Poly::zero(f3)).unwrap(), f.monic());
        // (x^2+x+1)^2 = x^4+x^2+1 over F2
        let g = Poly::from_ints(f2(), &[1, 1, 1]);
        let h = Poly::from_ints(f2(), &[1, 0, 1, 0, 1]);
        assert_eq!(h.gcd(&g).unwrap(), g);
    }

    #[test]
    fn derivative_kills_multiples_of_p() {
        let f3 = PrimeField::new(3).unwrap();
        let f = Poly::from_ints(f3, &[0, 2, 0, 1]);
        assert_eq!(f.derivative(), Poly::from_ints(f3, &[2]));
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Poly<PrimeField>> {
        proptest::collection::vec(0..p, 0..7).prop_map(move |cs| {
            let f = PrimeField::new(p).unwrap();
            Poly::new(f, cs)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !b.is_zero() {
                let (q, r) = a.div_rem(&b).unwrap();
                prop_assert_eq!(q.mul(&b).add(&r), a.clone());
                prop_assert!(r.is_zero() || r.degree() < b.degree());
            }
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(3), b in arb_poly(3)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(g.divides(&a) && g.divides(&b));
            let (g2, s, t) = a.ext_gcd(&b).unwrap();
            prop_assert_eq!(&g2, &g);
            prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        }
    }
}
