//! Factoring over F_p(t) by Kronecker substitution.
//!
//! A primitive `F in F_p[t][x]` with `deg_t F < D` maps injectively to
//! `F(z^D, z)`, with every primitive divisor of `F` landing on a divisor of
//! the image. The image is factored over F_p and candidate divisors are
//! decoded back, smallest first.

use crate::error::{AlgebraError, Result};
use crate::factor::{self, FactorConfig};
use crate::field::Field;
use crate::poly::Poly;
use crate::prime::PrimeField;
use crate::ratfunc::{FpPoly, RatFunc, RationalFunctionField};

/// Upper limit on candidate divisors decoded per split.
const MAX_CANDIDATES: usize = 1 << 20;
/// Upper limit on polynomials tried by [`bounded_divisor_search`].
const MAX_SEARCH: u64 = 1 << 22;

type Bivariate = Vec<FpPoly>;

/// Irreducible monic factors of a monic squarefree separable `f`.
pub fn factor_squarefree(f: &Poly<RationalFunctionField>, cfg: &FactorConfig) -> Result<Vec<Poly<RationalFunctionField>>> {
    let field = *f.field();
    if f.deg() <= 1 {
        return Ok(vec![f.clone()]);
    }
    let mut out = Vec::new();
    let mut work = f.clone();
    while work.deg() > 1 {
        let biv = primitive_part(&work);
        match kronecker_split(field, &biv, cfg)? {
            Some(g) => {
                let g = to_poly(field, &g).monic();
                work = work.exact_div(&g).ok_or_else(|| AlgebraError::Internal("decoded divisor".into()))?;
                out.push(g);
            }
            None => break,
        }
    }
    if work.deg() > 0 {
        out.push(work.monic());
    }
    Ok(out)
}

/// Clears denominators and removes the content in F_p[t].
pub fn primitive_part(f: &Poly<RationalFunctionField>) -> Vec<FpPoly> {
    let fp = f.field().prime_field();
    let mut l = Poly::one(fp);
    for c in f.coeffs() {
        let d = c.denominator();
        let g = l.gcd(d).unwrap();
        l = l.mul(&d.exact_div(&g).unwrap());
    }
    let mut biv: Bivariate = f
        .coeffs()
        .iter()
        .map(|c| c.numerator().mul(&l.exact_div(c.denominator()).unwrap()))
        .collect();
    let content = biv
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Poly::zero(fp), |acc: FpPoly, c| if acc.is_zero() { c.monic() } else { acc.gcd(c).unwrap() });
    for c in biv.iter_mut() {
        *c = c.exact_div(&content).unwrap();
    }
    biv
}

fn to_poly(field: RationalFunctionField, biv: &[FpPoly]) -> Poly<RationalFunctionField> {
    Poly::new(field, biv.iter().map(|c| RatFunc::from_poly(c.clone())).collect())
}

fn x_degree(biv: &[FpPoly]) -> usize {
    biv.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn encode(fp: PrimeField, biv: &[FpPoly], d: usize) -> FpPoly {
    let mut cs = vec![0; biv.len() * d];
    for (i, c) in biv.iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            cs[i * d + j] = *a;
        }
    }
    Poly::new(fp, cs)
}

fn decode(fp: PrimeField, g: &FpPoly, d: usize) -> Bivariate {
    g.coeffs().chunks(d).map(|c| Poly::new(fp, c.to_vec())).collect()
}

/// An irreducible divisor of `biv` of positive x-degree below its own, or
/// `None` if `biv` is irreducible.
fn kronecker_split(field: RationalFunctionField, biv: &[FpPoly], cfg: &FactorConfig) -> Result<Option<Bivariate>> {
    let fp = field.prime_field();
    let n = x_degree(biv);
    let d = biv.iter().map(|c| c.degree().unwrap_or(0)).max().unwrap_or(0) + 1;
    let image = encode(fp, biv, d);
    let parts = factor::factor(&image, cfg)?.factors;
    let half = image.deg() / 2;

    // sub-multisets of the factors of total degree <= half
    let mut subsets: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut stack = vec![(0usize, 0usize, vec![0usize; parts.len()])];
    while let Some((idx, deg, exps)) = stack.pop() {
        if idx == parts.len() {
            if deg > 0 {
                subsets.push((deg, exps));
            }
            if subsets.len() > MAX_CANDIDATES {
                return match bounded_divisor_search(&to_poly(field, biv), cfg.height_bound)? {
                    Some(g) => Ok(Some(primitive_part(&g))),
                    None => Err(AlgebraError::Resource(format!(
                        "more than {MAX_CANDIDATES} candidate divisors and none of height <= {}",
                        cfg.height_bound
                    ))),
                };
            }
            continue;
        }
        let (g, m) = &parts[idx];
        for k in 0..=*m {
            let nd = deg + k * g.deg();
            if nd > half {
                break;
            }
            let mut e = exps.clone();
            e[idx] = k;
            stack.push((idx + 1, nd, e));
        }
    }
    subsets.sort();
    let target = to_poly(field, biv);
    for (_, exps) in subsets {
        let prod = parts
            .iter()
            .zip(&exps)
            .fold(Poly::one(fp), |acc, ((g, _), &k)| acc.mul(&g.pow(k as u64)));
        let cand = decode(fp, &prod, d);
        let cd = x_degree(&cand);
        if cd == 0 || cd >= n {
            continue;
        }
        // the end coefficients of a divisor divide those of biv in F_p[t]
        let ends_divide = [(0, 0), (cd, n)]
            .iter()
            .all(|&(i, j)| biv[j].is_zero() || (!cand[i].is_zero() && cand[i].divides(&biv[j])));
        if ends_divide && to_poly(field, &cand).divides(&target) {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Searches monic divisors `x^k + sum g_i(t) x^i` with `deg g_i <= height`
/// and `k <= deg f / 2`. Exhaustive within the bound; `Resource` when the
/// bound is too large to enumerate.
pub fn bounded_divisor_search(
    f: &Poly<RationalFunctionField>,
    height: usize,
) -> Result<Option<Poly<RationalFunctionField>>> {
    let field = *f.field();
    let fp = field.prime_field();
    let p = fp.p();
    for k in 1..=f.deg() / 2 {
        let slots = (height + 1) * k;
        let total = p
            .checked_pow(slots as u32)
            .filter(|&n| n <= MAX_SEARCH)
            .ok_or_else(|| AlgebraError::Resource(format!("divisor search of height {height} is too large")))?;
        for code in 0..total {
            let mut c = code;
            let mut cs = Vec::with_capacity(k + 1);
            for _ in 0..k {
                let mut t = Vec::with_capacity(height + 1);
                for _ in 0..=height {
                    t.push(c % p);
                    c /= p;
                }
                cs.push(RatFunc::from_poly(Poly::new(fp, t)));
            }
            cs.push(field.one());
            let g = Poly::new(field, cs);
            if g.divides(f) {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rff(p: u64) -> RationalFunctionField {
        RationalFunctionField::new(PrimeField::new(p).unwrap())
    }

    fn tpoly(field: RationalFunctionField, cs: &[i64]) -> RatFunc {
        let fp = field.prime_field();
        RatFunc::from_poly(Poly::from_ints(fp, cs))
    }

    #[test]
    fn splits_a_product_of_quadratics() {
        let k = rff(3);
        // (x^2 - t)(x^2 - t - 1)
        let a = Poly::new(k, vec![k.neg(&k.t()), k.zero(), k.one()]);
        let b = Poly::new(k, vec![tpoly(k, &[-1, -1]), k.zero(), k.one()]);
        let f = a.mul(&b);
        let mut fac = factor_squarefree(&f, &FactorConfig::default()).unwrap();
        fac.sort_by_key(|g| g.to_string());
        let mut expect = vec![a, b];
        expect.sort_by_key(|g| g.to_string());
        assert_eq!(fac, expect);
    }

    #[test]
    fn irreducible_stays_whole() {
        let k = rff(2);
        // x^2 + x + t is irreducible over F_2(t)
        let f = Poly::new(k, vec![k.t(), k.one(), k.one()]);
        assert_eq!(factor_squarefree(&f, &FactorConfig::default()).unwrap(), vec![f.clone()]);
        assert_eq!(bounded_divisor_search(&f, 3).unwrap(), None);
    }

    #[test]
    fn rational_coefficients() {
        let k = rff(5);
        let inv_t = k.inv(&k.t()).unwrap();
        // (x - 1/t)(x + t)
        let a = Poly::new(k, vec![k.neg(&inv_t), k.one()]);
        let b = Poly::new(k, vec![k.t(), k.one()]);
        let fac = factor_squarefree(&a.mul(&b), &FactorConfig::default()).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.contains(&a) && fac.contains(&b));
    }

    #[test]
    fn agrees_with_bounded_search_on_small_inputs() {
        let k = rff(2);
        let cfg = FactorConfig::default();
        // every monic x^2 + a x + b with a, b in F_2[t] of degree <= 2
        for code in 0u64..64 {
            let a = tpoly(k, &[(code & 1) as i64, ((code >> 1) & 1) as i64, ((code >> 2) & 1) as i64]);
            let b = tpoly(k, &[((code >> 3) & 1) as i64, ((code >> 4) & 1) as i64, ((code >> 5) & 1) as i64]);
            let f = Poly::new(k, vec![b, a, k.one()]);
            if f.gcd(&f.derivative()).map_or(true, |g| g.deg() > 0) {
                continue;
            }
            let irreducible = factor_squarefree(&f, &cfg).unwrap().len() == 1;
            // a monic factor x + c has c integral of degree <= 2
            let found = bounded_divisor_search(&f, 2).unwrap().is_some();
            assert_eq!(irreducible, !found, "{f}");
        }
    }
}
