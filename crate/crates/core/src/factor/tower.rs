//! Factoring over tower stages.
//!
//! Separable stage `E = F(θ)`: for a shift `c` the norm
//! `N(x) = Norm_{E/F} f(x - cθ)` is squarefree for all but finitely many
//! `c`; its irreducible factors over F then give the factors of f through
//! gcds (Trager). The norm is found by evaluating at points of F and
//! interpolating.
//!
//! Inseparable stage, `μ(y) = ν(y^(p^k))` with ν separable: raising the
//! coefficients of f to the `p^k` power lands in `S = F(θ^(p^k))`, which is
//! a separable stage with minimal polynomial ν. Because `E/S` is purely
//! inseparable and the transformed polynomial is separable, its factors over
//! S are its factors over E, and `p^k`-th roots bring them back.

use crate::base::BaseField;
use crate::error::{AlgebraError, Result};
use crate::factor::{self, finite, separable_decompose, FactorConfig};
use crate::field::{Field, PerfectionOracle};
use crate::linalg;
use crate::poly::Poly;
use crate::tower::{Element, Tower, TowerPoly};

const MAX_SHIFTS: u64 = 64;

pub(crate) fn factor_separable<B: BaseField>(
    e: &Tower<B>,
    f: &TowerPoly<B>,
    cfg: &FactorConfig,
) -> Result<Vec<TowerPoly<B>>> {
    if f.deg() <= 1 {
        return Ok(vec![f.clone()]);
    }
    if e.is_finite() {
        return Ok(finite::cantor_zassenhaus(f, cfg.seed, |rng| e.random_element(rng, 0)));
    }
    if e.is_base() {
        let b = e.base_field();
        let g = f.map_into(&b, |c| c.coords()[0].clone());
        let parts = b.factor_squarefree(&g, cfg)?;
        return Ok(parts.into_iter().map(|q| q.map_into(e, |c| e.scalar(c.clone()))).collect());
    }
    // Factors over E refine factors over the parent, so when f is defined
    // there, split it there first and only lift the pieces.
    let parent = e.parent().unwrap();
    let down: Option<Vec<Element<B>>> = f.coeffs().iter().map(|c| e.restrict_to(parent, c)).collect();
    let pieces = match down {
        Some(cs) => factor::factor(&Poly::new(parent.clone(), cs), cfg)?
            .factors
            .into_iter()
            .map(|(q, _)| e.lift_poly_from(parent, &q))
            .collect(),
        None => vec![f.clone()],
    };
    let inseparable = e.minpoly().unwrap().derivative().is_zero();
    let mut out = Vec::new();
    for q in pieces {
        if q.deg() <= 1 {
            out.push(q);
        } else if inseparable {
            out.extend(frobenius_transfer(e, &q, cfg)?);
        } else {
            out.extend(trager(e, &q, cfg)?);
        }
    }
    Ok(out)
}

/// `Norm_{E/F}(a)` as the determinant of multiplication by `a`.
pub fn norm<B: BaseField>(e: &Tower<B>, a: &Element<B>) -> Element<B> {
    let parent = e.parent().expect("extension stage");
    let theta = e.generator();
    let mut cols = Vec::with_capacity(e.stage_degree());
    let mut cur = a.clone();
    for _ in 0..e.stage_degree() {
        cols.push(e.split(&cur));
        cur = e.mul(&cur, &theta);
    }
    linalg::det(parent, &cols)
}

/// `Norm_{E/F} g` for `g in E[x]`, by evaluation and interpolation.
pub fn norm_poly<B: BaseField>(e: &Tower<B>, g: &TowerPoly<B>) -> TowerPoly<B> {
    let parent = e.parent().expect("extension stage");
    let b = e.base_field();
    let n = g.deg() * e.stage_degree();
    let points: Vec<Element<B>> = (0..=n as u64)
        .map(|k| parent.scalar(b.scalar(k).expect("infinite base field")))
        .collect();
    let values: Vec<Element<B>> = points.iter().map(|a| norm(e, &g.eval(&e.lift_from(parent, a)))).collect();
    Poly::interpolate(parent.clone(), &points, &values)
}

fn trager<B: BaseField>(e: &Tower<B>, f: &TowerPoly<B>, cfg: &FactorConfig) -> Result<Vec<TowerPoly<B>>> {
    let parent = e.parent().unwrap();
    let b = e.base_field();
    let theta = e.generator();
    for idx in 0..MAX_SHIFTS {
        let Some(c) = b.scalar(idx) else { break };
        let shift = e.scale(&c, &theta);
        let g = f.shift(&e.neg(&shift));
        let n = norm_poly(e, &g).monic();
        let dn = n.derivative();
        if dn.is_zero() || n.gcd(&dn)?.deg() > 0 {
            continue;
        }
        let mut out = Vec::new();
        for (q, _) in factor::factor(&n, cfg)?.factors {
            let h = g.gcd(&e.lift_poly_from(parent, &q))?;
            out.push(h.shift(&shift));
        }
        return Ok(out);
    }
    Err(AlgebraError::Resource(format!("no squarefree norm among {MAX_SHIFTS} shifts")))
}

fn frobenius_transfer<B: BaseField>(e: &Tower<B>, f: &TowerPoly<B>, cfg: &FactorConfig) -> Result<Vec<TowerPoly<B>>> {
    let parent = e.parent().unwrap();
    let (nu, k) = separable_decompose(e.minpoly().unwrap());
    let pk = (e.characteristic() as usize).pow(k);
    let s = if nu.deg() == 1 { parent.clone() } else { parent.extend_unchecked(&nu, "y") };
    let to_s = |a: &Element<B>| -> Result<Element<B>> {
        let parts = e.split(a);
        if parts.iter().enumerate().any(|(i, c)| i % pk != 0 && !parent.is_zero(c)) {
            return Err(AlgebraError::Internal("power does not lie in the separable stage".into()));
        }
        let kept: Vec<Element<B>> = parts.into_iter().step_by(pk).collect();
        Ok(if s.is_base() || s.same_field(parent) { kept[0].clone() } else { s.merge(kept) })
    };
    let from_s = |a: &Element<B>| -> Element<B> {
        let kept = if s.same_field(parent) { vec![a.clone()] } else { s.split(a) };
        let mut parts = vec![parent.zero(); e.stage_degree()];
        for (j, c) in kept.into_iter().enumerate() {
            parts[j * pk] = c;
        }
        e.merge(parts)
    };
    let coeffs = f.coeffs().iter().map(|c| to_s(&e.pow(c, pk as u64))).collect::<Result<Vec<_>>>()?;
    let phi = Poly::new(s.clone(), coeffs);
    let mut out = Vec::new();
    for (q, m) in factor::factor(&phi, cfg)?.factors {
        if m != 1 {
            return Err(AlgebraError::Internal("separable input acquired a repeated factor".into()));
        }
        let mut cs = Vec::with_capacity(q.coeffs().len());
        for c in q.coeffs() {
            let mut r = from_s(c);
            for _ in 0..k {
                r = e
                    .pth_root(&r)
                    .ok_or_else(|| AlgebraError::Internal("factor coefficient is not a p-th power".into()))?;
            }
            cs.push(r);
        }
        out.push(Poly::new(e.clone(), cs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;
    use crate::prime::PrimeField;
    use crate::ratfunc::RationalFunctionField;

    fn rff(p: u64) -> RationalFunctionField {
        RationalFunctionField::new(PrimeField::new(p).unwrap())
    }

    fn adjoin_root_of_t(p: u64, n: usize) -> Tower<RationalFunctionField> {
        let kf = rff(p);
        let k = Tower::base(kf);
        let mut cs = vec![k.zero(); n + 1];
        cs[0] = k.neg(&k.scalar(kf.t()));
        cs[n] = k.one();
        k.make_extension(&Poly::new(k.clone(), cs), "a", &FactorConfig::default()).unwrap()
    }

    #[test]
    fn square_root_splits_its_minpoly() {
        let e = adjoin_root_of_t(3, 2);
        let s = e.generator();
        let f = Poly::new(e.clone(), vec![e.neg(&e.mul(&s, &s)), e.zero(), e.one()]);
        let fac = factor(&f, &FactorConfig::default()).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let roots = fac.roots();
        assert!(roots.contains(&s) && roots.contains(&e.neg(&s)));
    }

    #[test]
    fn inseparable_stage_factoring() {
        let e = adjoin_root_of_t(2, 4);
        let a = e.generator();
        let cfg = FactorConfig::default();
        // x^2 + x + a is irreducible; x^2 + x + a^2 + a = (x + a)(x + a + 1)
        let f = Poly::new(e.clone(), vec![a.clone(), e.one(), e.one()]);
        assert!(factor(&f, &cfg).unwrap().is_irreducible());
        let c = e.add(&e.mul(&a, &a), &a);
        let g = Poly::new(e.clone(), vec![c, e.one(), e.one()]);
        let fac = factor(&g, &cfg).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.roots().contains(&a));
    }

    #[test]
    fn norm_of_generator() {
        let e = adjoin_root_of_t(5, 3);
        // Norm(a) = t for a^3 = t (odd degree)
        let parent = e.parent().unwrap();
        assert_eq!(norm(&e, &e.generator()), parent.scalar(e.base_field().t()));
    }
}
