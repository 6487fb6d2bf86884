//! Cantor–Zassenhaus over any finite field.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::poly::Poly;

/// Irreducible monic factors of a monic squarefree `f` over a finite field.
///
/// `random` draws a uniform field element.
pub fn cantor_zassenhaus<F: Field>(
    f: &Poly<F>,
    seed: u64,
    mut random: impl FnMut(&mut ChaCha8Rng) -> F::Elem,
) -> Vec<Poly<F>> {
    let q = f.field().order().expect("finite field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, &q) {
        equal_degree(&g, d, &q, &mut rng, &mut random, &mut out);
    }
    out
}

/// Splits `f` into products of irreducibles of a common degree.
fn distinct_degree<F: Field>(f: &Poly<F>, q: &BigUint) -> Vec<(Poly<F>, usize)> {
    let field = f.field().clone();
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest).unwrap();
        let g = rest.gcd(&h.sub(&x)).unwrap();
        if g.deg() > 0 {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn equal_degree<F: Field>(
    g: &Poly<F>,
    d: usize,
    q: &BigUint,
    rng: &mut ChaCha8Rng,
    random: &mut impl FnMut(&mut ChaCha8Rng) -> F::Elem,
    out: &mut Vec<Poly<F>>,
) {
    if g.deg() == d {
        out.push(g.clone());
        return;
    }
    let field = g.field().clone();
    let p = field.characteristic();
    let qd = (0..d).fold(BigUint::one(), |acc, _| acc * q);
    loop {
        let a = Poly::new(field.clone(), (0..g.deg()).map(|_| random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(m-1)) with q^d = 2^m
            let m = qd.bits() - 1;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..m {
                cur = cur.mul(&cur).rem(g).unwrap();
                acc = acc.add(&cur);
            }
            acc
        } else {
            let e = (&qd - 1u32) / 2u32;
            a.pow_mod(&e, g).unwrap().sub(&Poly::one(field.clone()))
        };
        if b.is_zero() {
            continue;
        }
        let u = g.gcd(&b).unwrap();
        if u.deg() > 0 && u.deg() < g.deg() {
            let v = g.exact_div(&u).unwrap();
            equal_degree(&u, d, q, rng, random, out);
            equal_degree(&v, d, q, rng, random, out);
            return;
        }
    }
}
