//! Exact linear algebra over any [`Field`].
//!
//! Pivots are chosen by smallest [`Field::weight`] so that elimination over
//! F_p(t) keeps fractions short.

use crate::field::Field;

/// Reduced row echelon form grown one vector at a time.
///
/// Every stored row remembers which combination of the inserted vectors it
/// came from, so membership tests also yield coordinates.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    combos: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new(), combos: Vec::new(), pivots: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the stored rows, returning the residual and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut res = v.to_vec();
        let mut combo = vec![f.zero(); self.inserted];
        for ((row, rc), &piv) in self.rows.iter().zip(&self.combos).zip(&self.pivots) {
            if f.is_zero(&res[piv]) {
                continue;
            }
            let c = res[piv].clone();
            for (r, x) in res.iter_mut().zip(row) {
                if !f.is_zero(x) {
                    *r = f.sub(r, &f.mul(&c, x));
                }
            }
            for (k, x) in rc.iter().enumerate() {
                if !f.is_zero(x) {
                    combo[k] = f.add(&combo[k], &f.mul(&c, x));
                }
            }
        }
        (res, combo)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).0.iter().all(|x| self.field.is_zero(x))
    }

    /// Coefficients `c` with `v = sum_k c_k * inserted_k`, counting only the
    /// vectors that were accepted by [`Echelon::insert`].
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (res, combo) = self.reduce(v);
        res.iter().all(|x| self.field.is_zero(x)).then_some(combo)
    }

    /// Inserts `v`; returns `false` (and stores nothing) when `v` is already
    /// in the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let f = self.field.clone();
        let (res, combo) = self.reduce(v);
        let Some(piv) = (0..self.dim).filter(|&i| !f.is_zero(&res[i])).min_by_key(|&i| f.weight(&res[i])) else {
            return false;
        };
        let inv = f.inv(&res[piv]).unwrap();
        let row: Vec<F::Elem> = res.iter().map(|x| f.mul(x, &inv)).collect();
        // new vector index = self.inserted; its combo is e_new - combo
        let mut rc: Vec<F::Elem> = combo.iter().map(|x| f.neg(x)).collect();
        rc.push(f.one());
        let rc: Vec<F::Elem> = rc.iter().map(|x| f.mul(x, &inv)).collect();
        self.inserted += 1;
        for c in self.combos.iter_mut() {
            c.push(f.zero());
        }
        for (other, oc) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if f.is_zero(&other[piv]) {
                continue;
            }
            let c = other[piv].clone();
            for (o, x) in other.iter_mut().zip(&row) {
                if !f.is_zero(x) {
                    *o = f.sub(o, &f.mul(&c, x));
                }
            }
            for (o, x) in oc.iter_mut().zip(&rc) {
                if !f.is_zero(x) {
                    *o = f.sub(o, &f.mul(&c, x));
                }
            }
        }
        self.rows.push(row);
        self.combos.push(rc);
        self.pivots.push(piv);
        true
    }
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut ech = Echelon::new(field.clone(), first.len());
    vectors.iter().filter(|v| ech.insert(v)).count()
}

/// Some `c` with `sum_k c_k * vectors_k = target`, if one exists.
pub fn solve<F: Field>(field: &F, vectors: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut ech = Echelon::new(field.clone(), target.len());
    let accepted: Vec<usize> = (0..vectors.len()).filter(|&k| ech.insert(&vectors[k])).collect();
    let c = ech.coordinates(target)?;
    let mut out = vec![field.zero(); vectors.len()];
    for (slot, val) in accepted.into_iter().zip(c) {
        out[slot] = val;
    }
    Some(out)
}

/// Basis of `{ c : sum_k c_k * vectors_k = 0 }`.
pub fn nullspace<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let Some(first) = vectors.first() else { return Vec::new() };
    let mut ech = Echelon::new(field.clone(), first.len());
    let mut accepted = Vec::new();
    let mut kernel = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        if let Some(c) = ech.coordinates(v) {
            let mut rel = vec![field.zero(); vectors.len()];
            for (slot, val) in accepted.iter().zip(c) {
                rel[*slot] = field.neg(&val);
            }
            rel[k] = field.one();
            kernel.push(rel);
        } else {
            ech.insert(v);
            accepted.push(k);
        }
    }
    kernel
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(field: &F, matrix: &[Vec<F::Elem>]) -> F::Elem {
    let n = matrix.len();
    let mut m: Vec<Vec<F::Elem>> = matrix.to_vec();
    let mut acc = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).filter(|&r| !field.is_zero(&m[r][col])).min_by_key(|&r| field.weight(&m[r][col]))
        else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            acc = field.neg(&acc);
        }
        let p = m[col][col].clone();
        acc = field.mul(&acc, &p);
        let inv = field.inv(&p).unwrap();
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let c = field.mul(&m[r][col], &inv);
            for k in col..n {
                let t = field.mul(&c, &m[col][k]);
                m[r][k] = field.sub(&m[r][k], &t);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::PrimeField;

    #[test]
    fn solve_and_nullspace() {
        let f = PrimeField::new(5).unwrap();
        let vs = vec![vec![1, 2, 0], vec![0, 1, 1], vec![1, 3, 1]];
        assert_eq!(rank(&f, &vs), 2);
        let ns = nullspace(&f, &vs);
        assert_eq!(ns.len(), 1);
        let c = solve(&f, &vs, &[2, 2, 3]).unwrap();
        let mut acc = [0u64; 3];
        for (k, v) in vs.iter().enumerate() {
            for i in 0..3 {
                acc[i] = f.add(&acc[i], &f.mul(&c[k], &v[i]));
            }
        }
        assert_eq!(acc, [2, 2, 3]);
        assert!(solve(&f, &vs, &[0, 0, 1]).is_none());
    }

    #[test]
    fn determinant() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(det(&f, &[vec![0, 1], vec![1, 0]]), 6);
        assert_eq!(det(&f, &[vec![2, 3], vec![4, 6]]), 0);
        assert_eq!(det(&f, &[vec![1, 2, 3], vec![0, 4, 5], vec![1, 0, 6]]), f.from_i64(22));
    }
}
