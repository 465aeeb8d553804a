//! Integer lattices in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inverse_unimodular, IntMat};

/// Row-style HNF: rows are the basis, pivots strictly move right, pivots are
/// positive and entries above a pivot lie in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub basis: Vec<Vec<BigInt>>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeJson {
    pub rank: usize,
    pub dim: usize,
    pub hermite_basis: Vec<Vec<String>>,
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn sub_mul(dst: &mut [BigInt], src: &[BigInt], f: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= f * s;
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { basis: vec![], dim }
    }

    pub fn hnf(vectors: &[Vec<BigInt>], dim: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        for v in &rows {
            assert_eq!(v.len(), dim, "vector of wrong dimension");
        }
        let mut r = 0;
        for c in 0..dim {
            if r == rows.len() {
                break;
            }
            loop {
                let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
                if nz.is_empty() {
                    break;
                }
                let &p = nz
                    .iter()
                    .min_by(|&&a, &&b| rows[a][c].abs().cmp(&rows[b][c].abs()))
                    .unwrap();
                rows.swap(r, p);
                if nz.len() == 1 {
                    break;
                }
                let pr = rows[r].clone();
                for i in r + 1..rows.len() {
                    if !rows[i][c].is_zero() {
                        let f = rows[i][c].div_floor(&pr[c]);
                        sub_mul(&mut rows[i], &pr, &f);
                    }
                }
            }
            if (r..rows.len()).all(|i| rows[i][c].is_zero()) {
                continue;
            }
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = rows[r].clone();
            for i in 0..r {
                let f = rows[i][c].div_floor(&pr[c]);
                if !f.is_zero() {
                    sub_mul(&mut rows[i], &pr, &f);
                }
            }
            r += 1;
        }
        rows.retain(|v| v.iter().any(|x| !x.is_zero()));
        Lattice { basis: rows, dim }
    }

    pub fn from_i64(vectors: &[Vec<i64>], dim: usize) -> Self {
        let v: Vec<Vec<BigInt>> = vectors.iter().map(|v| big(v)).collect();
        Self::hnf(&v, dim)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn member(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for row in &self.basis {
            let c = pivot_col(row).expect("zero row in HNF");
            if let Some(wc) = pivot_col(&w) {
                if wc < c {
                    return false;
                }
            }
            let (qq, rem) = w[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return false;
            }
            if !qq.is_zero() {
                sub_mul(&mut w, row, &qq);
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn member_i64(&self, v: &[i64]) -> bool {
        self.member(&big(v))
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.member(b))
    }

    pub fn with(&self, extra: &[Vec<BigInt>]) -> Lattice {
        let mut all = self.basis.clone();
        all.extend_from_slice(extra);
        Lattice::hnf(&all, self.dim)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            rank: self.rank(),
            dim: self.dim,
            hermite_basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

/// Canonical HNF equality.
pub fn equal(a: &Lattice, b: &Lattice) -> bool {
    a == b
}

fn apply(m: &IntMat, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, _)| **a != 0)
                .map(|(a, b)| b * *a)
                .sum()
        })
        .collect()
}

/// Saturated kernel {v : M v = 0} of an r x c matrix, as a lattice in Z^c.
pub fn kernel(m: &IntMat, cols: usize) -> Lattice {
    // HNF of [Mᵀ | I]: rows whose Mᵀ part vanishes span the kernel.
    let r = m.len();
    let aug: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            (0..r)
                .map(|i| BigInt::from(m[i][j]))
                .chain((0..cols).map(|k| BigInt::from(i64::from(k == j))))
                .collect()
        })
        .collect();
    let h = Lattice::hnf(&aug, r + cols);
    let ker: Vec<Vec<BigInt>> = h
        .basis
        .iter()
        .filter(|row| row[..r].iter().all(|x| x.is_zero()))
        .map(|row| row[r..].to_vec())
        .collect();
    Lattice::hnf(&ker, cols)
}

/// Smallest lattice containing the seeds and stable under every generator and
/// its inverse.
pub fn orbit_closure(generators: &[IntMat], seeds: &[Vec<BigInt>], dim: usize) -> Result<Lattice> {
    let mut all = Vec::with_capacity(generators.len() * 2);
    for (k, g) in generators.iter().enumerate() {
        let inv = inverse_unimodular(g).ok_or(Error::NonUnimodularGenerator(k))?;
        all.push(g.clone());
        if inv != *g {
            all.push(inv);
        }
    }
    let mut lat = Lattice::hnf(seeds, dim);
    loop {
        let mut changed = false;
        for g in &all {
            let mut k = 0;
            while k < lat.basis.len() {
                let v = apply(g, &lat.basis[k]);
                if !lat.member(&v) {
                    lat = lat.with(&[v]);
                    changed = true;
                    k = 0;
                    continue;
                }
                k += 1;
            }
        }
        if !changed {
            return Ok(lat);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;

    #[test]
    fn hnf_examples() {
        let l = Lattice::from_i64(&[vec![2, 0], vec![0, 2], vec![1, 1]], 2);
        assert_eq!(l.basis, vec![big(&[1, 1]), big(&[0, 2])]);
        assert_eq!(Lattice::from_i64(&[], 3).rank(), 0);
        let id = Lattice::from_i64(&[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(id.basis, vec![big(&[1, 0]), big(&[0, 1])]);
    }

    #[test]
    fn membership() {
        let l = Lattice::from_i64(&[vec![1, 1]], 2);
        assert!(l.member_i64(&[2, 2]));
        assert!(!l.member_i64(&[1, 0]));
        let l2 = Lattice::from_i64(&[vec![2, 0]], 2);
        assert!(!l2.member_i64(&[1, 0]));
        let a = Lattice::from_i64(&[vec![1, 2, 3], vec![0, 4, 5]], 3);
        let b = Lattice::from_i64(&[vec![0, 4, 5], vec![1, 6, 8]], 3);
        assert!(equal(&a, &b));
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel(&identity(3), 3).rank(), 0);
        let k = kernel(&vec![vec![1, 1]], 2);
        assert_eq!(k.basis, vec![big(&[1, -1])]);
        // Saturation: 2x + 4y = 0 gives (2,-1), not (4,-2).
        let k = kernel(&vec![vec![2, 4]], 2);
        assert_eq!(k.basis, vec![big(&[2, -1])]);
    }

    #[test]
    fn orbits() {
        let seed = vec![big(&[1, -1])];
        assert_eq!(orbit_closure(&[identity(2)], &seed, 2).unwrap().rank(), 1);
        let swap = vec![vec![0, 1], vec![1, 0]];
        let l = orbit_closure(&[swap], &seed, 2).unwrap();
        assert_eq!(l.basis, vec![big(&[1, -1])]);
        let bad = vec![vec![2, 0], vec![0, 1]];
        assert!(matches!(
            orbit_closure(&[bad], &seed, 2),
            Err(Error::NonUnimodularGenerator(0))
        ));
    }
}
