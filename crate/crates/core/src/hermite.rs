//! Hermite normal form over chain rings.

use crate::error::{Error, Result};
use crate::matrix::{mat_mul, Matrix};
use crate::ring::Elem;
use crate::structure::{self, ChainData};

/// `S * A * T = H` with `H` upper triangular in its first `rank` rows and zero
/// below, `S` invertible, and `T` a column permutation.
#[derive(Clone, Debug)]
pub struct HermiteResult {
    pub h: Matrix,
    pub s: Matrix,
    pub s_inv: Matrix,
    /// Column `k` of `H` comes from column `perm[k]` of `A`.
    pub perm: Vec<usize>,
    /// `H(k,k)` for `k < rank`; each divides the next and every entry of its row.
    pub diag: Vec<Elem>,
    pub rank: usize,
}

impl HermiteResult {
    /// The permutation matrix `T` with `T(perm[k], k) = 1`.
    pub fn t_matrix(&self) -> Matrix {
        let r = self.h.ring();
        let n = self.perm.len();
        let mut t = Matrix::eye(r, n);
        for k in 0..n {
            t.set(k, k, r.zero());
        }
        for (k, &j) in self.perm.iter().enumerate() {
            t.set(j, k, r.one());
        }
        t
    }
}

pub fn hermite_normal_form(a: &Matrix) -> Result<HermiteResult> {
    let cd = structure::chain_data(a.ring())?
        .ok_or_else(|| Error::Precondition(format!("{} is not a chain ring", a.ring().label())))?;
    hermite_with(a, &cd)
}

/// Elimination with a pivot of least valuation (then least table index, then
/// first position) at every step.
pub fn hermite_with(a: &Matrix, cd: &ChainData) -> Result<HermiteResult> {
    let r = a.ring().clone();
    let (nr, nc) = (a.nrows(), a.ncols());
    let mut m = a.to_rows();
    let mut s = Matrix::eye(&r, nr).to_rows();
    let mut s_inv = Matrix::eye(&r, nr).to_rows();
    let mut perm: Vec<usize> = (0..nc).collect();
    let mut diag = Vec::new();

    for k in 0..nr.min(nc) {
        let mut best: Option<(u32, Elem, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x == r.zero() {
                    continue;
                }
                let key = (cd.valuation(x), x, i, j);
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let Some((_, p, pi, pj)) = best else { break };
        m.swap(k, pi);
        s.swap(k, pi);
        for row in s_inv.iter_mut() {
            row.swap(k, pi);
        }
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        perm.swap(k, pj);

        for i in k + 1..nr {
            if m[i][k] == r.zero() {
                continue;
            }
            let f = r.divide(m[i][k], p).ok_or_else(|| {
                Error::Internal("pivot of least valuation does not divide its column".into())
            })?;
            for j in 0..nc {
                m[i][j] = r.sub(m[i][j], r.mul(f, m[k][j]));
            }
            for j in 0..nr {
                s[i][j] = r.sub(s[i][j], r.mul(f, s[k][j]));
            }
            // S^-1 picks up the inverse elementary operation on the right
            for row in s_inv.iter_mut() {
                row[k] = r.add(row[k], r.mul(row[i], f));
            }
        }
        diag.push(p);
    }

    let rank = diag.len();
    let h = Matrix::with_ids(
        &r,
        a.row_ids().to_vec(),
        perm.iter().map(|&j| a.col_ids()[j].clone()).collect(),
        m.into_iter().flatten().collect(),
    )?;
    let s = Matrix::from_rows(&r, &s)?;
    let s_inv = Matrix::from_rows(&r, &s_inv)?;
    if !mat_mul(&s, &s_inv)?.is_identity() {
        return Err(Error::Internal("row transform is not invertible".into()));
    }
    Ok(HermiteResult {
        h,
        s,
        s_inv,
        perm,
        diag,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_zmod, FiniteRing};

    fn m(r: &FiniteRing, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| r.from_int(x)).collect())
            .collect();
        Matrix::from_rows(r, &rows).unwrap()
    }

    fn reproduces(a: &Matrix, res: &HermiteResult) {
        let sat = mat_mul(&mat_mul(&res.s, a).unwrap(), &res.t_matrix()).unwrap();
        assert_eq!(sat.entries(), res.h.entries());
    }

    #[test]
    fn two_by_two_over_z8() {
        let z8 = build_zmod(8).unwrap();
        let a = m(&z8, &[&[2, 4], &[4, 2]]);
        let res = hermite_normal_form(&a).unwrap();
        reproduces(&a, &res);
        let names: Vec<&str> = res.h.entries().iter().map(|&x| z8.name(x)).collect();
        assert_eq!(names, ["2", "4", "0", "2"]);
        assert_eq!(res.diag, vec![z8.from_int(2), z8.from_int(2)]);
    }

    #[test]
    fn identity_is_fixed() {
        let z9 = build_zmod(9).unwrap();
        let e = Matrix::eye(&z9, 3);
        let res = hermite_normal_form(&e).unwrap();
        assert!(res.s.is_identity());
        assert_eq!(res.perm, vec![0, 1, 2]);
        assert_eq!(res.h.entries(), e.entries());
        let three = m(&z9, &[&[3]]);
        assert_eq!(hermite_normal_form(&three).unwrap().diag, vec![z9.from_int(3)]);
    }

    #[test]
    fn rejects_non_chain_rings() {
        let z6 = build_zmod(6).unwrap();
        assert!(matches!(
            hermite_normal_form(&Matrix::eye(&z6, 1)),
            Err(Error::Precondition(_))
        ));
    }
}
