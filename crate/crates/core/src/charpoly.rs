//! Characteristic polynomials and determinants over Galois rings, via the
//! Newton trace recursion run exactly over `Q[X]/(F)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{mat_add, mat_mul, per_summand, Matrix};
use crate::ring::{Elem, FiniteRing};
use crate::structure::{self, GaloisRep};

/// Monic `c_0 + c_1 X + .. + X^n`, lowest coefficient first.
#[derive(Clone, Debug)]
pub struct CharPoly {
    ring: FiniteRing,
    coeffs: Vec<Elem>,
}

impl PartialEq for CharPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for CharPoly {}

impl CharPoly {
    pub fn new(ring: &FiniteRing, coeffs: Vec<Elem>) -> Self {
        CharPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `sum c_k A^k` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let mut acc = Matrix::zeros(&self.ring, a.row_ids().to_vec(), a.col_ids().to_vec());
        let e = Matrix::identity(&self.ring, a.row_ids().to_vec());
        for &c in self.coeffs.iter().rev() {
            acc = mat_add(&mat_mul(&acc, a)?, &e.scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == r.zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            terms.push(match (k, c == r.one()) {
                (0, _) => r.name(c).to_string(),
                (_, true) => mono,
                _ => format!("{}*{mono}", r.name(c)),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Element of `Q[X]/(F)`, coefficients lowest first, length `deg F`.
type QPoly = Vec<BigRational>;

struct Quotient {
    /// Monic integer lift of `f`, lowest first, including the leading 1.
    modulus: Vec<BigInt>,
}

impl Quotient {
    fn deg(&self) -> usize {
        self.modulus.len() - 1
    }

    fn zero(&self) -> QPoly {
        vec![BigRational::zero(); self.deg()]
    }

    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        let r = self.deg();
        let mut prod = vec![BigRational::zero(); 2 * r.max(1)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (r..prod.len()).rev() {
            let lead = std::mem::replace(&mut prod[k], BigRational::zero());
            if lead.is_zero() {
                continue;
            }
            for (i, c) in self.modulus[..r].iter().enumerate() {
                prod[k - r + i] -= &lead * BigRational::from_integer(c.clone());
            }
        }
        prod.truncate(r);
        prod
    }

    fn scale(&self, a: &QPoly, c: &BigRational) -> QPoly {
        a.iter().map(|x| x * c).collect()
    }
}

fn qmat_mul(q: &Quotient, a: &[Vec<QPoly>], b: &[Vec<QPoly>]) -> Vec<Vec<QPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(q.zero(), |acc, k| q.add(&acc, &q.mul(&a[i][k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Characteristic polynomial over a Galois ring.
///
/// Entries are lifted through `R = Z/p^n [X]/(f)` to `Z[X]/(F)` with `F` the
/// lift of `f` (coefficients in `0..p^n`); the Newton recursion
/// `c_k = -(1/k) sum_{i=1..k} c_{k-i} s_i` with `s_i = tr(A^i)` runs over
/// `Q[X]/(F)`, and every result must be integral before reduction mod `p^n`.
pub fn charpoly_galois(a: &Matrix) -> Result<CharPoly> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let rep = structure::galois_representation(a.ring())?;
    charpoly_with(a, &rep)
}

fn charpoly_with(a: &Matrix, rep: &GaloisRep) -> Result<CharPoly> {
    let r = a.ring();
    let q = rep.f.modulus();
    let deg = rep.params.r as usize;
    let mut modulus: Vec<BigInt> = rep.f.padded(deg + 1).into_iter().map(BigInt::from).collect();
    modulus[deg] = BigInt::one();
    let quot = Quotient { modulus };
    let n = a.nrows();
    let lift: Vec<Vec<QPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v: QPoly = rep
                        .iota(a.get(i, j))
                        .iter()
                        .map(|&c| BigRational::from_integer(BigInt::from(c)))
                        .collect();
                    v.resize(deg, BigRational::zero());
                    v
                })
                .collect()
        })
        .collect();

    // traces s_1..s_n
    let mut traces = Vec::with_capacity(n);
    let mut power = lift.clone();
    for k in 1..=n {
        if k > 1 {
            power = qmat_mul(&quot, &power, &lift);
        }
        traces.push((0..n).fold(quot.zero(), |acc, i| quot.add(&acc, &power[i][i])));
    }

    // c[k] is the coefficient of X^(n-k)
    let mut c: Vec<QPoly> = Vec::with_capacity(n + 1);
    let mut one = quot.zero();
    if deg > 0 {
        one[0] = BigRational::one();
    }
    c.push(one);
    for k in 1..=n {
        let mut acc = quot.zero();
        for i in 1..=k {
            acc = quot.add(&acc, &quot.mul(&c[k - i], &traces[i - 1]));
        }
        c.push(quot.scale(&acc, &BigRational::new(BigInt::from(-1), BigInt::from(k))));
    }

    let modq = BigInt::from(q);
    let mut coeffs = vec![r.zero(); n + 1];
    for (k, poly) in c.iter().enumerate() {
        let mut ints = Vec::with_capacity(deg);
        for x in poly {
            if !x.is_integer() {
                return Err(Error::Internal(format!(
                    "Newton recursion left a non-integral coefficient {x}"
                )));
            }
            let mut v = x.to_integer() % &modq;
            if v.is_negative() {
                v += &modq;
            }
            ints.push(v.to_u64().expect("reduced below p^n"));
        }
        coeffs[n - k] = rep.iota_inv(&ints);
    }
    Ok(CharPoly::new(r, coeffs))
}

/// Characteristic polynomial over a commutative ring whose local summands
/// are all Galois rings, recombined through the idempotent base.
pub fn charpoly(a: &Matrix) -> Result<CharPoly> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if !a.ring().is_commutative() {
        return Err(Error::Unsupported("characteristic polynomial over a non-commutative ring".into()));
    }
    let parts = per_summand(a, |s, local| {
        if structure::is_galois_ring(&s.ring)?.is_none() {
            return Err(Error::Unsupported(format!(
                "local summand {} of {} is not a Galois ring",
                s.ring.label(),
                a.ring().label()
            )));
        }
        charpoly_galois(local)
    })?;
    let r = a.ring();
    let n = a.nrows();
    let coeffs = (0..=n)
        .map(|k| r.sum(parts.iter().map(|(s, p)| s.embed(p.coeffs()[k]))))
        .collect();
    Ok(CharPoly::new(r, coeffs))
}

/// `det A = (-1)^n chi_A(0)`.
pub fn determinant(a: &Matrix) -> Result<Elem> {
    let chi = charpoly(a)?;
    let r = a.ring();
    let c0 = chi.coeffs()[0];
    Ok(if a.nrows().is_multiple_of(2) { c0 } else { r.neg(c0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::charpoly_cofactor;
    use crate::ring::{build_galois_ring, build_zmod};

    #[test]
    fn identity_over_gr42() {
        let gr = build_galois_ring(4, 2).unwrap();
        let chi = charpoly_galois(&Matrix::eye(&gr, 2)).unwrap();
        assert_eq!(chi.coeffs(), &[gr.one(), gr.from_int(2), gr.one()]);
    }

    #[test]
    fn swap_over_z9() {
        let z9 = build_zmod(9).unwrap();
        let a = Matrix::from_rows(&z9, &[vec![Elem(0), Elem(1)], vec![Elem(1), Elem(0)]]).unwrap();
        let chi = charpoly_galois(&a).unwrap();
        assert_eq!(chi.coeffs(), &[Elem(8), Elem(0), Elem(1)]);
        assert_eq!(determinant(&a).unwrap(), Elem(8));
        assert!(chi.eval_matrix(&a).unwrap().is_zero());
        assert_eq!(chi.to_string(), "X^2 + 8");
    }

    #[test]
    fn diagonal_over_z6_recombines() {
        let z6 = build_zmod(6).unwrap();
        let a = Matrix::from_rows(&z6, &[vec![Elem(2), Elem(0)], vec![Elem(0), Elem(3)]]).unwrap();
        assert_eq!(charpoly(&a).unwrap(), charpoly_cofactor(&a).unwrap());
        assert_eq!(determinant(&a).unwrap(), Elem(0));
    }

    #[test]
    fn field_of_four_matches_cofactor() {
        let f4 = build_galois_ring(2, 2).unwrap();
        let els: Vec<Elem> = f4.elements().collect();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    let m = Matrix::from_rows(&f4, &[vec![a, b], vec![c, a]]).unwrap();
                    assert_eq!(charpoly_galois(&m).unwrap(), charpoly_cofactor(&m).unwrap());
                }
            }
        }
    }

    #[test]
    fn non_galois_summand_is_unsupported() {
        let r = crate::ring::build_monomial_quotient(2, &["x".into(), "y".into()], &[2, 2]).unwrap();
        let a = Matrix::eye(&r, 2);
        assert!(matches!(charpoly(&a), Err(Error::Unsupported(_))));
    }
}
