//! Matrices over finite rings: products, powers, `|GL_n|`, and inverses.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};
use crate::structure::{self, Summand};

/// An `I x J` matrix; row and column ids are opaque labels.
#[derive(Clone, Debug)]
pub struct Matrix {
    ring: FiniteRing,
    rows: Vec<String>,
    cols: Vec<String>,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

fn default_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Matrix {
    pub fn zeros(ring: &FiniteRing, rows: Vec<String>, cols: Vec<String>) -> Self {
        let data = vec![ring.zero(); rows.len() * cols.len()];
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn identity(ring: &FiniteRing, ids: Vec<String>) -> Self {
        let mut m = Matrix::zeros(ring, ids.clone(), ids);
        for i in 0..m.nrows() {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Identity with ids `0..n`.
    pub fn eye(ring: &FiniteRing, n: usize) -> Self {
        Matrix::identity(ring, default_ids(n))
    }

    /// Matrix with ids `0..rows` and `0..cols`.
    pub fn from_rows(ring: &FiniteRing, rows: &[Vec<Elem>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: default_ids(rows.len()),
            cols: default_ids(ncols),
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn with_ids(
        ring: &FiniteRing,
        rows: Vec<String>,
        cols: Vec<String>,
        data: Vec<Elem>,
    ) -> Result<Self> {
        if data.len() != rows.len() * cols.len() {
            return Err(Error::InvalidArgument("entry count does not match shape".into()));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn row_ids(&self) -> &[String] {
        &self.rows
    }

    pub fn col_ids(&self) -> &[String] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols.len() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        let n = self.cols.len();
        self.data[i * n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        let n = self.cols.len();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.nrows()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.nrows()).all(|i| {
                (0..self.ncols()).all(|j| {
                    self.get(i, j) == if i == j { self.ring.one() } else { self.ring.zero() }
                })
            })
    }

    /// Apply an elementwise map into another ring.
    pub fn map(&self, ring: &FiniteRing, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn check_same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "matrices over different rings {} and {}",
                self.ring.label(),
                other.ring.label()
            )))
        }
    }

    /// Position in `other`'s row ids of each of `self`'s column ids.
    fn inner_alignment(&self, other: &Matrix) -> Result<Vec<usize>> {
        if self.cols.len() != other.rows.len() {
            return Err(Error::InvalidArgument(format!(
                "inner dimensions {} and {} differ",
                self.cols.len(),
                other.rows.len()
            )));
        }
        if self.cols == other.rows {
            return Ok((0..self.cols.len()).collect());
        }
        self.cols
            .iter()
            .map(|c| {
                other.rows.iter().position(|r| r == c).ok_or_else(|| {
                    Error::InvalidArgument(format!("column id '{c}' is not a row id of the right factor"))
                })
            })
            .collect()
    }
}

/// `(AB)(i,j) = sum_k A(i,k) B(k,j)`.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_same_ring(b)?;
    let align = a.inner_alignment(b)?;
    let r = &a.ring;
    let mut out = Matrix::zeros(r, a.rows.clone(), b.cols.clone());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut acc = r.zero();
            for (k, &kb) in align.iter().enumerate() {
                acc = r.add(acc, r.mul(a.get(i, k), b.get(kb, j)));
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Same product, computed by counting how often each ring element occurs
/// among the products `A(i,k) B(k,j)` and summing `count * element`.
pub fn mat_mul_counting(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_same_ring(b)?;
    let align = a.inner_alignment(b)?;
    let r = &a.ring;
    let mut out = Matrix::zeros(r, a.rows.clone(), b.cols.clone());
    let mut counts = vec![0u64; r.size()];
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            counts.iter_mut().for_each(|c| *c = 0);
            for (k, &kb) in align.iter().enumerate() {
                counts[r.mul(a.get(i, k), b.get(kb, j)).index()] += 1;
            }
            let acc = r.sum(
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(x, &c)| r.times(Elem(x as u32), c)),
            );
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_same_ring(b)?;
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::InvalidArgument("matrix shapes differ".into()));
    }
    let r = &a.ring;
    Ok(Matrix {
        ring: r.clone(),
        rows: a.rows.clone(),
        cols: a.cols.clone(),
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| r.add(x, y)).collect(),
    })
}

/// `A^e` by repeated squaring; `A^0 = E`.
pub fn mat_pow(a: &Matrix, e: &BigUint) -> Result<Matrix> {
    if !a.is_square() || a.rows != a.cols {
        return Err(Error::InvalidArgument(
            "matrix power needs a square matrix with equal row and column ids".into(),
        ));
    }
    let mut acc = Matrix::identity(&a.ring, a.rows.clone());
    for bit in (0..e.bits()).rev() {
        acc = mat_mul(&acc, &acc)?;
        if e.bit(bit) {
            acc = mat_mul(&acc, a)?;
        }
    }
    Ok(acc)
}

/// `|GL_n(R)| = |m|^(n^2) * prod_{i<n} (q^n - q^i)` for local `R`.
pub fn gl_order_local(r: &FiniteRing, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be >= 1".into()));
    }
    let ld = structure::local_data(r)?;
    let m = BigUint::from(ld.maximal_ideal.len());
    let q = BigUint::from(ld.q);
    let qn = q.pow(n as u32);
    let mut out = m.pow((n * n) as u32);
    for i in 0..n {
        out *= &qn - q.pow(i as u32);
    }
    Ok(out)
}

/// Product of `|GL_n|` over the local summands.
pub fn gl_order(r: &FiniteRing, n: usize) -> Result<BigUint> {
    structure::decompose_local(r)?
        .iter()
        .try_fold(BigUint::one(), |acc, s| Ok(acc * gl_order_local(&s.ring, n)?))
}

fn project_matrix(a: &Matrix, s: &Summand) -> Matrix {
    a.map(&s.ring, |x| s.project(x))
}

fn embed_sum(a: &Matrix, parts: &[(Summand, Matrix)]) -> Matrix {
    let r = &a.ring;
    let mut out = Matrix::zeros(r, a.rows.clone(), a.cols.clone());
    for (s, m) in parts {
        for (slot, &x) in out.data.iter_mut().zip(&m.data) {
            *slot = r.add(*slot, s.embed(x));
        }
    }
    out
}

fn require_square(a: &Matrix) -> Result<()> {
    if a.is_square() && a.rows == a.cols {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "square matrix with equal row and column ids required".into(),
        ))
    }
}

/// Two-sided inverse, computed per local summand as `A^(l-1)` with
/// `l = |GL_n(eR)|` whenever `A^l = E`.
pub fn inverse(a: &Matrix) -> Result<Option<Matrix>> {
    require_square(a)?;
    if !a.ring.is_commutative() {
        return Err(Error::Unsupported("inverse over a non-commutative ring".into()));
    }
    let n = a.nrows();
    let mut parts = Vec::new();
    for s in structure::decompose_local(&a.ring)? {
        let local = project_matrix(a, &s);
        let l = gl_order_local(&s.ring, n)?;
        let candidate = mat_pow(&local, &(&l - 1u32))?;
        if !mat_mul(&candidate, &local)?.is_identity() {
            return Ok(None);
        }
        parts.push((s, candidate));
    }
    let inv = embed_sum(a, &parts);
    if !mat_mul(a, &inv)?.is_identity() || !mat_mul(&inv, a)?.is_identity() {
        return Err(Error::Internal("recombined inverse fails A * B = E".into()));
    }
    Ok(Some(inv))
}

pub fn is_invertible(a: &Matrix) -> Result<bool> {
    Ok(inverse(a)?.is_some())
}

pub(crate) fn per_summand<T>(
    a: &Matrix,
    f: impl Fn(&Summand, &Matrix) -> Result<T>,
) -> Result<Vec<(Summand, T)>> {
    structure::decompose_local(&a.ring)?
        .into_iter()
        .map(|s| {
            let local = project_matrix(a, &s);
            let v = f(&s, &local)?;
            Ok((s, v))
        })
        .collect()
}

impl Matrix {
    pub fn trace(&self) -> Elem {
        let r = &self.ring;
        r.sum((0..self.nrows().min(self.ncols())).map(|i| self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == self.ring.zero())
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let r = &self.ring;
        self.map(r, |x| r.mul(c, x))
    }
}
