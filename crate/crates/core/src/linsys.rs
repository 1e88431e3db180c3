//! Linear equation systems over rings, abelian groups and non-commutative
//! rings. Row and column ids are opaque; absent coefficients are zero.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::Matrix;
use crate::ring::{Elem, FiniteRing};

fn check_ids(kind: &str, ids: &[String]) -> Result<()> {
    if ids.is_empty() {
        return Err(Error::InvalidArgument(format!("{kind} set must be non-empty")));
    }
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::InvalidArgument(format!("duplicate {kind} id '{id}'")));
        }
    }
    Ok(())
}

fn position(ids: &[String], id: &str, kind: &str) -> Result<usize> {
    ids.iter()
        .position(|x| x == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown {kind} '{id}'")))
}

/// Instances that reductions map between; each fixes its solution type.
pub trait Instance {
    type Solution;
}

/// `A x = b` over a commutative ring.
#[derive(Clone, Debug)]
pub struct LinSystem {
    ring: FiniteRing,
    rows: Vec<String>,
    cols: Vec<String>,
    coeffs: BTreeMap<(usize, usize), Elem>,
    rhs: Vec<Elem>,
}

impl Instance for LinSystem {
    type Solution = Vec<Elem>;
}

impl LinSystem {
    /// All-zero system with the given ids.
    pub fn new(ring: &FiniteRing, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        check_ids("row", &rows)?;
        check_ids("column", &cols)?;
        let rhs = vec![ring.zero(); rows.len()];
        Ok(LinSystem {
            ring: ring.clone(),
            rows,
            cols,
            coeffs: BTreeMap::new(),
            rhs,
        })
    }

    /// System with ids `r0..`, `x0..` from dense rows.
    pub fn from_dense(ring: &FiniteRing, a: &[Vec<Elem>], b: &[Elem]) -> Result<Self> {
        let ncols = a.first().map_or(0, Vec::len);
        if a.len() != b.len() || a.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument("dense system has inconsistent shape".into()));
        }
        let mut s = LinSystem::new(
            ring,
            (0..a.len()).map(|i| format!("r{i}")).collect(),
            (0..ncols).map(|j| format!("x{j}")).collect(),
        )?;
        for (i, row) in a.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                s.set(i, j, x);
            }
            s.set_rhs(i, b[i]);
        }
        Ok(s)
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

    pub fn row_index(&self, id: &str) -> Result<usize> {
        position(&self.rows, id, "row")
    }

    pub fn col_index(&self, id: &str) -> Result<usize> {
        position(&self.cols, id, "variable")
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.coeffs.get(&(i, j)).copied().unwrap_or(self.ring.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        if x == self.ring.zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), x);
        }
    }

    /// `A(i,j) += x`.
    pub fn add_to(&mut self, i: usize, j: usize, x: Elem) {
        let v = self.ring.add(self.get(i, j), x);
        self.set(i, j, v);
    }

    pub fn rhs(&self, i: usize) -> Elem {
        self.rhs[i]
    }

    pub fn rhs_all(&self) -> &[Elem] {
        &self.rhs
    }

    pub fn set_rhs(&mut self, i: usize, x: Elem) {
        self.rhs[i] = x;
    }

    /// Append a row and return its index.
    pub fn push_row(&mut self, id: String) -> Result<usize> {
        if self.rows.contains(&id) {
            return Err(Error::InvalidArgument(format!("duplicate row id '{id}'")));
        }
        self.rows.push(id);
        self.rhs.push(self.ring.zero());
        Ok(self.rows.len() - 1)
    }

    /// Append a column and return its index.
    pub fn push_col(&mut self, id: String) -> Result<usize> {
        if self.cols.contains(&id) {
            return Err(Error::InvalidArgument(format!("duplicate column id '{id}'")));
        }
        self.cols.push(id);
        Ok(self.cols.len() - 1)
    }

    /// Non-zero coefficients of row `i`, by column index.
    pub fn row_terms(&self, i: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), &x)| (j, x))
    }

    /// All non-zero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Elem)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &x)| (i, j, x))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Dense coefficient matrix.
    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.ring, self.rows.clone(), self.cols.clone());
        for (i, j, x) in self.terms() {
            m.set(i, j, x);
        }
        m
    }

    /// Left-hand side value of row `i` under an assignment.
    pub fn row_value(&self, i: usize, x: &[Elem]) -> Elem {
        let r = &self.ring;
        r.sum(self.row_terms(i).map(|(j, a)| r.mul(a, x[j])))
    }

    /// Whether a total assignment (by column index) satisfies every row.
    pub fn eval(&self, x: &[Elem]) -> Result<bool> {
        if x.len() != self.ncols() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} values for {} variables",
                x.len(),
                self.ncols()
            )));
        }
        if x.iter().any(|v| v.index() >= self.ring.size()) {
            return Err(Error::InvalidArgument("assignment value outside the ring".into()));
        }
        Ok((0..self.nrows()).all(|i| self.row_value(i, x) == self.rhs[i]))
    }

    /// Deterministic text form: ring label, sorted ids, and equations.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ring {}", self.ring.label());
        let mut cols: Vec<usize> = (0..self.ncols()).collect();
        cols.sort_by(|&a, &b| self.cols[a].cmp(&self.cols[b]));
        let mut rows: Vec<usize> = (0..self.nrows()).collect();
        rows.sort_by(|&a, &b| self.rows[a].cmp(&self.rows[b]));
        let _ = writeln!(
            out,
            "vars {}",
            cols.iter().map(|&j| self.cols[j].as_str()).collect::<Vec<_>>().join(" ")
        );
        for &i in &rows {
            let mut terms: Vec<(usize, Elem)> = self.row_terms(i).collect();
            terms.sort_by(|a, b| self.cols[a.0].cmp(&self.cols[b.0]));
            let lhs: Vec<String> = terms
                .iter()
                .map(|&(j, a)| format!("{}*{}", self.ring.name(a), self.cols[j]))
                .collect();
            let lhs = if lhs.is_empty() { "0".to_string() } else { lhs.join(" + ") };
            let _ = writeln!(out, "eq {}: {} = {}", self.rows[i], lhs, self.ring.name(self.rhs[i]));
        }
        out
    }

    /// FNV-1a (64-bit) digest of [`Self::canonical_text`].
    pub fn digest(&self) -> u64 {
        fnv1a(self.canonical_text().as_bytes())
    }
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// `sum_j a_ij x_j = b_i` over an abelian group, with integer coefficients.
#[derive(Clone, Debug)]
pub struct GroupSystem {
    group: AbelianGroup,
    rows: Vec<String>,
    cols: Vec<String>,
    coeffs: BTreeMap<(usize, usize), i64>,
    rhs: Vec<Elem>,
}

impl Instance for GroupSystem {
    type Solution = Vec<Elem>;
}

impl GroupSystem {
    pub fn new(group: &AbelianGroup, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        check_ids("row", &rows)?;
        check_ids("column", &cols)?;
        let rhs = vec![group.zero(); rows.len()];
        Ok(GroupSystem {
            group: group.clone(),
            rows,
            cols,
            coeffs: BTreeMap::new(),
            rhs,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
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

    pub fn col_index(&self, id: &str) -> Result<usize> {
        position(&self.cols, id, "variable")
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn rhs(&self, i: usize) -> Elem {
        self.rhs[i]
    }

    pub fn set_rhs(&mut self, i: usize, g: Elem) {
        self.rhs[i] = g;
    }

    pub fn row_terms(&self, i: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), &c)| (j, c))
    }

    /// Whether every coefficient is `0` or `1`.
    pub fn is_binary(&self) -> bool {
        self.coeffs.values().all(|&c| c == 1)
    }

    pub fn eval(&self, x: &[Elem]) -> Result<bool> {
        if x.len() != self.ncols() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} values for {} variables",
                x.len(),
                self.ncols()
            )));
        }
        let g = &self.group;
        Ok((0..self.nrows()).all(|i| {
            let lhs = self
                .row_terms(i)
                .fold(g.zero(), |acc, (j, c)| g.add(acc, g.times(x[j], c)));
            lhs == self.rhs[i]
        }))
    }
}

/// `A_l x + (x^t A_r)^t = b` over a possibly non-commutative ring: row `i`
/// reads `sum_j A_l(i,j) x_j + sum_j x_j A_r(j,i) = b_i`.
#[derive(Clone, Debug)]
pub struct TwoSidedSystem {
    ring: FiniteRing,
    rows: Vec<String>,
    cols: Vec<String>,
    left: BTreeMap<(usize, usize), Elem>,
    /// Keyed by `(i, j)` for the entry `A_r(j, i)`.
    right: BTreeMap<(usize, usize), Elem>,
    rhs: Vec<Elem>,
}

impl Instance for TwoSidedSystem {
    type Solution = Vec<Elem>;
}

impl TwoSidedSystem {
    pub fn new(ring: &FiniteRing, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        check_ids("row", &rows)?;
        check_ids("column", &cols)?;
        let rhs = vec![ring.zero(); rows.len()];
        Ok(TwoSidedSystem {
            ring: ring.clone(),
            rows,
            cols,
            left: BTreeMap::new(),
            right: BTreeMap::new(),
            rhs,
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

    pub fn col_index(&self, id: &str) -> Result<usize> {
        position(&self.cols, id, "variable")
    }

    pub fn left(&self, i: usize, j: usize) -> Elem {
        self.left.get(&(i, j)).copied().unwrap_or(self.ring.zero())
    }

    pub fn right(&self, i: usize, j: usize) -> Elem {
        self.right.get(&(i, j)).copied().unwrap_or(self.ring.zero())
    }

    fn put(map: &mut BTreeMap<(usize, usize), Elem>, zero: Elem, i: usize, j: usize, x: Elem) {
        if x == zero {
            map.remove(&(i, j));
        } else {
            map.insert((i, j), x);
        }
    }

    /// Coefficient `a` in the term `a * x_j` of row `i`.
    pub fn set_left(&mut self, i: usize, j: usize, x: Elem) {
        Self::put(&mut self.left, self.ring.zero(), i, j, x);
    }

    /// Coefficient `a` in the term `x_j * a` of row `i`.
    pub fn set_right(&mut self, i: usize, j: usize, x: Elem) {
        Self::put(&mut self.right, self.ring.zero(), i, j, x);
    }

    pub fn rhs(&self, i: usize) -> Elem {
        self.rhs[i]
    }

    pub fn set_rhs(&mut self, i: usize, x: Elem) {
        self.rhs[i] = x;
    }

    pub fn left_terms(&self, i: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.left.range((i, 0)..(i + 1, 0)).map(|(&(_, j), &x)| (j, x))
    }

    pub fn right_terms(&self, i: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.right.range((i, 0)..(i + 1, 0)).map(|(&(_, j), &x)| (j, x))
    }

    pub fn row_value(&self, i: usize, x: &[Elem]) -> Elem {
        let r = &self.ring;
        let l = r.sum(self.left_terms(i).map(|(j, a)| r.mul(a, x[j])));
        let rt = r.sum(self.right_terms(i).map(|(j, a)| r.mul(x[j], a)));
        r.add(l, rt)
    }

    pub fn eval(&self, x: &[Elem]) -> Result<bool> {
        if x.len() != self.ncols() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} values for {} variables",
                x.len(),
                self.ncols()
            )));
        }
        Ok((0..self.nrows()).all(|i| self.row_value(i, x) == self.rhs[i]))
    }

    /// Columns that carry a left coefficient and columns that carry a right
    /// coefficient.
    pub fn sidedness(&self) -> (Vec<bool>, Vec<bool>) {
        let mut l = vec![false; self.ncols()];
        let mut r = vec![false; self.ncols()];
        for &(_, j) in self.left.keys() {
            l[j] = true;
        }
        for &(_, j) in self.right.keys() {
            r[j] = true;
        }
        (l, r)
    }

    /// The same equations as a one-sided system (commutative rings only).
    pub fn to_commutative(&self) -> Result<LinSystem> {
        if !self.ring.is_commutative() {
            return Err(Error::Precondition("ring is not commutative".into()));
        }
        let mut s = LinSystem::new(&self.ring, self.rows.clone(), self.cols.clone())?;
        for i in 0..self.nrows() {
            for (j, a) in self.left_terms(i).chain(self.right_terms(i)) {
                s.add_to(i, j, a);
            }
            s.set_rhs(i, self.rhs[i]);
        }
        Ok(s)
    }
}

/// `sum_j z_j * a_ij = b_i` with integer unknowns `z_j` (taken mod the group
/// exponent) and group-element coefficients `a_ij`.
#[derive(Clone, Debug)]
pub struct NumericalSystem {
    group: AbelianGroup,
    rows: Vec<String>,
    cols: Vec<String>,
    coeffs: BTreeMap<(usize, usize), Elem>,
    rhs: Vec<Elem>,
}

impl Instance for NumericalSystem {
    type Solution = Vec<u64>;
}

impl NumericalSystem {
    pub fn new(group: &AbelianGroup, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        check_ids("row", &rows)?;
        check_ids("column", &cols)?;
        let rhs = vec![group.zero(); rows.len()];
        Ok(NumericalSystem {
            group: group.clone(),
            rows,
            cols,
            coeffs: BTreeMap::new(),
            rhs,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
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

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.coeffs.get(&(i, j)).copied().unwrap_or(self.group.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, g: Elem) {
        if g == self.group.zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), g);
        }
    }

    pub fn rhs(&self, i: usize) -> Elem {
        self.rhs[i]
    }

    pub fn set_rhs(&mut self, i: usize, g: Elem) {
        self.rhs[i] = g;
    }

    pub fn row_terms(&self, i: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), &g)| (j, g))
    }

    pub fn eval(&self, z: &[u64]) -> Result<bool> {
        if z.len() != self.ncols() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} values for {} variables",
                z.len(),
                self.ncols()
            )));
        }
        let g = &self.group;
        Ok((0..self.nrows()).all(|i| {
            let lhs = self
                .row_terms(i)
                .fold(g.zero(), |acc, (j, a)| g.add(acc, g.times(a, z[j] as i64)));
            lhs == self.rhs[i]
        }))
    }
}
