//! Brute-force oracles: exhaustive enumeration, no decomposition, no
//! elimination over rings. Used to cross-check the solvers and reductions.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::linsys::{GroupSystem, LinSystem, NumericalSystem, TwoSidedSystem};
use crate::matrix::Matrix;
use crate::ring::{Elem, FiniteRing};

/// Largest search space an oracle walks before refusing.
pub const ORACLE_CAP: u128 = 10_000_000;

/// Verdict of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// First solution in odometer order, if any.
    pub solution: Option<Vec<Elem>>,
    /// Assignments examined.
    pub checked: u64,
}

impl OracleReport {
    pub fn is_solvable(&self) -> bool {
        self.solution.is_some()
    }
}

fn space(base: usize, exp: usize) -> Result<u128> {
    let mut total: u128 = 1;
    for _ in 0..exp {
        total = total.saturating_mul(base as u128);
        if total > ORACLE_CAP {
            return Err(Error::Capacity(format!(
                "{base}^{exp} assignments exceed {ORACLE_CAP}"
            )));
        }
    }
    Ok(total)
}

/// Walk `base^len` assignments in odometer order (first position fastest).
fn odometer(base: usize, len: usize, mut accept: impl FnMut(&[Elem]) -> bool) -> Result<OracleReport> {
    space(base, len)?;
    let mut x = vec![Elem(0); len];
    let mut checked = 0u64;
    loop {
        checked += 1;
        if accept(&x) {
            return Ok(OracleReport {
                solution: Some(x),
                checked,
            });
        }
        let mut k = 0;
        loop {
            if k == len {
                return Ok(OracleReport {
                    solution: None,
                    checked,
                });
            }
            x[k].0 += 1;
            if (x[k].0 as usize) < base {
                break;
            }
            x[k] = Elem(0);
            k += 1;
        }
    }
}

pub fn brute_force_solve(s: &LinSystem) -> Result<OracleReport> {
    let r = s.ring();
    let rows: Vec<Vec<(usize, Elem)>> = (0..s.nrows()).map(|i| s.row_terms(i).collect()).collect();
    odometer(r.size(), s.ncols(), |x| {
        rows.iter().enumerate().all(|(i, terms)| {
            r.sum(terms.iter().map(|&(j, a)| r.mul(a, x[j]))) == s.rhs(i)
        })
    })
}

pub fn brute_force_solve_group(gs: &GroupSystem) -> Result<OracleReport> {
    let g = gs.group();
    odometer(g.size(), gs.ncols(), |x| {
        (0..gs.nrows()).all(|i| {
            let mut acc = g.zero();
            for (j, c) in gs.row_terms(i) {
                acc = g.add(acc, g.times(x[j], c));
            }
            acc == gs.rhs(i)
        })
    })
}

pub fn brute_force_solve_twosided(ts: &TwoSidedSystem) -> Result<OracleReport> {
    let r = ts.ring();
    odometer(r.size(), ts.ncols(), |x| {
        (0..ts.nrows()).all(|i| {
            let left = r.sum(ts.left_terms(i).map(|(j, a)| r.mul(a, x[j])));
            let right = r.sum(ts.right_terms(i).map(|(j, a)| r.mul(x[j], a)));
            r.add(left, right) == ts.rhs(i)
        })
    })
}

/// Integer unknowns over a group: breadth-first search of the subgroup of
/// `G^I` spanned by the columns. Returns nonnegative multiplicities.
pub fn solve_numerical(ns: &NumericalSystem) -> Result<Option<Vec<u64>>> {
    let g = ns.group();
    space(g.size(), ns.nrows())?;
    let n = g.size() as u64;
    let encode = |v: &[Elem]| v.iter().rev().fold(0u64, |acc, e| acc * n + e.0 as u64);
    let columns: Vec<Vec<Elem>> = (0..ns.ncols())
        .map(|j| (0..ns.nrows()).map(|i| ns.get(i, j)).collect())
        .collect();
    let target: Vec<Elem> = (0..ns.nrows()).map(|i| ns.rhs(i)).collect();
    let start = vec![g.zero(); ns.nrows()];
    // vector code -> (parent code, column used)
    let mut parent: HashMap<u64, Option<(u64, usize)>> = HashMap::new();
    parent.insert(encode(&start), None);
    let mut queue = VecDeque::from([start]);
    let goal = encode(&target);
    while let Some(v) = queue.pop_front() {
        let code = encode(&v);
        if code == goal {
            let mut z = vec![0u64; ns.ncols()];
            let mut cur = code;
            while let Some(Some((prev, j))) = parent.get(&cur) {
                z[*j] += 1;
                cur = *prev;
            }
            return Ok(Some(z));
        }
        for (j, col) in columns.iter().enumerate() {
            let w: Vec<Elem> = v.iter().zip(col).map(|(&a, &b)| g.add(a, b)).collect();
            let wc = encode(&w);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(wc) {
                e.insert(Some((code, j)));
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

/// Solve over `Z/m` by column reduction in `(Z/m)^I`. Each column carries a
/// tag `t` with `A t = column`; after a row is settled its pivot times
/// `m / gcd(pivot, m)` rejoins the pool, so the pool spans the same module.
pub fn span_solve_zmod(s: &LinSystem) -> Result<Option<Vec<Elem>>> {
    let m = s.ring().modulus().ok_or_else(|| {
        Error::Precondition(format!("{} is not presented as Z/m", s.ring().label()))
    })? as u128;
    let rows = s.nrows();
    let n = s.ncols();
    let mut pool: Vec<(Vec<u128>, Vec<u128>)> = (0..n)
        .map(|j| {
            let col = (0..rows).map(|i| s.get(i, j).0 as u128).collect();
            let mut tag = vec![0u128; n];
            tag[j] = 1;
            (col, tag)
        })
        .collect();
    let mut residual: Vec<u128> = (0..rows).map(|i| s.rhs(i).0 as u128).collect();
    let mut x = vec![0u128; n];
    let combine = |a: &[u128], ka: u128, b: &[u128], kb: u128| -> Vec<u128> {
        a.iter().zip(b).map(|(&u, &v)| (u * ka + v * kb) % m).collect()
    };
    for r in 0..rows {
        pool.retain(|(c, _)| c.iter().any(|&v| v != 0));
        let mut pivot: Option<(Vec<u128>, Vec<u128>)> = None;
        let mut rest = Vec::new();
        for (c, t) in pool.drain(..) {
            if c[r] == 0 {
                rest.push((c, t));
                continue;
            }
            match pivot.take() {
                None => pivot = Some((c, t)),
                Some((pc, pt)) => {
                    let (g, s1, s2) = ext_gcd(pc[r] as i128, c[r] as i128);
                    let modi = |v: i128| v.rem_euclid(m as i128) as u128;
                    let (s1, s2) = (modi(s1), modi(s2));
                    let (b, na) = (modi(c[r] as i128 / g), modi(-(pc[r] as i128 / g)));
                    // [s1 s2; b -a] is unimodular and clears row r in the second column
                    rest.push((combine(&pc, b, &c, na), combine(&pt, b, &t, na)));
                    pivot = Some((combine(&pc, s1, &c, s2), combine(&pt, s1, &t, s2)));
                }
            }
        }
        let d = match &pivot {
            None => m,
            Some((pc, _)) => gcd_u(pc[r], m),
        };
        if !residual[r].is_multiple_of(d) {
            return Ok(None);
        }
        if let Some((pc, pt)) = pivot {
            let g = pc[r];
            // k g = residual[r] (mod m)
            let md = m / d;
            let k = (residual[r] / d) % md * inv_u(g / d % md, md) % md;
            for i in 0..rows {
                residual[i] = (residual[i] + (m - pc[i] * k % m)) % m;
            }
            for j in 0..n {
                x[j] = (x[j] + pt[j] * k) % m;
            }
            if md > 1 {
                rest.push((
                    pc.iter().map(|&v| v * md % m).collect(),
                    pt.iter().map(|&v| v * md % m).collect(),
                ));
            }
        }
        pool = rest;
    }
    if residual.iter().any(|&v| v != 0) {
        return Err(Error::Internal("span oracle left a nonzero residual".into()));
    }
    let x: Vec<Elem> = x.into_iter().map(|v| Elem(v as u32)).collect();
    Ok(Some(x))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn gcd_u(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

fn inv_u(a: u128, m: u128) -> u128 {
    if m <= 1 {
        return 0;
    }
    let (_, x, _) = ext_gcd(a as i128, m as i128);
    x.rem_euclid(m as i128) as u128
}

const AXIOM_ORDER: [&str; 10] = [
    "closure",
    "additive-associativity",
    "additive-commutativity",
    "additive-identity",
    "additive-inverse",
    "multiplicative-associativity",
    "multiplicative-identity",
    "left-distributivity",
    "right-distributivity",
    "commutativity",
];

fn fail(axiom: &'static str, detail: String) -> Error {
    debug_assert!(AXIOM_ORDER.contains(&axiom));
    Error::NotARing { axiom, detail }
}

/// Exhaustive check of flat `n x n` addition and multiplication tables.
pub fn check_ring_tables(n: usize, add: &[u32], mul: &[u32], commutative: bool) -> Result<()> {
    if add.len() != n * n || mul.len() != n * n {
        return Err(Error::InvalidParameter("tables must be n x n".into()));
    }
    if let Some(v) = add.iter().chain(mul).find(|&&v| v as usize >= n) {
        return Err(fail("closure", format!("entry {v} outside 0..{n}")));
    }
    let a = |x: usize, y: usize| add[x * n + y] as usize;
    let m = |x: usize, y: usize| mul[x * n + y] as usize;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a(a(x, y), z) != a(x, a(y, z)) {
                    return Err(fail("additive-associativity", format!("#{x}, #{y}, #{z}")));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..x {
            if a(x, y) != a(y, x) {
                return Err(fail("additive-commutativity", format!("#{x}, #{y}")));
            }
        }
    }
    let zero = (0..n)
        .find(|&z| (0..n).all(|x| a(z, x) == x))
        .ok_or_else(|| fail("additive-identity", "no neutral element".into()))?;
    if let Some(x) = (0..n).find(|&x| (0..n).all(|y| a(x, y) != zero)) {
        return Err(fail("additive-inverse", format!("#{x} has no negative")));
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    return Err(fail("multiplicative-associativity", format!("#{x}, #{y}, #{z}")));
                }
            }
        }
    }
    if !(0..n).any(|e| (0..n).all(|x| m(e, x) == x && m(x, e) == x)) {
        return Err(fail("multiplicative-identity", "no unit element".into()));
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                    return Err(fail("left-distributivity", format!("#{x}, #{y}, #{z}")));
                }
                if m(a(y, z), x) != a(m(y, x), m(z, x)) {
                    return Err(fail("right-distributivity", format!("#{x}, #{y}, #{z}")));
                }
            }
        }
    }
    if commutative {
        for x in 0..n {
            for y in 0..x {
                if m(x, y) != m(y, x) {
                    return Err(fail("commutativity", format!("#{x}, #{y}")));
                }
            }
        }
    }
    Ok(())
}

pub fn check_ring_axioms(r: &FiniteRing) -> Result<()> {
    let n = r.size();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in r.elements() {
        for y in r.elements() {
            add.push(r.add(x, y).0);
            mul.push(r.mul(x, y).0);
        }
    }
    check_ring_tables(n, &add, &mul, r.is_commutative())
}

/// Exhaustive check of a flat `n x n` table as an abelian group.
pub fn check_group_table(n: usize, add: &[u32]) -> Result<()> {
    let gfail = |axiom: &'static str, detail: String| Error::NotAGroup { axiom, detail };
    if add.len() != n * n {
        return Err(Error::InvalidParameter("table must be n x n".into()));
    }
    if let Some(v) = add.iter().find(|&&v| v as usize >= n) {
        return Err(gfail("closure", format!("entry {v} outside 0..{n}")));
    }
    let a = |x: usize, y: usize| add[x * n + y] as usize;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a(a(x, y), z) != a(x, a(y, z)) {
                    return Err(gfail("associativity", format!("#{x}, #{y}, #{z}")));
                }
            }
            if a(x, y) != a(y, x) {
                return Err(gfail("commutativity", format!("#{x}, #{y}")));
            }
        }
    }
    let zero = (0..n)
        .find(|&z| (0..n).all(|x| a(z, x) == x))
        .ok_or_else(|| gfail("identity", "no neutral element".into()))?;
    if let Some(x) = (0..n).find(|&x| (0..n).all(|y| a(x, y) != zero)) {
        return Err(gfail("inverse", format!("#{x} has no inverse")));
    }
    Ok(())
}

pub fn check_group_axioms(g: &AbelianGroup) -> Result<()> {
    let n = g.size();
    let mut add = Vec::with_capacity(n * n);
    for x in g.elements() {
        for y in g.elements() {
            add.push(g.add(x, y).0);
        }
    }
    check_group_table(n, &add)
}

const COFACTOR_CAP: usize = 6;

fn square_rows(a: &Matrix) -> Result<Vec<Vec<Elem>>> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if a.nrows() > COFACTOR_CAP {
        return Err(Error::Capacity(format!(
            "cofactor expansion limited to {COFACTOR_CAP} x {COFACTOR_CAP}"
        )));
    }
    if !a.ring().is_commutative() {
        return Err(Error::Precondition("determinant needs a commutative ring".into()));
    }
    Ok(a.to_rows())
}

type RPoly = Vec<Elem>;

fn padd(r: &FiniteRing, a: &RPoly, b: &RPoly) -> RPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(r.zero());
            let y = b.get(i).copied().unwrap_or(r.zero());
            r.add(x, y)
        })
        .collect()
}

fn pmul(r: &FiniteRing, a: &RPoly, b: &RPoly) -> RPoly {
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(x, y));
        }
    }
    out
}

/// Laplace expansion along the first row, over polynomials in `R[X]`.
fn laplace(r: &FiniteRing, m: &[Vec<RPoly>]) -> RPoly {
    let n = m.len();
    if n == 0 {
        return vec![r.one()];
    }
    let mut det = vec![r.zero()];
    for j in 0..n {
        let minor: Vec<Vec<RPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let mut term = pmul(r, &m[0][j], &laplace(r, &minor));
        if j % 2 == 1 {
            term = term.into_iter().map(|c| r.neg(c)).collect();
        }
        det = padd(r, &det, &term);
    }
    det
}

pub fn det_cofactor(a: &Matrix) -> Result<Elem> {
    let r = a.ring();
    let rows = square_rows(a)?;
    let m: Vec<Vec<RPoly>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| vec![x]).collect())
        .collect();
    Ok(laplace(r, &m)[0])
}

/// `det(X E - A)` by Laplace expansion over `R[X]`.
pub fn charpoly_cofactor(a: &Matrix) -> Result<CharPoly> {
    let r = a.ring();
    let rows = square_rows(a)?;
    let n = rows.len();
    let m: Vec<Vec<RPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![r.neg(rows[i][j]), r.one()]
                    } else {
                        vec![r.neg(rows[i][j])]
                    }
                })
                .collect()
        })
        .collect();
    let mut coeffs = laplace(r, &m);
    coeffs.resize(n + 1, r.zero());
    Ok(CharPoly::new(r, coeffs))
}

/// Number of `n x n` matrices with a two-sided inverse, by enumeration.
///
/// For each `A` the map `x -> A x` on `R^n` is tabulated; preimages of the
/// unit vectors give a candidate `B`, kept only if `AB = BA = E`.
pub fn enumerate_gl(r: &FiniteRing, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be at least 1".into()));
    }
    space(r.size(), n * n)?;
    let q = r.size();
    let vectors: Vec<Vec<Elem>> = {
        let mut all = Vec::new();
        odometer(q, n, |v| {
            all.push(v.to_vec());
            false
        })?;
        all
    };
    let unit: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { r.one() } else { r.zero() }).collect())
        .collect();
    let mut count = 0u64;
    odometer(q, n * n, |entries| {
        let a = |i: usize, j: usize| entries[i * n + j];
        let apply = |v: &[Elem]| -> Vec<Elem> {
            (0..n)
                .map(|i| r.sum((0..n).map(|j| r.mul(a(i, j), v[j]))))
                .collect()
        };
        let mut b_cols = Vec::with_capacity(n);
        for e in &unit {
            match vectors.iter().find(|v| &apply(v) == e) {
                Some(v) => b_cols.push(v.clone()),
                None => return false,
            }
        }
        let b = |i: usize, j: usize| b_cols[j][i];
        let is_e = |f: &dyn Fn(usize, usize) -> Elem| {
            (0..n).all(|i| (0..n).all(|j| f(i, j) == unit[i][j]))
        };
        let ab = |i: usize, j: usize| r.sum((0..n).map(|k| r.mul(a(i, k), b(k, j))));
        let ba = |i: usize, j: usize| r.sum((0..n).map(|k| r.mul(b(i, k), a(k, j))));
        if is_e(&ab) && is_e(&ba) {
            count += 1;
        }
        false
    })?;
    Ok(BigUint::from(count))
}

/// Some two-sided inverse of a square matrix, found by enumeration.
pub fn brute_force_inverse(a: &Matrix) -> Result<Option<Matrix>> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let r = a.ring();
    let n = a.nrows();
    let mut found = None;
    odometer(r.size(), n * n, |entries| {
        let b = |i: usize, j: usize| entries[i * n + j];
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let e = if i == j { r.one() } else { r.zero() };
                r.sum((0..n).map(|k| r.mul(a.get(i, k), b(k, j)))) == e
                    && r.sum((0..n).map(|k| r.mul(b(i, k), a.get(k, j)))) == e
            })
        });
        if ok {
            found = Some(entries.to_vec());
        }
        ok
    })?;
    Ok(found.map(|entries| {
        let mut m = Matrix::zeros(r, a.col_ids().to_vec(), a.row_ids().to_vec());
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, entries[i * n + j]);
            }
        }
        m
    }))
}
