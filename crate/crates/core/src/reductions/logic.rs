use std::collections::BTreeMap;

use super::{fresh_name, normal_form, ReductionOutput};
use crate::arith;
use crate::error::{Error, Result};
use crate::linsys::LinSystem;
use crate::ring::{build_zmod, Elem, FiniteRing};
use crate::structure;

/// The transposed system `y (A | b) = (0, .., 0, pi^(n-1))` over a chain
/// ring: solvable iff the source is not.
///
/// Unknowns are the source rows; one row per source column with right-hand
/// side `0`, plus a row `rhs` for the right-hand side column.
pub fn complement_chain(s: &LinSystem) -> Result<ReductionOutput<LinSystem>> {
    let r = s.ring();
    let cd = structure::chain_data(r)?
        .ok_or_else(|| Error::Precondition(format!("{} is not a chain ring", r.label())))?;
    let mut rows = s.col_ids().to_vec();
    let rhs_row = fresh_name(&rows, "rhs");
    rows.push(rhs_row);
    let mut t = LinSystem::new(r, rows, s.row_ids().to_vec())?;
    for (i, j, a) in s.terms() {
        t.set(j, i, a);
    }
    let last = s.ncols();
    for i in 0..s.nrows() {
        t.set(last, i, s.rhs(i));
    }
    t.set_rhs(last, cd.pi_top);
    Ok(ReductionOutput {
        target: t,
        backward: None,
        trace: vec![format!(
            "pi = {}, n = {}, pi^(n-1) = {}",
            r.name(cd.pi),
            cd.n,
            r.name(cd.pi_top)
        )],
    })
}

/// Disjoint union; ids are prefixed with `1.` and `2.`.
pub fn and_compose(a: &LinSystem, b: &LinSystem) -> Result<LinSystem> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::InvalidParameter(format!(
            "cannot combine systems over {} and {}",
            a.ring().label(),
            b.ring().label()
        )));
    }
    let rows = a
        .row_ids()
        .iter()
        .map(|r| format!("1.{r}"))
        .chain(b.row_ids().iter().map(|r| format!("2.{r}")))
        .collect();
    let cols = a
        .col_ids()
        .iter()
        .map(|c| format!("1.{c}"))
        .chain(b.col_ids().iter().map(|c| format!("2.{c}")))
        .collect();
    let mut t = LinSystem::new(a.ring(), rows, cols)?;
    for (i, j, x) in a.terms() {
        t.set(i, j, x);
    }
    for (i, j, x) in b.terms() {
        t.set(a.nrows() + i, a.ncols() + j, x);
    }
    for i in 0..a.nrows() {
        t.set_rhs(i, a.rhs(i));
    }
    for i in 0..b.nrows() {
        t.set_rhs(a.nrows() + i, b.rhs(i));
    }
    Ok(t)
}

/// `not (not a and not b)` over a chain ring.
pub fn or_compose(a: &LinSystem, b: &LinSystem) -> Result<LinSystem> {
    let na = complement_chain(a)?.target;
    let nb = complement_chain(b)?.target;
    Ok(complement_chain(&and_compose(&na, &nb)?)?.target)
}

/// `(a and not b) or (not a and b)` over a chain ring.
pub fn xor_compose(a: &LinSystem, b: &LinSystem) -> Result<LinSystem> {
    let na = complement_chain(a)?.target;
    let nb = complement_chain(b)?.target;
    or_compose(&and_compose(a, &nb)?, &and_compose(&na, b)?)
}

/// Disjunction of systems over `Z/p_i^(n_i)` for distinct primes, as one
/// system over `Z/m`, `m = prod p_i^(n_i)`. Experimental.
///
/// Component `i` is embedded through `c_i = m / p_i^(n_i)` and brought to
/// all-ones normal form over `Z/m`. Every equation of component `i` is
/// extended by `x^i + y^i + z^i`, with `x^i = P`, `P y^i = P` for
/// `P = prod p_i^(n_i - 1)`, and finally `sum_i z^i = P`.
pub fn or_compose_general(components: &[LinSystem]) -> Result<LinSystem> {
    if components.is_empty() {
        return Err(Error::InvalidParameter("no components".into()));
    }
    let mut primes = Vec::new();
    let mut m: u64 = 1;
    let mut p_prod: u64 = 1;
    for s in components {
        let q = s.ring().modulus().ok_or_else(|| {
            Error::InvalidParameter(format!("{} is not of the form Z/q", s.ring().label()))
        })?;
        let (p, n) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        if primes.contains(&p) {
            return Err(Error::InvalidParameter(format!("prime {p} occurs twice")));
        }
        primes.push(p);
        m *= q;
        p_prod *= p.pow(n - 1);
    }
    let zm = build_zmod(m)?;
    let el = |k: u64| Elem((k % m) as u32);

    let mut parts = Vec::new();
    for s in components {
        let q = s.ring().modulus().expect("checked above");
        let c = m / q;
        let mut e = LinSystem::new(&zm, s.row_ids().to_vec(), s.col_ids().to_vec())?;
        for (i, j, a) in s.terms() {
            e.set(i, j, el(c * a.0 as u64));
        }
        for i in 0..s.nrows() {
            e.set_rhs(i, el(c * s.rhs(i).0 as u64));
        }
        parts.push(normal_form(&e)?.target);
    }

    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        rows.extend(part.row_ids().iter().map(|r| format!("{k}.{r}")));
        rows.push(format!("{k}.x=P"));
        rows.push(format!("{k}.Py=P"));
        cols.extend(part.col_ids().iter().map(|c| format!("{k}.{c}")));
        cols.extend(["x", "y", "z"].iter().map(|v| format!("{v}^{k}")));
    }
    rows.push("sum z = P".to_string());
    let mut t = LinSystem::new(&zm, rows, cols)?;
    let (mut r0, mut c0) = (0, 0);
    let mut z_cols = Vec::new();
    for part in &parts {
        let (xc, yc, zc) = (c0 + part.ncols(), c0 + part.ncols() + 1, c0 + part.ncols() + 2);
        for i in 0..part.nrows() {
            for (j, a) in part.row_terms(i) {
                t.set(r0 + i, c0 + j, a);
            }
            for v in [xc, yc, zc] {
                t.set(r0 + i, v, el(1));
            }
            t.set_rhs(r0 + i, part.rhs(i));
        }
        let xr = r0 + part.nrows();
        t.set(xr, xc, el(1));
        t.set_rhs(xr, el(p_prod));
        t.set(xr + 1, yc, el(p_prod));
        t.set_rhs(xr + 1, el(p_prod));
        z_cols.push(zc);
        r0 = xr + 2;
        c0 = zc + 1;
    }
    for zc in z_cols {
        t.set(r0, zc, el(1));
    }
    t.set_rhs(r0, el(p_prod));
    Ok(t)
}

/// Collapse a nested query into one system over `Z/p`.
///
/// `inner[(a, b)]` is an all-ones normal-form system over `Z/p` for every
/// outer row `a < rows` and column `b < cols`. The result is solvable iff the
/// outer system `M v = 1` is, where `M(a,b) = 1` iff `inner[(a,b)]` is
/// solvable.
pub fn collapse_nested(
    rows: usize,
    cols: usize,
    inner: &BTreeMap<(usize, usize), LinSystem>,
) -> Result<LinSystem> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument("outer system must be non-empty".into()));
    }
    let mut ring: Option<FiniteRing> = None;
    for a in 0..rows {
        for b in 0..cols {
            let s = inner
                .get(&(a, b))
                .ok_or_else(|| Error::InvalidArgument(format!("missing inner system ({a},{b})")))?;
            match &ring {
                None => ring = Some(s.ring().clone()),
                Some(r) if !r.same_ring(s.ring()) => {
                    return Err(Error::InvalidParameter("inner systems over different rings".into()))
                }
                _ => {}
            }
        }
    }
    let ring = ring.expect("non-empty");
    match ring.modulus() {
        Some(p) if arith::is_prime(p) => {}
        _ => {
            return Err(Error::Precondition(format!(
                "{} is not a prime field Z/p",
                ring.label()
            )))
        }
    }
    let one = ring.one();
    let minus_one = ring.neg(one);

    // (row ids, column ids, terms, rhs) blocks, assembled at the end
    let v_col = |a: usize, b: usize| a * cols + b;
    let mut col_ids: Vec<String> = (0..rows)
        .flat_map(|a| (0..cols).map(move |b| format!("v[{a},{b}]")))
        .collect();
    let mut row_ids: Vec<String> = (0..rows).map(|a| format!("outer[{a}]")).collect();
    let mut entries: Vec<(usize, usize, Elem)> = Vec::new();
    let mut rhs: Vec<Elem> = vec![one; rows];
    for a in 0..rows {
        for b in 0..cols {
            entries.push((a, v_col(a, b), one));
        }
    }
    let mut embed = |s: &LinSystem, tag: &str, extra: &[(usize, Elem)]| {
        let r0 = row_ids.len();
        let c0 = col_ids.len();
        row_ids.extend(s.row_ids().iter().map(|r| format!("{tag}.{r}")));
        col_ids.extend(s.col_ids().iter().map(|c| format!("{tag}.{c}")));
        for (i, j, x) in s.terms() {
            entries.push((r0 + i, c0 + j, x));
        }
        for i in 0..s.nrows() {
            for &(c, x) in extra {
                entries.push((r0 + i, c, x));
            }
            rhs.push(ring.zero());
        }
    };
    // y-copy of each inner system: sum c y = v_ab
    for a in 0..rows {
        for b in 0..cols {
            let s = &inner[&(a, b)];
            embed(s, &format!("in[{a},{b}]"), &[(v_col(a, b), minus_one)]);
        }
    }
    // rows a < c agreeing in solvability at column b force v_ab = v_cb
    for a in 0..rows {
        for c in a + 1..rows {
            for b in 0..cols {
                let x = xor_compose(&inner[&(a, b)], &inner[&(c, b)])?;
                let nf = normal_form(&x)?.target;
                embed(
                    &nf,
                    &format!("xor[{a},{c},{b}]"),
                    &[(v_col(a, b), minus_one), (v_col(c, b), one)],
                );
            }
        }
    }
    let mut t = LinSystem::new(&ring, row_ids, col_ids)?;
    for (i, j, x) in entries {
        t.add_to(i, j, x);
    }
    for (i, &b) in rhs.iter().enumerate() {
        t.set_rhs(i, b);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_solve, span_solve_zmod};

    fn single(r: &FiniteRing, a: i64, b: i64) -> LinSystem {
        LinSystem::from_dense(r, &[vec![r.from_int(a)]], &[r.from_int(b)]).unwrap()
    }

    fn solvable(s: &LinSystem) -> bool {
        span_solve_zmod(s).unwrap().is_some()
    }

    #[test]
    fn complement_examples() {
        let z2 = build_zmod(2).unwrap();
        let c = complement_chain(&single(&z2, 1, 0)).unwrap().target;
        assert!(brute_force_solve(&c).unwrap().solution.is_none());
        let z4 = build_zmod(4).unwrap();
        let c = complement_chain(&single(&z4, 2, 1)).unwrap().target;
        let y = brute_force_solve(&c).unwrap().solution.unwrap();
        assert_eq!(y, vec![z4.from_int(2)]);
    }

    #[test]
    fn and_or() {
        let z2 = build_zmod(2).unwrap();
        let yes = single(&z2, 1, 1);
        let no = single(&z2, 0, 1);
        assert!(!solvable(&and_compose(&yes, &no).unwrap()));
        assert!(solvable(&or_compose(&yes, &no).unwrap()));
        let z4 = build_zmod(4).unwrap();
        let no4 = single(&z4, 2, 1);
        assert!(!solvable(&or_compose(&no4, &no4).unwrap()));
        assert!(matches!(and_compose(&yes, &no4), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn general_or_shape() {
        let z2 = build_zmod(2).unwrap();
        let z3 = build_zmod(3).unwrap();
        let t = or_compose_general(&[single(&z2, 1, 1), single(&z3, 1, 1)]).unwrap();
        assert_eq!(t.ring().size(), 6);
        let last = t.nrows() - 1;
        assert_eq!(t.row_ids()[last], "sum z = P");
        assert_eq!(t.rhs(last), t.ring().one());
        assert!(solvable(&or_compose_general(&[single(&z2, 1, 1)]).unwrap()));
        assert!(matches!(
            or_compose_general(&[single(&z2, 1, 1), single(&z2, 1, 1)]),
            Err(Error::InvalidParameter(_))
        ));
    }

    fn unsat_inner(z2: &FiniteRing) -> LinSystem {
        let one = z2.one();
        let zero = z2.zero();
        LinSystem::from_dense(
            z2,
            &[vec![one, zero], vec![zero, one], vec![one, one]],
            &[one, one, one],
        )
        .unwrap()
    }

    #[test]
    fn collapse_examples() {
        let z2 = build_zmod(2).unwrap();
        let sat = single(&z2, 1, 1);
        let unsat = unsat_inner(&z2);
        let mut one_one = BTreeMap::new();
        one_one.insert((0, 0), sat.clone());
        assert!(solvable(&collapse_nested(1, 1, &one_one).unwrap()));
        one_one.insert((0, 0), unsat.clone());
        assert!(!solvable(&collapse_nested(1, 1, &one_one).unwrap()));
        let mut one_two = BTreeMap::new();
        one_two.insert((0, 0), unsat);
        one_two.insert((0, 1), sat);
        assert!(solvable(&collapse_nested(1, 2, &one_two).unwrap()));
    }
}
