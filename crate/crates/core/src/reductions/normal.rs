use std::sync::Arc;

use super::{ring_to_cyclic, ReductionOutput};
use crate::error::{Error, Result};
use crate::linsys::LinSystem;
use crate::ring::Elem;
use crate::structure::RingOrder;

/// Whether every coefficient is `1` and every right-hand side is `1`.
pub fn is_normal_form(s: &LinSystem) -> bool {
    let one = s.ring().one();
    s.terms().all(|(_, _, a)| a == one) && s.rhs_all().iter().all(|&b| b == one)
}

/// Equi-solvable system over `Z/m` with `{0,1}` coefficients and all-ones
/// right-hand side.
///
/// Stage one rewrites the system over `Z/m` (table-order generators). Stage
/// two introduces `w_r` (forced to `r` by `(1-r) w_1 + w_r = 1`) and one `v_e`
/// per row with `v_e + sum a x = 1` and `v_e + w_{b_e} = 1`. Stage three
/// replaces every variable `u` by copies `u.1 .. u.(m-1)`, writes a
/// coefficient `c` as `u.1 + .. + u.c`, and ties consecutive copies through a
/// negation variable: `u.k + u.k- + ref = 1` and `u.(k+1) + u.k- + ref = 1`.
pub fn normal_form(s: &LinSystem) -> Result<ReductionOutput<LinSystem>> {
    if !s.ring().is_commutative() {
        return Err(Error::Precondition("normal form needs a commutative ring".into()));
    }
    let stage1 = ring_to_cyclic(s, &RingOrder::table_order(s.ring()))?;
    let t1 = &stage1.target;
    let z = t1.ring().clone();
    let m = z.size() as u64;
    let el = |k: u64| Elem((k % m) as u32);

    // stage two
    let mut cols2: Vec<String> = t1.col_ids().to_vec();
    let n1 = cols2.len();
    let w0 = cols2.len();
    cols2.extend((0..m).map(|r| format!("w:{r}")));
    let v0 = cols2.len();
    cols2.extend(t1.row_ids().iter().map(|r| format!("v:{r}")));
    let mut rows2: Vec<String> = (0..m).map(|r| format!("w:{r}")).collect();
    for r in t1.row_ids() {
        rows2.push(format!("eq:{r}"));
        rows2.push(format!("rhs:{r}"));
    }
    let mut t2 = LinSystem::new(&z, rows2, cols2)?;
    for r in 0..m {
        t2.add_to(r as usize, w0 + 1, el(1 + m - r));
        t2.add_to(r as usize, w0 + r as usize, el(1));
        t2.set_rhs(r as usize, el(1));
    }
    for i in 0..t1.nrows() {
        let eq = m as usize + 2 * i;
        for (j, a) in t1.row_terms(i) {
            t2.add_to(eq, j, a);
        }
        t2.add_to(eq, v0 + i, el(1));
        t2.set_rhs(eq, el(1));
        t2.add_to(eq + 1, v0 + i, el(1));
        t2.add_to(eq + 1, w0 + t1.rhs(i).index(), el(1));
        t2.set_rhs(eq + 1, el(1));
    }

    // stage three
    let copies = (m - 1) as usize;
    let mut cols3: Vec<String> = Vec::new();
    for u in t2.col_ids() {
        for k in 1..=copies {
            cols3.push(format!("{u}.{k}"));
        }
    }
    let neg0 = cols3.len();
    if copies > 1 {
        for u in t2.col_ids() {
            for k in 1..copies {
                cols3.push(format!("{u}.{k}-"));
            }
        }
    }
    let reference = cols3.len();
    cols3.push("ref".to_string());
    let mut rows3: Vec<String> = t2.row_ids().to_vec();
    if copies > 1 {
        for u in t2.col_ids() {
            for k in 1..copies {
                rows3.push(format!("neg:{u}.{k}"));
                rows3.push(format!("tie:{u}.{k}"));
            }
        }
    }
    let mut t3 = LinSystem::new(&z, rows3, cols3)?;
    for i in 0..t2.nrows() {
        for (j, a) in t2.row_terms(i) {
            for k in 0..a.index() {
                t3.set(i, j * copies + k, el(1));
            }
        }
        t3.set_rhs(i, el(1));
    }
    if copies > 1 {
        let mut row = t2.nrows();
        for u in 0..t2.ncols() {
            for k in 0..copies - 1 {
                let neg = neg0 + u * (copies - 1) + k;
                t3.set(row, u * copies + k, el(1));
                t3.set(row, neg, el(1));
                t3.set(row, reference, el(1));
                t3.set_rhs(row, el(1));
                t3.set(row + 1, u * copies + k + 1, el(1));
                t3.set(row + 1, neg, el(1));
                t3.set(row + 1, reference, el(1));
                t3.set_rhs(row + 1, el(1));
                row += 2;
            }
        }
    }
    debug_assert!(is_normal_form(&t3));

    let mut trace = stage1.trace.clone();
    trace.push(format!(
        "stage two: {} variables, {} rows; stage three: {} variables, {} rows over Z/{m}",
        t2.ncols(),
        t2.nrows(),
        t3.ncols(),
        t3.nrows()
    ));
    let back1 = stage1.backward.clone().expect("ring_to_cyclic is constructive");
    let backward = Arc::new(move |x: &Vec<Elem>| -> Vec<Elem> {
        let firsts: Vec<Elem> = (0..n1).map(|j| x[j * copies]).collect();
        back1(&firsts)
    });
    Ok(ReductionOutput {
        target: t3,
        backward: Some(backward),
        trace,
    })
}
