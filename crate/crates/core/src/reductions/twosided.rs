use std::sync::Arc;

use super::{fresh_name, ReductionOutput};
use crate::error::Result;
use crate::group::{group_decompose_cyclic, AbelianGroup};
use crate::linsys::{LinSystem, NumericalSystem, TwoSidedSystem};
use crate::ring::{build_zmod, Elem};

/// Two-sided system to a system with integer unknowns `x_j^s` over `(R, +)`:
/// each term `a x_j` becomes `sum_s (a s) x_j^s` and `x_j a` becomes
/// `sum_s (s a) x_j^s`.
///
/// A variable carrying both left and right coefficients is first split into
/// `x_j` (left terms) and a copy `x_j'` (right terms) tied by
/// `x_j - x_j' = 0`.
pub fn twosided_to_numerical(ts: &TwoSidedSystem) -> Result<ReductionOutput<NumericalSystem>> {
    let r = ts.ring();
    let (lefty, righty) = ts.sidedness();
    let mut cols: Vec<String> = ts.col_ids().to_vec();
    let mut rows: Vec<String> = ts.row_ids().to_vec();
    let mut right_col: Vec<usize> = (0..ts.ncols()).collect();
    let mut ties = Vec::new();
    for j in 0..ts.ncols() {
        if lefty[j] && righty[j] {
            let copy = fresh_name(&cols, &format!("{}'", ts.col_ids()[j]));
            cols.push(copy);
            right_col[j] = cols.len() - 1;
            let row = fresh_name(&rows, &format!("split:{}", ts.col_ids()[j]));
            rows.push(row);
            ties.push((j, right_col[j]));
        }
    }
    // expanded system over the ring: left and right coefficients per column
    let nrows = rows.len();
    let ncols = cols.len();
    let mut left = vec![vec![r.zero(); ncols]; nrows];
    let mut right = vec![vec![r.zero(); ncols]; nrows];
    for i in 0..ts.nrows() {
        for (j, a) in ts.left_terms(i) {
            left[i][j] = r.add(left[i][j], a);
        }
        for (j, a) in ts.right_terms(i) {
            let jj = right_col[j];
            right[i][jj] = r.add(right[i][jj], a);
        }
    }
    for (k, &(j, jj)) in ties.iter().enumerate() {
        let i = ts.nrows() + k;
        left[i][j] = r.one();
        right[i][jj] = r.neg(r.one());
    }

    let g = AbelianGroup::additive(r);
    let elems: Vec<Elem> = r.elements().collect();
    let ncols_num = ncols * elems.len();
    let num_cols: Vec<String> = cols
        .iter()
        .flat_map(|c| elems.iter().map(move |&s| format!("{c}^{}", r.name(s))))
        .collect();
    let mut t = NumericalSystem::new(&g, rows.clone(), num_cols)?;
    for i in 0..nrows {
        for j in 0..ncols {
            for (k, &s) in elems.iter().enumerate() {
                let coef = r.add(r.mul(left[i][j], s), r.mul(s, right[i][j]));
                t.set(i, j * elems.len() + k, coef);
            }
        }
        if i < ts.nrows() {
            t.set_rhs(i, ts.rhs(i));
        }
    }
    let trace = vec![
        format!("{} split variable(s)", ties.len()),
        format!(
            "{} integer unknowns over ({},+), exponent {}",
            ncols_num,
            r.label(),
            g.exponent()
        ),
    ];
    let ring = r.clone();
    let nsrc = ts.ncols();
    let backward = Arc::new(move |z: &Vec<u64>| -> Vec<Elem> {
        let n = ring.size();
        (0..nsrc)
            .map(|j| ring.sum((0..n).map(|k| ring.times(Elem(k as u32), z[j * n + k]))))
            .collect()
    });
    Ok(ReductionOutput {
        target: t,
        backward: Some(backward),
        trace,
    })
}

/// Indicator solution of the numerical system for a two-sided solution `x`:
/// `x_j^s = 1` iff `x_j = s` (split copies follow their original).
pub fn numerical_indicator(ts: &TwoSidedSystem, x: &[Elem]) -> Vec<u64> {
    let (lefty, righty) = ts.sidedness();
    let n = ts.ring().size();
    let mut values: Vec<Elem> = x.to_vec();
    for j in 0..ts.ncols() {
        if lefty[j] && righty[j] {
            values.push(x[j]);
        }
    }
    let mut z = vec![0u64; values.len() * n];
    for (j, v) in values.iter().enumerate() {
        z[j * n + v.index()] = 1;
    }
    z
}

/// Integer-unknown system over `G` to a system over `Z/d` (`d` the exponent):
/// row `(i, y)` is component `y` of row `i` in a cyclic decomposition of `G`,
/// scaled by `d / l_y`.
pub fn numerical_to_zmod(ns: &NumericalSystem) -> Result<ReductionOutput<LinSystem>> {
    let g = ns.group();
    let dec = group_decompose_cyclic(g)?;
    let d = g.exponent().max(2);
    let z = build_zmod(d)?;
    let k = dec.rank().max(1);
    let rows: Vec<String> = ns
        .row_ids()
        .iter()
        .flat_map(|r| (0..k).map(move |y| format!("{r}#{y}")))
        .collect();
    let mut t = LinSystem::new(&z, rows, ns.col_ids().to_vec())?;
    for y in 0..dec.rank() {
        let mult = d / dec.orders[y];
        for i in 0..ns.nrows() {
            let row = i * k + y;
            for (j, a) in ns.row_terms(i) {
                let c = mult * dec.coords[a.index()][y] % d;
                t.set(row, j, Elem(c as u32));
            }
            t.set_rhs(row, Elem((mult * dec.coords[ns.rhs(i).index()][y] % d) as u32));
        }
    }
    let trace = vec![format!(
        "cyclic orders ({}) in Z/{d}",
        dec.orders.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    )];
    let backward = Arc::new(|x: &Vec<Elem>| -> Vec<Elem> { x.clone() });
    Ok(ReductionOutput {
        target: t,
        backward: Some(backward),
        trace,
    })
}
