use std::sync::Arc;

use super::ReductionOutput;
use crate::error::{Error, Result};
use crate::group::{decompose_additive, CyclicDecomposition};
use crate::linsys::LinSystem;
use crate::ring::{build_zmod, Elem, FiniteRing};
use crate::structure::RingOrder;

/// Additive generators of a commutative ring, chosen along an order, and the
/// structure constants `g_i * g_j = sum_y c[i][j][y] g_y`.
#[derive(Clone, Debug)]
pub struct CyclicPlan {
    pub ring: FiniteRing,
    pub decomposition: CyclicDecomposition,
    pub constants: Vec<Vec<Vec<u64>>>,
    /// The target ring `Z/m`, `m` the characteristic.
    pub target: FiniteRing,
}

impl CyclicPlan {
    pub fn new(ring: &FiniteRing, order: &RingOrder) -> Result<Self> {
        if !ring.is_commutative() {
            return Err(Error::Precondition(format!(
                "{} is not commutative",
                ring.label()
            )));
        }
        let decomposition =
            decompose_additive(ring.size(), ring.zero(), &|a, b| ring.add(a, b), order.elements())?;
        let g = &decomposition.generators;
        let constants = g
            .iter()
            .map(|&gi| {
                g.iter()
                    .map(|&gj| decomposition.coords[ring.mul(gi, gj).index()].clone())
                    .collect()
            })
            .collect();
        Ok(CyclicPlan {
            ring: ring.clone(),
            constants,
            target: build_zmod(ring.characteristic())?,
            decomposition,
        })
    }

    pub fn rank(&self) -> usize {
        self.decomposition.rank()
    }

    pub fn modulus(&self) -> u64 {
        self.ring.characteristic()
    }

    /// `b_j^{r,y} = sum_i r_i c_y^{ij} mod l_y`: coefficient of `x_j` in
    /// component `y` of `r * x`.
    pub fn b_coeff(&self, r: Elem, j: usize, y: usize) -> u64 {
        let coords = &self.decomposition.coords[r.index()];
        let ly = self.decomposition.orders[y];
        coords
            .iter()
            .enumerate()
            .map(|(i, &ri)| ri * self.constants[i][j][y] % ly)
            .sum::<u64>()
            % ly
    }

    /// `sum_i c_i g_i`.
    pub fn assemble(&self, coeffs: &[Elem]) -> Elem {
        let r = &self.ring;
        r.sum(
            self.decomposition
                .generators
                .iter()
                .zip(coeffs)
                .map(|(&g, c)| r.times(g, c.0 as u64)),
        )
    }

    pub fn trace(&self) -> Vec<String> {
        let r = &self.ring;
        let d = &self.decomposition;
        let mut out = vec![format!(
            "generators: {}",
            d.generators
                .iter()
                .zip(&d.orders)
                .map(|(&g, l)| format!("{} (order {l})", r.name(g)))
                .collect::<Vec<_>>()
                .join(", ")
        )];
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let c: Vec<String> = self.constants[i][j].iter().map(u64::to_string).collect();
                out.push(format!("c^{{{i}{j}}} = ({})", c.join(",")));
            }
        }
        out
    }

    /// Forward map: one variable `x#i` per source variable and generator, one
    /// row `e#y` per source row and generator, and the congruence mod `l_y`
    /// scaled by `m / l_y` into `Z/m`.
    pub fn apply(&self, s: &LinSystem) -> Result<ReductionOutput<LinSystem>> {
        if !s.ring().same_ring(&self.ring) {
            return Err(Error::InvalidArgument(format!(
                "system is over {}, plan over {}",
                s.ring().label(),
                self.ring.label()
            )));
        }
        let k = self.rank();
        let m = self.modulus();
        let z = &self.target;
        let orders = &self.decomposition.orders;
        let cols: Vec<String> = s
            .col_ids()
            .iter()
            .flat_map(|c| (0..k).map(move |i| format!("{c}#{i}")))
            .collect();
        let rows: Vec<String> = s
            .row_ids()
            .iter()
            .flat_map(|r| (0..k).map(move |y| format!("{r}#{y}")))
            .collect();
        let mut t = LinSystem::new(z, rows, cols)?;
        let mut trace = self.trace();
        for i in 0..s.nrows() {
            let b = &self.decomposition.coords[s.rhs(i).index()];
            for y in 0..k {
                let row = i * k + y;
                let mult = m / orders[y];
                for (j, a) in s.row_terms(i) {
                    for jj in 0..k {
                        let bj = self.b_coeff(a, jj, y);
                        if bj != 0 {
                            t.add_to(row, j * k + jj, Elem(((mult * bj) % m) as u32));
                        }
                    }
                }
                t.set_rhs(row, Elem(((mult * b[y]) % m) as u32));
            }
        }
        for i in 0..s.nrows() {
            for (j, a) in s.row_terms(i) {
                let bs: Vec<String> = (0..k)
                    .map(|y| {
                        let v: Vec<String> =
                            (0..k).map(|jj| self.b_coeff(a, jj, y).to_string()).collect();
                        format!("[{}]", v.join(","))
                    })
                    .collect();
                trace.push(format!(
                    "b^{{r,y}} for r = {} on {}: {}",
                    self.ring.name(a),
                    s.col_ids()[j],
                    bs.join(" ")
                ));
            }
        }
        let plan = self.clone();
        let ncols = s.ncols();
        let backward = Arc::new(move |x: &Vec<Elem>| -> Vec<Elem> {
            (0..ncols)
                .map(|j| plan.assemble(&x[j * plan.rank()..(j + 1) * plan.rank()]))
                .collect()
        });
        Ok(ReductionOutput {
            target: t,
            backward: Some(backward),
            trace,
        })
    }
}

/// Rewrite a system over a commutative ring as a system over `Z/m`, using the
/// additive generators chosen along `order`.
pub fn ring_to_cyclic(s: &LinSystem, order: &RingOrder) -> Result<ReductionOutput<LinSystem>> {
    CyclicPlan::new(s.ring(), order)?.apply(s)
}
