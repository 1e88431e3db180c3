//! Solvers and certificates.
//!
//! Systems over a commutative ring are split along the idempotent base,
//! rewritten over `Z/p^a` through an additive decomposition of each local
//! summand, and solved there by Hermite elimination. Unsolvability is
//! certified on that reduced chain system.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{group_decompose_cyclic, CyclicDecomposition};
use crate::hermite::hermite_with;
use crate::linsys::{GroupSystem, LinSystem, TwoSidedSystem};
use crate::matrix::Matrix;
use crate::reductions::{self, CyclicPlan};
use crate::ring::{build_zmod, Elem, FiniteRing};
use crate::structure::{self, ChainData, Summand};

/// Row combination `x` with `x (A | b) = (0, .., 0, pi^(n-1))` on a reduced
/// chain system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Cyclic component of the group, for group and two-sided systems.
    pub component: Option<usize>,
    /// Position of the failing summand in the idempotent base.
    pub summand: usize,
    /// Ring of the reduced chain system.
    pub label: String,
    /// FNV-1a digest of the reduced chain system's canonical text.
    pub digest: u64,
    pub combination: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Solvable(Vec<Elem>),
    Unsolvable(Witness),
}

impl Certificate {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Certificate::Solvable(_))
    }

    pub fn solution(&self) -> Option<&[Elem]> {
        match self {
            Certificate::Solvable(x) => Some(x),
            Certificate::Unsolvable(_) => None,
        }
    }
}

/// Outcome over a chain ring: a solution, or a witness row combination.
pub enum ChainOutcome {
    Solution(Vec<Elem>),
    Witness(Vec<Elem>),
}

/// Whether `x (A | b) = (0, .., 0, pi^(n-1))`.
pub fn check_witness(s: &LinSystem, x: &[Elem], cd: &ChainData) -> bool {
    let r = s.ring();
    if x.len() != s.nrows() {
        return false;
    }
    let mut cols = vec![r.zero(); s.ncols()];
    for (i, j, a) in s.terms() {
        cols[j] = r.add(cols[j], r.mul(x[i], a));
    }
    let tail = r.sum((0..s.nrows()).map(|i| r.mul(x[i], s.rhs(i))));
    cols.iter().all(|&c| c == r.zero()) && tail == cd.pi_top
}

/// Hermite elimination and back substitution (free variables zero).
pub fn solve_chain_with(s: &LinSystem, cd: &ChainData) -> Result<ChainOutcome> {
    let r = s.ring();
    let a = s.matrix();
    let hnf = hermite_with(&a, cd)?;
    let b: Vec<Elem> = (0..s.nrows())
        .map(|i| r.sum((0..s.nrows()).map(|k| r.mul(hnf.s.get(i, k), s.rhs(k)))))
        .collect();
    let diag = |i: usize| if i < hnf.rank { hnf.diag[i] } else { r.zero() };

    if let Some(i) = (0..s.nrows()).find(|&i| !r.divides(diag(i), b[i])) {
        let c = r
            .elements()
            .find(|&c| {
                r.mul(c, b[i]) == cd.pi_top
                    && (0..s.ncols()).all(|j| r.mul(c, hnf.h.get(i, j)) == r.zero())
            })
            .ok_or_else(|| Error::Internal("no scalar turns a failing row into a witness".into()))?;
        let x: Vec<Elem> = (0..s.nrows()).map(|k| r.mul(c, hnf.s.get(i, k))).collect();
        if !check_witness(s, &x, cd) {
            return Err(Error::Internal("witness identity fails".into()));
        }
        return Ok(ChainOutcome::Witness(x));
    }

    let mut y = vec![r.zero(); s.ncols()];
    for i in (0..hnf.rank).rev() {
        let mut rest = b[i];
        for (j, yj) in y.iter().enumerate().skip(i + 1) {
            rest = r.sub(rest, r.mul(hnf.h.get(i, j), *yj));
        }
        y[i] = r
            .divide(rest, hnf.diag[i])
            .ok_or_else(|| Error::Internal("back substitution hit a non-divisible entry".into()))?;
    }
    let mut x = vec![r.zero(); s.ncols()];
    for (k, &j) in hnf.perm.iter().enumerate() {
        x[j] = y[k];
    }
    if !s.eval(&x)? {
        return Err(Error::Internal("back-substituted assignment fails".into()));
    }
    Ok(ChainOutcome::Solution(x))
}

/// Solve a system over a chain ring directly.
pub fn solve_chain(s: &LinSystem) -> Result<Certificate> {
    let cd = structure::chain_data(s.ring())?.ok_or_else(|| {
        Error::Precondition(format!("{} is not a chain ring", s.ring().label()))
    })?;
    Ok(match solve_chain_with(s, &cd)? {
        ChainOutcome::Solution(x) => Certificate::Solvable(x),
        ChainOutcome::Witness(x) => Certificate::Unsolvable(Witness {
            component: None,
            summand: 0,
            label: s.ring().label().to_string(),
            digest: s.digest(),
            combination: x,
        }),
    })
}

struct LocalPlan {
    summand: Summand,
    cyclic: CyclicPlan,
    chain: ChainData,
}

/// Reusable solver for one commutative ring; caches the decomposition, the
/// canonical orders and the additive plans.
pub struct CommutativeSolver {
    ring: FiniteRing,
    plans: Vec<LocalPlan>,
}

impl CommutativeSolver {
    pub fn new(ring: &FiniteRing) -> Result<Self> {
        if !ring.is_commutative() {
            return Err(Error::Precondition(format!(
                "{} is not commutative",
                ring.label()
            )));
        }
        let mut plans = Vec::new();
        for summand in structure::decompose_local(ring)? {
            let (alpha, pis) = structure::canonical_params(&summand.ring)?;
            let order = structure::canonical_order(&summand.ring, alpha, &pis)?;
            let cyclic = CyclicPlan::new(&summand.ring, &order)?;
            let chain = structure::chain_data(&cyclic.target)?
                .ok_or_else(|| Error::Internal("Z/p^a is not a chain ring".into()))?;
            plans.push(LocalPlan {
                summand,
                cyclic,
                chain,
            });
        }
        Ok(CommutativeSolver {
            ring: ring.clone(),
            plans,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn summand_count(&self) -> usize {
        self.plans.len()
    }

    fn check_ring(&self, s: &LinSystem) -> Result<()> {
        if s.ring().same_ring(&self.ring) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "system over {}, solver over {}",
                s.ring().label(),
                self.ring.label()
            )))
        }
    }

    fn reduce(&self, s: &LinSystem, k: usize) -> Result<(LinSystem, reductions::ReductionOutput<LinSystem>, reductions::ReductionOutput<LinSystem>)> {
        let plan = &self.plans[k];
        let projected = reductions::project_to_summand(s, &plan.summand)?;
        let cyclic = plan.cyclic.apply(&projected.target)?;
        Ok((cyclic.target.clone(), projected, cyclic))
    }

    /// The system over `Z/p^a` that summand `k` of `s` reduces to.
    pub fn reduced_chain_system(&self, s: &LinSystem, k: usize) -> Result<LinSystem> {
        self.check_ring(s)?;
        if k >= self.plans.len() {
            return Err(Error::InvalidArgument(format!("no summand {k}")));
        }
        Ok(self.reduce(s, k)?.0)
    }

    pub fn chain_data(&self, k: usize) -> &ChainData {
        &self.plans[k].chain
    }

    pub fn solve(&self, s: &LinSystem) -> Result<Certificate> {
        self.check_ring(s)?;
        let r = &self.ring;
        let mut x = vec![r.zero(); s.ncols()];
        for (k, plan) in self.plans.iter().enumerate() {
            let (chain_sys, projected, cyclic) = self.reduce(s, k)?;
            match solve_chain_with(&chain_sys, &plan.chain)? {
                ChainOutcome::Solution(z) => {
                    let local = cyclic.map_back(&z).expect("constructive");
                    let global = projected.map_back(&local).expect("constructive");
                    for (slot, v) in x.iter_mut().zip(global) {
                        *slot = r.add(*slot, v);
                    }
                }
                ChainOutcome::Witness(c) => {
                    return Ok(Certificate::Unsolvable(Witness {
                        component: None,
                        summand: k,
                        label: chain_sys.ring().label().to_string(),
                        digest: chain_sys.digest(),
                        combination: c,
                    }))
                }
            }
        }
        if !s.eval(&x)? {
            return Err(Error::Internal("recombined solution fails the source system".into()));
        }
        Ok(Certificate::Solvable(x))
    }

    fn verify_witness(&self, s: &LinSystem, w: &Witness) -> Result<bool> {
        if w.summand >= self.plans.len() {
            return Err(Error::InvalidCertificate(format!("no summand {}", w.summand)));
        }
        let reduced = self.reduced_chain_system(s, w.summand)?;
        if reduced.ring().label() != w.label || reduced.digest() != w.digest {
            return Ok(false);
        }
        if w.combination.len() != reduced.nrows()
            || w.combination.iter().any(|c| c.index() >= reduced.ring().size())
        {
            return Err(Error::InvalidCertificate("combination has the wrong shape".into()));
        }
        Ok(check_witness(&reduced, &w.combination, &self.plans[w.summand].chain))
    }
}

/// Full pipeline over a commutative ring.
pub fn solve_commutative(s: &LinSystem) -> Result<Certificate> {
    CommutativeSolver::new(s.ring())?.solve(s)
}

/// Check a certificate against a system over a commutative ring.
pub fn verify_certificate(s: &LinSystem, cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::Solvable(x) => {
            if x.len() != s.ncols() || x.iter().any(|v| v.index() >= s.ring().size()) {
                return Err(Error::InvalidCertificate("assignment has the wrong shape".into()));
            }
            s.eval(x)
        }
        Certificate::Unsolvable(w) => {
            if w.component.is_some() {
                return Err(Error::InvalidCertificate(
                    "component index on a ring system".into(),
                ));
            }
            // witnesses emitted by solve_chain refer to the system itself
            if w.label == s.ring().label() && w.digest == s.digest() {
                if let Some(cd) = structure::chain_data(s.ring())? {
                    if w.combination.len() != s.nrows() {
                        return Err(Error::InvalidCertificate(
                            "combination has the wrong shape".into(),
                        ));
                    }
                    return Ok(check_witness(s, &w.combination, &cd));
                }
            }
            CommutativeSolver::new(s.ring())?.verify_witness(s, w)
        }
    }
}

/// Solver for systems over one abelian group: one system over `Z/l_y` per
/// cyclic component.
pub struct GroupSolver {
    decomposition: CyclicDecomposition,
    solvers: HashMap<u64, CommutativeSolver>,
}

impl GroupSolver {
    pub fn new(g: &crate::group::AbelianGroup) -> Result<Self> {
        let decomposition = group_decompose_cyclic(g)?;
        let mut solvers = HashMap::new();
        for &l in &decomposition.orders {
            if let std::collections::hash_map::Entry::Vacant(e) = solvers.entry(l) {
                e.insert(CommutativeSolver::new(&build_zmod(l)?)?);
            }
        }
        Ok(GroupSolver {
            decomposition,
            solvers,
        })
    }

    /// Component `y` of the system: `sum_j a_ij x_jy = b_iy` over `Z/l_y`.
    pub fn component_system(&self, gs: &GroupSystem, y: usize) -> Result<LinSystem> {
        let l = *self
            .decomposition
            .orders
            .get(y)
            .ok_or_else(|| Error::InvalidArgument(format!("no component {y}")))?;
        let z = self.solvers[&l].ring().clone();
        let mut s = LinSystem::new(&z, gs.row_ids().to_vec(), gs.col_ids().to_vec())?;
        for i in 0..gs.nrows() {
            for (j, c) in gs.row_terms(i) {
                s.set(i, j, z.from_int(c));
            }
            s.set_rhs(i, Elem(self.decomposition.coords[gs.rhs(i).index()][y] as u32));
        }
        Ok(s)
    }

    pub fn solve(&self, gs: &GroupSystem) -> Result<Certificate> {
        let g = gs.group();
        let mut x = vec![g.zero(); gs.ncols()];
        for y in 0..self.decomposition.rank() {
            let s = self.component_system(gs, y)?;
            let solver = &self.solvers[&self.decomposition.orders[y]];
            match solver.solve(&s)? {
                Certificate::Solvable(v) => {
                    let gen = self.decomposition.generators[y];
                    for (slot, val) in x.iter_mut().zip(v) {
                        *slot = g.add(*slot, g.times(gen, val.0 as i64));
                    }
                }
                Certificate::Unsolvable(mut w) => {
                    w.component = Some(y);
                    return Ok(Certificate::Unsolvable(w));
                }
            }
        }
        if !gs.eval(&x)? {
            return Err(Error::Internal("recombined group solution fails".into()));
        }
        Ok(Certificate::Solvable(x))
    }

    pub fn verify(&self, gs: &GroupSystem, cert: &Certificate) -> Result<bool> {
        match cert {
            Certificate::Solvable(x) => {
                if x.len() != gs.ncols() || x.iter().any(|v| v.index() >= gs.group().size()) {
                    return Err(Error::InvalidCertificate("assignment has the wrong shape".into()));
                }
                gs.eval(x)
            }
            Certificate::Unsolvable(w) => {
                let y = w.component.ok_or_else(|| {
                    Error::InvalidCertificate("group witness needs a component".into())
                })?;
                if y >= self.decomposition.rank() {
                    return Err(Error::InvalidCertificate(format!("no component {y}")));
                }
                let s = self.component_system(gs, y)?;
                let inner = Witness {
                    component: None,
                    ..w.clone()
                };
                self.solvers[&self.decomposition.orders[y]].verify_witness(&s, &inner)
            }
        }
    }
}

pub fn solve_group(gs: &GroupSystem) -> Result<Certificate> {
    GroupSolver::new(gs.group())?.solve(gs)
}

pub fn verify_group_certificate(gs: &GroupSystem, cert: &Certificate) -> Result<bool> {
    GroupSolver::new(gs.group())?.verify(gs, cert)
}

/// The system over `Z/d` that a two-sided system reduces to, with the map
/// from its solutions back to the source.
pub fn twosided_reduced(
    ts: &TwoSidedSystem,
) -> Result<(LinSystem, impl Fn(&[Elem]) -> Vec<Elem>)> {
    let numerical = reductions::twosided_to_numerical(ts)?;
    let zd = reductions::numerical_to_zmod(&numerical.target)?;
    let back = numerical.backward.clone().expect("constructive");
    let map = move |x: &[Elem]| -> Vec<Elem> {
        let z: Vec<u64> = x.iter().map(|e| e.0 as u64).collect();
        back(&z)
    };
    Ok((zd.target, map))
}

/// Two-sided systems via integer unknowns over `(R, +)`.
pub fn solve_twosided(ts: &TwoSidedSystem) -> Result<Certificate> {
    let (s, back) = twosided_reduced(ts)?;
    match solve_commutative(&s)? {
        Certificate::Solvable(z) => {
            let x = back(&z);
            if !ts.eval(&x)? {
                return Err(Error::Internal("two-sided solution fails the source".into()));
            }
            Ok(Certificate::Solvable(x))
        }
        unsolvable => Ok(unsolvable),
    }
}

pub fn verify_twosided_certificate(ts: &TwoSidedSystem, cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::Solvable(x) => {
            if x.len() != ts.ncols() || x.iter().any(|v| v.index() >= ts.ring().size()) {
                return Err(Error::InvalidCertificate("assignment has the wrong shape".into()));
            }
            ts.eval(x)
        }
        Certificate::Unsolvable(_) => {
            let (s, _) = twosided_reduced(ts)?;
            verify_certificate(&s, cert)
        }
    }
}

/// Dense `(A | b)` of a system, for witness checks and display.
pub fn augmented(s: &LinSystem) -> Matrix {
    let r = s.ring();
    let mut cols = s.col_ids().to_vec();
    cols.push(reductions_rhs_id(&cols));
    let mut m = Matrix::zeros(r, s.row_ids().to_vec(), cols);
    for (i, j, a) in s.terms() {
        m.set(i, j, a);
    }
    for i in 0..s.nrows() {
        m.set(i, s.ncols(), s.rhs(i));
    }
    m
}

fn reductions_rhs_id(cols: &[String]) -> String {
    let mut id = "|".to_string();
    while cols.contains(&id) {
        id.push('|');
    }
    id
}
