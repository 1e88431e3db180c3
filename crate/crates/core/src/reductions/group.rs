use std::sync::Arc;

use super::ReductionOutput;
use crate::error::Result;
use crate::group::AbelianGroup;
use crate::linsys::{GroupSystem, LinSystem};
use crate::ring::{Elem, FiniteRing, RingRep, TableSpec};

/// The ring `G x Z/d` (`d` the exponent of `G`) with
/// `(g1, m1) * (g2, m2) = (m2 g1 + m1 g2, m1 m2)`.
///
/// Element `(g, t)` has index `g + |G| t`; identity `(e, 1)`.
pub fn build_phi_ring(g: &AbelianGroup) -> Result<FiniteRing> {
    let d = g.exponent() as usize;
    let n = g.size();
    let size = n * d;
    crate::ring::check_size(size as u128)?;
    let split = |k: usize| (Elem((k % n) as u32), k / n);
    let join = |x: Elem, t: usize| (x.index() + n * t) as u32;
    let mut add = vec![0u32; size * size];
    let mut mul = vec![0u32; size * size];
    for a in 0..size {
        let (g1, m1) = split(a);
        for b in 0..size {
            let (g2, m2) = split(b);
            add[a * size + b] = join(g.add(g1, g2), (m1 + m2) % d);
            let prod = g.add(g.times(g1, m2 as i64), g.times(g2, m1 as i64));
            mul[a * size + b] = join(prod, m1 * m2 % d);
        }
    }
    let names = (0..size)
        .map(|k| {
            let (x, t) = split(k);
            format!("({},{t})", g.name(x))
        })
        .collect();
    TableSpec {
        label: format!("phi({})", g.label()),
        rep: RingRep::Table,
        size,
        add,
        mul,
        names,
        commutative: true,
    }
    .finish()
}

/// Group system to a ring system over `phi(G)`: coefficient `z` becomes
/// `(e, z mod d)` and right-hand side `g` becomes `(g, 0)`.
pub fn group_to_ring(gs: &GroupSystem) -> Result<ReductionOutput<LinSystem>> {
    let g = gs.group();
    let phi = build_phi_ring(g)?;
    group_to_ring_with(gs, &phi)
}

pub(crate) fn group_to_ring_with(
    gs: &GroupSystem,
    phi: &FiniteRing,
) -> Result<ReductionOutput<LinSystem>> {
    let g = gs.group();
    let n = g.size();
    let d = (phi.size() / n) as i64;
    let mut t = LinSystem::new(phi, gs.row_ids().to_vec(), gs.col_ids().to_vec())?;
    for i in 0..gs.nrows() {
        for (j, c) in gs.row_terms(i) {
            let coef = Elem((g.zero().index() + n * c.rem_euclid(d) as usize) as u32);
            t.set(i, j, coef);
        }
        t.set_rhs(i, gs.rhs(i));
    }
    let trace = vec![format!(
        "phi ring {} of size {} (exponent {d})",
        phi.label(),
        phi.size()
    )];
    let backward = Arc::new(move |x: &Vec<Elem>| -> Vec<Elem> {
        x.iter().map(|e| Elem((e.index() % n) as u32)).collect()
    });
    Ok(ReductionOutput {
        target: t,
        backward: Some(backward),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn phi_rings_are_rings() {
        for g in [
            AbelianGroup::cyclic(2).unwrap(),
            AbelianGroup::cyclic(3).unwrap(),
            AbelianGroup::product(&[AbelianGroup::cyclic(2).unwrap(), AbelianGroup::cyclic(2).unwrap()])
                .unwrap(),
        ] {
            let r = build_phi_ring(&g).unwrap();
            assert_eq!(r.size(), g.size() * g.exponent() as usize);
            oracle::check_ring_axioms(&r).unwrap();
            assert_eq!(r.name(r.one()), format!("({},1)", g.name(g.zero())));
            // {(g,0)} squares to zero
            for a in 0..g.size() {
                for b in 0..g.size() {
                    assert_eq!(r.mul(Elem(a as u32), Elem(b as u32)), r.zero());
                }
            }
        }
        let klein = build_phi_ring(
            &AbelianGroup::product(&[AbelianGroup::cyclic(2).unwrap(), AbelianGroup::cyclic(2).unwrap()])
                .unwrap(),
        )
        .unwrap();
        assert_eq!(klein.characteristic(), 2);
    }

    #[test]
    fn x_plus_x_over_z2() {
        let g = AbelianGroup::cyclic(2).unwrap();
        let mut gs = GroupSystem::new(&g, vec!["r".into()], vec!["x".into()]).unwrap();
        gs.set(0, 0, 2);
        gs.set_rhs(0, Elem(1));
        let out = group_to_ring(&gs).unwrap();
        assert!(oracle::brute_force_solve(&out.target).unwrap().solution.is_none());
    }
}
