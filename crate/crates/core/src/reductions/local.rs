use std::sync::Arc;

use super::ReductionOutput;
use crate::error::{Error, Result};
use crate::linsys::LinSystem;
use crate::ring::Elem;
use crate::structure::{self, Summand};

/// Entrywise projection `r -> e r` onto the summand `eR`, `e` in the base.
pub fn project_to_local(s: &LinSystem, e: Elem) -> Result<ReductionOutput<LinSystem>> {
    let summands = structure::decompose_local(s.ring())?;
    let summand = summands.into_iter().find(|x| x.e == e).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "{} is not a base idempotent of {}",
            s.ring().name(e),
            s.ring().label()
        ))
    })?;
    project_to_summand(s, &summand)
}

pub fn project_to_summand(s: &LinSystem, summand: &Summand) -> Result<ReductionOutput<LinSystem>> {
    let mut t = LinSystem::new(&summand.ring, s.row_ids().to_vec(), s.col_ids().to_vec())?;
    for (i, j, a) in s.terms() {
        t.set(i, j, summand.project(a));
    }
    for i in 0..s.nrows() {
        t.set_rhs(i, summand.project(s.rhs(i)));
    }
    let trace = vec![format!(
        "projection onto e = {} ({} elements)",
        s.ring().name(summand.e),
        summand.ring.size()
    )];
    let sm = summand.clone();
    let backward = Arc::new(move |x: &Vec<Elem>| -> Vec<Elem> { x.iter().map(|&v| sm.embed(v)).collect() });
    Ok(ReductionOutput {
        target: t,
        backward: Some(backward),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_solve;
    use crate::ring::build_zmod;

    #[test]
    fn two_x_equals_one_over_z6() {
        let z6 = build_zmod(6).unwrap();
        let s = LinSystem::from_dense(&z6, &[vec![z6.from_int(2)]], &[z6.one()]).unwrap();
        let on3 = project_to_local(&s, z6.from_int(3)).unwrap();
        assert_eq!(on3.target.get(0, 0), on3.target.ring().zero());
        assert!(brute_force_solve(&on3.target).unwrap().solution.is_none());
        let on4 = project_to_local(&s, z6.from_int(4)).unwrap();
        assert!(brute_force_solve(&on4.target).unwrap().solution.is_some());
        assert!(matches!(
            project_to_local(&s, z6.from_int(2)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn local_ring_is_unchanged() {
        let z9 = build_zmod(9).unwrap();
        let s = LinSystem::from_dense(&z9, &[vec![z9.from_int(3)]], &[z9.from_int(6)]).unwrap();
        let out = project_to_local(&s, z9.one()).unwrap();
        assert_eq!(out.target.canonical_text(), s.canonical_text());
    }
}
