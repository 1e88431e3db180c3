//! Solvability-preserving transformations between system families.
//!
//! Each reduction returns its target instance, a backward map from target
//! solutions to source solutions where one exists, and a trace of the
//! construction parameters.

use std::fmt;
use std::sync::Arc;

use crate::linsys::Instance;
use crate::ring::Elem;

mod cyclic;
mod group;
mod local;
mod logic;
mod normal;
mod twosided;

pub use cyclic::{ring_to_cyclic, CyclicPlan};
pub use group::{build_phi_ring, group_to_ring};
pub use local::{project_to_local, project_to_summand};
pub use logic::{and_compose, collapse_nested, complement_chain, or_compose, or_compose_general, xor_compose};
pub use normal::{is_normal_form, normal_form};
pub use twosided::{numerical_indicator, numerical_to_zmod, twosided_to_numerical};

pub type Backward<T> = Arc<dyn Fn(&<T as Instance>::Solution) -> Vec<Elem> + Send + Sync>;

pub struct ReductionOutput<T: Instance> {
    pub target: T,
    /// Maps a target solution to a source solution; absent when the
    /// reduction only preserves solvability.
    pub backward: Option<Backward<T>>,
    pub trace: Vec<String>,
}

impl<T: Instance> ReductionOutput<T> {
    pub fn map_back(&self, solution: &T::Solution) -> Option<Vec<Elem>> {
        self.backward.as_ref().map(|f| f(solution))
    }
}

impl<T: Instance + fmt::Debug> fmt::Debug for ReductionOutput<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionOutput")
            .field("target", &self.target)
            .field("backward", &self.backward.is_some())
            .field("trace", &self.trace)
            .finish()
    }
}

/// `base`, or `base'`, `base''`, .. until it is not in `taken`.
pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.iter().any(|t| t == &name) {
        name.push('\'');
    }
    name
}
