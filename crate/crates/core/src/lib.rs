//! Finite rings, abelian groups, and solvability of linear equation systems
//! over them, with certificates, reductions between system classes, and
//! matrix algebra over Galois rings.

pub mod arith;
pub mod charpoly;
pub mod error;
pub mod format;
pub mod group;
pub mod hermite;
pub mod linsys;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod reductions;
pub mod ring;
pub mod solve;
pub mod structure;

pub use charpoly::{charpoly, charpoly_galois, determinant, CharPoly};
pub use error::{Error, Result};
pub use group::{group_decompose_cyclic, AbelianGroup, CyclicDecomposition};
pub use hermite::{hermite_normal_form, HermiteResult};
pub use linsys::{GroupSystem, LinSystem, NumericalSystem, TwoSidedSystem};
pub use matrix::{gl_order, gl_order_local, inverse, is_invertible, mat_add, mat_mul, mat_pow, Matrix};
pub use ring::{
    build_galois_ring, build_monomial_quotient, build_poly_quotient, build_product,
    build_table_ring, build_upper_triangular, build_zmod, Elem, FiniteRing,
};
pub use solve::{
    solve_chain, solve_commutative, solve_group, solve_twosided, verify_certificate,
    verify_group_certificate, verify_twosided_certificate, Certificate, CommutativeSolver, Witness,
};
