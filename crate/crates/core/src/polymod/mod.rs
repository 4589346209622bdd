//! Polynomial ring `K[x_1..x_ℓ]` and graded submodules of `S^r`: Gröbner
//! bases, syzygies, intersections and minimal generators.

mod groebner;
mod modvec;
mod monomial;
mod poly;
mod submodule;

use thiserror::Error;

pub use groebner::{
    buchberger, buchberger_with_order, modvec_compare_leading, normal_form, GroebnerBasis,
    ModuleOrder,
};
pub use modvec::ModVec;
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub use submodule::{
    apply_relation, intersect_all, minimal_generators, module_intersect, module_membership,
    syzygy_basis, Submodule,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("ring mismatch: {0} vs {1} variables")]
    RingMismatch(usize, usize),
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("submodule is not graded")]
    NotGraded,
    #[error("empty generator list")]
    Empty,
}
