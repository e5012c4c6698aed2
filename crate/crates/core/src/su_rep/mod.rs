//! Representation theory of `su(n+1)` and its isotropy subalgebra
//! `k ≅ u(n)` for `CP^n = SU(n+1)/U(n)`.

mod branching;
mod irrep;
mod weights;

pub use branching::{branch_from_character, branch_to_k, BranchingTable};
pub use irrep::{casimir_from, compact_basis, Irrep, DEFAULT_DIM_CAP};
pub use weights::{
    casimir_constant, casimir_constant_unchecked, decompose_under_k, from_unitary_coords, gl_character,
    gl_dimension, is_dominant, is_k_dominant, k_dimension, pairing, rho, rho_for, rho_k, slcn_ktype,
    su_character, to_unitary_coords, weyl_dimension, Algebra, Weight,
};
