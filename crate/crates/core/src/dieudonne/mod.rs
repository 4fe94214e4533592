//! Dieudonné modules over finite fields and truncated Witt rings.

pub mod algebra;
pub mod aut;
pub mod bound;
pub mod endo;
pub mod matrix;
pub mod module;

pub use algebra::{FpAlgebra, Subspace};
pub use aut::{
    automorphism_group, automorphism_order, lift_image, pi0, pi0_at, splitting_degree,
    stable_automorphism_order, stable_endomorphism_units, ComponentGroup, LiftImage, MatrixGroup,
};
pub use bound::{automorphism_bound, gl_maximal_order, NewtonPolygon, Segment};
pub use endo::{
    adjoint, endomorphism_algebra, is_endomorphism, preserves_pairing, EndoAlgebra, MatrixAlgebra,
};
pub use matrix::RingMat;
pub use module::{
    etale_module, minimal_module, multiplicative_module, ordinary_module, polarized_double,
    twisted_etale_plane, DieudonneModule, SemilinearMap,
};
