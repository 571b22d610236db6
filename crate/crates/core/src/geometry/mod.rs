//! Vector fields and 1-forms on M, the intrinsic CR frame, Lie brackets and
//! exact rank computations.

pub mod fields;
pub mod frame;
pub mod rank;

pub use fields::{lie_bracket, one_form_apply, vf_conj, OneForm, VectorField};
pub use frame::{change_frame, constant_matrix, cramer_frame, rho0, Frame, FrameSet};
pub use rank::{
    decompose_in_frame, generic_rank, matrix_generic_rank, matrix_minor, rank_at_point, witness_minor, RankWitness,
};
