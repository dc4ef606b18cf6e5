//! Fermionic Fock space on up to twelve spin-orbitals.
//!
//! Configurations are bitmasks; ladder operators follow the Jordan–Wigner
//! ordering of the mode list. A partition whose blocks are contiguous
//! (block `A` before block `B` in mode order) factorizes the Fock space
//! literally, `|n_A n_B⟩ ↦ |n_A⟩ ⊗ |n_B⟩`, so partial traces need no signs.
//! Any other partition is brought into that form with [`reorder_modes`].

mod basis;
mod operator;
mod partition;
mod state;

pub use basis::{FockBasis, ModeBasis, OccupationState, Spin, MAX_MODES};
pub use operator::{
    annihilation_op, creation_op, one_particle_transform, FermionOperator, FermionTerm, Ladder,
};
pub use partition::{ModePartition, SectorProjector};
pub use state::{
    make_contiguous, marginals, mode_permutation_matrix, partial_trace, partial_transpose,
    reorder_modes, ssr_project, tensor_product, DensityMatrix, HERMITIAN_TOL, PSD_TOL, TRACE_TOL,
};
