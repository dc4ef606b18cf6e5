//! Mode entanglement: PPT separability, local symmetry twirls and the
//! relative entropy of entanglement.

mod lbfgs;
mod ppt;
mod solver;
mod symmetry;

pub use ppt::{
    is_separable, ppt_min_eigenvalue, separability_report, ChargeBlock, PPT_SUFFICIENT_DIM, PPT_TOL,
};
pub use solver::{
    mode_entanglement, solve_ree, ProductComponent, ReeResult, SeparableAnsatz, SolverConfig,
    ZERO_ENTANGLEMENT,
};
pub use symmetry::{twirl, LocalUnitary, PhaseFamily, PhaseKind, SymmetryGroup, UNITARY_TOL};
