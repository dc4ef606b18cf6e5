//! Peres–Horodecki test, globally and per fixed-local-charge block.

use crate::error::{Error, Result};
use crate::fock::{make_contiguous, partial_transpose, ssr_project, DensityMatrix, ModePartition};
use crate::linalg::{eigvalsh, CMat};

/// A partial-transpose eigenvalue below `-PPT_TOL` signals entanglement.
pub const PPT_TOL: f64 = 1e-10;
/// Largest `d_A d_B` for which PPT is sufficient.
pub const PPT_SUFFICIENT_DIM: usize = 6;
const BLOCK_TOL: f64 = 1e-12;

/// Smallest eigenvalue of the partial transpose over block B.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix, partition: &ModePartition) -> Result<f64> {
    partition.require_bipartition()?;
    let (state, part) = make_contiguous(rho, partition)?;
    let pt = partial_transpose(&state, &part, 1)?;
    Ok(eigvalsh(&pt)[0])
}

/// One `(N_A, N_B)` block of a charge-block-diagonal state.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeBlock {
    pub charges: (u32, u32),
    pub dims: (usize, usize),
    pub weight: f64,
    /// Smallest partial-transpose eigenvalue of the (unnormalized) block;
    /// `None` when one side is one-dimensional.
    pub ppt_min: Option<f64>,
}

fn configs(n: usize, charge: u32) -> Vec<usize> {
    (0..1usize << n).filter(|s| s.count_ones() == charge).collect()
}

/// Decompose a full-Fock matrix of a contiguous bipartition into its
/// fixed-local-charge blocks, failing if it has coherences between them.
pub(crate) fn charge_blocks(m: &CMat, na: usize, nb: usize) -> Result<Vec<ChargeBlock>> {
    let da = 1usize << na;
    let n = m.nrows();
    let charge = |i: usize| ((i % da).count_ones(), (i / da).count_ones());
    let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    for i in 0..n {
        for j in 0..n {
            if charge(i) != charge(j) && m[(i, j)].norm() > BLOCK_TOL * scale {
                return Err(Error::UnsupportedStructure(
                    "state has coherences between local particle-number sectors".into(),
                ));
            }
        }
    }
    let mut out = Vec::new();
    for qa in 0..=na as u32 {
        for qb in 0..=nb as u32 {
            let (ca, cb) = (configs(na, qa), configs(nb, qb));
            let (ka, kb) = (ca.len(), cb.len());
            let idx = |x: usize, y: usize| ca[x] + da * cb[y];
            let mut block = CMat::zeros(ka * kb, ka * kb);
            for x in 0..ka {
                for y in 0..kb {
                    for x2 in 0..ka {
                        for y2 in 0..kb {
                            block[(x + ka * y, x2 + ka * y2)] = m[(idx(x, y), idx(x2, y2))];
                        }
                    }
                }
            }
            let weight = block.trace().re;
            if weight <= BLOCK_TOL {
                continue;
            }
            let ppt_min = if ka == 1 || kb == 1 {
                None
            } else {
                let mut pt = CMat::zeros(ka * kb, ka * kb);
                for x in 0..ka {
                    for y in 0..kb {
                        for x2 in 0..ka {
                            for y2 in 0..kb {
                                pt[(x + ka * y2, x2 + ka * y)] = block[(x + ka * y, x2 + ka * y2)];
                            }
                        }
                    }
                }
                Some(eigvalsh(&pt)[0])
            };
            out.push(ChargeBlock {
                charges: (qa, qb),
                dims: (ka, kb),
                weight,
                ppt_min,
            });
        }
    }
    Ok(out)
}

/// Block-wise PPT decision. A charge-block-diagonal state is separable iff
/// every block is; blocks with `d_A d_B ≤ 6` are decided exactly by PPT.
pub fn is_separable(rho: &DensityMatrix, partition: &ModePartition, ssr: bool) -> Result<bool> {
    Ok(separability_report(rho, partition, ssr)?
        .iter()
        .all(|b| b.ppt_min.is_none_or(|v| v >= -PPT_TOL)))
}

/// The per-block data behind [`is_separable`].
pub fn separability_report(
    rho: &DensityMatrix,
    partition: &ModePartition,
    ssr: bool,
) -> Result<Vec<ChargeBlock>> {
    partition.require_bipartition()?;
    let state = if ssr { ssr_project(rho, partition)? } else { rho.clone() };
    let (state, part) = make_contiguous(&state, partition)?;
    let (na, nb) = (part.block_size(0), part.block_size(1));
    let blocks = charge_blocks(state.to_fock().matrix(), na, nb)?;
    for b in &blocks {
        if b.ppt_min.is_some() && b.dims.0 * b.dims.1 > PPT_SUFFICIENT_DIM {
            return Err(Error::UnsupportedStructure(format!(
                "charge block {:?} is {}x{}; PPT is only decisive up to {PPT_SUFFICIENT_DIM}",
                b.charges, b.dims.0, b.dims.1
            )));
        }
    }
    Ok(blocks)
}
