//! Entropies, relative entropy, mutual information and correlation functions.
//!
//! All logarithms are natural.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    make_contiguous, marginals, ssr_project, DensityMatrix, ModePartition, HERMITIAN_TOL,
};
use crate::linalg::{hermitian_deviation, CMat, HermitianEigen};

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

/// A non-negative entropic quantity in nats, possibly `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct EntropyValue(f64);

impl EntropyValue {
    pub const ZERO: Self = Self(0.0);
    pub const INFINITE: Self = Self(f64::INFINITY);

    /// Round-off negatives are clipped to zero.
    pub fn new(value: f64) -> Self {
        Self(value.max(0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl From<EntropyValue> for f64 {
    fn from(v: EntropyValue) -> f64 {
        v.0
    }
}

impl std::fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `−Σ λ log λ` over the positive part of a spectrum. The spectrum need not
/// sum to one (a 1RDM has trace `N`).
pub fn spectral_entropy(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

pub fn vn_entropy(rho: &DensityMatrix) -> EntropyValue {
    EntropyValue::new(spectral_entropy(&rho.eigenvalues()))
}

/// `S(ρ‖σ) = Tr ρ(log ρ − log σ)` for matrices on a common basis.
pub fn rel_entropy_matrices(rho: &CMat, sigma: &CMat) -> Result<EntropyValue> {
    if rho.shape() != sigma.shape() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy of {:?} against {:?}",
            rho.shape(),
            sigma.shape()
        )));
    }
    let er = HermitianEigen::new(rho);
    let es = HermitianEigen::new(sigma);
    let neg_s = -spectral_entropy(&er.values);
    // ⟨s_j|ρ|s_j⟩ in σ's eigenbasis
    let rotated = es.vectors.adjoint() * rho * &es.vectors;
    let mut cross = 0.0;
    for (j, &s) in es.values.iter().enumerate() {
        let p = rotated[(j, j)].re;
        if s <= SUPPORT_TOL {
            if p > SUPPORT_TOL {
                return Ok(EntropyValue::INFINITE);
            }
            continue;
        }
        cross += p * s.ln();
    }
    Ok(EntropyValue::new(neg_s - cross))
}

pub fn rel_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<EntropyValue> {
    if rho.modes() != sigma.modes() {
        return Err(Error::DimensionMismatch(format!(
            "states on {} and {} modes",
            rho.modes(),
            sigma.modes()
        )));
    }
    if rho.basis() == sigma.basis() {
        rel_entropy_matrices(rho.matrix(), sigma.matrix())
    } else {
        rel_entropy_matrices(rho.to_fock().matrix(), sigma.to_fock().matrix())
    }
}

/// `Σ_i S(ρ_i) − S(ρ)` for any partition into two or more blocks.
pub fn generalized_mutual_info(
    rho: &DensityMatrix,
    partition: &ModePartition,
) -> Result<EntropyValue> {
    if partition.num_blocks() < 2 {
        return Err(Error::InvalidPartition("need at least two blocks".into()));
    }
    let (state, part) = make_contiguous(rho, partition)?;
    let local: f64 = marginals(&state, &part)?
        .iter()
        .map(|m| vn_entropy(m).value())
        .sum();
    Ok(EntropyValue::new(local - vn_entropy(rho).value()))
}

/// `I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ) = S(ρ‖ρ_A⊗ρ_B)`.
pub fn mutual_info(rho: &DensityMatrix, partition: &ModePartition) -> Result<EntropyValue> {
    partition.require_bipartition()?;
    generalized_mutual_info(rho, partition)
}

/// Mutual information of `ρ`, or of its local-number projection when `ssr`
/// is set.
pub fn mode_correlation(
    rho: &DensityMatrix,
    partition: &ModePartition,
    ssr: bool,
) -> Result<EntropyValue> {
    partition.require_bipartition()?;
    if ssr {
        mutual_info(&ssr_project(rho, partition)?, partition)
    } else {
        mutual_info(rho, partition)
    }
}

/// Local observables `Â` on block A and `B̂` on block B, each on the full
/// local Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservablePair {
    a: CMat,
    b: CMat,
}

impl ObservablePair {
    pub fn new(a: CMat, b: CMat) -> Result<Self> {
        for (name, m) in [("A", &a), ("B", &b)] {
            if !m.is_square() || !m.nrows().is_power_of_two() {
                return Err(Error::DimensionMismatch(format!(
                    "observable {name} is {}x{}, expected a local Fock space",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let dev = hermitian_deviation(m);
            if dev > HERMITIAN_TOL {
                return Err(Error::InvalidParameter(format!(
                    "observable {name} is not Hermitian (deviation {dev:e})"
                )));
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &CMat {
        &self.a
    }

    pub fn b(&self) -> &CMat {
        &self.b
    }
}

/// `⟨Â ⊗ B̂⟩ − ⟨Â⟩⟨B̂⟩`.
pub fn corr_function(
    rho: &DensityMatrix,
    pair: &ObservablePair,
    partition: &ModePartition,
) -> Result<f64> {
    partition.require_bipartition()?;
    let (state, part) = make_contiguous(rho, partition)?;
    let (na, nb) = (part.block_size(0), part.block_size(1));
    if pair.a.nrows() != 1 << na || pair.b.nrows() != 1 << nb {
        return Err(Error::DimensionMismatch(format!(
            "observables of size {} and {} for blocks of {na} and {nb} modes",
            pair.a.nrows(),
            pair.b.nrows()
        )));
    }
    let locals = marginals(&state, &part)?;
    let ea = locals[0].expectation(&pair.a).re;
    let eb = locals[1].expectation(&pair.b).re;

    let mask = (1u32 << na) - 1;
    let states = state.basis().states();
    let m = state.matrix();
    let mut joint = 0.0;
    for (i, si) in states.iter().enumerate() {
        for (j, sj) in states.iter().enumerate() {
            let (ai, bi) = ((si.bits() & mask) as usize, (si.bits() >> na) as usize);
            let (aj, bj) = ((sj.bits() & mask) as usize, (sj.bits() >> na) as usize);
            joint += (m[(i, j)] * pair.a[(aj, ai)] * pair.b[(bj, bi)]).re;
        }
    }
    Ok(joint - ea * eb)
}
