use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::basis::{FockBasis, OccupationState};
use crate::fock::partition::ModePartition;
use crate::linalg::{
    eigvalsh, hermitian_deviation, hermitize, outer, trace, CMat, CVec, ZERO,
};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix over a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    basis: FockBasis,
    matrix: CMat,
}

impl DensityMatrix {
    pub fn new(basis: FockBasis, matrix: CMat) -> Result<Self> {
        let n = basis.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, basis has {n} states",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dev = hermitian_deviation(&matrix);
        if dev > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = trace(&matrix);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let matrix = hermitize(&matrix);
        if let Some(&min) = eigvalsh(&matrix).first() {
            if min < -PSD_TOL {
                return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { basis, matrix })
    }

    /// Skips validation; the caller guarantees a valid state up to rounding.
    pub(crate) fn from_parts(basis: FockBasis, matrix: CMat) -> Self {
        debug_assert_eq!(basis.dim(), matrix.nrows());
        Self {
            basis,
            matrix: hermitize(&matrix),
        }
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(basis: FockBasis, psi: &CVec) -> Result<Self> {
        if psi.len() != basis.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} entries, basis has {}",
                psi.len(),
                basis.dim()
            )));
        }
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let psi = psi.unscale(norm);
        Ok(Self::from_parts(basis, outer(&psi)))
    }

    pub fn maximally_mixed(basis: FockBasis) -> Self {
        let n = basis.dim();
        let m = CMat::identity(n, n).unscale(n as f64);
        Self::from_parts(basis, m)
    }

    /// Equal-weight mixture of configuration states.
    pub fn configuration_mixture(basis: FockBasis, states: &[OccupationState]) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidState("empty mixture".into()));
        }
        let n = basis.dim();
        let mut m = CMat::zeros(n, n);
        let w = 1.0 / states.len() as f64;
        for &s in states {
            let i = basis.index_of(s).ok_or_else(|| {
                Error::InvalidState(format!("configuration {s} is not in the basis"))
            })?;
            m[(i, i)] += crate::linalg::re(w);
        }
        Ok(Self::from_parts(basis, m))
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn modes(&self) -> usize {
        self.basis.modes()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.matrix)
    }

    /// `Tr[ρ O]` for an operator given on the same basis.
    pub fn expectation(&self, op: &CMat) -> crate::linalg::C64 {
        (&self.matrix * op).trace()
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &CMat) -> Self {
        Self::from_parts(self.basis.clone(), u * &self.matrix * u.adjoint())
    }

    pub fn trace_distance(&self, other: &Self) -> f64 {
        let diff = &self.matrix - &other.matrix;
        0.5 * eigvalsh(&diff).iter().map(|l| l.abs()).sum::<f64>()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        crate::linalg::frobenius(&(&self.matrix - &other.matrix))
    }

    /// Same state on the full `2^d`-dimensional Fock space.
    pub fn to_fock(&self) -> Self {
        if self.basis.is_full() {
            return self.clone();
        }
        let full = FockBasis::full(self.modes());
        let n = full.dim();
        let mut m = CMat::zeros(n, n);
        let idx: Vec<usize> = self
            .basis
            .states()
            .iter()
            .map(|&s| s.bits() as usize)
            .collect();
        for (i, &fi) in idx.iter().enumerate() {
            for (j, &fj) in idx.iter().enumerate() {
                m[(fi, fj)] = self.matrix[(i, j)];
            }
        }
        Self::from_parts(full, m)
    }

    /// Compress onto a sub-basis that carries all of the weight.
    pub fn restrict_to(&self, basis: &FockBasis) -> Result<Self> {
        let idx: Vec<usize> = basis
            .states()
            .iter()
            .map(|&s| {
                self.basis
                    .index_of(s)
                    .ok_or_else(|| Error::InvalidState(format!("{s} not in source basis")))
            })
            .collect::<Result<_>>()?;
        let m = CMat::from_fn(idx.len(), idx.len(), |i, j| self.matrix[(idx[i], idx[j])]);
        let kept = trace(&m).re;
        if (kept - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "restriction keeps weight {kept}, state has support outside the sub-basis"
            )));
        }
        Ok(Self::from_parts(basis.clone(), m))
    }
}

/// Signed permutation matrix implementing `perm` (`perm[old] = new`) on
/// `basis`. The sign is the parity of the permutation restricted to the
/// occupied modes.
pub fn mode_permutation_matrix(basis: &FockBasis, perm: &[usize]) -> Result<CMat> {
    check_permutation(perm, basis.modes())?;
    let n = basis.dim();
    let mut u = CMat::zeros(n, n);
    for (col, &s) in basis.states().iter().enumerate() {
        let (sign, out) = permute_state(s, perm);
        let row = basis.index_of(out).ok_or_else(|| {
            Error::InvalidPermutation(format!("basis is not closed under the permutation ({out})"))
        })?;
        u[(row, col)] = sign.into();
    }
    Ok(u)
}

fn check_permutation(perm: &[usize], modes: usize) -> Result<()> {
    if perm.len() != modes {
        return Err(Error::InvalidPermutation(format!(
            "length {} for {modes} modes",
            perm.len()
        )));
    }
    let mut seen = vec![false; modes];
    for &p in perm {
        if p >= modes || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
        }
    }
    Ok(())
}

fn permute_state(s: OccupationState, perm: &[usize]) -> (f64, OccupationState) {
    let targets: Vec<usize> = s.occupied_modes().map(|m| perm[m]).collect();
    let mut inversions = 0;
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            if targets[i] > targets[j] {
                inversions += 1;
            }
        }
    }
    let bits = targets.iter().fold(0u32, |acc, &t| acc | (1 << t));
    let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    (sign, OccupationState::from_bits(bits))
}

/// Relabel modes (`perm[old] = new`), carrying fermionic reordering signs.
pub fn reorder_modes(state: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix> {
    check_permutation(perm, state.modes())?;
    let images: Vec<(f64, OccupationState)> = state
        .basis()
        .states()
        .iter()
        .map(|&s| permute_state(s, perm))
        .collect();
    let basis = FockBasis::from_states(state.modes(), images.iter().map(|&(_, s)| s))?;
    let idx: Vec<usize> = images
        .iter()
        .map(|&(_, s)| basis.index_of(s).expect("image is in the rebuilt basis"))
        .collect();
    let n = state.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(idx[i], idx[j])] = state.matrix()[(i, j)] * (images[i].0 * images[j].0);
        }
    }
    Ok(DensityMatrix::from_parts(basis, m))
}

/// Reorder so that `partition` becomes contiguous, returning the reordered
/// state and the contiguous partition.
pub fn make_contiguous(
    state: &DensityMatrix,
    partition: &ModePartition,
) -> Result<(DensityMatrix, ModePartition)> {
    check_modes(state, partition)?;
    if partition.is_contiguous() {
        return Ok((state.clone(), partition.clone()));
    }
    let perm = partition.contiguous_permutation();
    Ok((reorder_modes(state, &perm)?, partition.as_contiguous()))
}

fn check_modes(state: &DensityMatrix, partition: &ModePartition) -> Result<()> {
    if state.modes() != partition.modes() {
        return Err(Error::DimensionMismatch(format!(
            "state has {} modes, partition covers {}",
            state.modes(),
            partition.modes()
        )));
    }
    Ok(())
}

/// Reduced state on the full Fock space of block `keep`.
pub fn partial_trace(
    state: &DensityMatrix,
    partition: &ModePartition,
    keep: usize,
) -> Result<DensityMatrix> {
    check_modes(state, partition)?;
    partition.check_block(keep)?;
    let offsets = partition.offsets()?;
    let off = offsets[keep];
    let len = partition.block_size(keep);
    let mask = ((1u32 << len) - 1) << off;

    let mut groups: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, s) in state.basis().states().iter().enumerate() {
        let bits = s.bits();
        groups
            .entry(bits & !mask)
            .or_default()
            .push((i, ((bits & mask) >> off) as usize));
    }
    let local = FockBasis::full(len);
    let mut out = CMat::zeros(local.dim(), local.dim());
    for members in groups.values() {
        for &(i, li) in members {
            for &(j, lj) in members {
                out[(li, lj)] += state.matrix()[(i, j)];
            }
        }
    }
    Ok(DensityMatrix::from_parts(local, out))
}

/// All single-block marginals of a contiguous partition.
pub fn marginals(state: &DensityMatrix, partition: &ModePartition) -> Result<Vec<DensityMatrix>> {
    (0..partition.num_blocks())
        .map(|k| partial_trace(state, partition, k))
        .collect()
}

/// Remove coherences between different local particle-number tuples,
/// `Σ P_{N',N'',…} ρ P_{N',N'',…}`.
pub fn ssr_project(state: &DensityMatrix, partition: &ModePartition) -> Result<DensityMatrix> {
    check_modes(state, partition)?;
    let labels: Vec<Vec<u32>> = state
        .basis()
        .states()
        .iter()
        .map(|&s| partition.local_numbers(s))
        .collect();
    let n = state.dim();
    let mut m = state.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            if labels[i] != labels[j] {
                m[(i, j)] = ZERO;
            }
        }
    }
    Ok(DensityMatrix::from_parts(state.basis().clone(), m))
}

/// `ρ_1 ⊗ ρ_2 ⊗ ⋯` with factor `k` occupying the `k`-th contiguous block of
/// modes.
pub fn tensor_product(factors: &[&DensityMatrix]) -> Result<DensityMatrix> {
    if factors.is_empty() {
        return Err(Error::InvalidState("empty tensor product".into()));
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = tensor_pair(&acc, f)?;
    }
    Ok(acc)
}

fn tensor_pair(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let shift = a.modes();
    let modes = shift + b.modes();
    let combos: Vec<(usize, usize, OccupationState)> = a
        .basis()
        .states()
        .iter()
        .enumerate()
        .flat_map(|(i, sa)| {
            b.basis().states().iter().enumerate().map(move |(j, sb)| {
                (i, j, OccupationState::from_bits(sa.bits() | (sb.bits() << shift)))
            })
        })
        .collect();
    let basis = FockBasis::from_states(modes, combos.iter().map(|c| c.2))?;
    let n = basis.dim();
    let idx: Vec<usize> = combos
        .iter()
        .map(|c| basis.index_of(c.2).expect("combined state is in basis"))
        .collect();
    let mut m = CMat::zeros(n, n);
    for (p, &(ia, ib, _)) in combos.iter().enumerate() {
        for (q, &(ja, jb, _)) in combos.iter().enumerate() {
            m[(idx[p], idx[q])] = a.matrix()[(ia, ja)] * b.matrix()[(ib, jb)];
        }
    }
    Ok(DensityMatrix::from_parts(basis, m))
}

/// Partial transpose of block `block` in the full Fock space. The result is
/// Hermitian but generally not positive.
pub fn partial_transpose(
    state: &DensityMatrix,
    partition: &ModePartition,
    block: usize,
) -> Result<CMat> {
    check_modes(state, partition)?;
    partition.check_block(block)?;
    let offsets = partition.offsets()?;
    let mask = ((1u32 << partition.block_size(block)) - 1) << offsets[block];
    let full = state.to_fock();
    let n = full.dim();
    let mut out = CMat::zeros(n, n);
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            let ni = (i & !mask) | (j & mask);
            let nj = (j & !mask) | (i & mask);
            out[(ni as usize, nj as usize)] = full.matrix()[(i as usize, j as usize)];
        }
    }
    Ok(out)
}
