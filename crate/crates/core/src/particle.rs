//! Particle-picture correlation: one-particle reduced density matrix,
//! nonfreeness and, for two fermions in four modes, the quantum nonfreeness
//! built from the antisymmetric expansion matrices of the spectral
//! decomposition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{DensityMatrix, FermionOperator, FockBasis, Ladder};
use crate::linalg::{eigvalsh, trace, CMat, HermitianEigen, ZERO};
use crate::measures::{spectral_entropy, vn_entropy, EntropyValue};

/// Eigenvalues of `ρ` below this carry no expansion matrix.
pub const PRUNE_TOL: f64 = 1e-14;

/// `(ρ₁)_ij = Tr[ρ f†_j f_i]`, normalized to the particle number.
#[derive(Debug, Clone, PartialEq)]
pub struct OneRDM {
    matrix: CMat,
}

impl OneRDM {
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn particle_number(&self) -> f64 {
        trace(&self.matrix).re
    }

    /// Natural occupation numbers, ascending.
    pub fn occupations(&self) -> Vec<f64> {
        eigvalsh(&self.matrix)
    }
}

pub fn one_rdm(rho: &DensityMatrix) -> OneRDM {
    let d = rho.modes();
    let mut m = CMat::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let op = FermionOperator::zero(d)
                .with(1.0, vec![Ladder::Create(j), Ladder::Annihilate(i)])
                .expect("modes in range");
            let v = rho.expectation(&op.matrix(rho.basis()));
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    OneRDM { matrix: m }
}

/// `S(ρ₁) + S(1 − ρ₁) − S(ρ)`.
pub fn nonfreeness(rho: &DensityMatrix) -> EntropyValue {
    let occ = one_rdm(rho).occupations();
    let holes: Vec<f64> = occ.iter().map(|n| 1.0 - n).collect();
    EntropyValue::new(spectral_entropy(&occ) + spectral_entropy(&holes) - vn_entropy(rho).value())
}

/// `K_ij = Σ ε^{abcd} w⁽ⁱ⁾_ab w⁽ʲ⁾_cd` over the non-zero spectral components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMatrix {
    #[serde(skip)]
    entries: CMat,
    moduli: Vec<f64>,
}

impl KMatrix {
    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `|κ_i|`, descending. `K` is complex symmetric, so these are its
    /// singular values; for real `ρ` they equal the absolute eigenvalues.
    pub fn moduli(&self) -> &[f64] {
        &self.moduli
    }

    pub fn trace_norm(&self) -> f64 {
        self.moduli.iter().sum()
    }
}

fn levi_civita(p: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

pub fn schliemann_k(rho: &DensityMatrix) -> Result<KMatrix> {
    if rho.modes() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "quantum nonfreeness needs 4 modes, state has {}",
            rho.modes()
        )));
    }
    let basis = FockBasis::sector(4, 2);
    let restricted = rho.restrict_to(&basis).map_err(|_| {
        Error::InvalidState("quantum nonfreeness needs a two-particle state".into())
    })?;
    let eig = HermitianEigen::new(restricted.matrix());

    let ws: Vec<[[crate::linalg::C64; 4]; 4]> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > PRUNE_TOL)
        .map(|(k, &l)| {
            let mut w = [[ZERO; 4]; 4];
            for (i, s) in basis.states().iter().enumerate() {
                let modes: Vec<usize> = s.occupied_modes().collect();
                let (a, b) = (modes[0], modes[1]);
                let c = eig.vectors[(i, k)] * l.sqrt() * 0.5;
                w[a][b] = c;
                w[b][a] = -c;
            }
            w
        })
        .collect();

    let n = ws.len();
    let mut k = CMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = ZERO;
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let e = levi_civita([a, b, c, d]);
                            if e != 0.0 {
                                acc += ws[i][a][b] * ws[j][c][d] * e;
                            }
                        }
                    }
                }
            }
            k[(i, j)] = acc;
            k[(j, i)] = acc;
        }
    }
    let mut moduli: Vec<f64> = if n == 0 {
        Vec::new()
    } else {
        k.clone().singular_values().iter().copied().collect()
    };
    moduli.sort_by(|a, b| b.total_cmp(a));
    Ok(KMatrix { entries: k, moduli })
}

/// `max(0, 2 max_i |κ_i| − Σ_i |κ_i|)`.
pub fn quantum_nonfreeness(rho: &DensityMatrix) -> Result<f64> {
    let k = schliemann_k(rho)?;
    let top = k.moduli().first().copied().unwrap_or(0.0);
    Ok((2.0 * top - k.trace_norm()).max(0.0))
}

#[cfg(test)]
mod tests;
