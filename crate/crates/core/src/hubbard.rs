//! Hubbard dimer and short Hubbard chains.
//!
//! Site `i` carries the spin-orbitals `2i` (↑) and `2i + 1` (↓), so the dimer
//! modes are `L↑, L↓, R↑, R↓`. The on-site repulsion is the energy unit
//! (`U = 1`), `k_B = 1`, and the hopping decays with distance as `t = e^{-r}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{DensityMatrix, FermionOperator, FockBasis, OccupationState};
use crate::linalg::{re, CMat, CVec, HermitianEigen};

pub const ONSITE_REPULSION: f64 = 1.0;
pub const MAX_CHAIN_SITES: usize = 4;

/// Geometry of the dimer: `t = e^{-r}`, `U = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimerParams {
    r: f64,
    t: f64,
}

impl DimerParams {
    pub fn from_distance(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!("distance must be finite, got {r}")));
        }
        Ok(Self { r, t: (-r).exp() })
    }

    pub fn from_hopping(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("hopping must be positive, got {t}")));
        }
        Ok(Self { r: -t.ln(), t })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn u(&self) -> f64 {
        ONSITE_REPULSION
    }
}

/// Closed-form spectrum of the dimer in the two-electron sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimerSpectrum {
    pub t: f64,
    pub w: f64,
    /// `E_0 < E_1 = E_2 = E_3 = 0 < E_4 = 1 < E_5` for `t > 0`.
    pub energies: [f64; 6],
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub fn analytic_spectrum(t: f64) -> Result<DimerSpectrum> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("hopping must be non-negative, got {t}")));
    }
    let u = ONSITE_REPULSION;
    let w = (0.25 * u * u + 4.0 * t * t).sqrt();
    let a = ((w + 0.5 * u) / (2.0 * w)).sqrt();
    let b = 2.0 * t / (2.0 * w * (w + 0.5 * u)).sqrt();
    Ok(DimerSpectrum {
        t,
        w,
        energies: [0.5 * u - w, 0.0, 0.0, 0.0, u, 0.5 * u + w],
        a,
        b,
        // (c, d) is orthogonal to (a, b); this form stays finite at t = 0
        c: -b,
        d: a,
    })
}

impl DimerSpectrum {
    /// Singlet–triplet gap `E_1 − E_0 = W − U/2`, evaluated without
    /// cancellation for small `t`.
    pub fn gap(&self) -> f64 {
        4.0 * self.t * self.t / (self.w + 0.5 * ONSITE_REPULSION)
    }

    /// Eigenvectors on the two-electron sector basis, in the order of
    /// `energies`.
    pub fn eigenvectors(&self) -> [CVec; 6] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = |entries: &[(u32, f64)]| -> CVec {
            let basis = dimer_sector_basis();
            let mut out = CVec::zeros(basis.dim());
            for &(bits, x) in entries {
                let i = basis
                    .index_of(OccupationState::new(bits, 4).expect("4-mode bits"))
                    .expect("two-electron configuration");
                out[i] = re(x);
            }
            out
        };
        // |1±⟩ = (|L↑R↓⟩ ∓ |L↓R↑⟩)/√2, |2±⟩ = (|L↑L↓⟩ ± |R↑R↓⟩)/√2
        let one_plus = [(0b1001, s), (0b0110, -s)];
        let two_plus = [(0b0011, s), (0b1100, s)];
        let combine = |x: f64, y: f64| -> Vec<(u32, f64)> {
            one_plus
                .iter()
                .map(|&(b, c)| (b, x * c))
                .chain(two_plus.iter().map(|&(b, c)| (b, y * c)))
                .collect()
        };
        [
            v(&combine(self.a, self.b)),
            v(&[(0b0101, 1.0)]),
            v(&[(0b1001, s), (0b0110, s)]),
            v(&[(0b1010, 1.0)]),
            v(&[(0b0011, s), (0b1100, -s)]),
            v(&combine(self.c, self.d)),
        ]
    }
}

/// Two-electron sector of the four dimer modes (6 configurations).
pub fn dimer_sector_basis() -> FockBasis {
    FockBasis::sector(4, 2)
}

/// Centres of a chain with open boundaries and nearest-neighbour hopping.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainParams {
    hoppings: Vec<f64>,
    u: f64,
}

impl ChainParams {
    /// `hoppings[i]` couples centres `i` and `i + 1`.
    pub fn new(hoppings: Vec<f64>, u: f64) -> Result<Self> {
        let sites = hoppings.len() + 1;
        if !(2..=MAX_CHAIN_SITES).contains(&sites) {
            return Err(Error::InvalidParameter(format!(
                "chain needs 2..={MAX_CHAIN_SITES} centres, got {sites}"
            )));
        }
        if let Some(t) = hoppings.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(Error::InvalidParameter(format!("hopping must be non-negative, got {t}")));
        }
        if !u.is_finite() {
            return Err(Error::InvalidParameter(format!("U must be finite, got {u}")));
        }
        Ok(Self { hoppings, u })
    }

    pub fn uniform(sites: usize, t: f64) -> Result<Self> {
        Self::new(vec![t; sites.saturating_sub(1)], ONSITE_REPULSION)
    }

    pub fn dimer(p: &DimerParams) -> Self {
        Self {
            hoppings: vec![p.t()],
            u: ONSITE_REPULSION,
        }
    }

    pub fn sites(&self) -> usize {
        self.hoppings.len() + 1
    }

    pub fn modes(&self) -> usize {
        2 * self.sites()
    }

    pub fn hoppings(&self) -> &[f64] {
        &self.hoppings
    }

    pub fn u(&self) -> f64 {
        self.u
    }
}

/// `H = Σ_i H_i + Σ_{⟨ij⟩} H_ij` with the local and coupling terms kept
/// separate.
#[derive(Debug, Clone)]
pub struct ChainHamiltonian {
    modes: usize,
    local: Vec<FermionOperator>,
    couplings: Vec<((usize, usize), FermionOperator)>,
}

/// `H_i = U n_{i↑} n_{i↓}`.
fn onsite_term(modes: usize, site: usize, u: f64) -> FermionOperator {
    FermionOperator::density_density(modes, 2 * site, 2 * site + 1)
        .expect("site modes are in range")
        .scaled(u)
}

/// `H_ij = −t Σ_σ (f†_{iσ} f_{jσ} + h.c.)`.
fn hopping_term(modes: usize, i: usize, j: usize, t: f64) -> FermionOperator {
    let mut op = FermionOperator::zero(modes);
    for spin in 0..2 {
        op.extend(
            &FermionOperator::hopping(modes, 2 * i + spin, 2 * j + spin)
                .expect("site modes are in range")
                .scaled(-t),
        );
    }
    op
}

pub fn chain_hamiltonian(p: &ChainParams) -> ChainHamiltonian {
    let modes = p.modes();
    ChainHamiltonian {
        modes,
        local: (0..p.sites()).map(|i| onsite_term(modes, i, p.u)).collect(),
        couplings: p
            .hoppings
            .iter()
            .enumerate()
            .map(|(i, &t)| ((i, i + 1), hopping_term(modes, i, i + 1, t)))
            .collect(),
    }
}

pub fn dimer_hamiltonian(p: &DimerParams) -> ChainHamiltonian {
    chain_hamiltonian(&ChainParams::dimer(p))
}

impl ChainHamiltonian {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn sites(&self) -> usize {
        self.local.len()
    }

    pub fn local_terms(&self) -> &[FermionOperator] {
        &self.local
    }

    pub fn coupling_terms(&self) -> &[((usize, usize), FermionOperator)] {
        &self.couplings
    }

    pub fn operator(&self) -> FermionOperator {
        let mut op = FermionOperator::zero(self.modes);
        for l in &self.local {
            op.extend(l);
        }
        for (_, c) in &self.couplings {
            op.extend(c);
        }
        op
    }

    pub fn matrix(&self, basis: &FockBasis) -> CMat {
        self.operator().matrix(basis)
    }

    pub fn fock_matrix(&self) -> CMat {
        self.matrix(&FockBasis::full(self.modes))
    }

    pub fn sector_matrix(&self, n: u32) -> CMat {
        self.matrix(&FockBasis::sector(self.modes, n))
    }

    pub fn local_matrix(&self, site: usize, basis: &FockBasis) -> CMat {
        self.local[site].matrix(basis)
    }

    pub fn coupling_matrix(&self, k: usize, basis: &FockBasis) -> CMat {
        self.couplings[k].1.matrix(basis)
    }

    /// Total particle number on `basis`.
    pub fn number_matrix(&self, basis: &FockBasis) -> CMat {
        let mut op = FermionOperator::zero(self.modes);
        for m in 0..self.modes {
            op.extend(&FermionOperator::number(self.modes, m).expect("mode in range"));
        }
        op.matrix(basis)
    }

    /// Full-Fock-space Gibbs state of `H − μN`.
    pub fn grand_canonical_gibbs(&self, temperature: f64, mu: f64) -> Result<DensityMatrix> {
        let basis = FockBasis::full(self.modes);
        let h = self.matrix(&basis) - self.number_matrix(&basis) * re(mu);
        thermal_from_hamiltonian(basis, &h, temperature)
    }
}

/// `e^{-H/T}/Z` on `basis`, shifted by the ground energy for stability.
pub fn thermal_from_hamiltonian(
    basis: FockBasis,
    h: &CMat,
    temperature: f64,
) -> Result<DensityMatrix> {
    check_temperature(temperature)?;
    let eig = HermitianEigen::new(h);
    let e0 = eig.values[0];
    let weights: Vec<f64> = eig
        .values
        .iter()
        .map(|e| (-(e - e0) / temperature).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let rho = HermitianEigen {
        values: weights.iter().map(|w| w / z).collect(),
        vectors: eig.vectors,
    }
    .map(|x| x);
    DensityMatrix::new(basis, rho)
}

fn check_temperature(temperature: f64) -> Result<()> {
    if temperature > 0.0 && temperature.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "temperature must be positive and finite, got {temperature} (use the ground state for T = 0)"
        )))
    }
}

/// Canonical Gibbs state of the dimer on the two-electron sector.
pub fn gibbs_state(p: &DimerParams, temperature: f64) -> Result<DensityMatrix> {
    check_temperature(temperature)?;
    let basis = dimer_sector_basis();
    let h = dimer_hamiltonian(p).matrix(&basis);
    thermal_from_hamiltonian(basis, &h, temperature)
}

/// `a|1+⟩ + b|2+⟩` from the closed-form coefficients.
pub fn ground_state(p: &DimerParams) -> DensityMatrix {
    let spec = analytic_spectrum(p.t()).expect("t > 0 by construction");
    let [psi0, ..] = spec.eigenvectors();
    DensityMatrix::pure(dimer_sector_basis(), &psi0).expect("normalized eigenvector")
}

/// Ground state for `T = 0`, canonical Gibbs state otherwise.
pub fn thermal_state(p: &DimerParams, temperature: f64) -> Result<DensityMatrix> {
    if temperature == 0.0 {
        Ok(ground_state(p))
    } else {
        gibbs_state(p, temperature)
    }
}

/// `(f†_{L↑} f†_{R↓} − f†_{L↓} f†_{R↑})|0⟩/√2`, the `r → ∞` ground state.
pub fn dissociated_singlet() -> DensityMatrix {
    let spec = analytic_spectrum(0.0).expect("t = 0 is valid");
    let [psi0, ..] = spec.eigenvectors();
    DensityMatrix::pure(dimer_sector_basis(), &psi0).expect("normalized eigenvector")
}

/// Equal mixture of the four covalent configurations `|Lσ, Rσ'⟩`.
pub fn dissociated_mixture() -> DensityMatrix {
    let states: Vec<OccupationState> = [0b0101u32, 0b1001, 0b0110, 0b1010]
        .iter()
        .map(|&b| OccupationState::new(b, 4).expect("4-mode bits"))
        .collect();
    DensityMatrix::configuration_mixture(dimer_sector_basis(), &states)
        .expect("covalent configurations are in the sector")
}
