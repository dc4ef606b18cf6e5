//! Free-energy bounds on thermal correlation: `I(1:⋯:ν) ≤ (2/T) Σ ‖H_ij‖_F`
//! for Gibbs states of site-local plus coupling Hamiltonians.
//!
//! The bound rests on the Gibbs state minimizing the free energy over a set
//! that contains the product of its marginals. That holds for the
//! grand-canonical state on the full Fock space, which is the default here;
//! the fixed-`N` canonical state is available for comparison and can violate
//! the bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{marginals, tensor_product, DensityMatrix, FockBasis, ModePartition};
use crate::hubbard::{chain_hamiltonian, thermal_from_hamiltonian, ChainHamiltonian, ChainParams, DimerParams};
use crate::linalg::{frobenius, re, trace, CMat};
use crate::measures::{generalized_mutual_info, vn_entropy};

/// `I ≤ rhs + BOUND_SLACK` counts as satisfied.
pub const BOUND_SLACK: f64 = 1e-9;
/// Mutual information below this is numerical noise.
pub const NOISE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    /// `e^{−(H − μN)/T}` on the full Fock space at half filling, `μ = U/2`.
    #[default]
    GrandCanonical,
    /// `e^{−H/T}` restricted to one electron per site on average.
    Canonical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "I")]
    pub mutual_info: f64,
    pub coupling_norms: Vec<f64>,
    pub rhs: f64,
    /// `I / rhs`; `None` for a decoupled chain.
    pub ratio: Option<f64>,
    pub satisfied: bool,
}

impl BoundReport {
    fn new(temperature: f64, mutual_info: f64, coupling_norms: Vec<f64>) -> Self {
        let rhs = 2.0 / temperature * coupling_norms.iter().sum::<f64>();
        let ratio = (rhs > 0.0).then(|| mutual_info / rhs);
        BoundReport {
            temperature,
            mutual_info,
            coupling_norms,
            rhs,
            ratio,
            satisfied: mutual_info <= rhs + BOUND_SLACK,
        }
    }

    pub fn into_result(self) -> Result<Self> {
        if self.satisfied {
            Ok(self)
        } else {
            Err(Error::BoundViolation { mutual_info: self.mutual_info, rhs: self.rhs })
        }
    }
}

/// `‖H_ij‖_F` of every coupling term on the full Fock space.
pub fn coupling_norms(h: &ChainHamiltonian) -> Vec<f64> {
    let basis = FockBasis::full(h.modes());
    (0..h.coupling_terms().len())
        .map(|k| frobenius(&h.coupling_matrix(k, &basis)))
        .collect()
}

/// `‖H_LR‖_F` of the dimer hopping term.
pub fn coupling_norm(p: &DimerParams) -> f64 {
    coupling_norms(&chain_hamiltonian(&ChainParams::dimer(p)))[0]
}

/// One block per site.
pub fn site_partition(sites: usize) -> Result<ModePartition> {
    ModePartition::contiguous(&vec![2; sites])
}

/// The Hamiltonian whose Gibbs state is taken: `H − μN` or `H`, on the full
/// Fock space.
fn shifted_matrix(h: &ChainHamiltonian, u: f64, ensemble: Ensemble) -> CMat {
    let basis = FockBasis::full(h.modes());
    match ensemble {
        Ensemble::GrandCanonical => h.matrix(&basis) - h.number_matrix(&basis) * re(u / 2.0),
        Ensemble::Canonical => h.matrix(&basis),
    }
}

/// Gibbs state of the chain as a full-Fock density matrix.
pub fn chain_gibbs(chain: &ChainParams, temperature: f64, ensemble: Ensemble) -> Result<DensityMatrix> {
    let h = chain_hamiltonian(chain);
    match ensemble {
        Ensemble::GrandCanonical => h.grand_canonical_gibbs(temperature, chain.u() / 2.0),
        Ensemble::Canonical => {
            let n = chain.sites() as u32;
            let basis = FockBasis::sector(h.modes(), n);
            Ok(thermal_from_hamiltonian(basis, &h.sector_matrix(n), temperature)?.to_fock())
        }
    }
}

/// Generalized mutual information of the chain's Gibbs state against the
/// coupling bound.
pub fn general_bound_check_in(chain: &ChainParams, temperature: f64, ensemble: Ensemble) -> Result<BoundReport> {
    let rho = chain_gibbs(chain, temperature, ensemble)?;
    let i = generalized_mutual_info(&rho, &site_partition(chain.sites())?)?.value();
    Ok(BoundReport::new(temperature, i, coupling_norms(&chain_hamiltonian(chain))))
}

pub fn general_bound_check(chain: &ChainParams, temperature: f64) -> Result<BoundReport> {
    general_bound_check_in(chain, temperature, Ensemble::GrandCanonical)
}

/// `I(L:R) ≤ 2‖H_LR‖_F / T` for the dimer at distance `r`.
pub fn wolf_bound_check_in(temperature: f64, r: f64, ensemble: Ensemble) -> Result<BoundReport> {
    general_bound_check_in(&ChainParams::dimer(&DimerParams::from_distance(r)?), temperature, ensemble)
}

pub fn wolf_bound_check(temperature: f64, r: f64) -> Result<BoundReport> {
    wolf_bound_check_in(temperature, r, Ensemble::GrandCanonical)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicCorrelation {
    pub c_dyn: f64,
    pub c_stat: f64,
    /// Both `I` and the bound are at the noise floor, so the ratio carries
    /// no information.
    pub at_floor: bool,
}

/// `C_dyn = I / rhs` and `C_stat = 1 − C_dyn`.
pub fn dyn_corr_ratio(report: &BoundReport) -> Result<DynamicCorrelation> {
    let ratio = report
        .ratio
        .ok_or_else(|| Error::UndefinedRatio("the chain is decoupled (all hoppings vanish)".into()))?;
    let c_dyn = ratio.clamp(0.0, 1.0);
    Ok(DynamicCorrelation { c_dyn, c_stat: 1.0 - c_dyn, at_floor: report.mutual_info < NOISE_FLOOR })
}

/// The steps of the free-energy argument, evaluated for one Gibbs state `ρ`
/// and the product `Π` of its site marginals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreeEnergyChain {
    pub free_energy: f64,
    pub product_free_energy: f64,
    /// `Tr[H(ρ − Π)]`.
    pub energy_gap: f64,
    /// `T[S(ρ) − S(Π)]`.
    pub entropy_gap: f64,
    /// `|Tr[H_ij(Π − ρ)]|` per coupling.
    pub coupling_terms: Vec<f64>,
    pub coupling_caps: Vec<f64>,
    /// `|Tr[H_i(Π − ρ)]|` per site.
    pub local_residuals: Vec<f64>,
}

impl FreeEnergyChain {
    pub fn holds(&self, tol: f64) -> bool {
        self.free_energy <= self.product_free_energy + tol
            && self.energy_gap <= self.entropy_gap + tol
            && self.coupling_terms.iter().zip(&self.coupling_caps).all(|(x, c)| *x <= c + tol)
            && self.local_residuals.iter().all(|x| *x <= tol)
    }
}

pub fn free_energy_chain(chain: &ChainParams, temperature: f64, ensemble: Ensemble) -> Result<FreeEnergyChain> {
    let h = chain_hamiltonian(chain);
    let rho = chain_gibbs(chain, temperature, ensemble)?;
    let part = site_partition(chain.sites())?;
    let margs = marginals(&rho, &part)?;
    let product = tensor_product(&margs.iter().collect::<Vec<_>>())?.to_fock();
    let basis = FockBasis::full(h.modes());
    let hm = shifted_matrix(&h, chain.u(), ensemble);
    let expect = |m: &CMat, s: &DensityMatrix| trace(&(m * s.matrix())).re;
    let diff = product.matrix() - rho.matrix();

    let (s_rho, s_prod) = (vn_entropy(&rho).value(), vn_entropy(&product).value());
    let (e_rho, e_prod) = (expect(&hm, &rho), expect(&hm, &product));
    let coupling_terms = (0..h.coupling_terms().len())
        .map(|k| trace(&(h.coupling_matrix(k, &basis) * &diff)).re.abs())
        .collect();
    let local_residuals = (0..h.sites())
        .map(|i| trace(&(h.local_matrix(i, &basis) * &diff)).re.abs())
        .collect();
    Ok(FreeEnergyChain {
        free_energy: e_rho - temperature * s_rho,
        product_free_energy: e_prod - temperature * s_prod,
        energy_gap: e_rho - e_prod,
        entropy_gap: temperature * (s_rho - s_prod),
        coupling_terms,
        coupling_caps: coupling_norms(&h).iter().map(|n| 2.0 * n).collect(),
        local_residuals,
    })
}

#[cfg(test)]
mod tests;
