//! Property checks shared by the property suite and the acceptance gate.
//! Each check draws its data from a seeded generator and reports the first
//! violated relation.
#![allow(dead_code)]

use std::f64::consts::LN_2;

use fermicorr::bounds::{free_energy_chain, Ensemble};
use fermicorr::fock::{
    annihilation_op, creation_op, make_contiguous, marginals, reorder_modes, tensor_product,
    FockBasis, ModeBasis, ModePartition,
};
use fermicorr::hubbard::ChainParams;
use fermicorr::linalg::{anticommutator, frobenius, max_abs, CMat};
use fermicorr::measures::{corr_function, mode_correlation, mutual_info, rel_entropy, vn_entropy, ObservablePair};
use fermicorr::random::{random_hermitian, random_mixed_state, random_pure_state, random_state};
use fermicorr::ree::{mode_entanglement, twirl, SolverConfig, SymmetryGroup, ZERO_ENTANGLEMENT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lr() -> ModePartition {
    ModePartition::dimer_left_right()
}

/// `{f_i, f†_j} = δ_ij` and `{f_i, f_j} = 0` on `d` modes.
pub fn anticommutation(d: usize, i: usize, j: usize) -> Check {
    let basis = ModeBasis::numbered(d).map_err(|e| e.to_string())?;
    let fi = annihilation_op(&basis, i).map_err(|e| e.to_string())?;
    let fj = annihilation_op(&basis, j).map_err(|e| e.to_string())?;
    let cj = creation_op(&basis, j).map_err(|e| e.to_string())?;
    let n = 1usize << d;
    let expected = if i == j { CMat::identity(n, n) } else { CMat::zeros(n, n) };
    let dev = max_abs(&(anticommutator(&fi, &cj) - expected));
    ensure(dev < 1e-14, || format!("{{f_{i}, f†_{j}}} off by {dev}"))?;
    let dev = max_abs(&anticommutator(&fi, &fj));
    ensure(dev < 1e-14, || format!("{{f_{i}, f_{j}}} off by {dev}"))
}

/// Marginals of a product come back unchanged, and reordering modes and
/// undoing it is the identity.
pub fn partial_trace_round_trip(seed: u64) -> Check {
    let mut r = rng(seed);
    let na = r.random_range(1..=3);
    let nb = r.random_range(1..=3);
    let rank = r.random_range(1..=3);
    let a = random_state(&mut r, &FockBasis::full(na), rank);
    let rank = r.random_range(1..=3);
    let b = random_state(&mut r, &FockBasis::full(nb), rank);
    let prod = tensor_product(&[&a, &b]).map_err(|e| e.to_string())?.to_fock();
    let part = ModePartition::contiguous(&[na, nb]).map_err(|e| e.to_string())?;
    let m = marginals(&prod, &part).map_err(|e| e.to_string())?;
    let da = m[0].frobenius_distance(&a.to_fock());
    let db = m[1].frobenius_distance(&b.to_fock());
    ensure(da < 1e-12 && db < 1e-12, || format!("marginals differ by {da}, {db}"))?;

    let modes = na + nb;
    let mut perm: Vec<usize> = (0..modes).collect();
    perm.shuffle(&mut r);
    let mut inverse = vec![0; modes];
    for (k, &p) in perm.iter().enumerate() {
        inverse[p] = k;
    }
    let there = reorder_modes(&prod, &perm).map_err(|e| e.to_string())?;
    let back = reorder_modes(&there, &inverse).map_err(|e| e.to_string())?;
    let d = back.frobenius_distance(&prod);
    ensure(d < 1e-12, || format!("permutation round trip off by {d}"))?;

    // interleave the blocks while keeping the order inside each
    let mut slots: Vec<usize> = (0..modes).collect();
    slots.shuffle(&mut r);
    let (mut pa, mut pb) = (slots[..na].to_vec(), slots[na..].to_vec());
    pa.sort_unstable();
    pb.sort_unstable();
    let riffle: Vec<usize> = pa.iter().chain(&pb).copied().collect();
    let mixed = reorder_modes(&prod, &riffle).map_err(|e| e.to_string())?;
    let scattered = ModePartition::new(modes, vec![pa, pb]).map_err(|e| e.to_string())?;
    let (cont, _) = make_contiguous(&mixed, &scattered).map_err(|e| e.to_string())?;
    let d = cont.frobenius_distance(&prod);
    ensure(d < 1e-12, || format!("making the blocks contiguous again is off by {d}"))?;
    let i = mutual_info(&mixed, &scattered).map_err(|e| e.to_string())?.value();
    ensure(i.abs() < 1e-10, || format!("interleaved product has I = {i}"))?;
    Ok(())
}

/// `S(ρ‖σ_A⊗σ_B) = I(ρ) + S(ρ_A‖σ_A) + S(ρ_B‖σ_B)`; returns the deviation.
pub fn relative_entropy_split(seed: u64) -> Result<f64, String> {
    let mut r = rng(seed);
    let rank = r.random_range(1..=16);
    let rho = random_state(&mut r, &FockBasis::full(4), rank);
    let sa = random_mixed_state(&mut r, &FockBasis::full(2));
    let sb = random_mixed_state(&mut r, &FockBasis::full(2));
    let sigma = tensor_product(&[&sa, &sb]).map_err(|e| e.to_string())?.to_fock();
    let m = marginals(&rho, &lr()).map_err(|e| e.to_string())?;
    let lhs = rel_entropy(&rho, &sigma).map_err(|e| e.to_string())?.value();
    let rhs = mutual_info(&rho, &lr()).map_err(|e| e.to_string())?.value()
        + rel_entropy(&m[0], &sa).map_err(|e| e.to_string())?.value()
        + rel_entropy(&m[1], &sb).map_err(|e| e.to_string())?.value();
    Ok((lhs - rhs).abs())
}

/// Entropy range, mutual information as a relative entropy, subadditivity.
pub fn entropy_identities(seed: u64) -> Check {
    let dev = relative_entropy_split(seed)?;
    ensure(dev < 1e-9, || format!("relative-entropy split off by {dev}"))?;
    let mut r = rng(seed ^ 0x5eed);
    let rank = r.random_range(1..=16);
    let rho = random_state(&mut r, &FockBasis::full(4), rank);
    let s = vn_entropy(&rho).value();
    ensure((-1e-12..=16f64.ln() + 1e-12).contains(&s), || format!("entropy {s} out of range"))?;
    let m = marginals(&rho, &lr()).map_err(|e| e.to_string())?;
    let prod = tensor_product(&[&m[0], &m[1]]).map_err(|e| e.to_string())?.to_fock();
    let i = mutual_info(&rho, &lr()).map_err(|e| e.to_string())?.value();
    let rel = rel_entropy(&rho, &prod).map_err(|e| e.to_string())?.value();
    ensure((i - rel).abs() < 1e-9 && i >= 0.0, || format!("I = {i} but S(ρ‖ρA⊗ρB) = {rel}"))?;
    let c = mode_correlation(&rho, &lr(), true).map_err(|e| e.to_string())?.value();
    ensure(c <= i + 1e-10, || format!("SSR raised the correlation: {c} > {i}"))
}

/// Twirling twice equals twirling once, and commutes with the group.
pub fn twirl_idempotent(seed: u64) -> Check {
    let mut r = rng(seed);
    let rho = random_mixed_state(&mut r, &FockBasis::full(4));
    let g = SymmetryGroup::spin_orbital(2, 2);
    let once = twirl(&rho, &lr(), &g).map_err(|e| e.to_string())?;
    let twice = twirl(&once, &lr(), &g).map_err(|e| e.to_string())?;
    let d = once.frobenius_distance(&twice);
    ensure(d < 1e-12, || format!("twirl not idempotent: {d}"))?;
    let c = g.max_commutator(once.matrix());
    ensure(c < 1e-12, || format!("twirled state breaks the symmetry by {c}"))
}

/// Relative entropy of entanglement never exceeds the mutual information.
pub fn entanglement_below_correlation(seed: u64, config: &SolverConfig) -> Check {
    let mut r = rng(seed);
    let basis = FockBasis::sector(4, 2);
    let rho = if seed.is_multiple_of(2) { random_pure_state(&mut r, &basis) } else { random_state(&mut r, &basis, 2) };
    for ssr in [true, false] {
        let e = mode_entanglement(&rho, &lr(), ssr, config).map_err(|e| e.to_string())?.value();
        let c = mode_correlation(&rho, &lr(), ssr).map_err(|e| e.to_string())?.value();
        ensure(e >= 0.0 && e <= c + ZERO_ENTANGLEMENT, || format!("E = {e} > C = {c} (ssr {ssr})"))?;
    }
    Ok(())
}

/// `|C(A,B)| / (‖A‖_F ‖B‖_F) ≤ √(2 log 2) √I` for random local observables.
pub fn correlation_function_bound(seed: u64) -> Check {
    let mut r = rng(seed);
    let rank = r.random_range(1..=4);
    let rho = random_state(&mut r, &FockBasis::full(4), rank);
    let pair = ObservablePair::new(random_hermitian(&mut r, 4), random_hermitian(&mut r, 4))
        .map_err(|e| e.to_string())?;
    let c = corr_function(&rho, &pair, &lr()).map_err(|e| e.to_string())?;
    let i = mutual_info(&rho, &lr()).map_err(|e| e.to_string())?.value();
    let lhs = c.abs() / (frobenius(pair.a()) * frobenius(pair.b()));
    let rhs = (2.0 * LN_2).sqrt() * i.sqrt();
    ensure(lhs <= rhs + 1e-12, || format!("{lhs} > {rhs}"))
}

/// Every step of the free-energy argument for a grand-canonical chain.
pub fn free_energy_steps(sites: usize, t: f64, temperature: f64) -> Check {
    let chain = ChainParams::uniform(sites, t).map_err(|e| e.to_string())?;
    let c = free_energy_chain(&chain, temperature, Ensemble::GrandCanonical).map_err(|e| e.to_string())?;
    ensure(c.holds(1e-9), || format!("{sites} sites, t = {t}, T = {temperature}: {c:?}"))
}
