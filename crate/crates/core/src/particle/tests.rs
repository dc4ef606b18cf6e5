use std::f64::consts::LN_2;

use approx::assert_abs_diff_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fock::{one_particle_transform, DensityMatrix, FockBasis, OccupationState};
use crate::hubbard::{dissociated_mixture, dissociated_singlet, gibbs_state, ground_state, DimerParams};
use crate::linalg::{max_abs, CMat, C64};
use crate::random::{haar_unitary, random_mixed_state, random_pure_state};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn config(bits: u32) -> DensityMatrix {
    DensityMatrix::configuration_mixture(FockBasis::sector(4, 2), &[OccupationState::new(bits, 4).unwrap()])
        .unwrap()
}

fn rotate(rho: &DensityMatrix, u: &CMat) -> DensityMatrix {
    let basis = FockBasis::sector(4, 2);
    let g = one_particle_transform(u, &basis).unwrap();
    rho.restrict_to(&basis).unwrap().conjugate(&g)
}

#[test]
fn one_rdm_values() {
    let c = one_rdm(&config(0b0101));
    let expect = CMat::from_diagonal(&crate::linalg::CVec::from_vec(
        [1.0, 0.0, 1.0, 0.0].iter().map(|&x| C64::new(x, 0.0)).collect(),
    ));
    assert!(max_abs(&(c.matrix() - expect)) < 1e-15);
    let s = one_rdm(&dissociated_singlet());
    assert!(max_abs(&(s.matrix() - CMat::identity(4, 4) * C64::new(0.5, 0.0))) < 1e-14);
    let far = one_rdm(&gibbs_state(&DimerParams::from_distance(12.0).unwrap(), 0.1).unwrap());
    assert!(max_abs(&(far.matrix() - CMat::identity(4, 4) * C64::new(0.5, 0.0))) < 1e-3);
    let mut r = rng(1);
    let rho = random_mixed_state(&mut r, &FockBasis::full(4));
    let n = crate::hubbard::dimer_hamiltonian(&DimerParams::from_distance(0.0).unwrap())
        .number_matrix(&FockBasis::full(4));
    assert_abs_diff_eq!(one_rdm(&rho).particle_number(), rho.expectation(&n).re, epsilon = 1e-12);
}

#[test]
fn nonfreeness_values() {
    for bits in [0b0011, 0b0101, 0b1010, 0b1100] {
        assert!(nonfreeness(&config(bits)).value() < 1e-12);
    }
    assert_abs_diff_eq!(nonfreeness(&dissociated_singlet()).value(), 4.0 * LN_2, epsilon = 1e-12);
    assert_abs_diff_eq!(nonfreeness(&dissociated_mixture()).value(), 2.0 * LN_2, epsilon = 1e-12);
}

#[test]
fn nonfreeness_rotation_invariant() {
    let mut r = rng(2);
    for _ in 0..20 {
        let rho = random_mixed_state(&mut r, &FockBasis::sector(4, 2));
        let u = haar_unitary(&mut r, 4);
        assert_abs_diff_eq!(
            nonfreeness(&rho).value(),
            nonfreeness(&rotate(&rho, &u)).value(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn k_matrix_values() {
    let k = schliemann_k(&dissociated_singlet()).unwrap();
    assert_eq!(k.dim(), 1);
    assert_abs_diff_eq!(k.entries()[(0, 0)].re, -1.0, epsilon = 1e-14);
    assert_abs_diff_eq!(quantum_nonfreeness(&dissociated_singlet()).unwrap(), 1.0, epsilon = 1e-14);
    let c = schliemann_k(&config(0b0011)).unwrap();
    assert_eq!(c.dim(), 1);
    assert!(c.moduli()[0] < 1e-15);
    assert!(quantum_nonfreeness(&dissociated_mixture()).unwrap() < 1e-14);
    assert!(schliemann_k(&DensityMatrix::maximally_mixed(FockBasis::full(2))).is_err());
    assert!(schliemann_k(&DensityMatrix::maximally_mixed(FockBasis::full(4))).is_err());
}

#[test]
fn k_moduli_invariant_under_rotation() {
    let mut r = rng(3);
    for _ in 0..20 {
        let rho = crate::random::random_state(&mut r, &FockBasis::sector(4, 2), 3);
        let mut u = haar_unitary(&mut r, 4);
        let det = u.determinant();
        let fix = (det / det.norm()).powf(0.25).inv();
        u *= fix;
        assert_abs_diff_eq!(u.determinant().re, 1.0, epsilon = 1e-12);
        let a = schliemann_k(&rho).unwrap();
        let b = schliemann_k(&rotate(&rho, &u)).unwrap();
        for (x, y) in a.moduli().iter().zip(b.moduli()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(
            quantum_nonfreeness(&rho).unwrap(),
            quantum_nonfreeness(&rotate(&rho, &u)).unwrap(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn degenerate_decomposition_is_irrelevant() {
    // Gibbs states carry the threefold triplet degeneracy.
    for r in [0.5, 1.6, 3.0] {
        let rho = gibbs_state(&DimerParams::from_distance(r).unwrap(), 0.2).unwrap();
        let q = quantum_nonfreeness(&rho).unwrap();
        let mut g = rng(4);
        for _ in 0..5 {
            // conjugating by a random spin rotation mixes the triplet
            let spin = haar_unitary(&mut g, 2);
            let mut u = CMat::zeros(4, 4);
            for site in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        u[(2 * site + a, 2 * site + b)] = spin[(a, b)];
                    }
                }
            }
            assert_abs_diff_eq!(q, quantum_nonfreeness(&rotate(&rho, &u)).unwrap(), epsilon = 1e-8);
        }
    }
}

#[test]
fn configuration_mixtures_are_free() {
    let mut r = rng(5);
    let configs: Vec<u32> = FockBasis::sector(4, 2).states().iter().map(|s| s.bits()).collect();
    for _ in 0..50 {
        let u = haar_unitary(&mut r, 4);
        let mut m = CMat::zeros(6, 6);
        let mut total = 0.0;
        for &bits in &configs {
            let w: f64 = r.random();
            total += w;
            m += config(bits).matrix() * C64::new(w, 0.0);
        }
        let rho = DensityMatrix::new(FockBasis::sector(4, 2), m / C64::new(total, 0.0)).unwrap();
        assert!(quantum_nonfreeness(&rotate(&rho, &u)).unwrap() < 1e-9);
    }
}

#[test]
fn mixtures_in_individual_bases_are_recorded() {
    let mut r = rng(6);
    let mut positive = 0;
    for _ in 0..50 {
        let mut m = CMat::zeros(6, 6);
        for _ in 0..3 {
            let u = haar_unitary(&mut r, 4);
            m += rotate(&config(0b0011), &u).matrix() / C64::new(3.0, 0.0);
        }
        let rho = DensityMatrix::new(FockBasis::sector(4, 2), m).unwrap();
        if quantum_nonfreeness(&rho).unwrap() > 1e-9 {
            positive += 1;
        }
    }
    eprintln!("slater mixtures in individual bases with positive quantum nonfreeness: {positive}/50");
}

#[test]
fn pure_state_criteria_agree() {
    let mut r = rng(7);
    let basis = FockBasis::sector(4, 2);
    for k in 0..40 {
        let rho = if k % 2 == 0 {
            random_pure_state(&mut r, &basis)
        } else {
            rotate(&config(0b0110), &haar_unitary(&mut r, 4))
        };
        let q = quantum_nonfreeness(&rho).unwrap();
        let fractional = one_rdm(&rho).occupations().iter().any(|&n| n > 1e-6 && n < 1.0 - 1e-6);
        assert_eq!(q > 1e-6, fractional, "k={k} q={q}");
    }
    let g = ground_state(&DimerParams::from_distance(1.0).unwrap());
    assert!(quantum_nonfreeness(&g).unwrap() > 0.5);
}
