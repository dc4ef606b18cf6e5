use super::*;

fn dimer(r: f64) -> ChainParams {
    ChainParams::dimer(&DimerParams::from_distance(r).unwrap())
}

#[test]
fn coupling_norm_is_linear_in_t() {
    let n1 = coupling_norm(&DimerParams::from_hopping(0.3).unwrap());
    let n2 = coupling_norm(&DimerParams::from_hopping(0.6).unwrap());
    assert!((n2 / n1 - 2.0).abs() < 1e-12);
    // 2 spins × 2 directions × 4 spectator configurations, each amplitude t
    assert!((n1 - 0.3 * 16f64.sqrt()).abs() < 1e-12);
    let chain = ChainParams::uniform(3, 0.2).unwrap();
    let norms = coupling_norms(&chain_hamiltonian(&chain));
    assert_eq!(norms.len(), 2);
    assert!((norms[0] - norms[1]).abs() < 1e-12);
    let off = ChainParams::new(vec![0.0], 1.0).unwrap();
    assert_eq!(coupling_norms(&chain_hamiltonian(&off)), vec![0.0]);
}

#[test]
fn dimer_grid_satisfies_bound() {
    for t in [0.05, 0.1, 0.5] {
        for k in 0..40 {
            let r = 0.1 + 0.2 * k as f64;
            let rep = wolf_bound_check(t, r).unwrap();
            assert!(rep.satisfied, "T={t} r={r}: {rep:?}");
            assert!(rep.ratio.unwrap() <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn dissociation_limit() {
    let rep = wolf_bound_check(0.1, 25.0).unwrap();
    assert!(rep.rhs < 1e-7 && rep.mutual_info < 1e-7);
    let far = wolf_bound_check(0.5, 6.0).unwrap().rhs;
    let farther = wolf_bound_check(0.5, 7.0).unwrap().rhs;
    assert!((far / farther - 1f64.exp()).abs() < 1e-9);
}

#[test]
fn chain_of_two_matches_dimer() {
    let a = wolf_bound_check(0.3, 1.2).unwrap();
    let b = general_bound_check(&dimer(1.2), 0.3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn three_site_chain() {
    let rep = general_bound_check(&ChainParams::uniform(3, 0.2).unwrap(), 0.1).unwrap();
    assert!(rep.satisfied && rep.mutual_info > 0.0);
    let off = general_bound_check(&ChainParams::new(vec![0.0, 0.0], 1.0).unwrap(), 0.1).unwrap();
    assert!(off.mutual_info.abs() < 1e-12 && off.rhs == 0.0 && off.satisfied);
    assert!(matches!(dyn_corr_ratio(&off), Err(Error::UndefinedRatio(_))));
}

#[test]
fn free_energy_steps() {
    for (t, r) in [(0.05, 0.5), (0.1, 1.7), (0.5, 3.0), (2.0, 0.2)] {
        let c = free_energy_chain(&dimer(r), t, Ensemble::GrandCanonical).unwrap();
        assert!(c.holds(1e-10), "{c:?}");
        assert!(c.local_residuals.iter().all(|x| *x < 1e-10));
    }
    let c = free_energy_chain(&ChainParams::uniform(3, 0.4).unwrap(), 0.2, Ensemble::GrandCanonical).unwrap();
    assert!(c.holds(1e-10));
}

#[test]
fn grand_canonical_state_is_half_filled() {
    let chain = dimer(1.0);
    let rho = chain_gibbs(&chain, 0.3, Ensemble::GrandCanonical).unwrap();
    let n = chain_hamiltonian(&chain).number_matrix(rho.basis());
    assert!((rho.expectation(&n).re - 2.0).abs() < 1e-10);
}

#[test]
fn canonical_ensemble_can_violate() {
    let rep = wolf_bound_check_in(0.5, 5.0, Ensemble::Canonical).unwrap();
    assert!(!rep.satisfied);
    assert!(matches!(rep.into_result(), Err(Error::BoundViolation { .. })));
}

#[test]
fn dynamic_ratio_in_unit_interval() {
    for r in [0.3, 1.0, 3.0, 8.0] {
        let d = dyn_corr_ratio(&wolf_bound_check(0.1, r).unwrap()).unwrap();
        assert!((0.0..=1.0).contains(&d.c_dyn));
        assert!((d.c_dyn + d.c_stat - 1.0).abs() < 1e-15);
    }
    assert!(dyn_corr_ratio(&wolf_bound_check(0.1, 25.0).unwrap()).unwrap().at_floor);
}
