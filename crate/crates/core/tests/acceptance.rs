//! Acceptance gate: one PASS/FAIL line per criterion, each with a pinned
//! tolerance and a runtime limit. Exits non-zero if any criterion fails.

mod common;

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fermicorr::bounds::{general_bound_check, wolf_bound_check};
use fermicorr::critical::{
    c0, c1, d0, d1, rcrit_mode_exact, rcrit_mode_low_t, rcrit_particle_exact, rcrit_particle_low_t,
};
use fermicorr::fock::ModePartition;
use fermicorr::hubbard::{
    analytic_spectrum, dimer_hamiltonian, dissociated_mixture, dissociated_singlet, gibbs_state, ChainParams,
    DimerParams,
};
use fermicorr::linalg::eigvalsh;
use fermicorr::measures::mutual_info;
use fermicorr::particle::{nonfreeness, quantum_nonfreeness};
use fermicorr::ree::{is_separable, mode_entanglement, SolverConfig, ZERO_ENTANGLEMENT};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| (lo.ln() + (hi.ln() - lo.ln()) * k as f64 / (n - 1) as f64).exp()).collect()
}

fn within(name: &str, value: f64, target: f64, tol: f64) -> Result<String, String> {
    let msg = format!("{name} = {value:.6} (target {target:.6} ± {tol:e})");
    if (value - target).abs() <= tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn join(parts: Vec<Result<String, String>>) -> Outcome {
    let failed = parts.iter().any(|p| p.is_err());
    let text = parts.into_iter().map(|p| p.unwrap_or_else(|e| format!("[{e}]"))).collect::<Vec<_>>().join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn spectrum_oracle() -> Outcome {
    let basis = fermicorr::hubbard::dimer_sector_basis();
    let mut worst: f64 = 0.0;
    for t in log_grid(1e-4, 1e2, 200) {
        let h = dimer_hamiltonian(&DimerParams::from_hopping(t).map_err(|e| e.to_string())?).matrix(&basis);
        let numeric = eigvalsh(&h);
        let exact = analytic_spectrum(t).map_err(|e| e.to_string())?.energies;
        for (a, b) in numeric.iter().zip(exact) {
            worst = worst.max((a - b).abs());
        }
    }
    let msg = format!("max |Δ| = {worst:e} over 200 t in [1e-4, 1e2] (limit 1e-10)");
    if worst <= 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn critical_distances() -> Outcome {
    let e = |r: fermicorr::Result<f64>| r.map_err(|e| e.to_string());
    let m = e(rcrit_mode_exact(0.1))?;
    let p = e(rcrit_particle_exact(0.1))?;
    let ml = e(rcrit_mode_low_t(0.1))?;
    let pl = e(rcrit_particle_low_t(0.1))?;
    join(vec![
        within("r_mode(0.1)", m, 1.70, 0.03),
        within("r_particle(0.1)", p, 1.65, 0.03),
        within("r_mode_lowT(0.1)", ml, m, 0.02),
        within("r_particle_lowT(0.1)", pl, p, 0.02),
    ])
}

/// Least squares of `y = k0 + k1 T`.
fn linear_fit(ts: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = ts.len() as f64;
    let (st, sy) = (ts.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let stt: f64 = ts.iter().map(|t| t * t).sum();
    let sty: f64 = ts.iter().zip(ys).map(|(t, y)| t * y).sum();
    let k1 = (n * sty - st * sy) / (n * stt - st * st);
    ((sy - k1 * st) / n, k1)
}

fn asymptotic_constants() -> Outcome {
    let ts = log_grid(1e-4, 1e-2, 21);
    let fit = |f: fn(f64) -> fermicorr::Result<f64>| -> Result<(f64, f64), String> {
        let ys = ts
            .par_iter()
            .map(|&t| f(t).map(|r| r + 0.5 * t.ln()))
            .collect::<fermicorr::Result<Vec<f64>>>()
            .map_err(|e| e.to_string())?;
        Ok(linear_fit(&ts, &ys))
    };
    let (m0, m1) = fit(rcrit_mode_exact)?;
    let (p0, p1) = fit(rcrit_particle_exact)?;
    join(vec![
        within("c0", m0, c0(), 1e-3),
        within("c1", m1, c1(), 0.02 * c1().abs()),
        within("d0", p0, d0(), 1e-3),
        within("d1", p1, d1(), 0.02 * d1().abs()),
    ])
}

fn bound_audit() -> Outcome {
    let rs: Vec<f64> = (0..200).map(|k| 0.1 + 7.9 * k as f64 / 199.0).collect();
    let points: Vec<(f64, f64)> = [0.05, 0.1, 0.5].iter().flat_map(|&t| rs.iter().map(move |&r| (t, r))).collect();
    let dimer = points
        .par_iter()
        .map(|&(t, r)| wolf_bound_check(t, r).map(|rep| (rep.mutual_info <= rep.rhs + 1e-9, rep.ratio.unwrap_or(0.0))))
        .collect::<fermicorr::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let chain_points: Vec<(f64, f64)> = [0.05, 0.1, 0.2, 0.5, 1.0]
        .iter()
        .flat_map(|&temp| (0..10).map(move |k| (temp, 0.05 * (k + 1) as f64)))
        .collect();
    let chain = chain_points
        .par_iter()
        .map(|&(temp, t)| {
            let c = ChainParams::uniform(3, t)?;
            general_bound_check(&c, temp).map(|rep| (rep.satisfied, rep.ratio.unwrap_or(0.0)))
        })
        .collect::<fermicorr::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let bad_dimer = dimer.iter().filter(|x| !x.0).count();
    let bad_chain = chain.iter().filter(|x| !x.0).count();
    let worst = dimer.iter().chain(&chain).map(|x| x.1).fold(0.0, f64::max);
    let msg = format!(
        "dimer violations {bad_dimer}/{} of I <= 2||H_LR||_F/T, 3-site chain violations {bad_chain}/{}, max I/rhs = {worst:.4}",
        dimer.len(),
        chain.len()
    );
    if bad_dimer == 0 && bad_chain == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn relative_entropy_identity() -> Outcome {
    let devs = (0..100u64).map(common::relative_entropy_split).collect::<Result<Vec<f64>, String>>()?;
    let worst = devs.iter().copied().fold(0.0, f64::max);
    let msg = format!("max deviation {worst:e} over 100 triples (limit 1e-9)");
    if worst <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn benchmark_states() -> Outcome {
    let part = ModePartition::dimer_left_right();
    let s = dissociated_singlet();
    let mix = dissociated_mixture();
    let cfg = SolverConfig::default();
    let e = |r: fermicorr::Result<f64>| r.map_err(|e| e.to_string());
    join(vec![
        within("I(singlet)", e(mutual_info(&s, &part).map(f64::from))?, 2.0 * LN_2, 1e-9),
        within("REE(singlet, no SSR)", e(mode_entanglement(&s, &part, false, &cfg).map(f64::from))?, LN_2, 1e-3),
        within("NF(singlet)", nonfreeness(&s).value(), 4.0 * LN_2, 1e-9),
        within("QNF(singlet)", e(quantum_nonfreeness(&s))?, 1.0, 1e-9),
        within("I(mixture)", e(mutual_info(&mix, &part).map(f64::from))?, 0.0, 1e-6),
        within("QNF(mixture)", e(quantum_nonfreeness(&mix))?, 0.0, 1e-6),
        within("NF(mixture)", nonfreeness(&mix).value(), 2.0 * LN_2, 1e-6),
    ])
}

fn sudden_death_consistency() -> Outcome {
    let t = 0.1;
    let part = ModePartition::dimer_left_right();
    let cfg = SolverConfig::default();
    let boundary = rcrit_mode_exact(t).map_err(|e| e.to_string())?;
    let rs: Vec<f64> = (0..=190).map(|k| 0.2 + 0.02 * k as f64).collect();
    let rows = rs
        .par_iter()
        .map(|&r| -> fermicorr::Result<(f64, bool, bool)> {
            let rho = gibbs_state(&DimerParams::from_distance(r)?, t)?;
            let zero = mode_entanglement(&rho, &part, true, &cfg)?.value() <= ZERO_ENTANGLEMENT;
            Ok((r, zero, is_separable(&rho, &part, true)?))
        })
        .collect::<fermicorr::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let disagree: Vec<f64> = rows.iter().filter(|x| x.1 != x.2).map(|x| x.0).collect();
    let outside: Vec<f64> = disagree.iter().copied().filter(|r| (r - boundary).abs() > 0.02).collect();
    let msg = format!(
        "{} grid points, {} disagreements ({} farther than 0.02 from r_crit = {boundary:.4})",
        rows.len(),
        disagree.len(),
        outside.len()
    );
    if outside.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}: {outside:?}"))
    }
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut run = |name: &str, r: common::Check| {
        count += 1;
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    for d in 1..=6 {
        for i in 0..d {
            for j in 0..d {
                run("anticommutation", common::anticommutation(d, i, j));
            }
        }
    }
    for seed in 0..64 {
        run("partial trace", common::partial_trace_round_trip(seed));
        run("entropy identities", common::entropy_identities(seed));
        run("twirl idempotence", common::twirl_idempotent(seed));
        run("CvsI", common::correlation_function_bound(seed));
    }
    for sites in 2..=4 {
        for &temp in &[0.05, 0.3, 1.5] {
            for &r in &[0.2f64, 1.5, 4.0] {
                run("free energy", common::free_energy_steps(sites, (-r).exp(), temp));
            }
        }
    }
    let cfg = SolverConfig::default();
    for seed in 0..12 {
        run("E <= C", common::entanglement_below_correlation(seed, &cfg));
    }
    if failures.is_empty() {
        Ok(format!("{count} checks under fixed seeds"))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 spectrum oracle", Duration::from_secs(1), spectrum_oracle),
        ("2 critical distances", Duration::from_secs(10), critical_distances),
        ("3 asymptotic constants", Duration::from_secs(30), asymptotic_constants),
        ("4 bound audit", Duration::from_secs(60), bound_audit),
        ("5 relative-entropy identity", Duration::from_secs(10), relative_entropy_identity),
        ("6 benchmark states", Duration::from_secs(1), benchmark_states),
        ("7 sudden-death consistency", Duration::from_secs(300), sudden_death_consistency),
        ("8 property suites", Duration::from_secs(120), property_suites),
    ];
    let mut all = true;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let (ok, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        all &= ok;
        println!(
            "{} criterion {name}: {detail}; runtime {:.3} s (limit {} s){}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { " EXCEEDED" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
