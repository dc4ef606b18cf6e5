//! Sudden-death distances of the thermal dimer in the mode and particle
//! pictures: exact roots, two-level (low-temperature) roots and the
//! logarithmic small-`T` expansions.

use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::ModePartition;
use crate::hubbard::{analytic_spectrum, gibbs_state, DimerParams};
use crate::particle::quantum_nonfreeness;
use crate::ree::is_separable;

/// Quantum nonfreeness above this counts as particle entanglement.
pub const QNF_ZERO: f64 = 1e-9;
/// Bracket scan step in `r`.
pub const SCAN_STEP: f64 = 0.1;
/// Lower end of the bracket scan.
pub const SCAN_START: f64 = 0.1;
/// Width of the final bisection interval.
pub const BISECTION_TOL: f64 = 1e-10;
/// Largest temperature for the two-level conditions.
pub const LOW_T_MAX: f64 = 0.3;

/// `log 2 − ½ log log 3`, the common intercept of both expansions.
pub fn c0() -> f64 {
    LN_2 - 0.5 * 3f64.ln().ln()
}

pub fn c1() -> f64 {
    -0.5 * (1.0 + 3f64.ln())
}

pub fn d0() -> f64 {
    c0()
}

pub fn d1() -> f64 {
    -0.5 * (2.0 + 3f64.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Mode,
    Particle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "lowT-analytic")]
    LowT,
    #[serde(rename = "asymptotic")]
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalSample {
    #[serde(rename = "T")]
    pub temperature: f64,
    pub r_crit: f64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalCurve {
    pub picture: Picture,
    pub samples: Vec<CriticalSample>,
}

impl CriticalCurve {
    /// Evaluates `method` at every temperature, in parallel.
    pub fn compute(picture: Picture, method: Method, temperatures: &[f64]) -> Result<Self> {
        let samples = temperatures
            .par_iter()
            .map(|&t| {
                Ok(CriticalSample { temperature: t, r_crit: critical_distance(picture, method, t)?, method })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CriticalCurve { picture, samples })
    }
}

pub fn critical_distance(picture: Picture, method: Method, temperature: f64) -> Result<f64> {
    match (picture, method) {
        (Picture::Mode, Method::Exact) => rcrit_mode_exact(temperature),
        (Picture::Mode, Method::LowT) => rcrit_mode_low_t(temperature),
        (Picture::Particle, Method::Exact) => rcrit_particle_exact(temperature),
        (Picture::Particle, Method::LowT) => rcrit_particle_low_t(temperature),
        (p, Method::Asymptotic) => asymptote(p, temperature),
    }
}

/// `−½ log T + c₀ + c₁ T` (mode) or `−½ log T + d₀ + d₁ T` (particle).
pub fn asymptote(picture: Picture, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidParameter(format!("temperature must be positive, got {temperature}")));
    }
    let (k0, k1) = match picture {
        Picture::Mode => (c0(), c1()),
        Picture::Particle => (d0(), d1()),
    };
    Ok(-0.5 * temperature.ln() + k0 + k1 * temperature)
}

/// Distance beyond which the SSR-projected Gibbs state passes the block-wise
/// PPT test.
pub fn rcrit_mode_exact(temperature: f64) -> Result<f64> {
    check_range(temperature, 1.0)?;
    let part = ModePartition::dimer_left_right();
    locate(temperature, |r| {
        let rho = gibbs_state(&DimerParams::from_distance(r)?, temperature)?;
        Ok(!is_separable(&rho, &part, true)?)
    })
}

/// Distance beyond which the quantum nonfreeness of the Gibbs state vanishes.
pub fn rcrit_particle_exact(temperature: f64) -> Result<f64> {
    check_range(temperature, 1.0)?;
    locate(temperature, |r| {
        let rho = gibbs_state(&DimerParams::from_distance(r)?, temperature)?;
        Ok(quantum_nonfreeness(&rho)? > QNF_ZERO)
    })
}

/// Root of `a² − 3e^{−ΔE/T}` with only the ground and first excited levels
/// populated.
pub fn rcrit_mode_low_t(temperature: f64) -> Result<f64> {
    check_range(temperature, LOW_T_MAX)?;
    locate(temperature, |r| {
        let s = analytic_spectrum((-r).exp())?;
        Ok(s.a * s.a > 3.0 * (-s.gap() / temperature).exp())
    })
}

/// Root of `|a² − b²| p² − 3q²` in the same two-level approximation.
pub fn rcrit_particle_low_t(temperature: f64) -> Result<f64> {
    check_range(temperature, LOW_T_MAX)?;
    locate(temperature, |r| {
        let s = analytic_spectrum((-r).exp())?;
        let x = (-s.gap() / temperature).exp();
        let (p2, q2) = (1.0 / (1.0 + 3.0 * x), x / (1.0 + 3.0 * x));
        Ok((s.a * s.a - s.b * s.b).abs() * p2 > 3.0 * q2)
    })
}

fn check_range(temperature: f64, max: f64) -> Result<()> {
    if temperature > 0.0 && temperature <= max {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("temperature must lie in (0, {max}], got {temperature}")))
    }
}

/// Scans `[SCAN_START, −½ log T + 3]` for the first change from entangled to
/// not entangled, then bisects.
fn locate(temperature: f64, entangled: impl Fn(f64) -> Result<bool>) -> Result<f64> {
    let hi_end = -0.5 * temperature.ln() + 3.0;
    let failure = Error::BracketFailure { lo: SCAN_START, hi: hi_end };
    if !entangled(SCAN_START)? {
        return Err(failure);
    }
    let steps = ((hi_end - SCAN_START) / SCAN_STEP).ceil() as usize;
    let mut lo = SCAN_START;
    let mut hi = None;
    for k in 1..=steps {
        let r = (SCAN_START + k as f64 * SCAN_STEP).min(hi_end);
        if !entangled(r)? {
            hi = Some(r);
            break;
        }
        lo = r;
    }
    let mut hi = hi.ok_or(failure)?;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
