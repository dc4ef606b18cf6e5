//! Seeded random states and unitaries for restarts and property checks.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::fock::{DensityMatrix, FockBasis};
use crate::linalg::{CMat, CVec, C64};

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    let v = gaussian_vector(rng, n);
    let norm = v.norm();
    v.unscale(norm)
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let qr = ginibre(rng, n, n).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Random mixed state `G G† / Tr` with a Ginibre `G` of the given rank.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, basis: &FockBasis, rank: usize) -> DensityMatrix {
    let n = basis.dim();
    let g = ginibre(rng, n, rank.max(1));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(basis.clone(), m.unscale(tr)).expect("Ginibre construction is a valid state")
}

/// Full-rank random mixed state.
pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R, basis: &FockBasis) -> DensityMatrix {
    random_state(rng, basis, basis.dim())
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, basis: &FockBasis) -> DensityMatrix {
    DensityMatrix::pure(basis.clone(), &unit_vector(rng, basis.dim()))
        .expect("unit vector gives a valid state")
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let g = ginibre(rng, n, n);
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}
