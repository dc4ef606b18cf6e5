//! Local symmetry groups and the twirl `T_G(σ) = ∫ dμ(g) U_g σ U_g†`.
//!
//! Matrices live on the full Fock space of a contiguous bipartition, index
//! `i_A + d_A i_B`. Abelian phase families `e^{iθ(g_A ⊗ 1 + 1 ⊗ g_B)}` with
//! integer `g` are twirled exactly by dephasing over their joint eigenvalue
//! blocks; discrete local unitaries are averaged over the finite group they
//! generate.

use crate::error::{Error, Result};
use crate::fock::{make_contiguous, mode_permutation_matrix, DensityMatrix, FockBasis, ModePartition};
use crate::linalg::{max_abs, unitarity_deviation, CMat, C64};

pub const UNITARY_TOL: f64 = 1e-12;
const MAX_GROUP_ORDER: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    ChargeA,
    ChargeB,
    TotalCharge,
    SpinA,
    SpinB,
    TotalSpin,
    Other,
}

/// `e^{iθ(g_A ⊗ 1 + 1 ⊗ g_B)}` for all `θ`; `g` is diagonal with integer
/// entries on the local configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFamily {
    pub kind: PhaseKind,
    pub g_a: Vec<i64>,
    pub g_b: Vec<i64>,
}

impl PhaseFamily {
    fn label(&self, da: usize, i: usize) -> i64 {
        self.g_a[i % da] + self.g_b[i / da]
    }
}

/// `U_A ⊗ U_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    pub name: String,
    pub a: CMat,
    pub b: CMat,
}

impl LocalUnitary {
    /// `U_A ⊗ U_B` on the full space (A on the fast index).
    pub fn full(&self) -> CMat {
        self.b.kronecker(&self.a)
    }
}

#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    na: usize,
    nb: usize,
    families: Vec<PhaseFamily>,
    discrete: Vec<LocalUnitary>,
    elements: Vec<CMat>,
    labels: Vec<Vec<i64>>,
}

fn diag_of(v: &[i64]) -> CMat {
    CMat::from_diagonal(&crate::linalg::CVec::from_iterator(
        v.len(),
        v.iter().map(|&x| C64::new(x as f64, 0.0)),
    ))
}

fn is_diagonal(m: &CMat, tol: f64) -> bool {
    (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| i == j || m[(i, j)].norm() <= tol))
}

impl SymmetryGroup {
    pub fn new(
        na: usize,
        nb: usize,
        families: Vec<PhaseFamily>,
        discrete: Vec<LocalUnitary>,
    ) -> Result<Self> {
        let (da, db) = (1usize << na, 1usize << nb);
        for f in &families {
            if f.g_a.len() != da || f.g_b.len() != db {
                return Err(Error::DimensionMismatch(format!(
                    "phase family {:?} has generator sizes {}, {}; expected {da}, {db}",
                    f.kind,
                    f.g_a.len(),
                    f.g_b.len()
                )));
            }
        }
        for u in &discrete {
            if u.a.shape() != (da, da) || u.b.shape() != (db, db) {
                return Err(Error::DimensionMismatch(format!(
                    "local unitary {} has the wrong local dimensions",
                    u.name
                )));
            }
            let dev = unitarity_deviation(&u.a).max(unitarity_deviation(&u.b));
            if dev > UNITARY_TOL {
                return Err(Error::NonUnitary(dev));
            }
            let full = u.full();
            for f in &families {
                let g = diag_of(&(0..da * db).map(|i| f.label(da, i)).collect::<Vec<_>>());
                if !is_diagonal(&(&full * g * full.adjoint()), 1e-10) {
                    return Err(Error::InvalidParameter(format!(
                        "{} does not normalize the {:?} phases",
                        u.name, f.kind
                    )));
                }
            }
        }
        let elements = closure(&discrete.iter().map(LocalUnitary::full).collect::<Vec<_>>(), da * db)?;
        let labels = (0..da * db)
            .map(|i| families.iter().map(|f| f.label(da, i)).collect())
            .collect();
        Ok(Self {
            na,
            nb,
            families,
            discrete,
            elements,
            labels,
        })
    }

    pub fn trivial(na: usize, nb: usize) -> Self {
        Self::new(na, nb, Vec::new(), Vec::new()).expect("empty group is valid")
    }

    /// Charge and `S_z` phases (local and simultaneous) plus the simultaneous
    /// spin flip. Blocks are read as consecutive `(↑, ↓)` pairs; spin
    /// symmetries are omitted when a block has an odd number of modes.
    pub fn spin_orbital(na: usize, nb: usize) -> Self {
        let charge = |n: usize| -> Vec<i64> { (0..1u32 << n).map(|s| s.count_ones() as i64).collect() };
        let spin2 = |n: usize| -> Vec<i64> {
            (0..1u32 << n)
                .map(|s| {
                    (0..n)
                        .filter(|m| s >> m & 1 == 1)
                        .map(|m| if m % 2 == 0 { 1 } else { -1 })
                        .sum()
                })
                .collect()
        };
        let zeros = |n: usize| vec![0i64; 1 << n];
        let mut families = vec![
            PhaseFamily { kind: PhaseKind::ChargeA, g_a: charge(na), g_b: zeros(nb) },
            PhaseFamily { kind: PhaseKind::ChargeB, g_a: zeros(na), g_b: charge(nb) },
            PhaseFamily { kind: PhaseKind::TotalCharge, g_a: charge(na), g_b: charge(nb) },
        ];
        let mut discrete = Vec::new();
        if na.is_multiple_of(2) && nb.is_multiple_of(2) {
            families.extend([
                PhaseFamily { kind: PhaseKind::SpinA, g_a: spin2(na), g_b: zeros(nb) },
                PhaseFamily { kind: PhaseKind::SpinB, g_a: zeros(na), g_b: spin2(nb) },
                PhaseFamily { kind: PhaseKind::TotalSpin, g_a: spin2(na), g_b: spin2(nb) },
            ]);
            let flip = |n: usize| -> CMat {
                let perm: Vec<usize> = (0..n).map(|m| m ^ 1).collect();
                mode_permutation_matrix(&FockBasis::full(n), &perm).expect("pair swap is a permutation")
            };
            discrete.push(LocalUnitary {
                name: "spin flip".into(),
                a: flip(na),
                b: flip(nb),
            });
        }
        Self::new(na, nb, families, discrete).expect("standard generators are consistent")
    }

    /// The generators that leave `rho` invariant (to `tol` in max-abs).
    pub fn stabilizer(&self, rho: &CMat, tol: f64) -> Self {
        let da = self.dim_a();
        let n = rho.nrows();
        let families = self
            .families
            .iter()
            .filter(|f| {
                (0..n).all(|i| {
                    (0..n).all(|j| f.label(da, i) == f.label(da, j) || rho[(i, j)].norm() <= tol)
                })
            })
            .cloned()
            .collect();
        let discrete = self
            .discrete
            .iter()
            .filter(|u| {
                let full = u.full();
                max_abs(&(&full * rho * full.adjoint() - rho)) <= tol
            })
            .cloned()
            .collect();
        Self::new(self.na, self.nb, families, discrete).expect("subset of a valid group")
    }

    pub fn modes(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    pub fn dim_a(&self) -> usize {
        1 << self.na
    }

    pub fn dim_b(&self) -> usize {
        1 << self.nb
    }

    pub fn dim(&self) -> usize {
        1 << (self.na + self.nb)
    }

    pub fn families(&self) -> &[PhaseFamily] {
        &self.families
    }

    pub fn discrete(&self) -> &[LocalUnitary] {
        &self.discrete
    }

    pub fn has_family(&self, kind: PhaseKind) -> bool {
        self.families.iter().any(|f| f.kind == kind)
    }

    /// Order of the finite group generated by the discrete generators.
    pub fn discrete_order(&self) -> usize {
        self.elements.len()
    }

    /// Joint phase labels of each full-space index.
    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    /// Full-space indices grouped by joint phase label, in label order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut keyed: Vec<(Vec<i64>, usize)> = self.labels.iter().cloned().zip(0..).collect();
        keyed.sort();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<Vec<i64>> = None;
        for (label, i) in keyed {
            if last.as_ref() != Some(&label) {
                out.push(Vec::new());
                last = Some(label);
            }
            out.last_mut().expect("pushed above").push(i);
        }
        out
    }

    /// Dephasing over the phase families followed by the average over the
    /// discrete group.
    pub fn twirl_matrix(&self, m: &CMat) -> CMat {
        let mut out = m.clone();
        if !self.families.is_empty() {
            let labels = &self.labels;
            let n = m.nrows();
            for i in 0..n {
                for j in 0..n {
                    if labels[i] != labels[j] {
                        out[(i, j)] = C64::new(0.0, 0.0);
                    }
                }
            }
        }
        if self.elements.len() > 1 {
            let mut acc = CMat::zeros(out.nrows(), out.ncols());
            for u in &self.elements {
                acc += u * &out * u.adjoint();
            }
            out = acc / C64::new(self.elements.len() as f64, 0.0);
        }
        out
    }

    /// Largest commutator `‖[U, m]‖_max` over the generators (phase families
    /// checked through their generator).
    pub fn max_commutator(&self, m: &CMat) -> f64 {
        let da = self.dim_a();
        let n = m.nrows();
        let mut worst: f64 = 0.0;
        for f in &self.families {
            for i in 0..n {
                for j in 0..n {
                    let d = (f.label(da, i) - f.label(da, j)) as f64;
                    worst = worst.max((m[(i, j)] * d).norm());
                }
            }
        }
        for u in &self.discrete {
            let full = u.full();
            worst = worst.max(max_abs(&(&full * m - m * &full)));
        }
        worst
    }

    /// A finite set of local unitaries `(U_A, U_B)` whose uniform average
    /// equals the twirl: cyclic phase grids fine enough to resolve every
    /// label difference, times the discrete closure.
    pub fn finite_elements(&self) -> Vec<(CMat, CMat)> {
        let (da, db) = (self.dim_a(), self.dim_b());
        let mut out: Vec<(CMat, CMat)> = vec![(CMat::identity(da, da), CMat::identity(db, db))];
        for f in &self.families {
            let labels: Vec<i64> = (0..da * db).map(|i| f.label(da, i)).collect();
            let span = labels.iter().max().unwrap() - labels.iter().min().unwrap();
            let m = span + 1;
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for k in 0..m {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                let pa = phase_diag(&f.g_a, theta);
                let pb = phase_diag(&f.g_b, theta);
                for (a, b) in &out {
                    next.push((&pa * a, &pb * b));
                }
            }
            out = next;
        }
        let locals = local_closure(&self.discrete);
        let mut all = Vec::with_capacity(out.len() * locals.len());
        for (ua, ub) in &locals {
            for (a, b) in &out {
                all.push((ua * a, ub * b));
            }
        }
        all
    }
}

fn phase_diag(g: &[i64], theta: f64) -> CMat {
    CMat::from_diagonal(&crate::linalg::CVec::from_iterator(
        g.len(),
        g.iter().map(|&x| C64::from_polar(1.0, theta * x as f64)),
    ))
}

fn closure(generators: &[CMat], dim: usize) -> Result<Vec<CMat>> {
    let mut elements = vec![CMat::identity(dim, dim)];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for e in &frontier {
            for g in generators {
                let p = g * e;
                if !elements.iter().chain(&fresh).any(|x| max_abs(&(x - &p)) < 1e-9) {
                    fresh.push(p);
                }
            }
        }
        elements.extend(fresh.iter().cloned());
        if elements.len() > MAX_GROUP_ORDER {
            return Err(Error::InvalidParameter(format!(
                "discrete generators span more than {MAX_GROUP_ORDER} elements"
            )));
        }
        frontier = fresh;
    }
    Ok(elements)
}

fn local_closure(generators: &[LocalUnitary]) -> Vec<(CMat, CMat)> {
    let Some(first) = generators.first() else {
        return vec![(CMat::identity(1, 1), CMat::identity(1, 1))];
    };
    let (da, db) = (first.a.nrows(), first.b.nrows());
    let mut elements = vec![(CMat::identity(da, da), CMat::identity(db, db))];
    let mut fulls = vec![CMat::identity(da * db, da * db)];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for (ea, eb) in &frontier {
            for g in generators {
                let p = (&g.a * ea, &g.b * eb);
                let full = p.1.kronecker(&p.0);
                if !fulls.iter().any(|x| max_abs(&(x - &full)) < 1e-9) {
                    fulls.push(full);
                    fresh.push(p);
                }
            }
        }
        elements.extend(fresh.iter().cloned());
        frontier = fresh;
    }
    elements
}

/// Twirl a state of a bipartition; the result is on the full Fock space of
/// the contiguous layout of `partition`.
pub fn twirl(rho: &DensityMatrix, partition: &ModePartition, group: &SymmetryGroup) -> Result<DensityMatrix> {
    partition.require_bipartition()?;
    if (partition.block_size(0), partition.block_size(1)) != group.modes() {
        return Err(Error::DimensionMismatch(format!(
            "group acts on {:?} modes, partition has blocks of {} and {}",
            group.modes(),
            partition.block_size(0),
            partition.block_size(1)
        )));
    }
    let (state, _) = make_contiguous(rho, partition)?;
    let full = state.to_fock();
    DensityMatrix::new(full.basis().clone(), group.twirl_matrix(full.matrix()))
}
