//! Relative entropy of entanglement `E(ρ) = min_{σ separable} S(ρ‖σ)`.
//!
//! The separable state is a mixture of `K` product projectors with softmax
//! weights and unnormalized local vectors. The candidate is twirled over the
//! local symmetries of `ρ` before the relative entropy is taken, and the
//! gradient is propagated through the twirl and the matrix logarithm.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::lbfgs::{minimize, LbfgsOptions};
use super::ppt::is_separable;
use super::symmetry::{PhaseKind, SymmetryGroup};
use crate::error::{Error, Result};
use crate::fock::{make_contiguous, ssr_project, DensityMatrix, FockBasis, ModePartition};
use crate::linalg::{CMat, CVec, HermitianEigen, C64, ZERO};
use crate::measures::{mode_correlation, spectral_entropy, EntropyValue};
use crate::random::gaussian_vector;

/// Entanglement values at or below this count as zero.
pub const ZERO_ENTANGLEMENT: f64 = 1e-4;
const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues of the twirled candidate at or below this are outside its
/// support; `ρ` weight there above `SUPPORT_LEAK` makes the value infinite.
const NULL_EIGENVALUE: f64 = 1e-15;
const SUPPORT_LEAK: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Initial number of product components `K`.
    pub components: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Relative improvement over `window` iterations below which a run stops.
    pub tol: f64,
    pub window: usize,
    /// A run stops once the relative entropy is below this.
    pub zero_value: f64,
    pub max_iter: usize,
    pub memory: usize,
    /// Cap for the adaptive doubling of `K`.
    pub max_components: usize,
    pub use_symmetry: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            components: 16,
            restarts: 8,
            seed: 0,
            tol: 1e-9,
            window: 50,
            zero_value: 1e-6,
            max_iter: 4000,
            memory: 12,
            max_components: 64,
            use_symmetry: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(format!("solver {what}")));
        if self.components == 0 {
            return bad("needs at least one component");
        }
        if self.restarts == 0 {
            return bad("needs at least one restart");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tolerance must be positive");
        }
        if self.window == 0 || self.max_iter == 0 || self.memory == 0 {
            return bad("window, iteration cap and memory must be positive");
        }
        Ok(())
    }
}

/// `w |a⟩⟨a| ⊗ |b⟩⟨b|` with normalized local vectors on the full local Fock
/// spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductComponent {
    pub weight: f64,
    pub a: CVec,
    pub b: CVec,
}

/// A separable state as an explicit convex mixture of product states. With
/// `ssr` set every local vector has a definite particle number.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableAnsatz {
    na: usize,
    nb: usize,
    ssr: bool,
    components: Vec<ProductComponent>,
}

fn has_fixed_charge(v: &CVec) -> bool {
    let mut charge = None;
    for (i, x) in v.iter().enumerate() {
        if x.norm() > 1e-12 {
            let q = i.count_ones();
            if *charge.get_or_insert(q) != q {
                return false;
            }
        }
    }
    true
}

impl SeparableAnsatz {
    pub fn new(na: usize, nb: usize, ssr: bool, components: Vec<ProductComponent>) -> Result<Self> {
        let (da, db) = (1usize << na, 1usize << nb);
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if components.is_empty() || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidState(format!("weights sum to {total}")));
        }
        for c in &components {
            if c.weight < 0.0 {
                return Err(Error::InvalidState(format!("negative weight {}", c.weight)));
            }
            if c.a.len() != da || c.b.len() != db {
                return Err(Error::DimensionMismatch("local vector size".into()));
            }
            if (c.a.norm() - 1.0).abs() > 1e-9 || (c.b.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidState("local vectors must be normalized".into()));
            }
            if ssr && !(has_fixed_charge(&c.a) && has_fixed_charge(&c.b)) {
                return Err(Error::InvalidState("local vector without definite charge".into()));
            }
        }
        Ok(Self { na, nb, ssr, components })
    }

    pub fn components(&self) -> &[ProductComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn ssr(&self) -> bool {
        self.ssr
    }

    pub fn modes(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    pub fn matrix(&self) -> CMat {
        let n = 1 << (self.na + self.nb);
        let mut m = CMat::zeros(n, n);
        for c in &self.components {
            let v = c.b.kronecker(&c.a);
            m += &v * v.adjoint() * C64::new(c.weight, 0.0);
        }
        m
    }

    pub fn state(&self) -> DensityMatrix {
        DensityMatrix::new(FockBasis::full(self.na + self.nb), self.matrix())
            .expect("convex mixture of product projectors")
    }

    /// The same mixture averaged over a finite realization of `group`.
    pub fn twirled(&self, group: &SymmetryGroup) -> Self {
        let elements = group.finite_elements();
        let w = 1.0 / elements.len() as f64;
        let components = elements
            .iter()
            .flat_map(|(ua, ub)| {
                self.components.iter().map(move |c| ProductComponent {
                    weight: c.weight * w,
                    a: ua * &c.a,
                    b: ub * &c.b,
                })
            })
            .collect();
        Self { na: self.na, nb: self.nb, ssr: self.ssr, components }
    }
}

#[derive(Debug, Clone)]
pub struct ReeResult {
    pub value: EntropyValue,
    /// The twirled minimizer on the full Fock space of the contiguous layout.
    pub sigma: DensityMatrix,
    /// The untwirled mixture; `sigma` is its twirl over `group`.
    pub ansatz: SeparableAnsatz,
    pub group: SymmetryGroup,
    pub components: usize,
    pub iterations: usize,
    pub grad_norm: f64,
    pub converged_restarts: usize,
}

/// Local vectors of one product component live on these local
/// configurations.
#[derive(Debug, Clone, PartialEq)]
struct Slot {
    a_idx: Vec<usize>,
    b_idx: Vec<usize>,
}

impl Slot {
    fn params(&self) -> usize {
        2 * (self.a_idx.len() + self.b_idx.len())
    }
}

struct RhoBlock {
    idx: Vec<usize>,
    rho: CMat,
}

struct Objective<'a> {
    da: usize,
    dim: usize,
    group: &'a SymmetryGroup,
    blocks: Vec<RhoBlock>,
    neg_entropy: f64,
    slots: Vec<Slot>,
}

struct Decoded {
    p: Vec<f64>,
    a: Vec<CVec>,
    b: Vec<CVec>,
    a_norm: Vec<f64>,
    b_norm: Vec<f64>,
}

fn read_complex(x: &[f64]) -> CVec {
    CVec::from_iterator(x.len() / 2, x.chunks(2).map(|c| C64::new(c[0], c[1])))
}

impl Objective<'_> {
    fn decode(&self, x: &[f64]) -> Decoded {
        let k = self.slots.len();
        let top = x[..k].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let e: Vec<f64> = x[..k].iter().map(|s| (s - top).exp()).collect();
        let z: f64 = e.iter().sum();
        let p = e.iter().map(|v| v / z).collect();
        let mut off = k;
        let mut out = Decoded { p, a: vec![], b: vec![], a_norm: vec![], b_norm: vec![] };
        for slot in &self.slots {
            let ma = 2 * slot.a_idx.len();
            let a = read_complex(&x[off..off + ma]);
            off += ma;
            let mb = 2 * slot.b_idx.len();
            let b = read_complex(&x[off..off + mb]);
            off += mb;
            let (na, nb) = (a.norm(), b.norm());
            out.a.push(a.unscale(na));
            out.b.push(b.unscale(nb));
            out.a_norm.push(na);
            out.b_norm.push(nb);
        }
        out
    }

    fn sigma(&self, d: &Decoded) -> CMat {
        let mut s = CMat::zeros(self.dim, self.dim);
        for (k, slot) in self.slots.iter().enumerate() {
            let (a, b, p) = (&d.a[k], &d.b[k], d.p[k]);
            for (m, &ib) in slot.b_idx.iter().enumerate() {
                for (n, &jb) in slot.b_idx.iter().enumerate() {
                    let bb = b[m] * b[n].conj() * p;
                    for (i, &ia) in slot.a_idx.iter().enumerate() {
                        let left = a[i] * bb;
                        for (j, &ja) in slot.a_idx.iter().enumerate() {
                            s[(ia + self.da * ib, ja + self.da * jb)] += left * a[j].conj();
                        }
                    }
                }
            }
        }
        s
    }

    /// `S(ρ‖T(σ))` and, if requested, `∂f/∂σ = −T(Dlog_{T(σ)}[ρ])`.
    fn relative_entropy(&self, sigma_g: &CMat, want_grad: bool) -> (f64, Option<CMat>) {
        let mut f = self.neg_entropy;
        let mut dlog = if want_grad { Some(CMat::zeros(self.dim, self.dim)) } else { None };
        for blk in &self.blocks {
            let n = blk.idx.len();
            let sb = CMat::from_fn(n, n, |i, j| sigma_g[(blk.idx[i], blk.idx[j])]);
            let eig = HermitianEigen::new(&sb);
            let mut x = eig.vectors.adjoint() * &blk.rho * &eig.vectors;
            for (j, &l) in eig.values.iter().enumerate() {
                if l <= NULL_EIGENVALUE {
                    if x[(j, j)].re > SUPPORT_LEAK {
                        return (f64::INFINITY, None);
                    }
                    x.row_mut(j).fill(ZERO);
                    x.column_mut(j).fill(ZERO);
                    continue;
                }
                f -= x[(j, j)].re * l.ln();
            }
            if let Some(d) = dlog.as_mut() {
                let lam = &eig.values;
                let y = CMat::from_fn(n, n, |i, j| {
                    let xij = x[(i, j)];
                    if xij == ZERO {
                        return ZERO;
                    }
                    let (li, lj) = (lam[i], lam[j]);
                    let ratio = if (li - lj).abs() <= 1e-9 * li.max(lj) {
                        2.0 / (li + lj)
                    } else {
                        (li.ln() - lj.ln()) / (li - lj)
                    };
                    xij * ratio
                });
                let db = &eig.vectors * y * eig.vectors.adjoint();
                for (i, &gi) in blk.idx.iter().enumerate() {
                    for (j, &gj) in blk.idx.iter().enumerate() {
                        d[(gi, gj)] = -db[(i, j)];
                    }
                }
            }
        }
        (f, dlog.map(|d| self.group.twirl_matrix(&d)))
    }

    fn eval(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let d = self.decode(x);
        let sigma_g = self.group.twirl_matrix(&self.sigma(&d));
        let (f, g) = self.relative_entropy(&sigma_g, true);
        let Some(g) = g else {
            grad.iter_mut().for_each(|v| *v = 0.0);
            return f;
        };
        let k = self.slots.len();
        let mut gk = vec![0.0; k];
        let mut off = k;
        for (s, slot) in self.slots.iter().enumerate() {
            let (a, b, p) = (&d.a[s], &d.b[s], d.p[s]);
            let (ma, mb) = (slot.a_idx.len(), slot.b_idx.len());
            let mut ga = CMat::zeros(ma, ma);
            let mut gb = CMat::zeros(mb, mb);
            for (m, &ib) in slot.b_idx.iter().enumerate() {
                for (n, &jb) in slot.b_idx.iter().enumerate() {
                    for (i, &ia) in slot.a_idx.iter().enumerate() {
                        for (j, &ja) in slot.a_idx.iter().enumerate() {
                            let v = g[(ia + self.da * ib, ja + self.da * jb)];
                            ga[(i, j)] += b[m].conj() * v * b[n];
                            gb[(m, n)] += a[i].conj() * v * a[j];
                        }
                    }
                }
            }
            let gva = &ga * a;
            let h = a.dotc(&gva).re;
            gk[s] = h;
            let va = (gva - a * C64::new(h, 0.0)) * C64::new(2.0 * p / d.a_norm[s], 0.0);
            for (i, z) in va.iter().enumerate() {
                grad[off + 2 * i] = z.re;
                grad[off + 2 * i + 1] = z.im;
            }
            off += 2 * ma;
            let gvb = &gb * b;
            let vb = (gvb - b * C64::new(h, 0.0)) * C64::new(2.0 * p / d.b_norm[s], 0.0);
            for (i, z) in vb.iter().enumerate() {
                grad[off + 2 * i] = z.re;
                grad[off + 2 * i + 1] = z.im;
            }
            off += 2 * mb;
        }
        let mean: f64 = d.p.iter().zip(&gk).map(|(p, g)| p * g).sum();
        for s in 0..k {
            grad[s] = d.p[s] * (gk[s] - mean);
        }
        f
    }

    fn params(&self) -> usize {
        self.slots.len() + self.slots.iter().map(Slot::params).sum::<usize>()
    }
}

fn configs(n: usize, charge: u32) -> Vec<usize> {
    (0..1usize << n).filter(|s| s.count_ones() == charge).collect()
}

/// Eigen-decomposition of a local marginal, per charge sector when the
/// marginal is charge-block-diagonal.
fn local_spectrum(m: &CMat, n: usize, by_charge: bool) -> Vec<(f64, Vec<usize>, CVec)> {
    let sectors: Vec<Vec<usize>> = if by_charge {
        (0..=n as u32).map(|q| configs(n, q)).collect()
    } else {
        vec![(0..1usize << n).collect()]
    };
    let mut out = Vec::new();
    for idx in sectors {
        let sub = CMat::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])]);
        let eig = HermitianEigen::new(&sub);
        for (k, &l) in eig.values.iter().enumerate() {
            out.push((l.max(0.0), idx.clone(), eig.vectors.column(k).into_owned()));
        }
    }
    out
}

fn write_complex(v: &CVec, out: &mut Vec<f64>) {
    for z in v.iter() {
        out.push(z.re);
        out.push(z.im);
    }
}

struct Start {
    slots: Vec<Slot>,
    x: Vec<f64>,
}

/// `ρ_A ⊗ ρ_B` truncated to the `k` heaviest products; its value is the
/// mutual information when nothing is truncated.
fn product_start(rho: &CMat, na: usize, nb: usize, k: usize, by_charge: bool) -> Start {
    let (da, db) = (1usize << na, 1usize << nb);
    let ra = CMat::from_fn(da, da, |i, j| (0..db).map(|m| rho[(i + da * m, j + da * m)]).sum());
    let rb = CMat::from_fn(db, db, |m, n| (0..da).map(|i| rho[(i + da * m, i + da * n)]).sum());
    let sa = local_spectrum(&ra, na, by_charge);
    let sb = local_spectrum(&rb, nb, by_charge);
    let mut prods: Vec<(f64, usize, usize)> = Vec::new();
    for (i, x) in sa.iter().enumerate() {
        for (j, y) in sb.iter().enumerate() {
            prods.push((x.0 * y.0, i, j));
        }
    }
    prods.sort_by(|x, y| y.0.total_cmp(&x.0));
    prods.truncate(k);
    let mut slots = Vec::new();
    let mut logits = Vec::new();
    let mut vecs = Vec::new();
    for &(w, i, j) in &prods {
        slots.push(Slot { a_idx: sa[i].1.clone(), b_idx: sb[j].1.clone() });
        logits.push(w.max(1e-300).ln().max(-700.0));
        write_complex(&sa[i].2, &mut vecs);
        write_complex(&sb[j].2, &mut vecs);
    }
    logits.extend(vecs);
    Start { slots, x: logits }
}

/// Slots spread over the charge sectors that carry weight in `rho`.
fn charge_slots(rho: &CMat, na: usize, nb: usize, k: usize) -> Vec<Slot> {
    let da = 1usize << na;
    let mut sectors: Vec<(f64, Vec<usize>, Vec<usize>, usize)> = Vec::new();
    for qa in 0..=na as u32 {
        for qb in 0..=nb as u32 {
            let (ca, cb) = (configs(na, qa), configs(nb, qb));
            let w: f64 = ca.iter().flat_map(|&a| cb.iter().map(move |&b| (a, b))).map(|(a, b)| rho[(a + da * b, a + da * b)].re).sum();
            if w > 1e-14 {
                let (ka, kb) = (ca.len(), cb.len());
                let demand = if ka == 1 || kb == 1 { ka.max(kb) } else { (ka * kb).pow(2) };
                sectors.push((w, ca, cb, demand));
            }
        }
    }
    sectors.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut alloc = vec![1usize; sectors.len()];
    let mut left = k.saturating_sub(sectors.len());
    while left > 0 {
        let mut gave = false;
        for (s, sec) in sectors.iter().enumerate() {
            if left > 0 && alloc[s] < sec.3 {
                alloc[s] += 1;
                left -= 1;
                gave = true;
            }
        }
        if !gave {
            break;
        }
    }
    let mut slots = Vec::new();
    for (s, sec) in sectors.iter().enumerate() {
        for _ in 0..alloc[s] {
            slots.push(Slot { a_idx: sec.1.clone(), b_idx: sec.2.clone() });
        }
    }
    slots
}

/// Random local vectors; when the two sides are alike, slots are paired
/// with their mirror image under the exchange of A and B.
fn random_start(slots: Vec<Slot>, rng: &mut ChaCha8Rng, mirror: bool) -> Start {
    let k = slots.len();
    let mut vecs: Vec<Option<(CVec, CVec)>> = vec![None; k];
    for s in 0..k {
        if vecs[s].is_some() {
            continue;
        }
        let a = gaussian_vector(rng, slots[s].a_idx.len());
        let b = gaussian_vector(rng, slots[s].b_idx.len());
        if mirror {
            let twin = (s + 1..k).find(|&m| {
                vecs[m].is_none() && slots[m].a_idx == slots[s].b_idx && slots[m].b_idx == slots[s].a_idx
            });
            if let Some(m) = twin {
                vecs[m] = Some((b.clone(), a.clone()));
            }
        }
        vecs[s] = Some((a, b));
    }
    let mut x = vec![0.0; k];
    for v in vecs {
        let (a, b) = v.expect("every slot filled");
        write_complex(&a, &mut x);
        write_complex(&b, &mut x);
    }
    Start { slots, x }
}

struct RunOutcome {
    f: f64,
    x: Vec<f64>,
    slots: Vec<Slot>,
    grad_norm: f64,
    iterations: usize,
    converged: bool,
}

/// Everything the restarts share.
struct Prepared {
    rho: CMat,
    na: usize,
    nb: usize,
    group: SymmetryGroup,
    blocks: Vec<RhoBlock>,
    neg_entropy: f64,
    charge_restricted: bool,
}

fn prepare(rho: &DensityMatrix, partition: &ModePartition, ssr: bool, config: &SolverConfig) -> Result<Prepared> {
    partition.require_bipartition()?;
    let state = if ssr { ssr_project(rho, partition)? } else { rho.clone() };
    let (state, part) = make_contiguous(&state, partition)?;
    let (na, nb) = (part.block_size(0), part.block_size(1));
    let full = state.to_fock();
    let m = full.matrix().clone();
    let group = if config.use_symmetry {
        SymmetryGroup::spin_orbital(na, nb).stabilizer(&m, SYMMETRY_TOL)
    } else {
        SymmetryGroup::trivial(na, nb)
    };
    let blocks = group
        .blocks()
        .into_iter()
        .filter_map(|idx| {
            let r = CMat::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])]);
            (r.iter().any(|z| z.norm() > 1e-300)).then_some(RhoBlock { idx, rho: r })
        })
        .collect::<Vec<_>>();
    let neg_entropy = -spectral_entropy(&full.eigenvalues());
    let charge_restricted = group.has_family(PhaseKind::ChargeA) && group.has_family(PhaseKind::ChargeB);
    Ok(Prepared { rho: m, na, nb, group, blocks, neg_entropy, charge_restricted })
}

fn run(prep: &Prepared, start: Start, config: &SolverConfig) -> RunOutcome {
    let obj = Objective {
        da: 1 << prep.na,
        dim: 1 << (prep.na + prep.nb),
        group: &prep.group,
        blocks: prep
            .blocks
            .iter()
            .map(|b| RhoBlock { idx: b.idx.clone(), rho: b.rho.clone() })
            .collect(),
        neg_entropy: prep.neg_entropy,
        slots: start.slots,
    };
    debug_assert_eq!(obj.params(), start.x.len());
    let opts = LbfgsOptions {
        memory: config.memory,
        max_iter: config.max_iter,
        rel_tol: config.tol,
        window: config.window,
        target: config.zero_value,
        grad_tol: 1e-13,
    };
    let out = minimize(|x, g| obj.eval(x, g), start.x, &opts);
    RunOutcome {
        f: out.f,
        x: out.x,
        slots: obj.slots,
        grad_norm: out.grad_norm,
        iterations: out.iterations,
        converged: out.converged,
    }
}

fn solve_with(prep: &Prepared, k: usize, config: &SolverConfig) -> Vec<RunOutcome> {
    let first = run(prep, product_start(&prep.rho, prep.na, prep.nb, k, prep.charge_restricted), config);
    if first.converged && first.f < config.zero_value {
        return vec![first];
    }
    // mirrored pairs span only part of the symmetric subspace, so they
    // need the twirl to fill the support
    let mirror = prep.na == prep.nb && !prep.group.families().is_empty();
    let slots = if prep.charge_restricted {
        charge_slots(&prep.rho, prep.na, prep.nb, k)
    } else {
        let all = Slot { a_idx: (0..1 << prep.na).collect(), b_idx: (0..1 << prep.nb).collect() };
        vec![all; k]
    };
    let mut rest: Vec<RunOutcome> = (1..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            run(prep, random_start(slots.clone(), &mut rng, mirror), config)
        })
        .collect();
    rest.insert(0, first);
    rest
}

fn finish(prep: &Prepared, best: &RunOutcome, runs: &[RunOutcome], k: usize) -> Result<ReeResult> {
    let obj = Objective {
        da: 1 << prep.na,
        dim: 1 << (prep.na + prep.nb),
        group: &prep.group,
        blocks: Vec::new(),
        neg_entropy: 0.0,
        slots: best.slots.clone(),
    };
    let d = obj.decode(&best.x);
    let (da, db) = (1usize << prep.na, 1usize << prep.nb);
    let components = best
        .slots
        .iter()
        .enumerate()
        .map(|(s, slot)| {
            let mut a = CVec::zeros(da);
            let mut b = CVec::zeros(db);
            for (i, &ia) in slot.a_idx.iter().enumerate() {
                a[ia] = d.a[s][i];
            }
            for (i, &ib) in slot.b_idx.iter().enumerate() {
                b[ib] = d.b[s][i];
            }
            ProductComponent { weight: d.p[s], a, b }
        })
        .collect();
    let ansatz = SeparableAnsatz::new(prep.na, prep.nb, prep.charge_restricted, components)?;
    let sigma_g = prep.group.twirl_matrix(&ansatz.matrix());
    let sigma = DensityMatrix::new(FockBasis::full(prep.na + prep.nb), sigma_g)?;
    Ok(ReeResult {
        value: EntropyValue::new(best.f),
        sigma,
        ansatz,
        group: prep.group.clone(),
        components: k,
        iterations: best.iterations,
        grad_norm: best.grad_norm,
        converged_restarts: runs.iter().filter(|r| r.converged).count(),
    })
}

/// Minimize `S(ρ̃‖σ)` over separable `σ`, where `ρ̃` is `ρ` or its
/// local-number projection. `K` is doubled (up to `max_components`) while the
/// result exceeds the mutual information or contradicts a PPT certificate of
/// separability.
pub fn solve_ree(
    rho: &DensityMatrix,
    partition: &ModePartition,
    ssr: bool,
    config: &SolverConfig,
) -> Result<ReeResult> {
    config.validate()?;
    let prep = prepare(rho, partition, ssr, config)?;
    let upper = mode_correlation(rho, partition, ssr)?.value();
    let certified_separable = matches!(is_separable(rho, partition, ssr), Ok(true));

    let mut k = config.components;
    loop {
        let runs = solve_with(&prep, k, config);
        let best = runs
            .iter()
            .min_by(|x, y| x.f.total_cmp(&y.f))
            .expect("at least one run");
        let suspicious = best.f > upper + 1e-9 || (certified_separable && best.f > ZERO_ENTANGLEMENT);
        if suspicious && 2 * k <= config.max_components {
            k *= 2;
            continue;
        }
        if !best.f.is_finite() || !runs.iter().any(|r| r.converged) {
            return Err(Error::SolverNonConvergence { best: best.f, grad_norm: best.grad_norm });
        }
        return finish(&prep, best, &runs, k);
    }
}

pub fn mode_entanglement(
    rho: &DensityMatrix,
    partition: &ModePartition,
    ssr: bool,
    config: &SolverConfig,
) -> Result<EntropyValue> {
    Ok(solve_ree(rho, partition, ssr, config)?.value)
}
