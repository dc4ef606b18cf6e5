use crate::error::{Error, Result};
use crate::fock::basis::{FockBasis, ModeBasis, OccupationState};
use crate::linalg::{minor_det, unitarity_deviation, CMat, C64, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
}

impl Ladder {
    fn mode(self) -> usize {
        match self {
            Ladder::Create(m) | Ladder::Annihilate(m) => m,
        }
    }

    fn apply(self, s: OccupationState) -> Option<(f64, OccupationState)> {
        match self {
            Ladder::Create(m) => s.create(m),
            Ladder::Annihilate(m) => s.annihilate(m),
        }
    }
}

/// `coeff · o_1 o_2 ⋯ o_k`, written left to right like the operator product.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coeff: C64,
    pub ops: Vec<Ladder>,
}

impl FermionTerm {
    /// Image of a configuration, if the string does not annihilate it.
    pub fn apply(&self, s: OccupationState) -> Option<(C64, OccupationState)> {
        let mut sign = 1.0;
        let mut cur = s;
        for op in self.ops.iter().rev() {
            let (sg, next) = op.apply(cur)?;
            sign *= sg;
            cur = next;
        }
        Some((self.coeff * sign, cur))
    }
}

/// A polynomial in ladder operators on a fixed number of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    modes: usize,
    terms: Vec<FermionTerm>,
}

impl FermionOperator {
    pub fn zero(modes: usize) -> Self {
        Self {
            modes,
            terms: Vec::new(),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }

    pub fn push(&mut self, coeff: C64, ops: Vec<Ladder>) -> Result<()> {
        if let Some(bad) = ops.iter().find(|o| o.mode() >= self.modes) {
            return Err(Error::ModeOutOfRange {
                mode: bad.mode(),
                modes: self.modes,
            });
        }
        self.terms.push(FermionTerm { coeff, ops });
        Ok(())
    }

    pub fn with(mut self, coeff: f64, ops: Vec<Ladder>) -> Result<Self> {
        self.push(C64::new(coeff, 0.0), ops)?;
        Ok(self)
    }

    pub fn extend(&mut self, other: &FermionOperator) {
        assert_eq!(self.modes, other.modes, "operators act on different mode sets");
        self.terms.extend(other.terms.iter().cloned());
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            modes: self.modes,
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm {
                    coeff: t.coeff * factor,
                    ops: t.ops.clone(),
                })
                .collect(),
        }
    }

    /// `n_i = f†_i f_i`.
    pub fn number(modes: usize, i: usize) -> Result<Self> {
        Self::zero(modes).with(1.0, vec![Ladder::Create(i), Ladder::Annihilate(i)])
    }

    /// `f†_i f_j + f†_j f_i`.
    pub fn hopping(modes: usize, i: usize, j: usize) -> Result<Self> {
        Self::zero(modes)
            .with(1.0, vec![Ladder::Create(i), Ladder::Annihilate(j)])?
            .with(1.0, vec![Ladder::Create(j), Ladder::Annihilate(i)])
    }

    /// `n_i n_j`.
    pub fn density_density(modes: usize, i: usize, j: usize) -> Result<Self> {
        Self::zero(modes).with(
            1.0,
            vec![
                Ladder::Create(i),
                Ladder::Annihilate(i),
                Ladder::Create(j),
                Ladder::Annihilate(j),
            ],
        )
    }

    /// Matrix elements `⟨s|O|s'⟩` on `basis`. Images leaving the basis are
    /// dropped, so the basis should be invariant under the operator.
    pub fn matrix(&self, basis: &FockBasis) -> CMat {
        assert_eq!(basis.modes(), self.modes, "basis and operator mode counts differ");
        let n = basis.dim();
        let mut m = CMat::zeros(n, n);
        for (col, &s) in basis.states().iter().enumerate() {
            for term in &self.terms {
                if let Some((c, out)) = term.apply(s) {
                    if let Some(row) = basis.index_of(out) {
                        m[(row, col)] += c;
                    }
                }
            }
        }
        m
    }
}

/// `f†_mode` on the full Fock space of `basis`, Jordan–Wigner ordered.
pub fn creation_op(basis: &ModeBasis, mode: usize) -> Result<CMat> {
    basis.check_mode(mode)?;
    let d = basis.len();
    Ok(FermionOperator::zero(d)
        .with(1.0, vec![Ladder::Create(mode)])?
        .matrix(&FockBasis::full(d)))
}

/// `f_mode`, the adjoint of [`creation_op`].
pub fn annihilation_op(basis: &ModeBasis, mode: usize) -> Result<CMat> {
    Ok(creation_op(basis, mode)?.adjoint())
}

/// Fock-space representation `Γ(u)` of a one-particle unitary,
/// `Γ(u) f†_k Γ(u)† = Σ_i u_{ik} f†_i`.
///
/// On each particle-number sector the matrix elements are minors of `u`.
pub fn one_particle_transform(u: &CMat, basis: &FockBasis) -> Result<CMat> {
    let d = basis.modes();
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "one-particle matrix is {}x{}, expected {d}x{d}",
            u.nrows(),
            u.ncols()
        )));
    }
    let dev = unitarity_deviation(u);
    if dev > 1e-10 {
        return Err(Error::NonUnitary(dev));
    }
    let n = basis.dim();
    let mut g = CMat::zeros(n, n);
    let occ: Vec<Vec<usize>> = basis
        .states()
        .iter()
        .map(|s| s.occupied_modes().collect())
        .collect();
    for col in 0..n {
        for row in 0..n {
            if occ[row].len() != occ[col].len() {
                continue;
            }
            g[(row, col)] = if occ[row].is_empty() {
                ONE
            } else {
                minor_det(u, &occ[row], &occ[col])
            };
        }
    }
    Ok(g)
}
