use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_MODES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

/// Ordered, uniquely labelled spin-orbitals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBasis {
    labels: Vec<String>,
}

impl ModeBasis {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidModeBasis("at least one mode required".into()));
        }
        if labels.len() > MAX_MODES {
            return Err(Error::InvalidModeBasis(format!(
                "{} modes exceeds the limit of {MAX_MODES}",
                labels.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidModeBasis(format!(
                    "duplicate label `{l}` at positions {j} and {i}"
                )));
            }
        }
        Ok(Self { labels })
    }

    /// Modes labelled `0, 1, …, d-1`.
    pub fn numbered(d: usize) -> Result<Self> {
        Self::new((0..d).map(|i| i.to_string()))
    }

    /// Two spin-orbitals per site, ordered `site↑, site↓` site by site.
    pub fn spin_sites(sites: &[&str]) -> Result<Self> {
        Self::new(
            sites
                .iter()
                .flat_map(|s| [format!("{s}↑"), format!("{s}↓")]),
        )
    }

    /// `L↑, L↓, R↑, R↓`.
    pub fn dimer() -> Self {
        Self::spin_sites(&["L", "R"]).expect("static labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Spin read from a trailing `↑`/`↓` in the label.
    pub fn spin(&self, mode: usize) -> Option<Spin> {
        let l = self.labels.get(mode)?;
        if l.ends_with('↑') {
            Some(Spin::Up)
        } else if l.ends_with('↓') {
            Some(Spin::Down)
        } else {
            None
        }
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.len() {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange {
                mode,
                modes: self.len(),
            })
        }
    }
}

/// Occupation-number configuration `|n_0 n_1 … n_{d-1}⟩`; bit `i` is `n_i`.
///
/// The state is `(f†_0)^{n_0} (f†_1)^{n_1} ⋯ |0⟩`, so ladder operators on
/// mode `i` pick up `(-1)` per occupied mode with a smaller index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationState(u32);

impl OccupationState {
    pub const VACUUM: Self = Self(0);

    pub fn new(bits: u32, modes: usize) -> Result<Self> {
        if modes > MAX_MODES || (bits >> modes) != 0 {
            return Err(Error::InvalidParameter(format!(
                "occupation bits {bits:#b} do not fit {modes} modes"
            )));
        }
        Ok(Self(bits))
    }

    pub(crate) const fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn from_modes(occupied: &[usize], modes: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &m in occupied {
            if m >= modes {
                return Err(Error::ModeOutOfRange { mode: m, modes });
            }
            bits |= 1 << m;
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn particle_number(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_occupied(self, mode: usize) -> bool {
        (self.0 >> mode) & 1 == 1
    }

    pub fn occupied_modes(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |&i| (bits >> i) & 1 == 1)
    }

    /// Particles in modes `offset..offset+len`.
    pub fn count_in(self, offset: usize, len: usize) -> u32 {
        ((self.0 >> offset) & ((1u32 << len) - 1)).count_ones()
    }

    /// Jordan–Wigner sign for acting on `mode`.
    fn jw_sign(self, mode: usize) -> f64 {
        if (self.0 & ((1u32 << mode) - 1)).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `f†_mode |self⟩ = sign |out⟩`, or `None` if the mode is occupied.
    pub fn create(self, mode: usize) -> Option<(f64, Self)> {
        if self.is_occupied(mode) {
            None
        } else {
            Some((self.jw_sign(mode), Self(self.0 | (1 << mode))))
        }
    }

    /// `f_mode |self⟩ = sign |out⟩`, or `None` if the mode is empty.
    pub fn annihilate(self, mode: usize) -> Option<(f64, Self)> {
        if self.is_occupied(mode) {
            Some((self.jw_sign(mode), Self(self.0 & !(1 << mode))))
        } else {
            None
        }
    }
}

impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{:b}⟩", self.0)
    }
}

/// An ordered set of configurations spanning (a subspace of) Fock space.
///
/// Bases are always kept sorted by occupation bits so that two bases over
/// the same configurations compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    modes: usize,
    states: Vec<OccupationState>,
    full: bool,
}

impl FockBasis {
    /// All `2^d` configurations.
    pub fn full(modes: usize) -> Self {
        assert!(modes <= MAX_MODES, "at most {MAX_MODES} modes");
        Self {
            modes,
            states: (0..1u32 << modes).map(OccupationState).collect(),
            full: true,
        }
    }

    /// Configurations with exactly `n` particles.
    pub fn sector(modes: usize, n: u32) -> Self {
        assert!(modes <= MAX_MODES, "at most {MAX_MODES} modes");
        Self::from_states(
            modes,
            (0..1u32 << modes)
                .filter(|b| b.count_ones() == n)
                .map(OccupationState),
        )
        .expect("sector states are valid")
    }

    pub fn from_states(
        modes: usize,
        states: impl IntoIterator<Item = OccupationState>,
    ) -> Result<Self> {
        if modes > MAX_MODES {
            return Err(Error::InvalidParameter(format!(
                "{modes} modes exceeds the limit of {MAX_MODES}"
            )));
        }
        let mut states: Vec<OccupationState> = states.into_iter().collect();
        states.sort();
        states.dedup();
        if let Some(s) = states.iter().find(|s| s.0 >> modes != 0) {
            return Err(Error::InvalidParameter(format!(
                "state {s} does not fit {modes} modes"
            )));
        }
        let full = states.len() == 1usize << modes;
        Ok(Self {
            modes,
            states,
            full,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn states(&self) -> &[OccupationState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> OccupationState {
        self.states[i]
    }

    pub fn index_of(&self, s: OccupationState) -> Option<usize> {
        if self.full {
            Some(s.0 as usize)
        } else {
            self.states.binary_search(&s).ok()
        }
    }

    pub fn is_number_conserving(&self) -> Option<u32> {
        let n = self.states.first()?.particle_number();
        self.states
            .iter()
            .all(|s| s.particle_number() == n)
            .then_some(n)
    }
}
