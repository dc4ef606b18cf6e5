use crate::error::{Error, Result};
use crate::fock::basis::{FockBasis, OccupationState};
use crate::linalg::{CMat, ONE};

/// Ordered disjoint blocks of mode indices covering `0..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModePartition {
    modes: usize,
    blocks: Vec<Vec<usize>>,
}

impl ModePartition {
    pub fn new(modes: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; modes];
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {k} is empty")));
            }
            for &m in b {
                if m >= modes {
                    return Err(Error::ModeOutOfRange { mode: m, modes });
                }
                if std::mem::replace(&mut seen[m], true) {
                    return Err(Error::InvalidPartition(format!(
                        "mode {m} appears in more than one block"
                    )));
                }
            }
        }
        if let Some(m) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("mode {m} is not covered")));
        }
        Ok(Self { modes, blocks })
    }

    /// Contiguous blocks of the given sizes, in order.
    pub fn contiguous(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&n| {
                let b: Vec<usize> = (start..start + n).collect();
                start += n;
                b
            })
            .collect();
        Self::new(start, blocks)
    }

    /// `A | complement(A)`.
    pub fn bipartition(modes: usize, a: &[usize]) -> Result<Self> {
        let b: Vec<usize> = (0..modes).filter(|m| !a.contains(m)).collect();
        Self::new(modes, vec![a.to_vec(), b])
    }

    /// `{L↑, L↓} | {R↑, R↓}` of the dimer mode basis.
    pub fn dimer_left_right() -> Self {
        Self::contiguous(&[2, 2]).expect("static partition is valid")
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self, k: usize) -> usize {
        self.blocks[k].len()
    }

    pub fn check_block(&self, k: usize) -> Result<()> {
        if k < self.blocks.len() {
            Ok(())
        } else {
            Err(Error::BlockOutOfRange {
                index: k,
                blocks: self.blocks.len(),
            })
        }
    }

    pub fn require_bipartition(&self) -> Result<()> {
        if self.blocks.len() == 2 {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!(
                "expected 2 blocks, got {}",
                self.blocks.len()
            )))
        }
    }

    /// Blocks are consecutive ranges appearing in block order.
    pub fn is_contiguous(&self) -> bool {
        let mut next = 0;
        for b in &self.blocks {
            for &m in b {
                if m != next {
                    return false;
                }
                next += 1;
            }
        }
        true
    }

    /// Bit offsets of each block; requires a contiguous partition.
    pub fn offsets(&self) -> Result<Vec<usize>> {
        if !self.is_contiguous() {
            return Err(Error::NonContiguousPartition);
        }
        let mut off = 0;
        Ok(self
            .blocks
            .iter()
            .map(|b| {
                let o = off;
                off += b.len();
                o
            })
            .collect())
    }

    /// Permutation (`perm[old] = new`) that makes the blocks contiguous,
    /// keeping the mode order inside each block.
    pub fn contiguous_permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.modes];
        let mut next = 0;
        for b in &self.blocks {
            for &m in b {
                perm[m] = next;
                next += 1;
            }
        }
        perm
    }

    /// The same block sizes laid out contiguously.
    pub fn as_contiguous(&self) -> Self {
        let sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        Self::contiguous(&sizes).expect("sizes come from a valid partition")
    }

    /// Particle number in each block.
    pub fn local_numbers(&self, s: OccupationState) -> Vec<u32> {
        self.blocks
            .iter()
            .map(|b| b.iter().filter(|&&m| s.is_occupied(m)).count() as u32)
            .collect()
    }
}

/// Projector onto a particle-number sector, either the total number or a
/// tuple of per-block numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectorProjector {
    Total(u32),
    Local {
        partition: ModePartition,
        numbers: Vec<u32>,
    },
}

impl SectorProjector {
    pub fn local(partition: &ModePartition, numbers: Vec<u32>) -> Result<Self> {
        if numbers.len() != partition.num_blocks() {
            return Err(Error::DimensionMismatch(format!(
                "{} local numbers for {} blocks",
                numbers.len(),
                partition.num_blocks()
            )));
        }
        Ok(Self::Local {
            partition: partition.clone(),
            numbers,
        })
    }

    pub fn contains(&self, s: OccupationState) -> bool {
        match self {
            SectorProjector::Total(n) => s.particle_number() == *n,
            SectorProjector::Local { partition, numbers } => {
                partition.local_numbers(s) == *numbers
            }
        }
    }

    /// Diagonal 0/1 matrix on `basis`.
    pub fn matrix(&self, basis: &FockBasis) -> CMat {
        let n = basis.dim();
        let mut m = CMat::zeros(n, n);
        for (i, &s) in basis.states().iter().enumerate() {
            if self.contains(s) {
                m[(i, i)] = ONE;
            }
        }
        m
    }
}
