use std::collections::BTreeMap;

use super::tower::tower_map;
use crate::error::{Error, Result};
use crate::free_group::{ball, Word};
use crate::gf2::{combine, nullspace, BitVec};
use crate::pattern::{Alphabet, Pattern};

pub const DEFAULT_MAX_RADIUS: usize = 4;

/// Largest kernel dimension [`KernelBasis::enumerate`] will expand.
pub const MAX_KERNEL_DIM: usize = 24;

/// The exhaustive-radius guard, overridable through `OWF_MAX_RADIUS`.
pub fn max_radius() -> usize {
    std::env::var("OWF_MAX_RADIUS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_RADIUS)
}

pub fn check_radius(r: usize) -> Result<()> {
    let max = max_radius();
    if r > max {
        return Err(Error::ResourceGuard { radius: r, max });
    }
    Ok(())
}

/// A bit pattern on `ball(r)` whose determined tower bits all vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelWindow(Pattern);

impl KernelWindow {
    pub fn new(x: Pattern, levels: usize) -> Result<KernelWindow> {
        if x.alphabet() != Alphabet::Bits {
            return Err(Error::AlphabetMismatch("kernel windows are bit patterns".into()));
        }
        if !tower_map(&x, levels).is_zero() {
            return Err(Error::Support("pattern has a nonzero determined tower bit".into()));
        }
        Ok(KernelWindow(x))
    }

    pub(crate) fn new_unchecked(x: Pattern) -> KernelWindow {
        KernelWindow(x)
    }

    pub fn pattern(&self) -> &Pattern {
        &self.0
    }

    pub fn into_pattern(self) -> Pattern {
        self.0
    }
}

/// The tower on `ball(r)` as a GF(2) matrix: one row per determined output bit.
pub fn tower_constraints(r: usize, levels: usize) -> (Vec<Word>, Vec<BitVec>) {
    let cells = ball(r);
    let n = cells.len();
    let mut rows: BTreeMap<(usize, Word), BitVec> = BTreeMap::new();
    let zero = tower_map(&Pattern::zeros(Alphabet::Bits, r), levels);
    for (k, level) in zero.levels().iter().enumerate() {
        for w in level.support() {
            rows.insert((k, w.clone()), BitVec::zeros(n));
        }
    }
    for (i, c) in cells.iter().enumerate() {
        let mut e = Pattern::zeros(Alphabet::Bits, r);
        e.insert(c.clone(), 1).expect("bit");
        for (k, level) in tower_map(&e, levels).levels().iter().enumerate() {
            for (w, s) in level.cells() {
                if s == 1 {
                    rows.get_mut(&(k, w.clone())).expect("same support").set(i, true);
                }
            }
        }
    }
    (cells, rows.into_values().collect())
}

/// A GF(2) basis of the kernel windows on `ball(r)`.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    radius: usize,
    levels: usize,
    cells: Vec<Word>,
    basis: Vec<BitVec>,
}

impl KernelBasis {
    pub fn new(r: usize, levels: usize) -> KernelBasis {
        let (cells, rows) = tower_constraints(r, levels);
        let basis = nullspace(&rows, cells.len());
        KernelBasis { radius: r, levels, cells, basis }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<KernelWindow> {
        self.basis.iter().map(|v| self.window(v)).collect()
    }

    fn window(&self, v: &BitVec) -> KernelWindow {
        KernelWindow(Pattern::from_trusted(
            Alphabet::Bits,
            self.cells.iter().enumerate().map(|(i, w)| (w.clone(), v.get(i) as u32)),
        ))
    }

    /// The combination of basis vectors selected by the bits of `coeffs`.
    pub fn element(&self, coeffs: u64) -> KernelWindow {
        self.window(&combine(&self.basis, self.cells.len(), coeffs))
    }

    pub fn enumerate(&self) -> Result<Vec<KernelWindow>> {
        if self.dim() > MAX_KERNEL_DIM {
            return Err(Error::KernelTooLarge { dim: self.dim(), max_dim: MAX_KERNEL_DIM });
        }
        Ok((0..1u64 << self.dim()).map(|c| self.element(c)).collect())
    }
}

pub fn kernel_basis(r: usize, levels: usize) -> Result<KernelBasis> {
    check_radius(r)?;
    Ok(KernelBasis::new(r, levels))
}

pub fn kernel_enumerate(r: usize, levels: usize) -> Result<Vec<KernelWindow>> {
    kernel_basis(r, levels)?.enumerate()
}
