use serde::Serialize;

use super::config::ZPoint;
use super::system::Coinduction;
use crate::error::Result;
use crate::free_group::{ball, GroupOracle, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalEntry {
    pub n: usize,
    pub c: Word,
}

/// One row `(g, n) ↦ (δ(g, z)(n), γ(g, n, z))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleEntry {
    pub g: Word,
    pub n: usize,
    pub delta: usize,
    pub gamma: Word,
}

impl<G: GroupOracle<Elem = Word>> Coinduction<G> {
    pub fn transversal_table(&self, count: usize, z: &ZPoint) -> Result<Vec<TransversalEntry>> {
        Ok(self
            .transversal(count, z)?
            .into_iter()
            .enumerate()
            .map(|(n, c)| TransversalEntry { n, c })
            .collect())
    }

    pub fn cocycle_table(&self, radius: usize, components: usize, z: &ZPoint) -> Result<Vec<CocycleEntry>> {
        let mut rows = Vec::new();
        for g in ball(radius) {
            for n in 0..components {
                let (delta, gamma) = self.delta_gamma(&g, n, z)?;
                rows.push(CocycleEntry { g: g.clone(), n, delta, gamma });
            }
        }
        Ok(rows)
    }
}
