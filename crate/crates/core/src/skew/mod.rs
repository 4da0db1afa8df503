//! Skew products over a cocycle, cocycle-identity checking, uniform sampling
//! on kernel windows and Shannon entropy.

mod adapters;
mod sample;
mod table;

use std::fmt::Debug;

use serde::Serialize;

use crate::error::Result;

pub use adapters::{Beta0Cocycle, DeltaCocycle, GammaCocycle, KeyBetaCocycle};
pub use sample::{
    chi_square_independence, chi_square_uniform, shannon_entropy, uniform_kernel_sample, ChiSquare,
    KernelSampler,
};
pub use table::{CocycleTable, FiniteGroup};

/// A cocycle `α : G × X → A` together with the operations needed to state
/// `α(g₂g₁, x) = α(g₂, g₁·x) · α(g₁, x)`.
pub trait Cocycle {
    type G: Clone + Debug;
    type X: Clone + Debug;
    type A: Clone + Debug;

    /// `g₂ g₁`.
    fn mul(&self, g2: &Self::G, g1: &Self::G) -> Self::G;
    fn act(&self, g: &Self::G, x: &Self::X) -> Self::X;
    /// `α(g, x)`; errors where the value is not defined.
    fn value(&self, g: &Self::G, x: &Self::X) -> Result<Self::A>;
    /// `a₂ · a₁`.
    fn compose(&self, a2: &Self::A, a1: &Self::A) -> Result<Self::A>;
    /// Equality of fiber values, on whatever part of them is known.
    fn agree(&self, a: &Self::A, b: &Self::A) -> bool;
}

/// A cocycle whose values act on a fiber `Y`.
pub trait FiberAction: Cocycle {
    type Y: Clone + Debug + PartialEq;

    fn fiber_act(&self, a: &Self::A, y: &Self::Y) -> Result<Self::Y>;
}

/// `g · (y, x) = (α(g, x) · y, g · x)`.
pub fn skew_apply<C: FiberAction>(c: &C, g: &C::G, (y, x): (&C::Y, &C::X)) -> Result<(C::Y, C::X)> {
    let a = c.value(g, x)?;
    Ok((c.fiber_act(&a, y)?, c.act(g, x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub g2: String,
    pub g1: String,
    pub x: String,
}

/// Outcome of a cocycle check: how many defined triples were compared and
/// which of them violate the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub checked: usize,
    pub failures: Vec<Triple>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CocycleReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Checks the identity on every sample triple where all three values are
/// defined; triples touching an undefined entry are skipped.
pub fn cocycle_check<C: Cocycle>(c: &C, samples: impl IntoIterator<Item = (C::G, C::G, C::X)>) -> CocycleReport {
    let mut report = CocycleReport::default();
    for (g2, g1, x) in samples {
        let lhs = c.value(&c.mul(&g2, &g1), &x);
        let inner = c.value(&g1, &x);
        let outer = c.value(&g2, &c.act(&g1, &x));
        let (Ok(lhs), Ok(inner), Ok(outer)) = (lhs, inner, outer) else { continue };
        report.checked += 1;
        let holds = c.compose(&outer, &inner).is_ok_and(|rhs| c.agree(&lhs, &rhs));
        if !holds {
            report.failures.push(Triple { g2: format!("{g2:?}"), g1: format!("{g1:?}"), x: format!("{x:?}") });
        }
    }
    report
}

/// All triples `(g₂, g₁, x)` from the given lists.
pub fn all_triples<G: Clone, X: Clone>(gs: &[G], xs: &[X]) -> Vec<(G, G, X)> {
    let mut out = Vec::with_capacity(gs.len() * gs.len() * xs.len());
    for g2 in gs {
        for g1 in gs {
            for x in xs {
                out.push((g2.clone(), g1.clone(), x.clone()));
            }
        }
    }
    out
}
