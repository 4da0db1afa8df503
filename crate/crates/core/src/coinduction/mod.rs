//! Coinduction from a free subgroup `F₂ ≤ G`: transversals of the
//! `F₂`-action on `G × Z`, the cocycle pair `(δ, γ)`, the relabeling `ψ*`,
//! and the pipeline `2^G × Z → K₀^ℕ × (2^ℕ)^G × Z` with its affine cocycle `β`.

mod config;
mod dual;
mod key;
mod system;
mod tables;

pub use config::{CoinductionConfig, Enumeration, GroupSpec, OrbitBijection, ZPoint, ZSpec, DEFAULT_TRANSVERSAL_DEPTH};
pub use dual::Family;
pub use key::{KeyBeta, KeyOutput, PiCertificate};
pub use system::Coinduction;
pub use tables::{CocycleEntry, TransversalEntry};
