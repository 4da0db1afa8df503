//! Exact arithmetic in the rank-two free group, ball enumeration,
//! homomorphisms and subgroup membership.

mod oracle;
mod stallings;
mod word;

pub use oracle::{BoundedSearch, FoldedSolver, FreeGroup, GroupOracle, Homomorphism, PreimageSolver};
pub use stallings::{subgroup_member, BasisWord, SubgroupGraph};
pub use word::{ball, ball_size, sphere, Gen, Word};
