use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_group::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupSpec {
    F2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZSpec {
    Singleton,
    Orbit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enumeration {
    #[default]
    LengthLex,
}

/// How the bijection `F₂ → G` behind an orbit `Z` is built from the two
/// enumerations: `u ↦ g_{π(rank u)}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitBijection {
    /// `π = id`.
    #[default]
    LengthLex,
    /// `π(n) = n xor 1`, swapping consecutive ranks.
    Paired,
}

impl OrbitBijection {
    pub fn permute(self, n: u64) -> u64 {
        match self {
            OrbitBijection::LengthLex => n,
            OrbitBijection::Paired => n ^ 1,
        }
    }
}

pub const DEFAULT_TRANSVERSAL_DEPTH: usize = 4096;

fn default_depth() -> usize {
    DEFAULT_TRANSVERSAL_DEPTH
}

/// File form of a coinduction setup `(G, θ, ι, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinductionConfig {
    pub group: GroupSpec,
    pub theta: [Word; 2],
    pub iota: [Word; 2],
    #[serde(rename = "Z")]
    pub z: ZSpec,
    #[serde(default)]
    pub enumeration: Enumeration,
    #[serde(default)]
    pub orbit_bijection: OrbitBijection,
    #[serde(default = "default_depth")]
    pub transversal_depth: usize,
}

impl CoinductionConfig {
    /// `G = F₂`, `θ = id`, `ι = (a ↦ a², b ↦ b²)`, one-point `Z`.
    pub fn singleton() -> CoinductionConfig {
        CoinductionConfig {
            group: GroupSpec::F2,
            theta: [Word::a(), Word::b()],
            iota: [Word::a().pow(2), Word::b().pow(2)],
            z: ZSpec::Singleton,
            enumeration: Enumeration::LengthLex,
            orbit_bijection: OrbitBijection::LengthLex,
            transversal_depth: DEFAULT_TRANSVERSAL_DEPTH,
        }
    }

    /// The orbit of the point mass at `1_G`, with the paired bijection.
    pub fn orbit() -> CoinductionConfig {
        CoinductionConfig { z: ZSpec::Orbit, orbit_bijection: OrbitBijection::Paired, ..Self::singleton() }
    }

    pub fn from_json(s: &str) -> Result<CoinductionConfig> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// A point of `Z`. In the orbit case `Z = G · z₀` with `z₀` the point mass at
/// `1_G`, so `h · z₀` is the point mass at `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZPoint {
    Singleton,
    PointMass(Word),
}

impl ZPoint {
    pub fn base(spec: ZSpec) -> ZPoint {
        match spec {
            ZSpec::Singleton => ZPoint::Singleton,
            ZSpec::Orbit => ZPoint::PointMass(Word::identity()),
        }
    }
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZPoint::Singleton => write!(f, "z"),
            ZPoint::PointMass(h) => write!(f, "z[{h:?}]"),
        }
    }
}

impl Serialize for ZPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
