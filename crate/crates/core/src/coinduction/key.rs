use std::collections::BTreeMap;

use serde::Serialize;

use super::config::ZPoint;
use super::dual::Family;
use super::system::Coinduction;
use crate::error::{Error, Result};
use crate::free_group::{GroupOracle, Word};
use crate::ow_tower::{beta0, level_dependence, phi0, phi0_inverse, AffineWindowMap, TowerOutput};
use crate::pattern::{Alphabet, Pattern};

/// `K₀^ℕ × (2^ℕ)^G × Z` on finite windows: kernel windows per component,
/// and the first `L` tower bits at each cell of `G`, one bit pattern per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyOutput {
    pub kernel: Family,
    pub levels: Vec<Pattern>,
    pub z: ZPoint,
}

/// `β(g, x, z)` on the components it was built for: target `n` reads source
/// `δ(g⁻¹, g·z)(n)` and applies a `β₀` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyBeta {
    maps: BTreeMap<usize, (usize, AffineWindowMap)>,
}

impl KeyBeta {
    pub fn components(&self) -> impl Iterator<Item = (usize, usize, &AffineWindowMap)> + '_ {
        self.maps.iter().map(|(&n, (m, a))| (n, *m, a))
    }

    pub fn apply(&self, w: &Family) -> Result<Family> {
        let mut out = Family::new();
        for (&n, (m, map)) in &self.maps {
            if let Some(src) = w.get(m) {
                out.insert(n, map.apply(src)?);
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`, on the components where both are defined.
    pub fn compose(&self, inner: &KeyBeta) -> Result<KeyBeta> {
        let mut maps = BTreeMap::new();
        for (&mid, (src, first)) in &inner.maps {
            if let Some((&n, (_, second))) = self.maps.iter().find(|(_, (s, _))| *s == mid) {
                maps.insert(n, (*src, second.compose(first)?));
            }
        }
        Ok(KeyBeta { maps })
    }

    /// Same permutation and agreeing affine maps on every common component.
    pub fn agrees_with(&self, other: &KeyBeta) -> bool {
        self.maps.iter().all(|(n, (m, a))| match other.maps.get(n) {
            Some((m2, b)) => m == m2 && a.agrees_with(b),
            None => true,
        })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|(n, (m, a))| n == m && a.is_identity())
    }
}

/// The input cells of `x` that `π(x, z)(g)(m)` depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiCertificate {
    pub g: Word,
    pub level: usize,
    pub component: usize,
    pub f: Word,
    pub inputs: Vec<Word>,
}

impl<G: GroupOracle<Elem = Word>> Coinduction<G> {
    /// `2^G × Z → K₀^ℕ × (2^ℕ)^G × Z`: coinduce, split each component into its
    /// kernel part and tower, push the towers back to `G`.
    ///
    /// Components whose window misses `1_F` carry no determined output and are dropped.
    pub fn key_pipeline(&self, x: &Pattern, z: &ZPoint, depth: usize) -> Result<KeyOutput> {
        if x.alphabet() != Alphabet::Bits {
            return Err(Error::AlphabetMismatch("the pipeline takes bit patterns".into()));
        }
        let mut kernel = Family::new();
        let mut levels = vec![Pattern::empty(Alphabet::Bits); depth];
        for (n, component) in self.psi_star(x, z)? {
            let Some(r) = component.ball_radius() else { continue };
            let (w, tower) = phi0_inverse(&component.restrict_ball(r)?, depth)?;
            kernel.insert(n, w.into_pattern());
            for (k, level) in tower.levels().iter().enumerate() {
                for (f, s) in level.cells() {
                    levels[k].insert(self.psi(f, n, z)?, s)?;
                }
            }
        }
        Ok(KeyOutput { kernel, levels, z: z.clone() })
    }

    pub fn key_pipeline_inverse(&self, out: &KeyOutput) -> Result<Pattern> {
        let towers = self.tower_family(&out.levels, &out.z)?;
        let mut family = Family::new();
        for (&n, w) in &out.kernel {
            let r = w.ball_radius().unwrap_or(0);
            let levels = match towers.get(&n) {
                Some(t) => t.levels().to_vec(),
                None => vec![Pattern::empty(Alphabet::Bits); out.levels.len()],
            };
            family.insert(n, phi0(w, &TowerOutput::from_levels(r, levels)?)?);
        }
        self.psi_star_inverse(&family, &out.z)
    }

    /// The factor `π(x, z) ∈ (2^ℕ)^G`, truncated to `depth` levels.
    pub fn key_pi(&self, x: &Pattern, z: &ZPoint, depth: usize) -> Result<Vec<Pattern>> {
        Ok(self.key_pipeline(x, z, depth)?.levels)
    }

    /// `ψ*_z` applied level-wise, regrouped into one tower per component.
    pub fn tower_family(&self, levels: &[Pattern], z: &ZPoint) -> Result<BTreeMap<usize, TowerOutput>> {
        let mut per_component: BTreeMap<usize, Vec<Pattern>> = BTreeMap::new();
        for (k, level) in levels.iter().enumerate() {
            for (n, component) in self.psi_star(level, z)? {
                per_component
                    .entry(n)
                    .or_insert_with(|| vec![Pattern::empty(Alphabet::Bits); levels.len()])[k] = component;
            }
        }
        Ok(per_component.into_iter().map(|(n, ls)| (n, TowerOutput::fit(ls))).collect())
    }

    /// `β(g, x, z)(w)(n) = β₀(γ(g⁻¹, n, g·z)⁻¹, ψ*_z(x)(m))(w(m))` with
    /// `m = δ(g⁻¹, g·z)(n)`, built for the given source components `m`.
    pub fn key_beta(&self, g: &Word, levels: &[Pattern], z: &ZPoint, sources: &[usize]) -> Result<KeyBeta> {
        let towers = self.tower_family(levels, z)?;
        let mut maps = BTreeMap::new();
        for &m in sources {
            let y = towers.get(&m).cloned().unwrap_or_else(|| TowerOutput::zeros(0, levels.len()));
            let (n, entry) = self.beta_entry(g, m, &y, z)?;
            maps.insert(n, entry);
        }
        Ok(KeyBeta { maps })
    }

    /// [`key_beta`](Self::key_beta) on every source component whose tower
    /// window is wide enough for its `β₀` value.
    pub fn key_beta_available(&self, g: &Word, levels: &[Pattern], z: &ZPoint) -> Result<KeyBeta> {
        let mut maps = BTreeMap::new();
        for (m, y) in self.tower_family(levels, z)? {
            match self.beta_entry(g, m, &y, z) {
                Ok((n, entry)) => {
                    maps.insert(n, entry);
                }
                Err(Error::WindowTooSmall { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(KeyBeta { maps })
    }

    fn beta_entry(&self, g: &Word, m: usize, y: &TowerOutput, z: &ZPoint) -> Result<(usize, (usize, AffineWindowMap))> {
        let n = self.delta(g, m, z)?;
        let (src, u) = self.delta_gamma(&self.group().inv(g), n, &self.act_z(g, z))?;
        debug_assert_eq!(src, m);
        Ok((n, (src, beta0(&u.inv(), y)?)))
    }

    /// `g · (w, x', z) = (β(g, x', z)(w), g · x', g · z)` on the components
    /// where `β` is available.
    pub fn key_action(&self, g: &Word, out: &KeyOutput) -> Result<KeyOutput> {
        let beta = self.key_beta_available(g, &out.levels, &out.z)?;
        Ok(KeyOutput {
            kernel: beta.apply(&out.kernel)?,
            levels: out.levels.iter().map(|l| self.g_shift(g, l)).collect(),
            z: self.act_z(g, &out.z),
        })
    }

    /// The cells of `x` read by `π(x, z)(g)(m)`.
    pub fn pi_certificate(&self, g: &Word, m: usize, z: &ZPoint) -> Result<PiCertificate> {
        let (f, n) = self.psi_inverse(g, z)?;
        let mut inputs = level_dependence(m)
            .iter()
            .map(|d| self.psi(&f.mul(d), n, z))
            .collect::<Result<Vec<_>>>()?;
        inputs.sort();
        Ok(PiCertificate { g: g.clone(), level: m, component: n, f, inputs })
    }
}
