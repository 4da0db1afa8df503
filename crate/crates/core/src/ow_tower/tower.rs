use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::map::{components, propagate};
use crate::error::{Error, Result};
use crate::free_group::{ball, Word};
use crate::pattern::{Alphabet, Pattern};

/// Radius bookkeeping for a windowed tower: input on `ball(r)`, `L` levels,
/// level `k` guaranteed on `ball(r − k − 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub input_radius: usize,
    pub levels: usize,
}

impl WindowSpec {
    pub fn new(input_radius: usize, levels: usize) -> WindowSpec {
        WindowSpec { input_radius, levels }
    }

    /// Radius of the canonical shape of level `k`; `None` when that level is empty.
    pub fn level_radius(&self, k: usize) -> Option<usize> {
        self.input_radius.checked_sub(k + 1)
    }

    /// Radius on which the section is independent of the window.
    pub fn output_radius(&self) -> Option<usize> {
        section_exact_radius(self.input_radius, self.levels)
    }
}

/// The first `L` coordinates of the tower output on a finite window.
///
/// Level `k` holds every bit the window determines, which always includes
/// `ball(radius − k − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerOutput {
    radius: usize,
    levels: Vec<Pattern>,
}

pub fn level_shape(radius: usize, k: usize) -> Vec<Word> {
    radius.checked_sub(k + 1).map(ball).unwrap_or_default()
}

impl TowerOutput {
    pub fn from_levels(radius: usize, levels: Vec<Pattern>) -> Result<TowerOutput> {
        for (k, level) in levels.iter().enumerate() {
            if level.alphabet() != Alphabet::Bits {
                return Err(Error::LevelShape(format!("level {k} is not a bit pattern")));
            }
            if let Some(w) = level_shape(radius, k).iter().find(|w| !level.contains(w)) {
                return Err(Error::LevelShape(format!(
                    "level {k} misses {w:?} from ball({})",
                    radius - k - 1
                )));
            }
        }
        Ok(TowerOutput { radius, levels })
    }

    /// Wraps arbitrary level data with the largest radius whose canonical
    /// shapes it covers.
    pub fn fit(levels: Vec<Pattern>) -> TowerOutput {
        let radius = levels
            .iter()
            .enumerate()
            .map(|(k, l)| l.ball_radius().map_or(k, |rho| rho + k + 1))
            .min()
            .unwrap_or(0);
        TowerOutput { radius, levels }
    }

    pub fn zeros(radius: usize, levels: usize) -> TowerOutput {
        TowerOutput {
            radius,
            levels: (0..levels)
                .map(|k| Pattern::constant(Alphabet::Bits, &level_shape(radius, k), 0))
                .collect(),
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn spec(&self) -> WindowSpec {
        WindowSpec::new(self.radius, self.levels.len())
    }

    pub fn levels(&self) -> &[Pattern] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &Pattern {
        &self.levels[k]
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(Pattern::is_zero)
    }

    /// Each level restricted to its canonical ball.
    pub fn canonical(&self) -> TowerOutput {
        TowerOutput {
            radius: self.radius,
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(k, l)| l.intersect(&level_shape(self.radius, k)))
                .collect(),
        }
    }

    /// `f · y`; the guaranteed radius drops by `|f|`.
    pub fn shift(&self, f: &Word) -> TowerOutput {
        TowerOutput {
            radius: self.radius.saturating_sub(f.len()),
            levels: self.levels.iter().map(|l| l.shift(f)).collect(),
        }
    }

    pub fn xor(&self, other: &TowerOutput) -> Result<TowerOutput> {
        if self.depth() != other.depth() {
            return Err(Error::LevelShape(format!(
                "cannot xor towers with {} and {} levels",
                self.depth(),
                other.depth()
            )));
        }
        Ok(TowerOutput {
            radius: self.radius.min(other.radius),
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(a, b)| a.xor(b))
                .collect::<Result<_>>()?,
        })
    }

    /// Level-wise equality on common support.
    pub fn agrees_with(&self, other: &TowerOutput) -> bool {
        self.depth() == other.depth()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a.agrees_with(b))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tower serializes")
    }

    pub fn from_json(s: &str) -> Result<TowerOutput> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct TowerFile {
    r: usize,
    #[serde(rename = "L")]
    l: usize,
    levels: Vec<Pattern>,
}

impl Serialize for TowerOutput {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TowerFile { r: self.radius, l: self.levels.len(), levels: self.levels.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TowerOutput {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = TowerFile::deserialize(deserializer)?;
        if file.levels.len() != file.l {
            return Err(serde::de::Error::custom(format!(
                "L = {} but {} levels given",
                file.l,
                file.levels.len()
            )));
        }
        TowerOutput::from_levels(file.r, file.levels).map_err(serde::de::Error::custom)
    }
}

/// Stage `k` emits the first edge component as level `k` and feeds the second
/// component to stage `k + 1`.
pub fn tower_map(x: &Pattern, levels: usize) -> TowerOutput {
    let radius = x.ball_radius().unwrap_or(0);
    let mut stage = x.clone();
    let mut out = Vec::with_capacity(levels);
    for _ in 0..levels {
        let pq = components(&stage);
        out.push(pq.p);
        stage = pq.q;
    }
    TowerOutput { radius, levels: out }
}

/// The cells of the input that level `k` at `1_F` depends on.
pub fn level_dependence(k: usize) -> Vec<Word> {
    let r = k + 1;
    ball(r)
        .into_iter()
        .filter(|c| {
            let mut e = Pattern::zeros(Alphabet::Bits, r);
            e.insert(c.clone(), 1).expect("bit");
            tower_map(&e, k + 1).level(k).get(&Word::identity()) == Some(1)
        })
        .collect()
}

/// Largest ball on which [`tower_section`] does not depend on data outside
/// the canonical level shapes.
pub fn section_exact_radius(r: usize, levels: usize) -> Option<usize> {
    r.checked_sub(levels)
}

/// A preimage of `y` on `ball(r)`: every stage anchored at 0, residual tail 0,
/// and missing level bits read as 0.
pub fn tower_section(y: &TowerOutput) -> Pattern {
    let r = y.radius;
    let mut x = Pattern::zeros(Alphabet::Bits, r);
    for level in y.levels.iter().rev() {
        x = propagate(level, &x, r, 0);
    }
    x
}

/// [`tower_section`] restricted to the window-independent ball.
pub fn tower_section_exact(y: &TowerOutput) -> Result<Pattern> {
    let r = section_exact_radius(y.radius, y.depth()).ok_or(Error::WindowTooSmall {
        required: y.depth(),
        available: y.radius,
    })?;
    tower_section(y).restrict(&ball(r))
}
