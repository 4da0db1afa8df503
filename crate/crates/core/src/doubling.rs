//! The doubling gadget on `(S × S)^G`: the maps `T_a`, `T_b`, and windowed
//! checks of the conditions cutting out `Z₀`, `Z₁` and `Z₂`, for a free
//! subgroup of `G = F₂` acting by a user-supplied `*`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_group::{ball, sphere, Gen, Word};
use crate::pattern::{Alphabet, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedAction {
    /// `a * h = a h`, `b * h = b h`.
    LeftTranslation,
}

/// The free action `*` of F₂ on `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(NamedAction),
    /// `h ↦ [a * h, b * h]` on a finite part of `H`.
    Table(BTreeMap<Word, [Word; 2]>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    A,
    B,
}

impl Which {
    fn slot(self) -> usize {
        match self {
            Which::A => 0,
            Which::B => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoublingConfig {
    #[serde(rename = "S")]
    pub s: Vec<Word>,
    pub action: ActionSpec,
}

impl DoublingConfig {
    /// `S = {a, b}` with left translation.
    pub fn left_translation() -> DoublingConfig {
        DoublingConfig { s: vec![Word::a(), Word::b()], action: ActionSpec::Named(NamedAction::LeftTranslation) }
    }

    pub fn from_json(s: &str) -> Result<DoublingConfig> {
        let c: DoublingConfig = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// `S` nonempty without repeats, and `a * h, b * h ∈ S h` wherever `*` is given.
    pub fn validate(&self) -> Result<()> {
        if self.s.is_empty() {
            return Err(Error::Config("S is empty".into()));
        }
        for (i, s) in self.s.iter().enumerate() {
            if self.s[..i].contains(s) {
                return Err(Error::Config(format!("{s} repeated in S")));
            }
        }
        match &self.action {
            ActionSpec::Named(NamedAction::LeftTranslation) => {
                for g in [Word::a(), Word::b()] {
                    if !self.s.contains(&g) {
                        return Err(Error::Config(format!("left translation needs {g} in S")));
                    }
                }
            }
            ActionSpec::Table(table) => {
                for (h, images) in table {
                    for img in images {
                        if self.index_of(&img.mul(&h.inv())).is_none() {
                            return Err(Error::Config(format!("{img} is not in S·{h}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Symbols((self.s.len() * self.s.len()) as u32)
    }

    pub fn index_of(&self, s: &Word) -> Option<usize> {
        self.s.iter().position(|t| t == s)
    }

    /// The symbol for `(S[i], S[j])`.
    pub fn symbol(&self, i: usize, j: usize) -> u32 {
        (i * self.s.len() + j) as u32
    }

    /// `x(h)(1)` or `x(h)(2)` as an element of `S`.
    pub fn component(&self, symbol: u32, which: Which) -> &Word {
        let n = self.s.len();
        let (i, j) = (symbol as usize / n, symbol as usize % n);
        &self.s[if which == Which::A { i } else { j }]
    }

    /// `a * h` or `b * h`, where defined.
    pub fn star(&self, which: Which, h: &Word) -> Option<Word> {
        match &self.action {
            ActionSpec::Named(NamedAction::LeftTranslation) => Some(match which {
                Which::A => Word::a().mul(h),
                Which::B => Word::b().mul(h),
            }),
            ActionSpec::Table(table) => table.get(h).map(|v| v[which.slot()].clone()),
        }
    }

    /// The pattern with `x(p) = ((a * p⁻¹)·p, (b * p⁻¹)·p)` on the cells of
    /// `window` where `*` is defined, so that `h · x ↦ (a * h) · x` is `T_a`.
    pub fn encode_action(&self, window: &[Word]) -> Result<Pattern> {
        let mut x = Pattern::empty(self.alphabet());
        for p in window {
            let q = p.inv();
            let (Some(sa), Some(sb)) = (self.star(Which::A, &q), self.star(Which::B, &q)) else { continue };
            let i = self.index_of(&sa.mul(p)).ok_or_else(|| Error::Config(format!("a * {q} ∉ S·{q}")))?;
            let j = self.index_of(&sb.mul(p)).ok_or_else(|| Error::Config(format!("b * {q} ∉ S·{q}")))?;
            x.insert(p.clone(), self.symbol(i, j))?;
        }
        Ok(x)
    }

    /// Words `f` with `1 ≤ |f| ≤ depth` that fix some `h` of the table under `*`,
    /// following only the steps the table defines.
    pub fn star_fixed_points(&self, depth: usize) -> Vec<(Word, Word)> {
        let ActionSpec::Table(table) = &self.action else { return Vec::new() };
        let inverse: BTreeMap<(usize, Word), Word> = table
            .iter()
            .flat_map(|(h, imgs)| [((0, imgs[0].clone()), h.clone()), ((1, imgs[1].clone()), h.clone())])
            .collect();
        let step = |l: Gen, h: &Word| -> Option<Word> {
            match l {
                Gen::A => table.get(h).map(|v| v[0].clone()),
                Gen::B => table.get(h).map(|v| v[1].clone()),
                Gen::AInv => inverse.get(&(0, h.clone())).cloned(),
                Gen::BInv => inverse.get(&(1, h.clone())).cloned(),
            }
        };
        let mut out = Vec::new();
        for h in table.keys() {
            for f in (1..=depth).flat_map(sphere) {
                let end = f.letters().iter().rev().try_fold(h.clone(), |acc, &l| step(l, &acc));
                if end.as_ref() == Some(h) {
                    out.push((f, h.clone()));
                }
            }
        }
        out
    }
}

/// `T(x) = s · x` where `s` is component 1 (for `T_a`) or 2 (for `T_b`) of `x(1_G)`.
pub fn t_map(config: &DoublingConfig, which: Which, x: &Pattern) -> Result<Pattern> {
    let s = config.component(x.value(&Word::identity())?, which);
    Ok(x.shift(s))
}

fn require(x: &Pattern, cells: impl IntoIterator<Item = Word>) -> Result<()> {
    let missing: Vec<Word> = cells.into_iter().filter(|w| !x.contains(w)).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::Support(format!("doubling check needs cells {missing:?}")))
    }
}

/// `#{s ∈ S : x(p s)(i) = s}` for `i = 1, 2`: the preimage counts of `T_a`,
/// `T_b` at the translate `p⁻¹ · x`.
pub fn preimage_counts_at(config: &DoublingConfig, x: &Pattern, p: &Word) -> Result<(usize, usize)> {
    require(x, config.s.iter().map(|s| p.mul(s)))?;
    let count = |which| {
        config
            .s
            .iter()
            .filter(|s| config.component(x.get(&p.mul(s)).expect("checked"), which) == *s)
            .count()
    };
    Ok((count(Which::A), count(Which::B)))
}

pub fn preimage_counts(config: &DoublingConfig, x: &Pattern) -> Result<(usize, usize)> {
    require(x, [Word::identity()])?;
    preimage_counts_at(config, x, &Word::identity())
}

/// `x ∈ Z₀`: both `T_a` and `T_b` have exactly one preimage.
pub fn z0(config: &DoublingConfig, x: &Pattern) -> Result<bool> {
    Ok(preimage_counts(config, x)? == (1, 1))
}

/// `Z₁` on a window: `z0` at every translate `g · x` whose needed cells lie in the window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Z1Certificate {
    pub translates_checked: usize,
    pub failures: Vec<Word>,
}

pub fn z1_certificate(config: &DoublingConfig, x: &Pattern) -> Z1Certificate {
    let mut cert = Z1Certificate::default();
    for p in x.support() {
        if let Ok(counts) = preimage_counts_at(config, x, p) {
            cert.translates_checked += 1;
            if counts != (1, 1) {
                cert.failures.push(p.inv());
            }
        }
    }
    cert
}

/// One letter of the F₂-action, tracked as `g · x ↦ g' · x`.
fn step(config: &DoublingConfig, x: &Pattern, g: &Word, l: Gen) -> Result<Option<Word>> {
    let p = g.inv();
    let which = if l.positive() == Gen::A { Which::A } else { Which::B };
    if l.is_positive() {
        let s = config.component(x.value(&p)?, which);
        return Ok(Some(s.mul(g)));
    }
    require(x, config.s.iter().map(|s| p.mul(s)))?;
    let mut hits = config.s.iter().filter(|s| config.component(x.get(&p.mul(s)).expect("checked"), which) == *s);
    match (hits.next(), hits.next()) {
        (Some(s), None) => Ok(Some(s.inv().mul(g))),
        _ => Ok(None),
    }
}

/// The cocycle value `α(f, x) ∈ G` with `f · x = α(f, x) · x`, or `None` when
/// some inverse step along the way has no unique preimage.
pub fn alpha(config: &DoublingConfig, f: &Word, x: &Pattern) -> Result<Option<Word>> {
    let mut g = Word::identity();
    for &l in f.letters().iter().rev() {
        match step(config, x, &g, l)? {
            Some(next) => g = next,
            None => return Ok(None),
        }
    }
    Ok(Some(g))
}

/// `f · x` computed by composing `T_a`, `T_b` and their unique preimages on patterns.
pub fn act_word(config: &DoublingConfig, f: &Word, x: &Pattern) -> Result<Option<Pattern>> {
    let mut y = x.clone();
    for &l in f.letters().iter().rev() {
        let which = if l.positive() == Gen::A { Which::A } else { Which::B };
        if l.is_positive() {
            y = t_map(config, which, &y)?;
            continue;
        }
        require(&y, config.s.iter().cloned())?;
        let candidates: Vec<Pattern> = config
            .s
            .iter()
            .filter(|s| y.get(s).is_some_and(|v| config.component(v, which) == *s))
            .map(|s| y.shift(&s.inv()))
            .collect();
        match candidates.as_slice() {
            [only] => y = only.clone(),
            _ => return Ok(None),
        }
    }
    Ok(Some(y))
}

/// Bounded freeness: the first reduced `f` with `1 ≤ |f| ≤ depth` found to fix `x`
/// on the overlap of `x` and `f · x`, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Z2Certificate {
    pub depth: usize,
    pub words_checked: usize,
    pub fixing_word: Option<Word>,
    pub min_overlap: usize,
}

pub fn z2_certificate(config: &DoublingConfig, x: &Pattern, depth: usize) -> Result<Z2Certificate> {
    let mut cert = Z2Certificate { depth, min_overlap: usize::MAX, ..Default::default() };
    for f in (1..=depth).flat_map(sphere) {
        cert.words_checked += 1;
        let fixed = match alpha(config, &f, x)? {
            None => true,
            Some(g) if g.is_identity() => true,
            Some(g) => {
                let moved = x.shift(&g);
                let overlap = moved.support().filter(|w| x.contains(w)).count();
                if overlap == 0 {
                    return Err(Error::Support(format!("{f} · x does not overlap x")));
                }
                cert.min_overlap = cert.min_overlap.min(overlap);
                moved.agrees_with(x)
            }
        };
        if fixed {
            cert.fixing_word = Some(f);
            break;
        }
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZChecks {
    pub z0: bool,
    pub z1: Z1Certificate,
    pub z2: bool,
    pub z2_certificate: Z2Certificate,
}

/// `z0` at `x`, the windowed `Z₁` certificate, and depth-bounded `Z₂`
/// (which also requires the `Z₁` certificate to be clean).
pub fn z_checks(config: &DoublingConfig, x: &Pattern, depth: usize) -> Result<ZChecks> {
    let z0 = z0(config, x)?;
    let z1 = z1_certificate(config, x);
    let cert = z2_certificate(config, x, depth)?;
    let z2 = z0 && z1.failures.is_empty() && cert.fixing_word.is_none();
    Ok(ZChecks { z0, z1, z2, z2_certificate: cert })
}

/// Shortest element of `p ⟨c⟩`, ties broken by rank.
fn coset_min(p: &Word, c: &Word) -> Word {
    let span = (p.len() / c.len().max(1) + 1) as i64;
    (-span..=span)
        .map(|k| p.mul(&c.pow(k)))
        .min_by_key(|w| (w.len(), w.rank()))
        .expect("nonempty range")
}

/// A pattern on `ball(radius)` for `S = {a, b}` lying in `Z₁` with a free
/// F₂-action: each coset `p ⟨a⁻¹ b⟩` carries `(a, b)` or `(b, a)`, chosen by
/// a seeded coin per coset.
pub fn decorated_pattern(radius: usize, seed: u64) -> Pattern {
    let config = DoublingConfig::left_translation();
    let c = Word::a().inv().mul(&Word::b());
    let cells = ball(radius).into_iter().map(|p| {
        let rep = coset_min(&p, &c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ rep.rank().wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let symbol = if rng.gen::<bool>() { config.symbol(1, 0) } else { config.symbol(0, 1) };
        (p, symbol)
    });
    Pattern::from_cells(config.alphabet(), cells).expect("symbols in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn config_json_forms() {
        let lt = DoublingConfig::from_json(r#"{"S":["a","b"],"action":"left-translation"}"#).unwrap();
        assert_eq!(lt, DoublingConfig::left_translation());
        let table = DoublingConfig::from_json(r#"{"S":["a","b"],"action":{"1":["a","b"],"a":["aa","ba"]}}"#).unwrap();
        assert_eq!(table.star(Which::B, &w("a")), Some(w("ba")));
        assert!(DoublingConfig::from_json(r#"{"S":["a"],"action":"left-translation"}"#).is_err());
        assert!(DoublingConfig::from_json(r#"{"S":["a","b"],"action":{"1":["aa","b"]}}"#).is_err());
    }

    #[test]
    fn t_map_reads_the_designated_component() {
        let c = DoublingConfig::left_translation();
        let x = Pattern::from_cells(c.alphabet(), ball(1).into_iter().map(|p| (p, c.symbol(1, 0)))).unwrap();
        assert_eq!(t_map(&c, Which::A, &x).unwrap(), x.shift(&w("b")));
        assert_eq!(t_map(&c, Which::B, &x).unwrap(), x.shift(&w("a")));
        assert!(t_map(&c, Which::A, &Pattern::empty(c.alphabet())).is_err());
    }

    #[test]
    fn constant_encoding_is_in_z1_but_fixed_by_t_a() {
        let c = DoublingConfig::left_translation();
        let x = c.encode_action(&ball(4)).unwrap();
        assert!(x.cells().all(|(_, s)| s == c.symbol(0, 1)));
        let checks = z_checks(&c, &x, 3).unwrap();
        assert!(checks.z0 && checks.z1.failures.is_empty());
        assert!(!checks.z2);
        assert_eq!(checks.z2_certificate.fixing_word, Some(w("a")));
    }

    #[test]
    fn two_fixed_letters_fail_z0() {
        let c = DoublingConfig::left_translation();
        let mut x = Pattern::from_cells(c.alphabet(), ball(1).into_iter().map(|p| (p, c.symbol(0, 1)))).unwrap();
        x.insert(w("b"), c.symbol(1, 1)).unwrap();
        assert_eq!(preimage_counts(&c, &x).unwrap(), (2, 1));
        assert!(!z0(&c, &x).unwrap());
        assert!(z0(&c, &Pattern::empty(c.alphabet())).is_err());
    }

    #[test]
    fn decorated_pattern_passes_all_checks() {
        let c = DoublingConfig::left_translation();
        let x = decorated_pattern(6, 1);
        let checks = z_checks(&c, &x, 3).unwrap();
        assert!(checks.z0 && checks.z2, "{checks:?}");
        assert!(checks.z1.translates_checked > 100);
        assert!(checks.z2_certificate.min_overlap > 0);
    }

    #[test]
    fn word_action_routes_agree_and_stay_in_the_g_orbit() {
        let c = DoublingConfig::left_translation();
        let x = decorated_pattern(6, 2);
        for f in ball(3) {
            let g = alpha(&c, &f, &x).unwrap().unwrap();
            let y = act_word(&c, &f, &x).unwrap().unwrap();
            assert_eq!(y, x.shift(&g));
            if f.len() == 1 {
                let s = if f.letters()[0].is_positive() { g.clone() } else { g.inv() };
                assert!(c.s.contains(&s));
            }
        }
    }

    #[test]
    fn table_action_encodes_like_left_translation() {
        let table: BTreeMap<Word, [Word; 2]> =
            ball(3).into_iter().map(|h| (h.clone(), [w("a").mul(&h), w("b").mul(&h)])).collect();
        let c = DoublingConfig { s: vec![w("a"), w("b")], action: ActionSpec::Table(table) };
        c.validate().unwrap();
        assert_eq!(c.encode_action(&ball(3)).unwrap(), DoublingConfig::left_translation().encode_action(&ball(3)).unwrap());
        assert!(c.star_fixed_points(3).is_empty());
        let bad: BTreeMap<Word, [Word; 2]> = [(w("1"), [w("a"), w("b")]), (w("a"), [w("1"), w("ba")])]
            .into_iter()
            .collect();
        let c = DoublingConfig { s: vec![w("a"), w("b"), w("A")], action: ActionSpec::Table(bad) };
        c.validate().unwrap();
        assert!(c.star_fixed_points(2).iter().any(|(f, _)| *f == w("aa")));
    }
}
